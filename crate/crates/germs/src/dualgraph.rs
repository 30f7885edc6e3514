//! Weighted dual graphs and the exact linear algebra on their intersection
//! matrices.
//!
//! A vertex stands for an exceptional curve of self-intersection `-w`; an
//! edge records a transverse intersection of two such curves.  The attached
//! matrix `A` has `-w_i` on the diagonal and `1` in position `(i, j)` for
//! each edge.  Solves and determinants use fraction-free (Bareiss)
//! elimination, whose pivots are exactly the leading principal minors, so the
//! Sylvester test for negative definiteness falls out of the same sweep.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rat::Rat;

/// Weighted dual graph: connected and simple, every weight at least 2 — with
/// the one exception of a lone weight-1 vertex, which models the blow-up of a
/// smooth point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    labels: Vec<String>,
    weights: Vec<u32>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl DualGraph {
    /// Builds and validates a graph from labelled vertices and label pairs.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[(S, u32)],
        edges: &[(T, T)],
    ) -> Result<Self, Error> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut labels = Vec::with_capacity(vertices.len());
        let mut weights = Vec::with_capacity(vertices.len());
        for (label, w) in vertices {
            let label = label.as_ref().to_string();
            if labels.contains(&label) {
                return Err(Error::DuplicateVertex(label));
            }
            labels.push(label);
            weights.push(*w);
        }
        let smooth = weights.len() == 1 && weights[0] == 1;
        if !smooth {
            if let Some(i) = weights.iter().position(|&w| w < 2) {
                return Err(Error::InvalidWeight {
                    vertex: labels[i].clone(),
                    weight: weights[i],
                });
            }
        }

        let index_of = |label: &str| labels.iter().position(|l| l == label);
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); labels.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = index_of(a).ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let ib = index_of(b).ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(Error::SelfLoop(a.to_string()));
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(a.to_string(), b.to_string()));
            }
            pairs.push(key);
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }

        let g = DualGraph { labels, weights, edges: pairs, adjacency };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// The one-vertex weight-1 graph: the blow-up of a smooth point.
    pub fn smooth_point() -> Self {
        Self::new(&[("e", 1)], &[] as &[(&str, &str)]).unwrap()
    }

    /// A chain with the given weights; vertices are labelled "1".."n" in
    /// chain order.
    pub fn chain(weights: &[u32]) -> Result<Self, Error> {
        let vertices: Vec<(String, u32)> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| ((i + 1).to_string(), w))
            .collect();
        let edges: Vec<(String, String)> = (1..weights.len())
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect();
        Self::new(&vertices, &edges)
    }

    /// A D-shaped graph: the chain "1".."k" plus two weight-2 fork vertices
    /// "k+1" and "k+2" attached to the last chain vertex.
    pub fn d_shape(chain: &[u32]) -> Result<Self, Error> {
        let k = chain.len();
        if k == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut vertices: Vec<(String, u32)> = chain
            .iter()
            .enumerate()
            .map(|(i, &w)| ((i + 1).to_string(), w))
            .collect();
        vertices.push(((k + 1).to_string(), 2));
        vertices.push(((k + 2).to_string(), 2));
        let mut edges: Vec<(String, String)> = (1..k)
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect();
        edges.push((k.to_string(), (k + 1).to_string()));
        edges.push((k.to_string(), (k + 2).to_string()));
        Self::new(&vertices, &edges)
    }

    fn is_connected(&self) -> bool {
        let n = self.labels.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Edges as index pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// True for the one-vertex weight-1 smooth-point graph.
    pub fn is_smooth_point(&self) -> bool {
        self.weights.len() == 1 && self.weights[0] == 1
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.labels.len()
    }
}

/// Rational divisor supported on the exceptional curves, with coefficients
/// stored in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    coeffs: Vec<Rat>,
}

impl Cycle {
    pub fn new(coeffs: Vec<Rat>) -> Self {
        Cycle { coeffs }
    }

    pub fn from_integers(coeffs: Vec<BigInt>) -> Self {
        Cycle { coeffs: coeffs.into_iter().map(Rat::from_integer).collect() }
    }

    pub fn zero(n: usize) -> Self {
        Cycle { coeffs: vec![Rat::zero(); n] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient looked up by vertex label.
    pub fn get<'a>(&'a self, g: &DualGraph, label: &str) -> Option<&'a Rat> {
        g.index_of(label).map(|i| &self.coeffs[i])
    }

    /// Pairs of (label, coefficient) in vertex order.
    pub fn entries<'a>(&'a self, g: &'a DualGraph) -> impl Iterator<Item = (&'a str, &'a Rat)> {
        self.coeffs.iter().enumerate().map(|(i, c)| (g.label(i), c))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Cycle) -> Cycle {
        Cycle { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Cycle) -> Cycle {
        Cycle { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, t: &Rat) -> Cycle {
        Cycle { coeffs: self.coeffs.iter().map(|c| c * t).collect() }
    }
}

/// Symmetric integer matrix of a dual graph (or any square integer matrix in
/// oracle use): diagonal `-w_i`, off-diagonal 1 per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    n: usize,
    entries: Vec<BigInt>, // row-major
}

impl IntersectionMatrix {
    pub fn of(g: &DualGraph) -> Self {
        let n = g.vertex_count();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = -BigInt::from(g.weight(i));
        }
        for &(a, b) in g.edges() {
            entries[a * n + b] = BigInt::one();
            entries[b * n + a] = BigInt::one();
        }
        IntersectionMatrix { n, entries }
    }

    /// Builds from explicit rows; intended for tests and oracle sweeps, which
    /// may construct matrices no valid graph produces.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        Ok(IntersectionMatrix { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// Fraction-free elimination without row exchanges.  The k-th pivot is
    /// the k-th leading principal minor; returns the pivots produced before
    /// the first zero pivot (if any) and whether the sweep completed.
    fn bareiss_pivots(&self) -> (Vec<BigInt>, bool) {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut prev = BigInt::one();
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            let pivot = a[k * n + k].clone();
            if pivot.is_zero() {
                return (pivots, false);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
            }
            pivots.push(pivot.clone());
            prev = pivot;
        }
        (pivots, true)
    }

    /// Exact Sylvester test: leading principal minors alternate in sign
    /// starting negative.
    pub fn is_negative_definite(&self) -> bool {
        let (pivots, completed) = self.bareiss_pivots();
        if !completed {
            // A zero leading minor already rules definiteness out.
            return false;
        }
        pivots
            .iter()
            .enumerate()
            .all(|(k, p)| if k % 2 == 0 { p.is_negative() } else { p.is_positive() })
    }

    /// Determinant by fraction-free elimination with row exchanges.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut prev = BigInt::one();
        let mut sign = false;
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let swap = (k + 1..n).find(|&r| !a[r * n + k].is_zero());
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
            }
            prev = pivot;
        }
        if sign {
            -prev
        } else {
            prev
        }
    }

    /// Exact solution of `A x = rhs`.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Vec<Rat>, Error> {
        let n = self.n;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: rhs.len() });
        }
        // Clear denominators so the elimination stays over the integers.
        let mut scale = BigInt::one();
        for r in rhs {
            scale = scale.lcm(r.denom());
        }
        let mut b: Vec<BigInt> =
            rhs.iter().map(|r| r.numer() * (&scale / r.denom())).collect();

        let mut a = self.entries.clone();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let swap = (k + 1..n)
                    .find(|&r| !a[r * n + k].is_zero())
                    .ok_or(Error::SingularMatrix)?;
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                b.swap(k, swap);
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &pivot * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num / &prev;
                }
                let num = &pivot * &b[i] - &a[i * n + k] * &b[k];
                b[i] = num / &prev;
                a[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        if a[(n - 1) * n + (n - 1)].is_zero() {
            return Err(Error::SingularMatrix);
        }

        let mut x = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Rat::from_integer(b[i].clone());
            for j in i + 1..n {
                acc -= Rat::from_integer(a[i * n + j].clone()) * &x[j];
            }
            x[i] = acc / Rat::from_integer(a[i * n + i].clone());
        }
        let scale = Rat::from_integer(scale);
        Ok(x.into_iter().map(|xi| xi / &scale).collect())
    }

    /// Entry `(i, j)` of the inverse (0-based, vertex order), as the signed
    /// cofactor over the determinant.
    pub fn inverse_entry(&self, i: usize, j: usize) -> Result<Rat, Error> {
        let n = self.n;
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        // (A^-1)_{ij} = (-1)^{i+j} det(A with row j, column i removed) / det A.
        let minor = if n == 1 {
            BigInt::one()
        } else {
            let mut sub = Vec::with_capacity((n - 1) * (n - 1));
            for r in 0..n {
                if r == j {
                    continue;
                }
                for c in 0..n {
                    if c == i {
                        continue;
                    }
                    sub.push(self.entries[r * n + c].clone());
                }
            }
            IntersectionMatrix { n: n - 1, entries: sub }.det()
        };
        let signed = if (i + j) % 2 == 0 { minor } else { -minor };
        Ok(Rat::new(signed, det))
    }

    /// The vector `A z`.
    pub fn apply(&self, z: &[Rat]) -> Vec<Rat> {
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..n {
                    if !self.entries[i * n + j].is_zero() {
                        acc += Rat::from_integer(self.entries[i * n + j].clone()) * &z[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// The intersection pairing `y . A . z`.
    pub fn pairing(&self, y: &[Rat], z: &[Rat]) -> Rat {
        self.apply(z).iter().zip(y).map(|(az, yi)| az * yi).sum()
    }
}
