//! Cycles attached to a germ: the fundamental cycle, the discrepancy cycle,
//! the delta invariant, arithmetic genus, and the shape classification.
//!
//! Conventions.  For a graph with weights `w_i`:
//!
//! * the fundamental cycle `Z` is the smallest effective cycle `>= (1,..,1)`
//!   with `Z . E_i <= 0` for every vertex;
//! * the discrepancy cycle has the coefficients `a_i` solving
//!   `A a = (2 - w)`, which encodes that every exceptional curve is rational
//!   with `K . E_i = w_i - 2`;
//! * `delta = -(Z - a)^2` when every `a_i < 1` (log-terminal), else 0.
//!
//! The lone weight-1 vertex (smooth point) needs no special casing: the same
//! equations give `Z = (1)`, `a = (-1)` and `delta = 4`.

use alloc::vec;
use alloc::vec::Vec;

use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::boundary::{self, BoundaryData};
use crate::dualgraph::{Cycle, DualGraph, IntersectionMatrix};
use crate::error::Error;
use crate::etypes;
use crate::rat::{int, Rat};

/// Shape of a germ, as read off the dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermClass {
    /// Lone weight-1 vertex: the blow-up of a smooth point.
    Smooth,
    /// Chain; weights listed in chain order starting from the endpoint with
    /// the lower vertex index.
    An { weights: Vec<u32> },
    /// Chain of n-2 vertices with two weight-2 leaves on its last vertex;
    /// `chain` lists the chain weights ending at the fork vertex.
    Dn { chain: Vec<u32> },
    /// Three-armed star matching one of the 15 built-in exceptional
    /// families; `m` is the center weight.
    EType { row: u8, m: u32 },
    /// Log-terminal but matching none of the shapes above.  The
    /// classification of quotient singularities says this cannot happen; it
    /// is kept distinct so that statement stays a testable property.
    LogTerminalOther,
    /// Some discrepancy coefficient is >= 1.
    NotLogTerminal,
}

impl GermClass {
    /// Number of vertices for the chain/fork shapes.
    pub fn n(&self) -> Option<usize> {
        match self {
            GermClass::An { weights } => Some(weights.len()),
            GermClass::Dn { chain } => Some(chain.len() + 2),
            _ => None,
        }
    }
}

impl fmt::Display for GermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermClass::Smooth => write!(f, "smooth point"),
            GermClass::An { weights } => {
                write!(f, "A_{} (weights", weights.len())?;
                for w in weights {
                    write!(f, " {w}")?;
                }
                write!(f, ")")
            }
            GermClass::Dn { chain } => {
                write!(f, "D_{} (chain", chain.len() + 2)?;
                for w in chain {
                    write!(f, " {w}")?;
                }
                write!(f, ")")
            }
            GermClass::EType { row, m } => write!(f, "E-type (row {row}, m = {m})"),
            GermClass::LogTerminalOther => {
                write!(f, "log-terminal, outside the chain/fork/star families")
            }
            GermClass::NotLogTerminal => write!(f, "not log-terminal"),
        }
    }
}

/// Classification plus the rational-double-point flag (all weights 2,
/// equivalently zero discrepancy cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermKind {
    pub class: GermClass,
    pub rational_double_point: bool,
}

/// Everything the classification pass computes in one go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyResult {
    pub fundamental: Cycle,
    pub discrepancy: Cycle,
    /// Delta of the bare germ (empty boundary): `-(Z - a)^2` if log-terminal,
    /// else 0.
    pub delta: Rat,
    pub kind: GermKind,
}

/// Least integer vector `t >= floor` with `(A t)_j <= cap_j` for every `j`.
///
/// One step raises the lowest-index violating coordinate by one.  Any
/// feasible vector `u` stays `>= t` throughout (if `t_j = u_j` at a
/// violating `j`, then `(A u)_j >= (A t)_j > cap_j`, contradiction), so the
/// procedure terminates at the unique least element whenever the feasible
/// set is nonempty — which negative definiteness guarantees.
pub(crate) fn least_bounded_above(
    g: &DualGraph,
    floor: Vec<BigInt>,
    cap: &[Rat],
) -> Vec<BigInt> {
    let n = g.vertex_count();
    let mut t = floor;
    // s = A t, maintained incrementally.
    let mut s: Vec<BigInt> = (0..n)
        .map(|j| {
            let mut acc = -BigInt::from(g.weight(j)) * &t[j];
            for &i in g.neighbors(j) {
                acc += &t[i];
            }
            acc
        })
        .collect();
    let exceeds = |s_j: &BigInt, cap_j: &Rat| s_j * cap_j.denom() > *cap_j.numer();
    let mut steps = 0u64;
    loop {
        let violating = (0..n).find(|&j| exceeds(&s[j], &cap[j]));
        let Some(j) = violating else {
            return t;
        };
        t[j] += BigInt::one();
        s[j] -= BigInt::from(g.weight(j));
        for &i in g.neighbors(j) {
            s[i] += BigInt::one();
        }
        steps += 1;
        assert!(steps < 1_000_000, "no bounded solution; matrix cannot be negative definite");
    }
}

/// The fundamental cycle: smallest effective integral `Z >= (1,..,1)` with
/// `Z . E_i <= 0` everywhere, by incrementally bumping violating
/// coordinates (lowest vertex index first; the least element is independent
/// of that order).
pub fn fundamental_cycle(g: &DualGraph) -> Result<Cycle, Error> {
    let m = IntersectionMatrix::of(g);
    if !m.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let n = g.vertex_count();
    let z = least_bounded_above(g, vec![BigInt::one(); n], &vec![Rat::zero(); n]);
    Ok(Cycle::from_integers(z))
}

/// The discrepancy coefficients `a`, solving `A a = (2 - w)`.
pub fn discrepancy_cycle(g: &DualGraph) -> Result<Cycle, Error> {
    let m = IntersectionMatrix::of(g);
    if !m.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let rhs: Vec<Rat> = g.weights().iter().map(|&w| int(2 - i64::from(w))).collect();
    Ok(Cycle::new(m.solve(&rhs)?))
}

/// `-(z - a)^2` under the given intersection matrix.
fn delta_value(m: &IntersectionMatrix, z: &Cycle, a: &Cycle) -> Rat {
    let d = z.sub(a);
    -m.pairing(d.coeffs(), d.coeffs())
}

/// Delta of the germ with boundary: `-(Z - a)^2` when (graph, boundary) is
/// quasi-log-terminal, 0 otherwise.  A smooth point with quasi-log-terminal
/// boundary gives 4.
pub fn delta_invariant(g: &DualGraph, boundary: &BoundaryData) -> Result<Rat, Error> {
    let qlt = boundary::quasi_log_terminal_check(g, boundary)?;
    if !qlt.is_qlt {
        return Ok(Rat::zero());
    }
    let m = IntersectionMatrix::of(g);
    let z = fundamental_cycle(g)?;
    let a = discrepancy_cycle(g)?;
    Ok(delta_value(&m, &z, &a))
}

/// Per-vertex `a_i + c_{i,i}`: the discrepancy coefficient plus the
/// coefficient at vertex `i` of the pullback of a transversal curve meeting
/// only vertex `i` once.  Since that pullback coefficient is the negated
/// inverse-matrix diagonal, this is `a_i - (A^{-1})_{ii}`.
pub fn aci_values(g: &DualGraph) -> Result<Vec<Rat>, Error> {
    let m = IntersectionMatrix::of(g);
    if !m.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let a = discrepancy_cycle(g)?;
    let n = g.vertex_count();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut rhs = vec![Rat::zero(); n];
        rhs[i] = Rat::one();
        let column = m.solve(&rhs)?;
        out.push(a.coeff(i) - &column[i]);
    }
    Ok(out)
}

/// `K . z` with every curve rational: `K . E_i = w_i - 2`.
pub fn canonical_dot(g: &DualGraph, z: &Cycle) -> Rat {
    g.weights()
        .iter()
        .zip(z.coeffs())
        .map(|(&w, c)| int(i64::from(w) - 2) * c)
        .sum()
}

/// Arithmetic genus `z(z + K)/2 + 1` of an (integral) cycle.
pub fn arithmetic_genus(g: &DualGraph, z: &Cycle) -> Rat {
    let m = IntersectionMatrix::of(g);
    let zz = m.pairing(z.coeffs(), z.coeffs());
    (zz + canonical_dot(g, z)) / int(2) + int(1)
}

/// The arms of a star, walked outward from `center`; each arm lists vertex
/// indices nearest-first.  Valid only when no vertex outside the center has
/// degree > 2.
fn arms_of(g: &DualGraph, center: usize) -> Vec<Vec<usize>> {
    g.neighbors(center)
        .iter()
        .map(|&first| {
            let mut arm = vec![first];
            let mut prev = center;
            let mut cur = first;
            while let Some(&next) = g.neighbors(cur).iter().find(|&&v| v != prev) {
                arm.push(next);
                prev = cur;
                cur = next;
            }
            arm
        })
        .collect()
}

/// Vertex order of a path graph, starting at the endpoint with the lower
/// index.  `None` if the graph is not a path.
fn path_order(g: &DualGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n == 1 {
        return Some(vec![0]);
    }
    if !g.is_tree() || (0..n).any(|v| g.degree(v) > 2) {
        return None;
    }
    let start = (0..n).find(|&v| g.degree(v) == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&v| v != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

fn classify_from(g: &DualGraph, a: &Cycle) -> GermClass {
    if g.is_smooth_point() {
        return GermClass::Smooth;
    }
    let one = int(1);
    if a.coeffs().iter().any(|c| *c >= one) {
        return GermClass::NotLogTerminal;
    }

    if let Some(order) = path_order(g) {
        return GermClass::An { weights: order.iter().map(|&v| g.weight(v)).collect() };
    }
    if !g.is_tree() {
        return GermClass::LogTerminalOther;
    }
    let n = g.vertex_count();
    let branch: Vec<usize> = (0..n).filter(|&v| g.degree(v) >= 3).collect();
    let [center] = branch[..] else {
        return GermClass::LogTerminalOther;
    };
    if g.degree(center) != 3 {
        return GermClass::LogTerminalOther;
    }

    let arms = arms_of(g, center);
    let far_to_near = |arm: &[usize]| -> Vec<u32> {
        arm.iter().rev().map(|&v| g.weight(v)).collect()
    };
    let single2: Vec<usize> = (0..3)
        .filter(|&k| arms[k].len() == 1 && g.weight(arms[k][0]) == 2)
        .collect();
    if single2.len() >= 2 {
        // Fork shape: the two weight-2 leaves, plus the remaining arm and the
        // center as the chain.  (With three candidate leaves the graph is a
        // 4-vertex fork and any assignment gives the same chain.)
        let chain_arm = (0..3).find(|k| !single2[single2.len() - 2..].contains(k)).unwrap();
        let mut chain = far_to_near(&arms[chain_arm]);
        chain.push(g.weight(center));
        return GermClass::Dn { chain };
    }
    if let [third] = single2[..] {
        let others: Vec<usize> = (0..3).filter(|&k| k != third).collect();
        let p = far_to_near(&arms[others[0]]);
        let q = far_to_near(&arms[others[1]]);
        let m = g.weight(center);
        if let Some(row) = etypes::match_arms(&p, &q) {
            return GermClass::EType { row, m };
        }
    }
    GermClass::LogTerminalOther
}

/// Classifies the germ: shape (chain / fork / star family) plus the
/// log-terminality and rational-double-point flags.
pub fn classify(g: &DualGraph) -> Result<GermKind, Error> {
    let a = discrepancy_cycle(g)?;
    Ok(GermKind {
        class: classify_from(g, &a),
        rational_double_point: a.is_zero(),
    })
}

/// Runs the whole classification pass: Z, a, bare delta, and the kind.
pub fn analyze(g: &DualGraph) -> Result<DiscrepancyResult, Error> {
    let m = IntersectionMatrix::of(g);
    let fundamental = fundamental_cycle(g)?;
    let discrepancy = discrepancy_cycle(g)?;
    let class = classify_from(g, &discrepancy);
    let log_terminal = !matches!(class, GermClass::NotLogTerminal);
    let delta = if log_terminal {
        delta_value(&m, &fundamental, &discrepancy)
    } else {
        Rat::zero()
    };
    Ok(DiscrepancyResult {
        kind: GermKind {
            class,
            rational_double_point: discrepancy.is_zero(),
        },
        fundamental,
        discrepancy,
        delta,
    })
}

/// Label of a vertex whose discrepancy coefficient is maximal (handy for
/// reports).
pub fn worst_vertex<'a>(g: &'a DualGraph, a: &Cycle) -> &'a str {
    let mut best = 0;
    for i in 1..g.vertex_count() {
        if a.coeff(i) > a.coeff(best) {
            best = i;
        }
    }
    g.label(best)
}
