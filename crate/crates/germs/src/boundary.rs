//! Boundary divisors through the singular point and the quantities built
//! from them: pullback excess coefficients, the invariant `mu`, the
//! quasi-log-terminal test, the auxiliary constant `c`, and the main
//! sufficiency inequality's left-hand side.
//!
//! A curve germ is known to this crate only through its coefficient and its
//! incidence numbers with the exceptional curves; that is exactly the data
//! every formula here consumes.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::cycles::{self, DiscrepancyResult};
use crate::dualgraph::{Cycle, DualGraph, IntersectionMatrix};
use crate::error::Error;
use crate::rat::{int, Rat};

/// One irreducible curve through the point: a coefficient and, per
/// exceptional vertex, the intersection number of the strict transform with
/// that curve (counted with multiplicity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGerm {
    pub coefficient: Rat,
    pub incidence: BTreeMap<String, u32>,
}

impl CurveGerm {
    pub fn new(coefficient: Rat, incidence: BTreeMap<String, u32>) -> Self {
        CurveGerm { coefficient, incidence }
    }

    /// Convenience constructor from (label, multiplicity) pairs.
    pub fn through(coefficient: Rat, hits: &[(&str, u32)]) -> Self {
        CurveGerm {
            coefficient,
            incidence: hits.iter().map(|&(l, k)| (String::from(l), k)).collect(),
        }
    }

    pub fn total_incidence(&self) -> u64 {
        self.incidence.values().map(|&k| u64::from(k)).sum()
    }

    fn incidence_vector(&self, g: &DualGraph) -> Result<Vec<Rat>, Error> {
        let mut v = alloc::vec![Rat::zero(); g.vertex_count()];
        for (label, &k) in &self.incidence {
            let i = g
                .index_of(label)
                .ok_or_else(|| Error::UnknownVertex(label.clone()))?;
            v[i] += int(i64::from(k));
        }
        Ok(v)
    }
}

/// A formal sum of curve germs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundaryData {
    pub curves: Vec<CurveGerm>,
}

impl BoundaryData {
    pub fn empty() -> Self {
        BoundaryData { curves: Vec::new() }
    }

    pub fn new(curves: Vec<CurveGerm>) -> Self {
        BoundaryData { curves }
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// All coefficients lie in [0, 1), i.e. the divisor has zero integral
    /// part.
    pub fn coefficients_in_unit_interval(&self) -> bool {
        let one = int(1);
        self.curves
            .iter()
            .all(|c| !c.coefficient.is_negative() && c.coefficient < one)
    }
}

/// Exceptional part of the pullback of one curve: the (componentwise
/// nonnegative) solution of `A x = -incidence`.
pub fn pullback_excess(g: &DualGraph, c: &CurveGerm) -> Result<Cycle, Error> {
    let m = IntersectionMatrix::of(g);
    if !m.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let rhs: Vec<Rat> = c.incidence_vector(g)?.into_iter().map(|v| -v).collect();
    Ok(Cycle::new(m.solve(&rhs)?))
}

/// Exceptional part of the pullback of a whole boundary:
/// `sum_k coeff_k * excess_k`, computed with a single solve.
pub fn boundary_excess(g: &DualGraph, b: &BoundaryData) -> Result<Cycle, Error> {
    let m = IntersectionMatrix::of(g);
    if !m.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let mut rhs = alloc::vec![Rat::zero(); g.vertex_count()];
    for curve in &b.curves {
        for (i, v) in curve.incidence_vector(g)?.into_iter().enumerate() {
            rhs[i] -= &curve.coefficient * v;
        }
    }
    Ok(Cycle::new(m.solve(&rhs)?))
}

/// The largest `mu` with `mu (Z - a) <= f*B` on the exceptional set: the
/// minimum over vertices with `z_j - a_j > 0` of `excess_j / (z_j - a_j)`.
/// Every vertex constrains when the germ is log-terminal (then `a_j < 1 <=
/// z_j`); if no vertex constrains the quantity is unbounded and an error is
/// returned.  An empty boundary gives 0; at a smooth point the result is
/// half the multiplicity of B.
pub fn mu(g: &DualGraph, d: &BoundaryData) -> Result<Rat, Error> {
    let z = cycles::fundamental_cycle(g)?;
    let a = cycles::discrepancy_cycle(g)?;
    let excess = boundary_excess(g, d)?;
    let mut best: Option<Rat> = None;
    for j in 0..g.vertex_count() {
        let gap = z.coeff(j) - a.coeff(j);
        if gap <= Rat::zero() {
            continue;
        }
        let ratio = excess.coeff(j) / gap;
        if best.as_ref().map_or(true, |b| ratio < *b) {
            best = Some(ratio);
        }
    }
    best.ok_or(Error::MuUnbounded)
}

/// Outcome of the quasi-log-terminal test for a (germ, boundary) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QltReport {
    pub is_qlt: bool,
    /// `max_j (a_j + excess_j)`; quasi-log-terminal needs this `< 1`.
    pub worst_coefficient: Rat,
    /// Whether every boundary coefficient lies in [0, 1).
    pub coefficients_in_range: bool,
}

/// Tests the pair (germ, B): every coefficient of `a + f*B`'s exceptional
/// part below 1, and B itself with zero integral part.
pub fn quasi_log_terminal_check(g: &DualGraph, b: &BoundaryData) -> Result<QltReport, Error> {
    let a = cycles::discrepancy_cycle(g)?;
    let excess = boundary_excess(g, b)?;
    let mut worst = a.coeff(0) + excess.coeff(0);
    for j in 1..g.vertex_count() {
        let v = a.coeff(j) + excess.coeff(j);
        if v > worst {
            worst = v;
        }
    }
    let coefficients_in_range = b.coefficients_in_unit_interval();
    Ok(QltReport {
        is_qlt: worst < int(1) && coefficients_in_range,
        worst_coefficient: worst,
        coefficients_in_range,
    })
}

/// The constant `c` together with the integrality flag for the hypothesis
/// that makes `c <= 1/2` provable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3 {
    pub constant: Rat,
    /// True when `d'_j + a_j + b'_j` is an integer at every vertex; the
    /// bound `c <= 1/2` is only guaranteed under this hypothesis (with the
    /// germ singular).
    pub cartier_integral: bool,
}

/// `c = min { (1 - b_i)/d_i , (1 - a_j - b'_j)/d'_j }`: first family over
/// the curves of `d_y` (with `b_i` the boundary coefficient carried by the
/// same strict transform, matched by identical incidence), second family
/// over vertices where `d_y`'s excess is positive.
pub fn lemma3_constant(
    g: &DualGraph,
    b_y: &BoundaryData,
    d_y: &BoundaryData,
    delta: &DiscrepancyResult,
) -> Result<Lemma3, Error> {
    if d_y.curves.iter().map(CurveGerm::total_incidence).sum::<u64>() == 0 {
        return Err(Error::EmptyDy);
    }
    if d_y.curves.iter().any(|c| c.coefficient <= Rat::zero()) {
        return Err(Error::NonPositiveCoefficient);
    }
    let b_excess = boundary_excess(g, b_y)?;
    let d_excess = boundary_excess(g, d_y)?;
    let a = &delta.discrepancy;
    let one = int(1);

    let mut best: Option<Rat> = None;
    let mut consider = |v: Rat| {
        if best.as_ref().map_or(true, |b| v < *b) {
            best = Some(v);
        }
    };

    for curve in &d_y.curves {
        let matching_b: Rat = b_y
            .curves
            .iter()
            .filter(|bc| bc.incidence == curve.incidence)
            .map(|bc| bc.coefficient.clone())
            .sum();
        consider((&one - matching_b) / &curve.coefficient);
    }
    for j in 0..g.vertex_count() {
        if *d_excess.coeff(j) > Rat::zero() {
            consider((&one - a.coeff(j) - b_excess.coeff(j)) / d_excess.coeff(j));
        }
    }

    let cartier_integral = (0..g.vertex_count())
        .all(|j| (d_excess.coeff(j) + a.coeff(j) + b_excess.coeff(j)).is_integer());
    Ok(Lemma3 {
        constant: best.expect("d_y has positive excess somewhere"),
        cartier_integral,
    })
}

/// Left-hand side of the sufficiency inequality
/// `(1 - c)(1 - mu) delta_y / 2 + excess_terms > 1`, where `excess_terms`
/// is the precomputed sum of `(b'_j + c d'_j + a_j) (Delta_j . D_1)`.
pub fn inequality_one(c: &Rat, mu: &Rat, delta_y: &Rat, excess_terms: &Rat) -> (Rat, bool) {
    let one = int(1);
    let lhs = (&one - c) * (&one - mu) * delta_y / int(2) + excess_terms;
    let holds = lhs > one;
    (lhs, holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::testutil::graph_strategy;
    use proptest::prelude::*;
    use std::string::ToString;
    use std::vec;
    use std::vec::Vec;

    #[test]
    fn pullback_examples() {
        let g = DualGraph::chain(&[3]).unwrap();
        let c = CurveGerm::through(int(1), &[("1", 1)]);
        assert_eq!(pullback_excess(&g, &c).unwrap().coeffs(), &[rat(1, 3)]);

        let g = DualGraph::chain(&[2, 3]).unwrap();
        let c = CurveGerm::through(int(1), &[("1", 1)]);
        assert_eq!(pullback_excess(&g, &c).unwrap().coeffs(), &[rat(3, 5), rat(1, 5)]);

        let smooth = DualGraph::smooth_point();
        let c = CurveGerm::through(int(1), &[("e", 1)]);
        assert_eq!(pullback_excess(&smooth, &c).unwrap().coeffs(), &[int(1)]);
    }

    #[test]
    fn unknown_vertex_is_rejected() {
        let g = DualGraph::chain(&[3]).unwrap();
        let c = CurveGerm::through(int(1), &[("nope", 1)]);
        assert_eq!(
            pullback_excess(&g, &c),
            Err(Error::UnknownVertex("nope".to_string()))
        );
    }

    #[test]
    fn mu_examples() {
        let beta = rat(1, 2);
        let smooth = DualGraph::smooth_point();
        let b = BoundaryData::new(vec![CurveGerm::through(beta.clone(), &[("e", 1)])]);
        assert_eq!(mu(&smooth, &b).unwrap(), rat(1, 4));

        let g = DualGraph::chain(&[3]).unwrap();
        let b = BoundaryData::new(vec![CurveGerm::through(beta, &[("1", 1)])]);
        assert_eq!(mu(&g, &b).unwrap(), rat(1, 4));

        assert_eq!(mu(&g, &BoundaryData::empty()).unwrap(), int(0));

        // Multiplicity 3 at a smooth point: mu = 3/2 (mu is about B = D_y
        // style data too, so values over 1 are fine here).
        let b = BoundaryData::new(vec![CurveGerm::through(int(1), &[("e", 3)])]);
        assert_eq!(mu(&smooth, &b).unwrap(), rat(3, 2));
    }

    #[test]
    fn qlt_examples() {
        let g = DualGraph::chain(&[3]).unwrap();
        let r = quasi_log_terminal_check(&g, &BoundaryData::empty()).unwrap();
        assert!(r.is_qlt);
        assert_eq!(r.worst_coefficient, rat(1, 3));

        let b = BoundaryData::new(vec![CurveGerm::through(rat(9, 10), &[("1", 3)])]);
        let r = quasi_log_terminal_check(&g, &b).unwrap();
        assert!(!r.is_qlt);
        assert!(r.coefficients_in_range);
        assert_eq!(r.worst_coefficient, rat(37, 30));

        let rdp = DualGraph::chain(&[2, 2]).unwrap();
        let r = quasi_log_terminal_check(&rdp, &BoundaryData::empty()).unwrap();
        assert!(r.is_qlt);
        assert_eq!(r.worst_coefficient, int(0));

        // Coefficient 1 violates the zero-integral-part requirement even
        // with harmless incidence.
        let b = BoundaryData::new(vec![CurveGerm::through(int(1), &[("1", 1)])]);
        let r = quasi_log_terminal_check(&rdp, &b).unwrap();
        assert!(!r.coefficients_in_range);
        assert!(!r.is_qlt);
    }

    #[test]
    fn lemma3_examples() {
        let g = DualGraph::chain(&[3]).unwrap();
        let delta = cycles::analyze(&g).unwrap();
        let d_y = BoundaryData::new(vec![CurveGerm::through(int(2), &[("1", 1)])]);
        let r = lemma3_constant(&g, &BoundaryData::empty(), &d_y, &delta).unwrap();
        assert_eq!(r.constant, rat(1, 2));
        assert!(r.cartier_integral); // 2/3 + 1/3 = 1

        let smooth = DualGraph::smooth_point();
        let delta = cycles::analyze(&smooth).unwrap();
        let d_y = BoundaryData::new(vec![CurveGerm::through(int(3), &[("e", 1)])]);
        let r = lemma3_constant(&smooth, &BoundaryData::empty(), &d_y, &delta).unwrap();
        assert_eq!(r.constant, rat(1, 3));
        assert!(r.cartier_integral); // 3 - 1 = 2

        // A boundary curve on the same strict transform with b_i = 1 - d_i
        // forces c <= 1 through the first family.
        let g = DualGraph::chain(&[2, 3]).unwrap();
        let delta = cycles::analyze(&g).unwrap();
        let b_y = BoundaryData::new(vec![CurveGerm::through(rat(1, 2), &[("2", 1)])]);
        let d_y = BoundaryData::new(vec![CurveGerm::through(rat(1, 2), &[("2", 1)])]);
        let r = lemma3_constant(&g, &b_y, &d_y, &delta).unwrap();
        assert!(r.constant <= int(1));

        // Fractional pullbacks without the integrality hypothesis get
        // flagged.
        let d_y = BoundaryData::new(vec![CurveGerm::through(rat(3, 2), &[("1", 1)])]);
        let r = lemma3_constant(&g, &BoundaryData::empty(), &d_y, &delta).unwrap();
        assert!(!r.cartier_integral);
    }

    #[test]
    fn lemma3_validation() {
        let g = DualGraph::chain(&[3]).unwrap();
        let delta = cycles::analyze(&g).unwrap();
        assert_eq!(
            lemma3_constant(&g, &BoundaryData::empty(), &BoundaryData::empty(), &delta),
            Err(Error::EmptyDy)
        );
        let no_incidence = BoundaryData::new(vec![CurveGerm::through(int(1), &[])]);
        assert_eq!(
            lemma3_constant(&g, &BoundaryData::empty(), &no_incidence, &delta),
            Err(Error::EmptyDy)
        );
        let bad = BoundaryData::new(vec![CurveGerm::through(int(-1), &[("1", 1)])]);
        assert_eq!(
            lemma3_constant(&g, &BoundaryData::empty(), &bad, &delta),
            Err(Error::NonPositiveCoefficient)
        );
    }

    #[test]
    fn inequality_examples() {
        let (lhs, holds) = inequality_one(&int(0), &int(0), &int(4), &int(0));
        assert_eq!(lhs, int(2));
        assert!(holds);

        let (lhs, holds) = inequality_one(&rat(1, 2), &rat(1, 2), &int(2), &int(0));
        assert_eq!(lhs, rat(1, 4));
        assert!(!holds);
    }

    #[test]
    fn inequality_matches_single_vertex_identity() {
        // On a one-vertex germ with excess terms b' + c d' + a built from
        // mu = b'/(1-a) and p = d'/(1-a), the left-hand side collapses to
        // 1 + (p + mu - 1)(1 - a)c.
        for (w, mu_v, p, c) in [
            (3_i64, rat(1, 2), int(2), rat(1, 4)),
            (2, rat(1, 3), rat(3, 2), rat(1, 2)),
            (5, int(0), rat(1, 2), rat(1, 3)),
        ] {
            let a1 = int(1) - rat(2, w);
            let delta = int(2) * (&int(1) - &a1);
            let one_minus_a = &int(1) - &a1;
            let excess = &mu_v * &one_minus_a + &c * &p * &one_minus_a + &a1;
            let (lhs, _) = inequality_one(&c, &mu_v, &delta, &excess);
            let identity = int(1) + (&p + &mu_v - int(1)) * one_minus_a * &c;
            assert_eq!(lhs, identity);
        }
    }

    fn curve_strategy(n: usize) -> impl Strategy<Value = Vec<(usize, u32)>> {
        prop::collection::vec((0..n, 1_u32..=3), 1..=3)
    }

    fn to_curve(g: &DualGraph, coeff: Rat, hits: &[(usize, u32)]) -> CurveGerm {
        let mut incidence: BTreeMap<String, u32> = BTreeMap::new();
        for &(v, k) in hits {
            *incidence.entry(g.label(v).to_string()).or_insert(0) += k;
        }
        CurveGerm::new(coeff, incidence)
    }

    proptest! {
        #[test]
        fn excess_is_nonnegative(
            (g, hits) in graph_strategy(7, 9).prop_flat_map(|g| {
                let n = g.vertex_count();
                (Just(g), curve_strategy(n))
            })
        ) {
            let m = IntersectionMatrix::of(&g);
            prop_assume!(m.is_negative_definite());
            let c = to_curve(&g, int(1), &hits);
            let e = pullback_excess(&g, &c).unwrap();
            prop_assert!(e.is_effective());
            // With nonzero incidence the excess is strictly positive
            // everywhere (connectedness).
            prop_assert!(e.coeffs().iter().all(|v| *v > Rat::zero()));
        }

        #[test]
        fn excess_is_linear(
            (g, h1, h2) in graph_strategy(6, 8).prop_flat_map(|g| {
                let n = g.vertex_count();
                (Just(g), curve_strategy(n), curve_strategy(n))
            })
        ) {
            let m = IntersectionMatrix::of(&g);
            prop_assume!(m.is_negative_definite());
            let c1 = to_curve(&g, rat(1, 3), &h1);
            let c2 = to_curve(&g, rat(2, 5), &h2);
            let both = BoundaryData::new(vec![c1.clone(), c2.clone()]);
            let sum = boundary_excess(&g, &both).unwrap();
            let e1 = pullback_excess(&g, &c1).unwrap().scale(&c1.coefficient);
            let e2 = pullback_excess(&g, &c2).unwrap().scale(&c2.coefficient);
            prop_assert_eq!(sum, e1.add(&e2));
        }

        #[test]
        fn mu_scales_linearly(
            (g, hits) in graph_strategy(6, 8).prop_flat_map(|g| {
                let n = g.vertex_count();
                (Just(g), curve_strategy(n))
            }),
            num in 1_i64..=4,
        ) {
            let m = IntersectionMatrix::of(&g);
            prop_assume!(m.is_negative_definite());
            let kind = cycles::classify(&g).unwrap();
            prop_assume!(!matches!(kind.class, cycles::GermClass::NotLogTerminal));
            let t = rat(num, 4);
            let base = BoundaryData::new(vec![to_curve(&g, rat(1, 2), &hits)]);
            let scaled = BoundaryData::new(
                base.curves
                    .iter()
                    .map(|c| CurveGerm::new(&c.coefficient * &t, c.incidence.clone()))
                    .collect(),
            );
            prop_assert_eq!(mu(&g, &scaled).unwrap(), t * mu(&g, &base).unwrap());
        }
    }
}
