//! The effective base-point-freeness test for nef divisors on a surface
//! with one normal singular point (or a smooth center).
//!
//! Given the resolution graph, the boundary B through the point, the
//! self-intersection `D^2`, and optionally the smallest degree `D . C` over
//! curves through the point, decide whether `|D|` is base-point free at the
//! point.  The test is one-sided: it either concludes `Free` or reports
//! which hypothesis was not met, never that the system has a base point.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::boundary::{self, BoundaryData};
use crate::cycles::{self, GermClass, GermKind};
use crate::dualgraph::DualGraph;
use crate::error::Error;
use crate::rat::{int, Rat};

/// Input to the freeness test.  `min_dc` is the minimum of `D . C` over
/// compact curves through the point; it is only consulted for chain-type
/// (and unrecognized) germs, so it may be omitted.
#[derive(Debug, Clone)]
pub struct FreenessProblem {
    pub graph: DualGraph,
    pub boundary: BoundaryData,
    pub d_squared: Rat,
    pub min_dc: Option<Rat>,
}

/// What the test concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The linear system is base-point free at the point.
    Free,
    /// The hypotheses were not verified; nothing is asserted either way.
    NotDetermined,
}

/// Which clause of the criterion produced a `Free` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// The pair is not quasi-log-terminal, so only `D^2 > 0` is needed.
    NotQuasiLogTerminal,
    /// The germ is of D- or E-type; no curve-degree bound is required.
    NonChainKind,
    /// Chain-type germ with every curve degree at least the threshold.
    CurveDegrees,
}

/// What blocked a `Free` verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// `D^2` did not exceed `(1 - mu)^2 delta`.
    SquareTooSmall,
    /// The chain-type clause needs `min_dc` and none was supplied.
    MissingMinDC,
    /// Some curve through the point has degree below `(1 - mu) delta / 2`.
    CurveDegreeTooSmall,
}

/// Full record of the decision, including every intermediate invariant so
/// a caller can display the arithmetic behind the verdict.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub basis: Option<Basis>,
    pub obstruction: Option<Obstruction>,
    pub kind: GermKind,
    pub qlt: bool,
    /// `mu(B, y)`; absent only when no vertex bounds it (then the pair is
    /// necessarily not quasi-log-terminal and `mu` plays no role).
    pub mu: Option<Rat>,
    pub delta_y: Rat,
    /// `D^2` must strictly exceed this.
    pub square_threshold: Rat,
    /// Each `D . C` must reach this (chain-type clause only).
    pub degree_threshold: Rat,
    pub d_squared: Rat,
    pub min_dc: Option<Rat>,
    /// The linear system the verdict speaks about.
    pub system: &'static str,
    pub notes: Vec<&'static str>,
}

const NOTE_NEF_PROXY: &str =
    "D^2 > 0 stands in for nefness of D, which is assumed, not checked";
const NOTE_ONE_SIDED: &str =
    "the test is one-sided: NotDetermined does not mean a base point exists";
const NOTE_NOT_BIG: &str =
    "D^2 <= 0 is inconsistent with D nef and big; check the input divisor";

fn decide(
    g: &DualGraph,
    b: &BoundaryData,
    d_squared: Rat,
    min_dc: Option<Rat>,
    system: &'static str,
) -> Result<Verdict, Error> {
    let analysis = cycles::analyze(g)?;
    let qlt = boundary::quasi_log_terminal_check(g, b)?;
    let mu = match boundary::mu(g, b) {
        Ok(v) => Some(v),
        Err(Error::MuUnbounded) => None,
        Err(e) => return Err(e),
    };
    let delta_y = cycles::delta_invariant(g, b)?;

    let mut verdict = Verdict {
        outcome: Outcome::NotDetermined,
        basis: None,
        obstruction: None,
        kind: analysis.kind,
        qlt: qlt.is_qlt,
        mu,
        delta_y: delta_y.clone(),
        square_threshold: Rat::zero(),
        degree_threshold: Rat::zero(),
        d_squared,
        min_dc,
        system,
        notes: alloc::vec![NOTE_NEF_PROXY],
    };
    if verdict.d_squared <= Rat::zero() {
        verdict.notes.push(NOTE_NOT_BIG);
    }

    if !verdict.qlt {
        // Without the quasi-log-terminal hypothesis delta is 0 and the
        // criterion asks only for positivity of the square.
        if verdict.d_squared > Rat::zero() {
            verdict.outcome = Outcome::Free;
            verdict.basis = Some(Basis::NotQuasiLogTerminal);
        } else {
            verdict.obstruction = Some(Obstruction::SquareTooSmall);
            verdict.notes.push(NOTE_ONE_SIDED);
        }
        return Ok(verdict);
    }

    let mu = verdict.mu.clone().expect("quasi-log-terminal pairs bound mu");
    let one = int(1);
    let gap = &one - &mu;
    verdict.square_threshold = &gap * &gap * &delta_y;
    verdict.degree_threshold = gap * &delta_y / int(2);

    if verdict.d_squared <= verdict.square_threshold {
        verdict.obstruction = Some(Obstruction::SquareTooSmall);
        verdict.notes.push(NOTE_ONE_SIDED);
        return Ok(verdict);
    }

    match verdict.kind.class {
        GermClass::Dn { .. } | GermClass::EType { .. } => {
            verdict.outcome = Outcome::Free;
            verdict.basis = Some(Basis::NonChainKind);
        }
        _ => match &verdict.min_dc {
            None => {
                verdict.obstruction = Some(Obstruction::MissingMinDC);
                verdict.notes.push(NOTE_ONE_SIDED);
            }
            Some(dc) if *dc >= verdict.degree_threshold => {
                verdict.outcome = Outcome::Free;
                verdict.basis = Some(Basis::CurveDegrees);
            }
            Some(_) => {
                verdict.obstruction = Some(Obstruction::CurveDegreeTooSmall);
                verdict.notes.push(NOTE_ONE_SIDED);
            }
        },
    }
    Ok(verdict)
}

/// Decide base-point freeness of `|D|` at the point.
pub fn check_freeness(p: &FreenessProblem) -> Result<Verdict, Error> {
    decide(
        &p.graph,
        &p.boundary,
        p.d_squared.clone(),
        p.min_dc.clone(),
        "|D|",
    )
}

/// The adjoint form: freeness of `|K + ceil(D)|` at the point, where
/// `d_rounding = ceil(D) - D` is the boundary made from the rounding
/// defect.  Same arithmetic, different system label.
pub fn check_corollary(
    g: &DualGraph,
    d_rounding: &BoundaryData,
    d_squared: Rat,
    min_dc: Option<Rat>,
) -> Result<Verdict, Error> {
    decide(g, d_rounding, d_squared, min_dc, "|K + ceil(D)|")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::CurveGerm;
    use crate::rat::rat;
    use std::vec;

    fn smooth_problem(d_squared: Rat, min_dc: Option<Rat>) -> FreenessProblem {
        FreenessProblem {
            graph: DualGraph::smooth_point(),
            boundary: BoundaryData::empty(),
            d_squared,
            min_dc,
        }
    }

    #[test]
    fn smooth_point_with_ample_square_and_degree_is_free() {
        let v = check_freeness(&smooth_problem(int(5), Some(int(2)))).unwrap();
        assert_eq!(v.outcome, Outcome::Free);
        assert_eq!(v.basis, Some(Basis::CurveDegrees));
        assert_eq!(v.delta_y, int(4));
        assert_eq!(v.square_threshold, int(4));
        assert_eq!(v.degree_threshold, int(2));
        assert_eq!(v.mu, Some(int(0)));
        assert!(v.qlt);
    }

    #[test]
    fn degree_threshold_is_inclusive_but_square_is_strict() {
        // min_dc exactly at the threshold passes ...
        let v = check_freeness(&smooth_problem(rat(9, 2), Some(int(2)))).unwrap();
        assert_eq!(v.outcome, Outcome::Free);
        // ... while d^2 exactly at its threshold does not.
        let v = check_freeness(&smooth_problem(int(4), Some(int(2)))).unwrap();
        assert_eq!(v.outcome, Outcome::NotDetermined);
        assert_eq!(v.obstruction, Some(Obstruction::SquareTooSmall));
    }

    #[test]
    fn ordinary_double_point_needs_square_above_two() {
        let g = DualGraph::chain(&[2]).unwrap();
        let p = FreenessProblem {
            graph: g,
            boundary: BoundaryData::empty(),
            d_squared: int(2),
            min_dc: Some(int(5)),
        };
        let v = check_freeness(&p).unwrap();
        assert_eq!(v.outcome, Outcome::NotDetermined);
        assert_eq!(v.obstruction, Some(Obstruction::SquareTooSmall));
        assert_eq!(v.delta_y, int(2));
        assert_eq!(v.square_threshold, int(2));

        let p = FreenessProblem { d_squared: rat(201, 100), ..p };
        let v = check_freeness(&p).unwrap();
        assert_eq!(v.outcome, Outcome::Free);
    }

    #[test]
    fn d_type_germ_skips_the_curve_degree_clause() {
        let g = DualGraph::d_shape(&[2, 2]).unwrap();
        let p = FreenessProblem {
            graph: g,
            boundary: BoundaryData::empty(),
            d_squared: rat(5, 2),
            min_dc: None,
        };
        let v = check_freeness(&p).unwrap();
        assert_eq!(v.outcome, Outcome::Free);
        assert_eq!(v.basis, Some(Basis::NonChainKind));
        assert_eq!(v.delta_y, int(2));
        assert!(matches!(v.kind.class, GermClass::Dn { .. }));
    }

    #[test]
    fn chain_germ_without_min_dc_is_not_determined() {
        let g = DualGraph::chain(&[3, 2]).unwrap();
        let p = FreenessProblem {
            graph: g,
            boundary: BoundaryData::empty(),
            d_squared: int(9),
            min_dc: None,
        };
        let v = check_freeness(&p).unwrap();
        assert_eq!(v.outcome, Outcome::NotDetermined);
        assert_eq!(v.obstruction, Some(Obstruction::MissingMinDC));
        assert!(v.notes.contains(&NOTE_ONE_SIDED));
    }

    #[test]
    fn non_log_terminal_germ_needs_only_positive_square() {
        // Four weight-2 leaves on a weight-5 center: the center discrepancy
        // is 1, so no boundary makes the pair quasi-log-terminal.
        let g = DualGraph::new(
            &[("c", 5), ("l1", 2), ("l2", 2), ("l3", 2), ("l4", 2)],
            &[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
        )
        .unwrap();
        let p = FreenessProblem {
            graph: g,
            boundary: BoundaryData::empty(),
            d_squared: rat(1, 10),
            min_dc: None,
        };
        let v = check_freeness(&p).unwrap();
        assert!(!v.qlt);
        assert_eq!(v.delta_y, int(0));
        assert_eq!(v.outcome, Outcome::Free);
        assert_eq!(v.basis, Some(Basis::NotQuasiLogTerminal));
        assert_eq!(v.square_threshold, int(0));

        let p = FreenessProblem { d_squared: int(0), ..p };
        let v = check_freeness(&p).unwrap();
        assert_eq!(v.outcome, Outcome::NotDetermined);
        assert_eq!(v.obstruction, Some(Obstruction::SquareTooSmall));
        assert!(v.notes.contains(&NOTE_NOT_BIG));
    }

    #[test]
    fn boundary_through_the_point_raises_the_thresholds() {
        // A transversal curve with coefficient 1/2 at a smooth point:
        // mu = 1/4, so the thresholds tighten from (4, 2) to (9/4, 3/2).
        let g = DualGraph::smooth_point();
        let b = BoundaryData::new(vec![CurveGerm::through(rat(1, 2), &[("e", 1)])]);
        let p = FreenessProblem {
            graph: g,
            boundary: b,
            d_squared: rat(5, 2),
            min_dc: Some(rat(3, 2)),
        };
        let v = check_freeness(&p).unwrap();
        assert_eq!(v.mu, Some(rat(1, 4)));
        assert_eq!(v.square_threshold, rat(9, 4));
        assert_eq!(v.degree_threshold, rat(3, 2));
        assert_eq!(v.outcome, Outcome::Free);
    }

    #[test]
    fn corollary_uses_the_rounding_boundary_and_adjoint_label() {
        // ceil(D) - D crossing a w=3 singularity with coefficient 1/2:
        // mu = 1/4 and delta = 4/3, so D^2 must exceed 3/4.
        let g = DualGraph::chain(&[3]).unwrap();
        let b = BoundaryData::new(vec![CurveGerm::through(rat(1, 2), &[("1", 1)])]);
        let v = check_corollary(&g, &b, int(1), Some(int(1))).unwrap();
        assert_eq!(v.system, "|K + ceil(D)|");
        assert_eq!(v.mu, Some(rat(1, 4)));
        assert_eq!(v.delta_y, rat(4, 3));
        assert_eq!(v.square_threshold, rat(3, 4));
        assert_eq!(v.degree_threshold, rat(1, 2));
        assert_eq!(v.outcome, Outcome::Free);

        let v = check_corollary(&g, &b, rat(3, 4), Some(int(1))).unwrap();
        assert_eq!(v.outcome, Outcome::NotDetermined);
    }

    #[test]
    fn verdicts_are_monotone_in_square_and_degree() {
        // Once Free, increasing d^2 or min_dc must never lose freeness.
        let g = DualGraph::chain(&[2, 3, 2]).unwrap();
        let b = BoundaryData::new(vec![CurveGerm::through(rat(1, 3), &[("2", 1)])]);
        let n = 12usize;
        let mut free = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = FreenessProblem {
                    graph: g.clone(),
                    boundary: b.clone(),
                    d_squared: int(i as i64) / int(3),
                    min_dc: Some(int(j as i64) / int(4)),
                };
                free[i][j] = check_freeness(&p).unwrap().outcome == Outcome::Free;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if free[i][j] {
                    assert!(i + 1 >= n || free[i + 1][j], "lost freeness raising d^2");
                    assert!(j + 1 >= n || free[i][j + 1], "lost freeness raising min_dc");
                }
            }
        }
        // The grid is wide enough to contain both outcomes.
        assert!(free[n - 1][n - 1] && !free[0][0]);
    }
}
