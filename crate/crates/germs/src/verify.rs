//! Bulk verification sweeps: replayable random comparisons of every closed
//! form against the exact solver, plus the boundary-invariant bounds.
//!
//! Each suite runs a fixed list of named checks over seeded random
//! instances and reports per-check case and failure counts with the first
//! failing instance described, so a regression is immediately replayable.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::boundary;
use crate::continuants::{
    an_aci, an_discrepancy_closed, an_inverse_entry_closed, continuant_a, continuant_d, dn_closed,
};
use crate::cycles::{self, GermClass};
use crate::dualgraph::{DualGraph, IntersectionMatrix};
use crate::rat::{int, rat, Rat};
use crate::sample;

/// One named check's tally across all trials.
#[derive(Debug, Clone)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    /// Description of the first failing instance, for replay.
    pub first_failure: Option<String>,
}

impl SuiteCheck {
    fn new(name: &'static str) -> Self {
        SuiteCheck { name, cases: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub trials: u64,
    pub seed: u64,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn total_failures(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn check(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Columns of the inverse intersection matrix, by unit-vector solves.
fn inverse_columns(m: &IntersectionMatrix, n: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|j| {
            let mut e = alloc::vec![Rat::zero(); n];
            e[j] = Rat::one();
            m.solve(&e).expect("negative definite matrices are invertible")
        })
        .collect()
}

/// Continuant identities and the chain/fork closed forms against the
/// solver, on random chains (length <= 12) and forks (chain part <= 8),
/// weights 2..=10.
pub fn continuants_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut r = sample::rng(seed);
    let mut chain_det = SuiteCheck::new("chain determinant equals the chain continuant");
    let mut fork_det = SuiteCheck::new("fork determinant equals the fork continuant");
    let mut fork_identity =
        SuiteCheck::new("fork continuant equals -4 times the weight-1-extended chain continuant");
    let mut signs = SuiteCheck::new("continuants alternate in sign with length");
    let mut inv = SuiteCheck::new("closed inverse entries match the solver");
    let mut disc = SuiteCheck::new("closed chain discrepancies match the solver");
    let mut aci = SuiteCheck::new("closed chain a_i + c_ii match the solver");
    let mut aci_bounds =
        SuiteCheck::new("interior a_i + c_ii reach 1; endpoints equal 1 - 1/|det|");
    let mut fork_closed = SuiteCheck::new("closed fork discrepancies and a_i + c_ii match the solver");
    let mut fork_bound = SuiteCheck::new("fork a_i + c_ii reach 1");

    let one = int(1);
    for _ in 0..trials {
        // Chain part.
        let w = sample::chain_weights(&mut r, 12);
        let n = w.len();
        let g = DualGraph::chain(&w).expect("nonempty chains are valid");
        let m = IntersectionMatrix::of(&g);

        chain_det.record(m.det() == continuant_a(&w), || format!("chain {w:?}"));

        let mut extended = w.clone();
        extended.push(1);
        fork_identity.record(
            continuant_d(&w) == continuant_a(&extended) * -4,
            || format!("chain {w:?}"),
        );

        let sign_ok = (1..=n).all(|k| {
            let a = continuant_a(&w[..k]);
            if k % 2 == 0 { a > Zero::zero() } else { a < Zero::zero() }
        });
        signs.record(sign_ok, || format!("chain {w:?}"));

        let cols = inverse_columns(&m, n);
        let a = cycles::discrepancy_cycle(&g).expect("chains are negative definite");

        let inv_bad = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .find(|&(i, j)| an_inverse_entry_closed(&w, i, j) != cols[j - 1][i - 1]);
        inv.record(inv_bad.is_none(), || format!("chain {w:?} at {inv_bad:?}"));

        let disc_bad = (1..=n).find(|&i| an_discrepancy_closed(&w, i) != *a.coeff(i - 1));
        disc.record(disc_bad.is_none(), || format!("chain {w:?} at {disc_bad:?}"));

        let solver_aci: Vec<Rat> = (0..n).map(|i| a.coeff(i) - &cols[i][i]).collect();
        let aci_bad = (1..=n).find(|&i| an_aci(&w, i) != solver_aci[i - 1]);
        aci.record(aci_bad.is_none(), || format!("chain {w:?} at {aci_bad:?}"));

        let endpoint = &one - Rat::from_integer(m.det()).recip().abs();
        let bounds_ok = (0..n).all(|i| {
            if i == 0 || i == n - 1 {
                solver_aci[i] == endpoint
            } else {
                solver_aci[i] >= one
            }
        });
        aci_bounds.record(bounds_ok, || format!("chain {w:?} aci {solver_aci:?}"));

        // Fork part.
        let wf = sample::fork_chain_weights(&mut r, 2, 8);
        let k = wf.len();
        let gf = DualGraph::d_shape(&wf).expect("nonempty forks are valid");
        let mf = IntersectionMatrix::of(&gf);

        fork_det.record(mf.det() == continuant_d(&wf), || format!("fork {wf:?}"));

        let colsf = inverse_columns(&mf, k + 2);
        let af = cycles::discrepancy_cycle(&gf).expect("forks are negative definite");
        let mut closed_ok = true;
        let mut bound_ok = true;
        for i in 1..=k + 2 {
            let (ca, caci) = dn_closed(&wf, i);
            let sa = af.coeff(i - 1).clone();
            let saci = &sa - &colsf[i - 1][i - 1];
            if ca != sa || caci != saci {
                closed_ok = false;
            }
            if saci < one {
                bound_ok = false;
            }
        }
        fork_closed.record(closed_ok, || format!("fork {wf:?}"));
        fork_bound.record(bound_ok, || format!("fork {wf:?}"));
    }

    SuiteReport {
        suite: "continuants",
        trials,
        seed,
        checks: alloc::vec![
            chain_det,
            fork_det,
            fork_identity,
            signs,
            inv,
            disc,
            aci,
            aci_bounds,
            fork_closed,
            fork_bound,
        ],
    }
}

/// The boundary-invariant bounds on random quasi-log-terminal pairs and
/// constructed integral instances: mu < 1, the delta trichotomy, the chain
/// delta identity, and the c <= 1/2 bound.
pub fn lemmas_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut r = sample::rng(seed);
    let mut mu_bound = SuiteCheck::new("mu stays below 1 on quasi-log-terminal pairs");
    let mut delta_smooth = SuiteCheck::new("delta equals 4 at a smooth center");
    let mut delta_rdp = SuiteCheck::new("delta equals 2 exactly at rational double points");
    let mut delta_range = SuiteCheck::new("delta lies in (0, 2) at other singular germs");
    let mut delta_chain = SuiteCheck::new("chain delta equals 2 - a_first - a_last");
    let mut integral = SuiteCheck::new("constructed d' + a + b' cycles are integral");
    let mut c_bound = SuiteCheck::new("the constant c never exceeds 1/2 on integral instances");
    let mut c_consequence = SuiteCheck::new("b_i + c d_i stays at most 1 on each d_y curve");

    let half = rat(1, 2);
    let one = int(1);
    let two = int(2);
    for _ in 0..trials {
        let g = sample::random_shape(&mut r);
        let b = sample::random_qlt_boundary(&mut r, &g);
        let analysis = cycles::analyze(&g).expect("generated shapes are negative definite");

        let mu = boundary::mu(&g, &b).expect("log-terminal germs bound mu");
        mu_bound.record(mu < one, || format!("weights {:?} mu {mu}", g.weights()));

        let delta = cycles::delta_invariant(&g, &b).expect("generated boundaries are valid");
        match analysis.kind.class {
            GermClass::Smooth => {
                delta_smooth.record(delta == int(4), || format!("delta {delta}"));
            }
            _ if analysis.kind.rational_double_point => {
                delta_rdp.record(delta == two, || format!("weights {:?} delta {delta}", g.weights()));
            }
            _ => {
                delta_range.record(delta > Rat::zero() && delta < two, || {
                    format!("weights {:?} delta {delta}", g.weights())
                });
            }
        }
        if matches!(analysis.kind.class, GermClass::Smooth | GermClass::An { .. }) {
            let a = &analysis.discrepancy;
            let n = g.vertex_count();
            delta_chain.record(
                analysis.delta == &two - a.coeff(0) - a.coeff(n - 1),
                || format!("weights {:?}", g.weights()),
            );
        }

        let inst = sample::lemma3_instance(&mut r);
        let l3 = boundary::lemma3_constant(&inst.graph, &inst.b_y, &inst.d_y, &inst.analysis)
            .expect("generated instances have a nonempty d_y");
        integral.record(l3.cartier_integral, || format!("weights {:?}", inst.graph.weights()));
        c_bound.record(l3.constant <= half, || {
            format!("weights {:?} c {}", inst.graph.weights(), l3.constant)
        });
        let consequence_ok = inst.d_y.curves.iter().all(|curve| {
            let matching: Rat = inst
                .b_y
                .curves
                .iter()
                .filter(|bc| bc.incidence == curve.incidence)
                .map(|bc| bc.coefficient.clone())
                .sum();
            matching + &l3.constant * &curve.coefficient <= one
        });
        c_consequence.record(consequence_ok, || format!("weights {:?}", inst.graph.weights()));
    }

    SuiteReport {
        suite: "lemmas",
        trials,
        seed,
        checks: alloc::vec![
            mu_bound,
            delta_smooth,
            delta_rdp,
            delta_range,
            delta_chain,
            integral,
            c_bound,
            c_consequence,
        ],
    }
}
