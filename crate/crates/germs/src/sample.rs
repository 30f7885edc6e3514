//! Seeded random instances for the verification sweeps: graphs of each
//! recognized family, quasi-log-terminal boundaries, and fully assembled
//! matching-constant scenarios.
//!
//! Everything here is deterministic in the seed, so a reported failure can
//! be replayed exactly.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boundary::{self, BoundaryData, CurveGerm};
use crate::cycles::{self, DiscrepancyResult};
use crate::dualgraph::{DualGraph, IntersectionMatrix};
use crate::etypes::{self, ETypeSpec};
use crate::rat::{int, Rat};

pub type SampleRng = ChaCha8Rng;

/// A fixed, splittable stream cipher RNG so every suite run is replayable.
pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Chain weights: length 1..=max_n, each weight in 2..=10.
pub fn chain_weights(r: &mut SampleRng, max_n: usize) -> Vec<u32> {
    let n = r.gen_range(1..=max_n);
    (0..n).map(|_| r.gen_range(2..=10)).collect()
}

pub fn random_chain(r: &mut SampleRng, max_n: usize) -> DualGraph {
    DualGraph::chain(&chain_weights(r, max_n)).expect("nonempty chains are valid")
}

/// Weights for the chain part of a fork graph (the two weight-2 fork
/// vertices are implicit).  `min_k >= 2` keeps the 3-valent vertex present.
pub fn fork_chain_weights(r: &mut SampleRng, min_k: usize, max_k: usize) -> Vec<u32> {
    let k = r.gen_range(min_k..=max_k);
    (0..k).map(|_| r.gen_range(2..=10)).collect()
}

pub fn random_d_shape(r: &mut SampleRng, min_k: usize, max_k: usize) -> DualGraph {
    DualGraph::d_shape(&fork_chain_weights(r, min_k, max_k)).expect("nonempty forks are valid")
}

/// A uniformly chosen valid (row, m) pair with m in 2..=10.
pub fn random_etype(r: &mut SampleRng) -> ETypeSpec {
    let row = r.gen_range(1..=15u8);
    let m = r.gen_range(2..=10u32);
    ETypeSpec::new(row, m).expect("every row admits all m in 2..=10")
}

/// One of the three singular families, all of which are log-terminal.  One
/// draw in six is an all-2 chain, so double points always show up in a
/// sweep of reasonable size.
pub fn random_singular_shape(r: &mut SampleRng) -> DualGraph {
    match r.gen_range(0..6u8) {
        0 | 1 => random_chain(r, 8),
        2 => {
            let n = r.gen_range(1..=8usize);
            DualGraph::chain(&alloc::vec![2; n]).expect("nonempty chains are valid")
        }
        3 | 4 => random_d_shape(r, 2, 6),
        _ => etypes::build_etype_graph(&random_etype(r)),
    }
}

/// Like `random_singular_shape`, but one draw in eight is a smooth center.
pub fn random_shape(r: &mut SampleRng) -> DualGraph {
    if r.gen_range(0..8u8) == 0 {
        DualGraph::smooth_point()
    } else {
        random_singular_shape(r)
    }
}

/// A boundary making the pair quasi-log-terminal: up to four curves with
/// coefficients p/q (q <= 12) in [0, 1), incidence at one or two spots,
/// coefficients halved together until the pair passes the test.  The caller
/// must supply a log-terminal graph, otherwise no boundary works.
pub fn random_qlt_boundary(r: &mut SampleRng, g: &DualGraph) -> BoundaryData {
    let n = g.vertex_count();
    let count = r.gen_range(0..=4usize);
    let mut curves = Vec::with_capacity(count);
    for _ in 0..count {
        let q = r.gen_range(2..=12i64);
        let p = r.gen_range(0..q);
        let mut incidence: BTreeMap<_, u32> = BTreeMap::new();
        for _ in 0..r.gen_range(1..=2usize) {
            let v = r.gen_range(0..n);
            *incidence.entry(g.label(v).to_string()).or_insert(0) += r.gen_range(1..=2u32);
        }
        curves.push(CurveGerm::new(int(p) / int(q), incidence));
    }
    let mut b = BoundaryData::new(curves);
    for _ in 0..64 {
        let qlt = boundary::quasi_log_terminal_check(g, &b)
            .expect("generated shapes are negative definite");
        if qlt.is_qlt {
            return b;
        }
        let halved = b
            .curves
            .iter()
            .map(|c| CurveGerm::new(&c.coefficient / int(2), c.incidence.clone()))
            .collect();
        b = BoundaryData::new(halved);
    }
    unreachable!("halving reaches quasi-log-terminal on log-terminal graphs")
}

/// A full scenario for the `lemma3_constant` bound: a singular log-terminal
/// germ, a quasi-log-terminal boundary `b_y`, and an auxiliary divisor
/// `d_y` built so that `d' + a + b'` is the integral cycle `t` — the least
/// one `>= 2` everywhere with `A t <= A (a + b')`.
#[derive(Debug, Clone)]
pub struct Lemma3Instance {
    pub graph: DualGraph,
    pub b_y: BoundaryData,
    pub d_y: BoundaryData,
    pub analysis: DiscrepancyResult,
}

pub fn lemma3_instance(r: &mut SampleRng) -> Lemma3Instance {
    let graph = random_singular_shape(r);
    let b_y = random_qlt_boundary(r, &graph);
    let analysis = cycles::analyze(&graph).expect("generated shapes are negative definite");
    let b_excess = boundary::boundary_excess(&graph, &b_y).expect("labels come from the graph");
    let s = analysis.discrepancy.add(&b_excess);
    let m = IntersectionMatrix::of(&graph);
    let cap = m.apply(s.coeffs());
    let n = graph.vertex_count();
    let t = cycles::least_bounded_above(&graph, alloc::vec![BigInt::from(2); n], &cap);
    let t_rat: Vec<Rat> = t.into_iter().map(Rat::from_integer).collect();
    let at = m.apply(&t_rat);
    // d_y: a transversal curvette of coefficient q_j = (A s - A t)_j at
    // each vertex where that is positive.  Since t != s, some q_j > 0.
    let mut curves = Vec::new();
    for j in 0..n {
        let q = &cap[j] - &at[j];
        if q > Rat::zero() {
            curves.push(CurveGerm::through(q, &[(graph.label(j), 1)]));
        }
    }
    Lemma3Instance { graph, b_y, d_y: BoundaryData::new(curves), analysis }
}
