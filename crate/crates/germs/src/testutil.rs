//! Shared proptest strategies for the unit tests.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use proptest::prelude::*;

use crate::dualgraph::DualGraph;

/// Random connected valid graph: a tree built from parent pointers plus up to
/// two extra edges, weights in `2..=wmax`.
pub(crate) fn graph_strategy(max_n: usize, wmax: u32) -> impl Strategy<Value = DualGraph> {
    (1usize..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec(proptest::num::usize::ANY, n.saturating_sub(1)),
            proptest::collection::vec(2u32..=wmax, n),
            proptest::collection::vec(proptest::num::usize::ANY, 0..=2),
        )
            .prop_map(move |(parents, weights, extras)| {
                let vertices: Vec<(String, u32)> = weights
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| ((i + 1).to_string(), w))
                    .collect();
                let mut seen = BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    seen.insert((p % (i + 1), i + 1));
                }
                for e in extras {
                    if n >= 2 {
                        let a = e % n;
                        let b = (e / n) % n;
                        if a != b {
                            seen.insert((a.min(b), a.max(b)));
                        }
                    }
                }
                let edges: Vec<(String, String)> = seen
                    .into_iter()
                    .map(|(a, b)| ((a + 1).to_string(), (b + 1).to_string()))
                    .collect();
                DualGraph::new(&vertices, &edges).unwrap()
            })
    })
}

/// Random chain weights, n in 1..=max_n, weights 2..=10.
pub(crate) fn chain_weights(max_n: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(2u32..=10, 1..=max_n)
}
