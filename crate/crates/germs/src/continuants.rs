//! Closed forms for chains and fork graphs via continuants.
//!
//! `a(w_1,..,w_k)` is the determinant of the chain intersection matrix with
//! weights `w_1..w_k` (a signed continuant, three-term recurrence), and
//! `d(w_1,..,w_k)` is the determinant of the fork graph on `k + 2` vertices
//! whose chain carries those weights and whose last chain vertex carries two
//! extra weight-2 leaves.  Everything downstream — inverse entries,
//! discrepancies, and the per-vertex `a_i + c_{i,i}` values — is a ratio of
//! continuants, so all functions here are exact.
//!
//! Indices are 1-based throughout this module, matching the usual notation
//! for chain vertices `1..n`; slices of the weight list translate them to
//! 0-based internally.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::{int, Rat};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Chain determinant `a(w_1,..,w_k)` by the three-term recurrence
/// `a(..,w_j) = -w_j a(..,w_{j-1}) - a(..,w_{j-2})`, with `a() = 1`.
pub fn continuant_a(w: &[u32]) -> BigInt {
    // (a of the prefix two steps back, a of the prefix one step back)
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for &wj in w {
        let next = -big(i64::from(wj)) * &cur - &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// Fork-graph determinant `d(w_1,..,w_k)` (chain plus two weight-2 leaves on
/// the last chain vertex), by the back-to-front recurrence
/// `d(w_i,..) = -w_i d(w_{i+1},..) - d(w_{i+2},..)` seeded with `d() = 4`
/// and the formal value `-4` one step past the end.
pub fn continuant_d(w: &[u32]) -> BigInt {
    let mut after = -big(4);
    let mut cur = big(4);
    for &wi in w.iter().rev() {
        let next = -big(i64::from(wi)) * &cur - &after;
        after = core::mem::replace(&mut cur, next);
    }
    cur
}

/// `|a(w)| = (-1)^k a(w)`, positive for weights ≥ 2.
pub fn abs_a(w: &[u32]) -> BigInt {
    let a = continuant_a(w);
    if w.len() % 2 == 0 {
        a
    } else {
        -a
    }
}

/// `|d(w)| = (-1)^k d(w)`, positive for weights ≥ 2.
pub fn abs_d(w: &[u32]) -> BigInt {
    let d = continuant_d(w);
    if w.len() % 2 == 0 {
        d
    } else {
        -d
    }
}

fn ratio(num: BigInt, den: BigInt) -> Rat {
    Rat::new(num, den)
}

/// Closed form for the inverse chain matrix entry at (i, j), 1-based:
/// `(-1)^{i+j} a(w_1..w_{j-1}) a(w_{i+1}..w_n) / a(w)` for `j ≤ i`, and the
/// transposed expression for `j > i` (the two branches agree at `j = i`).
pub fn an_inverse_entry_closed(w: &[u32], i: usize, j: usize) -> Rat {
    let n = w.len();
    assert!(1 <= i && i <= n && 1 <= j && j <= n, "indices are 1-based");
    let det = continuant_a(w);
    let (lo, hi) = if j <= i { (j, i) } else { (i, j) };
    let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    ratio(sign * continuant_a(&w[..lo - 1]) * continuant_a(&w[hi..]), det)
}

/// Closed form for the chain discrepancy coefficient:
/// `a_i = 1 + [(-1)^{i+1} a(w_{i+1}..w_n) + (-1)^{i+n} a(w_1..w_{i-1})] / a(w)`.
pub fn an_discrepancy_closed(w: &[u32], i: usize) -> Rat {
    let n = w.len();
    assert!(1 <= i && i <= n, "index is 1-based");
    let det = continuant_a(w);
    let mut suffix = continuant_a(&w[i..]);
    if i % 2 == 0 {
        suffix = -suffix;
    }
    let mut prefix = continuant_a(&w[..i - 1]);
    if (i + n) % 2 == 1 {
        prefix = -prefix;
    }
    int(1) + ratio(suffix + prefix, det)
}

/// Closed form for `a_i + c_{i,i}` on a chain, where `c_{i,i}` is the
/// coefficient at vertex i of the pullback of a transversal curve meeting
/// only vertex i:
/// `1 + [(|a(w_1..w_{i-1})| - 1)(|a(w_{i+1}..w_n)| - 1) - 1] / |a(w)|`.
pub fn an_aci(w: &[u32], i: usize) -> Rat {
    let n = w.len();
    assert!(1 <= i && i <= n, "index is 1-based");
    let one = BigInt::one();
    let num = (abs_a(&w[..i - 1]) - &one) * (abs_a(&w[i..]) - &one) - &one;
    int(1) + ratio(num, abs_a(w))
}

/// Closed forms `(a_i, a_i + c_{i,i})` on the fork graph whose chain carries
/// `w` (k = w.len() ≥ 1, total n = k + 2 vertices).  `i` ranges over chain
/// vertices 1..=k or the two forks k+1, k+2 (symmetric).
pub fn dn_closed(w: &[u32], i: usize) -> (Rat, Rat) {
    let k = w.len();
    assert!(k >= 1, "fork graphs need a nonempty chain");
    assert!(1 <= i && i <= k + 2, "index is 1-based");
    let det = abs_d(w);
    let one = BigInt::one();
    if i <= k {
        let tail = abs_d(&w[i..]);
        let a = int(1) - ratio(tail.clone(), det.clone());
        let aci = int(1) + ratio(tail * (abs_a(&w[..i - 1]) - &one), det);
        (a, aci)
    } else {
        let a = crate::rat::rat(1, 2) - ratio(big(2), det.clone());
        let aci = int(1) + ratio(abs_a(&w[..k - 1]) - big(2), det);
        (a, aci)
    }
}
