//! Exact invariants of normal surface singularity germs.
//!
//! A germ enters as the weighted dual graph of its minimal resolution:
//! vertices are the exceptional curves (weight = minus self-intersection),
//! edges their pairwise intersections.  From that graph the crate computes,
//! in exact rational arithmetic throughout:
//!
//! * the fundamental cycle and the discrepancy cycle,
//! * the delta invariant and arithmetic genus,
//! * the chain / fork / star classification of log-terminal germs,
//! * multiplicity bounds `mu` for divisors through the point,
//! * sufficient criteria for an adjoint linear system to be free at the
//!   point,
//!
//! together with seeded verification sweeps that check the closed-form
//! chain and fork formulas and the built-in star value table against the
//! exact solver.
//!
//! The crate is `no_std` (it needs only `alloc`); all I/O lives in the
//! companion CLI crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boundary;
pub mod continuants;
pub mod cycles;
pub mod dualgraph;
mod error;
pub mod etypes;
pub mod freeness;
pub mod rat;
pub mod sample;
#[cfg(test)]
mod testutil;
pub mod verify;

pub use dualgraph::{Cycle, DualGraph, IntersectionMatrix};
pub use error::Error;
pub use rat::Rat;
