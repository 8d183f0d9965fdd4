//! Classical information capacities of small real-vector quantum ensembles.
//!
//! Everything here works on pure states in two or three real dimensions: the
//! planar trine states and their lifted variants. The crate computes the
//! quantities that characterize how much classical information such an
//! ensemble can carry under different measurement models:
//!
//! - accessible information for fixed priors, both in closed form and by
//!   linear programming over discretized projector sets ([`lp`]),
//! - the one-shot capacity obtained by optimizing priors and measurements
//!   ([`c11`]),
//! - rates of two-round adaptive (LOCC) protocols together with a seeded
//!   Monte Carlo validator of their per-signal statistics ([`adaptive`]),
//! - the measurement/refinement-tree upper bound and the two-pure-state
//!   collapse argument ([`tree`]).
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature to build without the standard library. All computations are
//! deterministic: optimizers use fixed pivot and bracketing rules, and the
//! simulator derives one PRNG stream per signal from the root seed.

#![no_std]
#![forbid(unsafe_code)]

#[cfg(any(test, feature = "std"))]
extern crate std;

extern crate alloc;

mod fp;

pub mod adaptive;
pub mod c11;
pub mod ensembles;
pub mod info;
pub mod linalg;
pub mod lp;
pub mod numerics;
pub mod tree;

/// log2(3), the entropy ceiling for a three-letter alphabet.
pub const LOG2_3: f64 = 1.584962500721156;
