//! Harmonic-integral representations of two classical counting problems.
//!
//! The number of non-negative solutions of `n_1 + ... + n_s = N` (Bose
//! states) and the number of partitions `p_s` of an integer `s` can both be
//! written as integrals over `[0, pi/2]` of products of Dirichlet kernels
//! `sin((N+1)x)/sin x` modulated by a single cosine. This crate evaluates
//! those integrals along two independent routes:
//!
//! - [`exact`]: expands the integrand as a finite trigonometric polynomial
//!   with arbitrary-precision integer coefficients ([`fourier`]) and reads the
//!   integral off the constant Fourier coefficient.
//! - [`quadrature`]: samples the integrand pointwise ([`kernels`]) and
//!   integrates it in floating point.
//!
//! Both are checked against classical combinatorial [`oracles`], and the
//! telescoping sums behind the representations are spot-checked in
//! [`identities`]. The [`cli`] module backs the `harmonia` binary.

pub mod cli;
pub mod compensated;
pub mod error;
pub mod exact;
pub mod fourier;
pub mod identities;
pub mod kernels;
pub mod oracles;
pub mod quadrature;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use exact::{bose_exact, bose_special_exact, mu, partition_exact, ExactResult, Quantity};
pub use fourier::{CosineModulated, SymmetricTrigPoly};
pub use kernels::{BoseForm, KernelSpec, PartitionForm};
pub use quadrature::{QuadratureRule, RuleFamily};
