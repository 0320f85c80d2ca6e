//! Exact evaluation of the harmonic integrals.
//!
//! Every integrand here has only even frequencies, so it has period `pi`
//! and is even; `(2/pi) * integral_0^{pi/2} f` is then its constant Fourier
//! coefficient. Expanding the kernel product exactly and reading off that
//! coefficient evaluates the integral with no rounding at all.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::SymmetricTrigPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    /// `B(N, s)`, solutions of `n_1 + ... + n_s = N`.
    Bose,
    /// `p_s`, solutions of `n_1 + 2 n_2 + ... + s n_s = s`.
    Partition,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Bose => "bose",
            Quantity::Partition => "partition",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Problem parameters: `(N, s)` for Bose counts, `s` alone for partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub s: u64,
}

impl Params {
    pub fn bose(n: u64, s: u64) -> Self {
        Self { n: Some(n), s }
    }

    pub fn partition(s: u64) -> Self {
        Self { n: None, s }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "N={n} s={}", self.s),
            None => write!(f, "s={}", self.s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub quantity: Quantity,
    pub params: Params,
    pub value: BigInt,
    /// Highest frequency of the expanded integrand.
    pub max_freq: u64,
    /// Number of non-zero terms of the expanded integrand.
    pub term_count: usize,
}

/// Modulation frequency of the partition integrand, `s^2(s+1)/2 - 2s`.
pub fn mu(s: u64) -> i64 {
    partition_phase(s) as i64 - 2 * s as i64
}

/// Accumulated phase `s^2(s+1)/2` of the partition chain.
pub fn partition_phase(s: u64) -> u64 {
    // s^2 (s+1) is always even
    s * s * (s + 1) / 2
}

/// Modulation frequency `(s - 2) N` of the Bose integrand.
pub fn bose_mu(n: u64, s: u64) -> i64 {
    (s as i64 - 2) * n as i64
}

pub fn degree_bound_bose(n: u64, s: u64) -> u64 {
    s * n + s.abs_diff(2) * n
}

pub fn degree_bound_partition(s: u64) -> u64 {
    partition_phase(s) + mu(s).unsigned_abs()
}

/// A kernel product together with its modulating cosine frequency.
#[derive(Debug, Clone)]
pub struct Integrand {
    pub quantity: Quantity,
    pub params: Params,
    pub kernel: SymmetricTrigPoly,
    pub mu: i64,
}

impl Integrand {
    /// `[sin((N+1)x)/sin x]^s` with modulation `cos((s-2)Nx)`.
    pub fn bose(n: u64, s: u64) -> Result<Self> {
        if s < 1 {
            return Err(Error::Domain(format!("s must be at least 1, got {s}")));
        }
        let exp = u32::try_from(s)
            .map_err(|_| Error::InvalidArgument(format!("s = {s} is too large")))?;
        Ok(Self {
            quantity: Quantity::Bose,
            params: Params::bose(n, s),
            kernel: SymmetricTrigPoly::dirichlet(n).pow(exp),
            mu: bose_mu(n, s),
        })
    }

    /// `prod_{k=1}^{s} sin(k(s+1)x)/sin(kx)` with modulation `cos(mu(s) x)`.
    pub fn partition(s: u64) -> Result<Self> {
        if s < 1 {
            return Err(Error::Domain(format!("s must be at least 1, got {s}")));
        }
        let base = SymmetricTrigPoly::dirichlet(s);
        let kernel = (1..=s).fold(SymmetricTrigPoly::one(), |acc, k| {
            acc.multiply(&base.scale_frequency(k))
        });
        Ok(Self {
            quantity: Quantity::Partition,
            params: Params::partition(s),
            kernel,
            mu: mu(s),
        })
    }

    pub fn new(quantity: Quantity, params: Params) -> Result<Self> {
        match quantity {
            Quantity::Bose => {
                let n = params
                    .n
                    .ok_or_else(|| Error::InvalidArgument("Bose count needs N".into()))?;
                Self::bose(n, params.s)
            }
            Quantity::Partition => Self::partition(params.s),
        }
    }

    /// Kernel times `2 cos(mu x)`, expanded without the parity guard.
    pub fn full_expansion(&self) -> SymmetricTrigPoly {
        self.kernel
            .multiply(&SymmetricTrigPoly::double_cosine(self.mu))
    }

    /// True iff the expanded integrand has only even frequencies.
    pub fn parity_ok(&self) -> bool {
        self.full_expansion().all_frequencies_even()
    }

    pub fn degree_bound(&self) -> u64 {
        match self.quantity {
            Quantity::Bose => degree_bound_bose(self.params.n.unwrap_or(0), self.params.s),
            Quantity::Partition => degree_bound_partition(self.params.s),
        }
    }

    /// Constant coefficient of `kernel * cos(mu x)`.
    pub fn evaluate(&self) -> Result<ExactResult> {
        let modulated = self.kernel.mul_by_cos(self.mu)?;
        Ok(ExactResult {
            quantity: self.quantity,
            params: self.params,
            value: modulated.constant_coefficient(),
            max_freq: modulated.max_frequency(),
            term_count: modulated.term_count(),
        })
    }
}

/// `B(N, s)` from the combined cosine representation.
pub fn bose_exact(n: u64, s: u64) -> Result<ExactResult> {
    Integrand::bose(n, s)?.evaluate()
}

/// The diagonal case `N = s`, equal to `(2s-1)! / (s! (s-1)!)`.
pub fn bose_special_exact(s: u64) -> Result<ExactResult> {
    bose_exact(s, s)
}

/// `p_s` from the combined cosine representation.
pub fn partition_exact(s: u64) -> Result<ExactResult> {
    Integrand::partition(s)?.evaluate()
}

/// Expands the integrand and reports whether every frequency is even.
pub fn parity_check(quantity: Quantity, params: Params) -> Result<bool> {
    Ok(Integrand::new(quantity, params)?.parity_ok())
}
