//! Numerical spot-checks of the telescoping sums and orthogonality relations
//! that turn the delta sums into kernel integrals.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::compensated::{compensated_sum, NeumaierSum};
use crate::error::{Error, Result};
use crate::exact::{partition_phase, Params, Quantity};
use crate::kernels::dirichlet_eval;
use crate::quadrature::{QuadratureRule, RuleFamily};

/// Largest `s` accepted by [`check_chain`].
pub const MAX_CHAIN_S: u64 = 6;
/// Largest literal nested-sum size accepted by [`check_chain`].
pub const MAX_CHAIN_TERMS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Sin,
    Cos,
}

impl Trig {
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Trig::Sin => x.sin(),
            Trig::Cos => x.cos(),
        }
    }
}

impl fmt::Display for Trig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trig::Sin => "sin",
            Trig::Cos => "cos",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityId {
    SumSin,
    SumCos,
    ChainSin,
    ChainCos,
    OrthSin,
    OrthCos,
}

impl IdentityId {
    fn sum(trig: Trig) -> Self {
        match trig {
            Trig::Sin => IdentityId::SumSin,
            Trig::Cos => IdentityId::SumCos,
        }
    }

    fn chain(trig: Trig) -> Self {
        match trig {
            Trig::Sin => IdentityId::ChainSin,
            Trig::Cos => IdentityId::ChainCos,
        }
    }

    fn orth(trig: Trig) -> Self {
        match trig {
            Trig::Sin => IdentityId::OrthSin,
            Trig::Cos => IdentityId::OrthCos,
        }
    }
}

/// Parameters of one identity check; unused fields stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IdentityParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantity: Option<Quantity>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub identity_id: IdentityId,
    pub params: IdentityParams,
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / max(|rhs|, 1)`.
    pub rel_err: f64,
}

impl IdentityCase {
    fn new(identity_id: IdentityId, params: IdentityParams, lhs: f64, rhs: f64) -> Self {
        Self {
            identity_id,
            params,
            lhs,
            rhs,
            rel_err: (lhs - rhs).abs() / rhs.abs().max(1.0),
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.rel_err <= tol
    }
}

/// Distance from `y` to the nearest multiple of `pi`.
fn distance_to_sine_zero(y: f64) -> f64 {
    let r = y.rem_euclid(PI);
    r.min(PI - r)
}

/// `sum_{n=0}^{M} trig(2knx + phi)` against
/// `[sin(k(M+1)x)/sin(kx)] trig(kMx + phi)`.
pub fn check_sum_lemma(trig: Trig, m: u64, k: u64, phi: f64, x: f64) -> Result<IdentityCase> {
    if m < 1 || k < 1 {
        return Err(Error::InvalidArgument("M and k must be at least 1".into()));
    }
    if distance_to_sine_zero(k as f64 * x) < 1e-6 {
        return Err(Error::Domain(format!("x = {x} is within 1e-6 of a zero of sin({k}x)")));
    }
    let kf = k as f64;
    let lhs = compensated_sum((0..=m).map(|n| trig.apply(2.0 * kf * n as f64 * x + phi)));
    let rhs = dirichlet_eval(m, kf * x) * trig.apply(kf * m as f64 * x + phi);
    let params = IdentityParams {
        order: Some(m),
        step: Some(k),
        phase: Some(phi),
        x: Some(x),
        ..Default::default()
    };
    Ok(IdentityCase::new(IdentityId::sum(trig), params, lhs, rhs))
}

/// Range bound, index weights and closed-form phase of a full chain.
fn chain_shape(quantity: Quantity, params: Params) -> Result<(u64, Vec<u64>, u64)> {
    let s = params.s;
    if s < 1 {
        return Err(Error::Domain("s must be at least 1".into()));
    }
    match quantity {
        Quantity::Bose => {
            let n = params
                .n
                .ok_or_else(|| Error::InvalidArgument("Bose chain needs N".into()))?;
            Ok((n, vec![1; s as usize], n * s))
        }
        Quantity::Partition => Ok((s, (1..=s).collect(), partition_phase(s))),
    }
}

/// Literal nested sum of `trig(2x * sum_i w_i n_i)` over `0 <= n_i <= bound`
/// against the kernel product times `trig(phase x)`.
pub fn check_chain(trig: Trig, quantity: Quantity, params: Params, x: f64) -> Result<IdentityCase> {
    let (bound, weights, phase) = chain_shape(quantity, params)?;
    let dims = weights.len() as u32;
    let terms = (bound + 1).checked_pow(dims);
    if params.s > MAX_CHAIN_S || terms.is_none_or(|t| t > MAX_CHAIN_TERMS) {
        return Err(Error::BudgetExceeded {
            budget: MAX_CHAIN_TERMS,
        });
    }

    let mut lhs = NeumaierSum::new();
    let mut index = vec![0u64; weights.len()];
    for _ in 0..terms.unwrap_or(0) {
        let weighted: u64 = index.iter().zip(&weights).map(|(n, w)| n * w).sum();
        lhs.add(trig.apply(2.0 * weighted as f64 * x));
        for digit in index.iter_mut() {
            if *digit == bound {
                *digit = 0;
            } else {
                *digit += 1;
                break;
            }
        }
    }

    let kernel: f64 = weights
        .iter()
        .map(|&w| dirichlet_eval(bound, w as f64 * x))
        .product();
    let rhs = kernel * trig.apply(phase as f64 * x);
    let case_params = IdentityParams {
        quantity: Some(quantity),
        order: params.n,
        s: Some(params.s),
        x: Some(x),
        ..Default::default()
    };
    Ok(IdentityCase::new(IdentityId::chain(trig), case_params, lhs.value(), rhs))
}

/// Closed form of a chain built one sum at a time: each inner sum over `n_i`
/// contributes the factor `D_bound(w_i x)` and advances the phase by
/// `w_i * bound * x`.
pub fn chain_by_iterated_lemma(trig: Trig, quantity: Quantity, params: Params, x: f64) -> Result<f64> {
    let (bound, weights, _) = chain_shape(quantity, params)?;
    let mut factor = 1.0;
    let mut phase = 0.0;
    for &w in &weights {
        factor *= dirichlet_eval(bound, w as f64 * x);
        phase += (w * bound) as f64 * x;
    }
    Ok(factor * trig.apply(phase))
}

/// `(2/pi) integral_0^pi trig(mx) trig(nx) dx` by the periodic trapezoid rule
/// after `x -> 2y`, against the Kronecker delta (2 for `cos` at `m = n = 0`).
pub fn check_orthogonality(trig: Trig, m: u64, n: u64, nodes: usize) -> Result<IdentityCase> {
    if trig == Trig::Sin && (m == 0 || n == 0) {
        return Err(Error::Domain("sine orthogonality needs m, n >= 1".into()));
    }
    let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, nodes)?;
    let (mf, nf) = (m as f64, n as f64);
    let lhs = 4.0 / PI * rule.integrate(|y| trig.apply(2.0 * mf * y) * trig.apply(2.0 * nf * y));
    let rhs = match (trig, m == n) {
        (_, false) => 0.0,
        (Trig::Cos, true) if m == 0 => 2.0,
        (_, true) => 1.0,
    };
    let params = IdentityParams {
        m: Some(m),
        n: Some(n),
        nodes: Some(nodes),
        ..Default::default()
    };
    Ok(IdentityCase::new(IdentityId::orth(trig), params, lhs, rhs))
}

/// Seeded random draws of the sum lemma with `M <= 50`, `k <= 10`,
/// `phi in [0, 2pi)` and `x in (0, pi/2)` away from zeros of `sin(kx)`.
pub fn random_sum_lemma_cases(seed: u64, count: usize) -> Vec<IdentityCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    while cases.len() < count {
        let trig = if rng.gen_bool(0.5) { Trig::Sin } else { Trig::Cos };
        let m = rng.gen_range(1..=50);
        let k = rng.gen_range(1..=10);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let x = rng.gen_range(0.0..FRAC_PI_2);
        if let Ok(case) = check_sum_lemma(trig, m, k, phi, x) {
            cases.push(case);
        }
    }
    cases
}

/// Full chains for `N, s <= 6` (Bose) and `s <= 6` (partitions) at seeded
/// sample points, both trig functions.
pub fn chain_grid_cases(seed: u64) -> Result<Vec<IdentityCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c4a1);
    let mut cases = Vec::new();
    for trig in [Trig::Sin, Trig::Cos] {
        for n in 1..=6 {
            for s in 1..=6 {
                let x = rng.gen_range(0.0..FRAC_PI_2);
                cases.push(check_chain(trig, Quantity::Bose, Params::bose(n, s), x)?);
            }
        }
        for s in 1..=6 {
            let x = rng.gen_range(0.0..FRAC_PI_2);
            cases.push(check_chain(trig, Quantity::Partition, Params::partition(s), x)?);
        }
    }
    Ok(cases)
}

/// Diagonal and off-diagonal orthogonality cases with `m, n <= 8`.
pub fn orthogonality_grid_cases() -> Result<Vec<IdentityCase>> {
    let mut cases = Vec::new();
    for trig in [Trig::Sin, Trig::Cos] {
        let lo = if trig == Trig::Sin { 1 } else { 0 };
        for m in lo..=8 {
            for n in lo..=8 {
                cases.push(check_orthogonality(trig, m, n, 16)?);
            }
        }
    }
    Ok(cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn sum_lemma_examples() {
        let c = check_sum_lemma(Trig::Sin, 1, 1, 0.0, FRAC_PI_4).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-15 && (c.rhs - 1.0).abs() < 1e-15);
        let c = check_sum_lemma(Trig::Cos, 1, 1, 0.0, FRAC_PI_4).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-15 && (c.rhs - 1.0).abs() < 1e-15);
        let c = check_sum_lemma(Trig::Sin, 5, 3, 0.7, 0.4).unwrap();
        assert!(c.rel_err <= 1e-10);
        assert_eq!(c.identity_id, IdentityId::SumSin);
    }

    #[test]
    fn sum_lemma_rejects_kernel_zeros() {
        assert!(matches!(
            check_sum_lemma(Trig::Sin, 3, 2, 0.0, FRAC_PI_2),
            Err(Error::Domain(_))
        ));
        assert!(check_sum_lemma(Trig::Cos, 3, 1, 0.0, 0.0).is_err());
        assert!(check_sum_lemma(Trig::Cos, 0, 1, 0.0, 0.3).is_err());
    }

    #[test]
    fn chain_examples() {
        let c = check_chain(Trig::Sin, Quantity::Bose, Params::bose(1, 2), 0.3).unwrap();
        assert!(c.rel_err <= 1e-12);
        let c = check_chain(Trig::Cos, Quantity::Partition, Params::partition(3), 0.25).unwrap();
        assert!(c.rel_err <= 1e-11);
        for &x in &[0.1, 0.6, 1.2] {
            let chain = check_chain(Trig::Sin, Quantity::Partition, Params::partition(1), x).unwrap();
            let single = check_sum_lemma(Trig::Sin, 1, 1, 0.0, x).unwrap();
            assert!((chain.lhs - single.lhs).abs() < 1e-15);
            assert!((chain.rhs - single.rhs).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_budget() {
        assert!(matches!(
            check_chain(Trig::Sin, Quantity::Partition, Params::partition(7), 0.3),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(check_chain(Trig::Sin, Quantity::Bose, Params::bose(30, 6), 0.3).is_err());
        assert!(check_chain(Trig::Sin, Quantity::Bose, Params::partition(3), 0.3).is_err());
    }

    #[test]
    fn chain_matches_iterated_lemma() {
        for trig in [Trig::Sin, Trig::Cos] {
            for s in 1..=6 {
                for &x in &[0.05, 0.4, 1.1] {
                    let p = Params::partition(s);
                    let direct = check_chain(trig, Quantity::Partition, p, x).unwrap().rhs;
                    let iterated = chain_by_iterated_lemma(trig, Quantity::Partition, p, x).unwrap();
                    assert!((direct - iterated).abs() <= 1e-9 * direct.abs().max(1.0));
                    let p = Params::bose(s, 3);
                    let direct = check_chain(trig, Quantity::Bose, p, x).unwrap().rhs;
                    let iterated = chain_by_iterated_lemma(trig, Quantity::Bose, p, x).unwrap();
                    assert!((direct - iterated).abs() <= 1e-9 * direct.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        let c = check_orthogonality(Trig::Sin, 3, 3, 16).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-10);
        let c = check_orthogonality(Trig::Cos, 2, 5, 16).unwrap();
        assert!(c.lhs.abs() < 1e-10);
        let c = check_orthogonality(Trig::Cos, 0, 0, 4).unwrap();
        assert_eq!(c.rhs, 2.0);
        assert!((c.lhs - 2.0).abs() < 1e-10);
        assert!(check_orthogonality(Trig::Sin, 0, 2, 16).is_err());
    }

    #[test]
    fn random_suite_passes_and_replays() {
        let a = random_sum_lemma_cases(42, 200);
        assert_eq!(a.len(), 200);
        assert!(a.iter().all(|c| c.passes(1e-9)), "{:?}", a.iter().find(|c| !c.passes(1e-9)));
        assert_eq!(a, random_sum_lemma_cases(42, 200));
        assert_ne!(a, random_sum_lemma_cases(43, 200));
    }

    #[test]
    fn grids_pass() {
        assert!(chain_grid_cases(7).unwrap().iter().all(|c| c.passes(1e-9)));
        assert!(orthogonality_grid_cases().unwrap().iter().all(|c| c.rel_err <= 1e-10));
    }
}
