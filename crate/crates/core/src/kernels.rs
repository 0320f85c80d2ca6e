//! Pointwise evaluation of Dirichlet kernels and the full integrands.
//!
//! Kernels are always evaluated through their cosine-sum expansion, so the
//! removable singularities at `y = m pi` need no special casing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};
use crate::exact::{mu, partition_phase};

/// One Dirichlet factor `sin((order+1) y) / sin y` evaluated at `y = multiplier * x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelSpec {
    pub order: u64,
    pub multiplier: u64,
}

impl KernelSpec {
    pub fn new(order: u64, multiplier: u64) -> Result<Self> {
        if multiplier == 0 {
            return Err(Error::InvalidArgument(
                "kernel multiplier must be at least 1".into(),
            ));
        }
        Ok(Self { order, multiplier })
    }

    pub fn eval(&self, x: f64) -> f64 {
        dirichlet_eval(self.order, self.multiplier as f64 * x)
    }
}

/// `sin((N+1) y) / sin y`, finite for every real `y`.
///
/// Uses the even form `sum_{j=0}^{N} cos((N - 2j) y)`, folding the pairs
/// `+-m` into `2 cos(m y)`.
pub fn dirichlet_eval(order: u64, y: f64) -> f64 {
    let mut acc = NeumaierSum::new();
    if order.is_multiple_of(2) {
        acc.add(1.0);
    }
    let mut m = order;
    while m > 0 {
        acc.add(2.0 * (m as f64 * y).cos());
        m = m.saturating_sub(2);
    }
    acc.value()
}

/// Integral forms for the Bose count `B(N, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoseForm {
    /// Sine orthogonality: `sin(2Nx) sin(Nsx)`.
    Sine18,
    /// Cosine orthogonality: `cos(2Nx) cos(Nsx)`.
    Cosine24,
    /// Half the sum of the two: `cos((s-2)Nx) / 2`.
    Combined25,
}

/// Integral forms for the partition number `p_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionForm {
    /// `sin(2sx) sin(s^2(s+1)x/2)`.
    Sine35,
    /// `cos(2sx) cos(s^2(s+1)x/2)`.
    Cosine42,
    /// `cos(mu(s) x) / 2`.
    Combined43,
}

impl BoseForm {
    pub const ALL: [BoseForm; 3] = [BoseForm::Sine18, BoseForm::Cosine24, BoseForm::Combined25];

    pub fn name(self) -> &'static str {
        match self {
            BoseForm::Sine18 => "sine18",
            BoseForm::Cosine24 => "cosine24",
            BoseForm::Combined25 => "combined25",
        }
    }
}

impl PartitionForm {
    pub const ALL: [PartitionForm; 3] = [
        PartitionForm::Sine35,
        PartitionForm::Cosine42,
        PartitionForm::Combined43,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionForm::Sine35 => "sine35",
            PartitionForm::Cosine42 => "cosine42",
            PartitionForm::Combined43 => "combined43",
        }
    }
}

impl fmt::Display for BoseForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for PartitionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoseForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoseForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown Bose form `{s}`")))
    }
}

impl FromStr for PartitionForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PartitionForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown partition form `{s}`")))
    }
}

/// Checks the parameter domain of a Bose integrand. The split forms need
/// `N >= 1`; the combined form also holds at `N = 0`.
pub fn check_bose_domain(n: u64, s: u64, form: BoseForm) -> Result<()> {
    if s < 1 {
        return Err(Error::Domain(format!("s must be at least 1, got {s}")));
    }
    if n < 1 && form != BoseForm::Combined25 {
        return Err(Error::Domain(format!(
            "form {form} requires N >= 1 (sine orthogonality degenerates at N = 0)"
        )));
    }
    Ok(())
}

pub fn check_partition_domain(s: u64) -> Result<()> {
    if s < 1 {
        return Err(Error::Domain(format!("s must be at least 1, got {s}")));
    }
    Ok(())
}

/// Integrand whose `(4/pi) * integral over [0, pi/2]` equals `B(N, s)`.
pub fn integrand_bose(n: u64, s: u64, x: f64, form: BoseForm) -> Result<f64> {
    check_bose_domain(n, s, form)?;
    Ok(bose_integrand_unchecked(n, s, x, form))
}

pub(crate) fn bose_integrand_unchecked(n: u64, s: u64, x: f64, form: BoseForm) -> f64 {
    let kernel = dirichlet_eval(n, x).powi(s as i32);
    let (nf, sf) = (n as f64, s as f64);
    let modulation = match form {
        BoseForm::Sine18 => (2.0 * nf * x).sin() * (nf * sf * x).sin(),
        BoseForm::Cosine24 => (2.0 * nf * x).cos() * (nf * sf * x).cos(),
        BoseForm::Combined25 => 0.5 * ((sf - 2.0) * nf * x).cos(),
    };
    kernel * modulation
}

/// Integrand whose `(4/pi) * integral over [0, pi/2]` equals `p_s`.
pub fn integrand_partition(s: u64, x: f64, form: PartitionForm) -> Result<f64> {
    check_partition_domain(s)?;
    Ok(partition_integrand_unchecked(s, x, form))
}

pub(crate) fn partition_integrand_unchecked(s: u64, x: f64, form: PartitionForm) -> f64 {
    let kernel: f64 = (1..=s)
        .map(|k| dirichlet_eval(s, k as f64 * x))
        .product();
    let sf = s as f64;
    let phase = partition_phase(s) as f64;
    let modulation = match form {
        PartitionForm::Sine35 => (2.0 * sf * x).sin() * (phase * x).sin(),
        PartitionForm::Cosine42 => (2.0 * sf * x).cos() * (phase * x).cos(),
        PartitionForm::Combined43 => 0.5 * (mu(s) as f64 * x).cos(),
    };
    kernel * modulation
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::SymmetricTrigPoly;
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_eval(2, 0.0), 3.0);
        assert!((dirichlet_eval(2, PI) - 3.0).abs() < 1e-12);
        assert!((dirichlet_eval(1, FRAC_PI_4) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(dirichlet_eval(0, 1.234), 1.0);
    }

    #[test]
    fn kernel_spec() {
        let k = KernelSpec::new(3, 2).unwrap();
        assert_eq!(k.eval(0.4), dirichlet_eval(3, 0.8));
        assert!(KernelSpec::new(3, 0).is_err());
    }

    #[test]
    fn bose_integrand_examples() {
        let v = integrand_bose(1, 1, FRAC_PI_4, BoseForm::Combined25).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let v = integrand_bose(1, 2, FRAC_PI_6, BoseForm::Sine18).unwrap();
        assert!((v - 2.25).abs() < 1e-13);
        assert_eq!(integrand_bose(2, 2, 0.0, BoseForm::Sine18).unwrap(), 0.0);
        assert_eq!(integrand_bose(2, 2, 0.0, BoseForm::Cosine24).unwrap(), 9.0);
    }

    #[test]
    fn bose_domain() {
        assert!(matches!(
            integrand_bose(0, 3, 0.1, BoseForm::Sine18),
            Err(Error::Domain(_))
        ));
        assert!(integrand_bose(0, 3, 0.1, BoseForm::Cosine24).is_err());
        assert!(integrand_bose(0, 3, 0.1, BoseForm::Combined25).is_ok());
        assert!(integrand_bose(2, 0, 0.1, BoseForm::Combined25).is_err());
        assert!(integrand_partition(0, 0.1, PartitionForm::Combined43).is_err());
    }

    #[test]
    fn partition_integrand_examples() {
        for &x in &[0.0, 0.3, 1.0, FRAC_PI_2] {
            let v = integrand_partition(1, x, PartitionForm::Combined43).unwrap();
            assert!((v - x.cos().powi(2)).abs() < 1e-15);
        }
        let v = integrand_partition(2, FRAC_PI_4, PartitionForm::Combined43).unwrap();
        assert!(v.abs() < 1e-14);
        for form in PartitionForm::ALL {
            assert!(integrand_partition(3, FRAC_PI_3, form).unwrap().is_finite());
        }
    }

    #[test]
    fn removable_singularity_matches_expansion() {
        let p = (1..=3u64)
            .map(|k| SymmetricTrigPoly::dirichlet(3).scale_frequency(k))
            .fold(SymmetricTrigPoly::one(), |acc, f| acc.multiply(&f));
        let expanded = p.mul_by_cos(mu(3)).unwrap().evaluate(FRAC_PI_3) * 0.5;
        let pointwise = integrand_partition(3, FRAC_PI_3, PartitionForm::Combined43).unwrap();
        assert!((expanded - pointwise).abs() < 1e-9 * expanded.abs().max(1.0));
    }

    #[test]
    fn form_names_round_trip() {
        for f in BoseForm::ALL {
            assert_eq!(f.name().parse::<BoseForm>().unwrap(), f);
        }
        for f in PartitionForm::ALL {
            assert_eq!(f.to_string().parse::<PartitionForm>().unwrap(), f);
        }
        assert!("sine35".parse::<BoseForm>().is_err());
    }

    /// Exact polynomial for `kernel * (cos(a x) -+ cos(b x)) / 2`, scaled by 4.
    fn split_times_four(kernel: &SymmetricTrigPoly, a: i64, b: i64, minus: bool) -> SymmetricTrigPoly {
        let sign = if minus { -1 } else { 1 };
        let mut pairs: Vec<(u64, BigInt)> = SymmetricTrigPoly::double_cosine(a)
            .iter()
            .map(|(m, c)| (m, c.clone()))
            .collect();
        pairs.extend(
            SymmetricTrigPoly::double_cosine(b)
                .iter()
                .map(|(m, c)| (m, c * sign)),
        );
        kernel.multiply(&SymmetricTrigPoly::from_coeffs(pairs))
    }

    /// Relative agreement to 1e-8 when the expanded value exceeds 1e-6,
    /// absolute 1e-8 below that. The float evaluation of the expansion
    /// itself carries a cancellation error of order eps * sum |coefficients|,
    /// which is added to the allowance.
    fn close(pointwise: f64, expanded: &SymmetricTrigPoly, scale: f64, x: f64) -> bool {
        let exact = expanded.evaluate(x) / scale;
        let reference_err = 8.0 * f64::EPSILON * abs_coefficient_sum(expanded) / scale;
        let allowance = if exact.abs() > 1e-6 { 1e-8 * exact.abs() } else { 1e-8 };
        (pointwise - exact).abs() <= allowance + reference_err
    }

    fn abs_coefficient_sum(p: &SymmetricTrigPoly) -> f64 {
        p.iter()
            .map(|(m, a)| {
                let a = a.to_string().parse::<f64>().unwrap().abs();
                if m == 0 { a } else { 2.0 * a }
            })
            .sum()
    }

    proptest! {
        #[test]
        fn bose_integrand_agrees_with_expansion(n in 1u64..6, s in 1u64..6, x in 0.0f64..FRAC_PI_2) {
            let kernel = SymmetricTrigPoly::dirichlet(n).pow(s as u32);
            let (n_i, s_i) = (n as i64, s as i64);
            let combined = kernel.mul_by_cos((s_i - 2) * n_i).unwrap();
            let sine = split_times_four(&kernel, (s_i - 2) * n_i, (s_i + 2) * n_i, true);
            let cosine = split_times_four(&kernel, (s_i - 2) * n_i, (s_i + 2) * n_i, false);
            prop_assert!(close(integrand_bose(n, s, x, BoseForm::Combined25).unwrap(), combined.doubled(), 4.0, x));
            prop_assert!(close(integrand_bose(n, s, x, BoseForm::Sine18).unwrap(), &sine, 4.0, x));
            prop_assert!(close(integrand_bose(n, s, x, BoseForm::Cosine24).unwrap(), &cosine, 4.0, x));
        }

        #[test]
        fn partition_integrand_agrees_with_expansion(s in 1u64..6, x in 0.0f64..FRAC_PI_2) {
            let kernel = (1..=s)
                .map(|k| SymmetricTrigPoly::dirichlet(s).scale_frequency(k))
                .fold(SymmetricTrigPoly::one(), |acc, f| acc.multiply(&f));
            let phase = partition_phase(s) as i64;
            let two_s = 2 * s as i64;
            let combined = kernel.mul_by_cos(mu(s)).unwrap();
            let sine = split_times_four(&kernel, phase - two_s, phase + two_s, true);
            let cosine = split_times_four(&kernel, phase - two_s, phase + two_s, false);
            prop_assert!(close(integrand_partition(s, x, PartitionForm::Combined43).unwrap(), combined.doubled(), 4.0, x));
            prop_assert!(close(integrand_partition(s, x, PartitionForm::Sine35).unwrap(), &sine, 4.0, x));
            prop_assert!(close(integrand_partition(s, x, PartitionForm::Cosine42).unwrap(), &cosine, 4.0, x));
        }

        #[test]
        fn dirichlet_even_periodic_bounded(n in 0u64..40, y in -10.0f64..10.0) {
            let v = dirichlet_eval(n, y);
            prop_assert!((v - dirichlet_eval(n, -y)).abs() < 1e-12);
            prop_assert!((v - dirichlet_eval(n, y + 2.0 * PI)).abs() < 1e-9);
            prop_assert!(v.abs() <= (n + 1) as f64);
        }
    }
}
