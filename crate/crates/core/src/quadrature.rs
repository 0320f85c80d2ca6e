//! Floating-point route: numerical quadrature of the integrands on `[0, pi/2]`.
//!
//! All integrands have only even frequencies, so they are even and
//! `pi`-periodic. The composite trapezoid rule with `n` intervals on
//! `[0, pi/2]` is half of the periodic trapezoid rule with `2n` points on a
//! full period, which integrates `cos(f x)` exactly unless `f` is a non-zero
//! multiple of `4n`. Hence it is exact up to frequency `4n - 2`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compensated::compensated_sum;
use crate::error::{Error, Result};
use crate::exact::{
    self, degree_bound_bose, degree_bound_partition, partition_phase, Params, Quantity,
};
use crate::kernels::{self, BoseForm, PartitionForm};

/// Node counts at or above this are evaluated on the rayon pool.
const PARALLEL_THRESHOLD: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleFamily {
    TrapezoidPeriodic,
    GaussLegendre,
    ClenshawCurtis,
}

impl RuleFamily {
    pub fn name(self) -> &'static str {
        match self {
            RuleFamily::TrapezoidPeriodic => "trapezoid",
            RuleFamily::GaussLegendre => "gauss",
            RuleFamily::ClenshawCurtis => "cc",
        }
    }
}

impl fmt::Display for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trapezoid" | "trapezoid_periodic" => Ok(RuleFamily::TrapezoidPeriodic),
            "gauss" | "gauss_legendre" => Ok(RuleFamily::GaussLegendre),
            "cc" | "clenshaw_curtis" => Ok(RuleFamily::ClenshawCurtis),
            other => Err(Error::InvalidArgument(format!("unknown rule `{other}`"))),
        }
    }
}

/// Nodes and weights on `[0, pi/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub family: RuleFamily,
    pub nodes: Vec<(f64, f64)>,
    /// Highest trigonometric frequency integrated exactly (even-frequency,
    /// even integrands); `None` for the algebraic rules.
    pub exactness_degree: Option<u64>,
}

impl QuadratureRule {
    pub fn build(family: RuleFamily, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument("node count must be at least 1".into()));
        }
        let (nodes, exactness_degree) = match family {
            RuleFamily::TrapezoidPeriodic => (trapezoid_nodes(n), Some(4 * n as u64 - 2)),
            RuleFamily::GaussLegendre => (map_from_reference(gauss_legendre_reference(n)), None),
            RuleFamily::ClenshawCurtis => (map_from_reference(clenshaw_curtis_reference(n)), None),
        };
        Ok(Self {
            family,
            nodes,
            exactness_degree,
        })
    }

    /// Smallest periodic trapezoid rule exact for frequencies up to `degree`.
    pub fn trapezoid_for_degree(degree: u64) -> Self {
        Self::build(RuleFamily::TrapezoidPeriodic, default_node_count(degree))
            .expect("default node count is positive")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum w_i f(x_i)`, with the map possibly parallel and the reduction
    /// compensated in fixed node order.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let terms: Vec<f64> = if self.nodes.len() >= PARALLEL_THRESHOLD {
            self.nodes.par_iter().map(|&(x, w)| w * f(x)).collect()
        } else {
            self.nodes.iter().map(|&(x, w)| w * f(x)).collect()
        };
        compensated_sum(terms)
    }
}

pub fn build_rule(family: RuleFamily, n: usize) -> Result<QuadratureRule> {
    QuadratureRule::build(family, n)
}

/// `ceil((degree + 2) / 4)`: intervals needed so that `4n - 2 >= degree`.
pub fn default_node_count(degree: u64) -> usize {
    (degree as usize + 2).div_ceil(4).max(1)
}

fn trapezoid_nodes(n: usize) -> Vec<(f64, f64)> {
    let h = FRAC_PI_2 / n as f64;
    (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n { 0.5 * h } else { h };
            ((i as f64 * h).min(FRAC_PI_2), w)
        })
        .collect()
}

fn map_from_reference(reference: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    reference
        .into_iter()
        .map(|(t, w)| ((FRAC_PI_4 * (t + 1.0)).clamp(0.0, FRAC_PI_2), FRAC_PI_4 * w))
        .collect()
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
fn gauss_legendre_reference(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut derivative = 1.0;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, t);
            derivative = dp;
            let step = p / dp;
            t -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, t);
        if dp.is_finite() {
            derivative = dp;
        }
        out.push((t, 2.0 / ((1.0 - t * t) * derivative * derivative)));
    }
    out.reverse();
    out
}

fn legendre_with_derivative(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (t * p1 - p0) / (t * t - 1.0))
}

/// Clenshaw-Curtis rule with `n + 1` Chebyshev extreme points on `[-1, 1]`.
fn clenshaw_curtis_reference(n: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    (0..=n)
        .map(|j| {
            let theta = j as f64 * PI / nf;
            let mut v = 1.0;
            for k in 1..=n / 2 {
                let b = if 2 * k == n { 1.0 } else { 2.0 };
                let kf = k as f64;
                v -= b * (2.0 * kf * theta).cos() / (4.0 * kf * kf - 1.0);
            }
            let c = if j == 0 || j == n { 1.0 } else { 2.0 };
            (theta.cos(), c * v / nf)
        })
        .collect()
}

/// One of the six integral representations, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Bose { n: u64, s: u64, form: BoseForm },
    Partition { s: u64, form: PartitionForm },
}

impl Target {
    pub fn quantity(&self) -> Quantity {
        match self {
            Target::Bose { .. } => Quantity::Bose,
            Target::Partition { .. } => Quantity::Partition,
        }
    }

    pub fn params(&self) -> Params {
        match *self {
            Target::Bose { n, s, .. } => Params::bose(n, s),
            Target::Partition { s, .. } => Params::partition(s),
        }
    }

    pub fn form_name(&self) -> &'static str {
        match self {
            Target::Bose { form, .. } => form.name(),
            Target::Partition { form, .. } => form.name(),
        }
    }

    pub fn check_domain(&self) -> Result<()> {
        match *self {
            Target::Bose { n, s, form } => kernels::check_bose_domain(n, s, form),
            Target::Partition { s, .. } => kernels::check_partition_domain(s),
        }
    }

    /// Highest frequency of this form's integrand. The split forms carry an
    /// extra cosine at `(s+2)N` resp. `s^2(s+1)/2 + 2s`.
    pub fn degree(&self) -> u64 {
        match *self {
            Target::Bose { n, s, form } => match form {
                BoseForm::Combined25 => degree_bound_bose(n, s),
                BoseForm::Sine18 | BoseForm::Cosine24 => s * n + (s + 2) * n,
            },
            Target::Partition { s, form } => match form {
                PartitionForm::Combined43 => degree_bound_partition(s),
                PartitionForm::Sine35 | PartitionForm::Cosine42 => {
                    2 * partition_phase(s) + 2 * s
                }
            },
        }
    }

    /// Integrand value; `(4/pi) * integral_0^{pi/2}` of it is the count.
    pub fn integrand(&self, x: f64) -> f64 {
        match *self {
            Target::Bose { n, s, form } => kernels::bose_integrand_unchecked(n, s, x, form),
            Target::Partition { s, form } => kernels::partition_integrand_unchecked(s, x, form),
        }
    }

    pub fn exact(&self) -> Result<BigInt> {
        match *self {
            Target::Bose { n, s, .. } => exact::bose_exact(n, s).map(|r| r.value),
            Target::Partition { s, .. } => exact::partition_exact(s).map(|r| r.value),
        }
    }

    /// The default rule: periodic trapezoid exact for this integrand.
    pub fn default_rule(&self) -> QuadratureRule {
        QuadratureRule::trapezoid_for_degree(self.degree())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    pub abs_err: f64,
    pub nodes: usize,
    pub exactness_degree: Option<u64>,
}

/// `(4/pi) * sum w_i f(x_i)` and its distance to the exact count.
pub fn quad(target: Target, rule: &QuadratureRule) -> Result<QuadEstimate> {
    target.check_domain()?;
    let exact = target.exact()?;
    Ok(quad_against(target, rule, &exact))
}

fn quad_against(target: Target, rule: &QuadratureRule, exact: &BigInt) -> QuadEstimate {
    let value = 4.0 / PI * rule.integrate(|x| target.integrand(x));
    let exact = exact.to_f64().unwrap_or(f64::INFINITY);
    QuadEstimate {
        value,
        abs_err: (value - exact).abs(),
        nodes: rule.len(),
        exactness_degree: rule.exactness_degree,
    }
}

pub fn bose_quad(n: u64, s: u64, form: BoseForm, rule: &QuadratureRule) -> Result<QuadEstimate> {
    quad(Target::Bose { n, s, form }, rule)
}

pub fn partition_quad(s: u64, form: PartitionForm, rule: &QuadratureRule) -> Result<QuadEstimate> {
    quad(Target::Partition { s, form }, rule)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub value: f64,
    pub abs_err: f64,
}

/// Quadrature estimates of one target for each node count in `n_list`, in order.
pub fn convergence_sweep(target: Target, family: RuleFamily, n_list: &[usize]) -> Result<Vec<SweepRow>> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("node list is empty".into()));
    }
    target.check_domain()?;
    let exact = target.exact()?;
    n_list
        .iter()
        .map(|&n| {
            let rule = QuadratureRule::build(family, n)?;
            let est = quad_against(target, &rule, &exact);
            Ok(SweepRow {
                n,
                value: est.value,
                abs_err: est.abs_err,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_point_trapezoid() {
        let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, 1).unwrap();
        assert_eq!(rule.nodes, vec![(0.0, FRAC_PI_4), (FRAC_PI_2, FRAC_PI_4)]);
        assert_eq!(rule.exactness_degree, Some(2));
    }

    #[test]
    fn trapezoid_kills_cos_2x() {
        let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, 2).unwrap();
        assert!(rule.integrate(|x| (2.0 * x).cos()).abs() < 1e-15);
    }

    #[test]
    fn gauss_integrates_square() {
        let rule = QuadratureRule::build(RuleFamily::GaussLegendre, 8).unwrap();
        let expected = FRAC_PI_2.powi(3) / 3.0;
        assert!((rule.integrate(|x| x * x) - expected).abs() < 1e-14);
    }

    #[test]
    fn algebraic_rules_integrate_polynomials() {
        // Gauss with n nodes is exact to degree 2n-1; CC with n+1 nodes to degree n.
        let b = FRAC_PI_2;
        for n in 1..=20usize {
            let g = QuadratureRule::build(RuleFamily::GaussLegendre, n).unwrap();
            let c = QuadratureRule::build(RuleFamily::ClenshawCurtis, n).unwrap();
            let gd = (2 * n - 1) as i32;
            let cd = n as i32;
            let exact = |d: i32| b.powi(d + 1) / (d + 1) as f64;
            assert!((g.integrate(|x| x.powi(gd)) - exact(gd)).abs() < 1e-11 * exact(gd).max(1.0), "gauss n={n}");
            assert!((c.integrate(|x| x.powi(cd)) - exact(cd)).abs() < 1e-11 * exact(cd).max(1.0), "cc n={n}");
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for family in [
            RuleFamily::TrapezoidPeriodic,
            RuleFamily::GaussLegendre,
            RuleFamily::ClenshawCurtis,
        ] {
            for n in 1..=64 {
                let rule = QuadratureRule::build(family, n).unwrap();
                let total: f64 = compensated_sum(rule.nodes.iter().map(|&(_, w)| w));
                assert!((total - FRAC_PI_2).abs() < 1e-12, "{family} n={n}");
                assert!(rule.nodes.iter().all(|&(x, _)| (0.0..=FRAC_PI_2).contains(&x)));
            }
        }
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(QuadratureRule::build(RuleFamily::GaussLegendre, 0).is_err());
    }

    #[test]
    fn default_node_count_formula() {
        assert_eq!(default_node_count(0), 1);
        assert_eq!(default_node_count(2), 1);
        assert_eq!(default_node_count(4), 2);
        assert_eq!(default_node_count(30), 8);
        for d in (0..200).step_by(2) {
            let n = default_node_count(d);
            assert!(4 * n as u64 - 2 >= d);
            assert!(n == 1 || 4 * (n as u64 - 1) - 2 < d);
        }
    }

    #[test]
    fn bose_quad_examples() {
        for n in 1..=4 {
            let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, n).unwrap();
            let est = bose_quad(1, 1, BoseForm::Combined25, &rule).unwrap();
            assert!((est.value - 1.0).abs() < 1e-12);
        }
        for form in BoseForm::ALL {
            let target = Target::Bose { n: 2, s: 2, form };
            let est = quad(target, &target.default_rule()).unwrap();
            assert!((est.value - 3.0).abs() < 1e-10, "{form}");
            assert!(est.abs_err < 1e-10);
        }
        let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, 4).unwrap();
        assert!(matches!(bose_quad(0, 2, BoseForm::Sine18, &rule), Err(Error::Domain(_))));
        let est = bose_quad(0, 2, BoseForm::Combined25, &rule).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_quad_examples() {
        let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, 1).unwrap();
        let est = partition_quad(1, PartitionForm::Combined43, &rule).unwrap();
        assert!((est.value - 1.0).abs() < 1e-12);
        for form in PartitionForm::ALL {
            let target = Target::Partition { s: 4, form };
            let est = quad(target, &target.default_rule()).unwrap();
            assert!((est.value - 5.0).abs() < 1e-9, "{form}");
        }
    }

    #[test]
    fn split_forms_alias_with_combined_node_count() {
        // The combined-form node count is too small for the split integrand.
        let n = default_node_count(degree_bound_bose(3, 4));
        let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, n).unwrap();
        let est = bose_quad(3, 4, BoseForm::Sine18, &rule).unwrap();
        assert!(est.abs_err > 1e-6);
    }

    #[test]
    fn sweep_examples() {
        let target = Target::Partition { s: 3, form: PartitionForm::Combined43 };
        let rows = convergence_sweep(target, RuleFamily::TrapezoidPeriodic, &[2, 4, 8, 16]).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![2, 4, 8, 16]);
        assert!(rows[2].abs_err <= 1e-9);
        assert!(rows[3].abs_err <= 1e-9);

        let target = Target::Bose { n: 1, s: 2, form: BoseForm::Combined25 };
        let rows = convergence_sweep(target, RuleFamily::TrapezoidPeriodic, &[1]).unwrap();
        assert!(rows[0].abs_err < 1e-12);

        let target = Target::Partition { s: 5, form: PartitionForm::Combined43 };
        let rows = convergence_sweep(target, RuleFamily::GaussLegendre, &[8, 16, 32, 64]).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].abs_err <= pair[0].abs_err + 1e-9, "{rows:?}");
        }

        assert!(convergence_sweep(target, RuleFamily::GaussLegendre, &[]).is_err());
    }

    #[test]
    fn doubling_past_threshold_is_stable() {
        let target = Target::Partition { s: 5, form: PartitionForm::Combined43 };
        let n0 = default_node_count(target.degree());
        let rows =
            convergence_sweep(target, RuleFamily::TrapezoidPeriodic, &[n0, 2 * n0, 4 * n0]).unwrap();
        for pair in rows.windows(2) {
            assert!((pair[1].value - pair[0].value).abs() <= 1e-10);
        }
    }

    #[test]
    fn family_names() {
        for f in [RuleFamily::TrapezoidPeriodic, RuleFamily::GaussLegendre, RuleFamily::ClenshawCurtis] {
            assert_eq!(f.name().parse::<RuleFamily>().unwrap(), f);
        }
        assert!("simpson".parse::<RuleFamily>().is_err());
    }

    proptest! {
        #[test]
        fn trapezoid_exact_on_even_frequencies(n in 1usize..40, j in 0u64..80) {
            let rule = QuadratureRule::build(RuleFamily::TrapezoidPeriodic, n).unwrap();
            let f = 2 * j;
            prop_assume!(f <= rule.exactness_degree.unwrap());
            let got = rule.integrate(|x| (f as f64 * x).cos());
            let expected = if f == 0 { FRAC_PI_2 } else { 0.0 };
            prop_assert!((got - expected).abs() < 1e-12);
        }
    }
}
