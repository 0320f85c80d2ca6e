//! Verification suites over desk-scale parameter grids.
//!
//! Grid cells are independent and evaluated on the rayon pool; rows are
//! always collected in grid order so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{self, Integrand};
use crate::identities::{self, IdentityCase};
use crate::kernels::{BoseForm, PartitionForm};
use crate::oracles;
use crate::quadrature::{quad, Target};
use crate::report::{CaseRow, Status, VerificationReport};

/// Tolerance for combined-form quadrature against the exact count.
pub const QUAD_COMBINED_TOL: f64 = 1e-9;
/// Tolerance for the individual sine and cosine forms.
pub const QUAD_SPLIT_TOL: f64 = 2e-9;
pub const IDENTITY_TOL: f64 = 1e-9;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
pub const RANDOM_IDENTITY_CASES: usize = 200;

pub const EXACT_BOSE_MAX: u64 = 12;
pub const EXACT_PARTITION_MAX: u64 = 30;
pub const QUAD_BOSE_MAX: u64 = 8;
pub const QUAD_PARTITION_MAX: u64 = 6;
pub const ORACLE_PARTITION_MAX: u64 = 40;
pub const BRUTE_BOSE_MAX_SUM: u64 = 14;
pub const HYPERCUBE_MAX_S: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracles,
    Exact,
    Quadrature,
    Identities,
    Parity,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Oracles,
        Suite::Exact,
        Suite::Quadrature,
        Suite::Identities,
        Suite::Parity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracles => "oracles",
            Suite::Exact => "exact",
            Suite::Quadrature => "quadrature",
            Suite::Identities => "identities",
            Suite::Parity => "parity",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

fn row(suite: Suite, case: String, expected: impl ToString, got: impl ToString, ok: bool) -> CaseRow {
    CaseRow {
        suite: suite.name().to_string(),
        case,
        expected: expected.to_string(),
        got: got.to_string(),
        status: Status::from_bool(ok),
    }
}

fn error_row(suite: Suite, case: String, expected: impl ToString, err: &Error) -> CaseRow {
    row(suite, case, expected, format!("error: {err}"), false)
}

fn bigint_row(suite: Suite, case: String, expected: &BigInt, got: Result<BigInt>) -> CaseRow {
    match got {
        Ok(v) => {
            let ok = &v == expected;
            row(suite, case, expected, v, ok)
        }
        Err(e) => error_row(suite, case, expected, &e),
    }
}

/// Runs one suite (or all of them, in a fixed order).
pub fn run_suite(suite: Suite, seed: u64, budget: u64) -> VerificationReport {
    let cases = match suite {
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|&s| suite_rows(s, seed, budget))
            .collect(),
        other => suite_rows(other, seed, budget),
    };
    VerificationReport::new(suite.name(), seed, cases)
}

fn suite_rows(suite: Suite, seed: u64, budget: u64) -> Vec<CaseRow> {
    match suite {
        Suite::Oracles => oracle_rows(budget),
        Suite::Exact => exact_rows(),
        Suite::Quadrature => quadrature_rows(),
        Suite::Identities => identity_rows(seed),
        Suite::Parity => parity_rows(),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

pub fn oracle_rows(budget: u64) -> Vec<CaseRow> {
    let suite = Suite::Oracles;
    let table = oracles::pentagonal_table(ORACLE_PARTITION_MAX);
    let mut rows: Vec<CaseRow> = (0..=ORACLE_PARTITION_MAX)
        .into_par_iter()
        .flat_map_iter(|s| {
            let dp = oracles::partition_oracle(s);
            let mut out = vec![bigint_row(
                suite,
                format!("pentagonal s={s}"),
                &dp,
                Ok(table[s as usize].clone()),
            )];
            out.push(bigint_row(
                suite,
                format!("brute_partition s={s}"),
                &dp,
                oracles::brute_count_partition(s, budget),
            ));
            if s >= 1 {
                let prev = oracles::partition_oracle(s - 1);
                out.push(row(suite, format!("monotone s={s}"), format!(">= {prev}"), &dp, dp >= prev));
            }
            out
        })
        .collect();

    let bose_cells: Vec<(u64, u64)> = (0..BRUTE_BOSE_MAX_SUM)
        .flat_map(|n| (1..=BRUTE_BOSE_MAX_SUM - n).map(move |s| (n, s)))
        .collect();
    rows.par_extend(bose_cells.into_par_iter().map(|(n, s)| {
        let expected = oracles::binomial_oracle(n, s).expect("s >= 1");
        bigint_row(
            suite,
            format!("brute_bose N={n} s={s}"),
            &expected,
            oracles::brute_count_bose(n, s, budget),
        )
    }));

    for n in 1..=20u64 {
        for s in 2..=20u64 {
            let lhs = oracles::binomial_oracle(n, s).expect("s >= 1");
            let rhs = oracles::binomial_oracle(n - 1, s).expect("s >= 1")
                + oracles::binomial_oracle(n, s - 1).expect("s >= 1");
            let ok = lhs == rhs;
            rows.push(row(suite, format!("pascal N={n} s={s}"), rhs, lhs, ok));
        }
    }

    for s in 1..=HYPERCUBE_MAX_S {
        let pruned = oracles::brute_count_partition(s, budget);
        match pruned {
            Ok(p) => rows.push(bigint_row(
                suite,
                format!("hypercube_partition s={s}"),
                &p,
                oracles::hypercube_count_partition(s, budget),
            )),
            Err(e) => rows.push(error_row(suite, format!("hypercube_partition s={s}"), "pruned", &e)),
        }
        for n in 0..=6u64 {
            match oracles::brute_count_bose(n, s, budget) {
                Ok(p) => rows.push(bigint_row(
                    suite,
                    format!("hypercube_bose N={n} s={s}"),
                    &p,
                    oracles::hypercube_count_bose(n, s, budget),
                )),
                Err(e) => rows.push(error_row(suite, format!("hypercube_bose N={n} s={s}"), "pruned", &e)),
            }
        }
    }
    rows
}

pub fn exact_rows() -> Vec<CaseRow> {
    let suite = Suite::Exact;
    let bose_cells: Vec<(u64, u64)> = (0..=EXACT_BOSE_MAX)
        .flat_map(|n| (1..=EXACT_BOSE_MAX).map(move |s| (n, s)))
        .collect();
    let mut rows: Vec<CaseRow> = bose_cells
        .into_par_iter()
        .map(|(n, s)| {
            let expected = oracles::binomial_oracle(n, s).expect("s >= 1");
            bigint_row(
                suite,
                format!("bose N={n} s={s}"),
                &expected,
                exact::bose_exact(n, s).map(|r| r.value),
            )
        })
        .collect();

    rows.par_extend((1..=EXACT_BOSE_MAX).into_par_iter().map(|s| {
        // (2s-1)! / (s! (s-1)!) = C(2s-1, s)
        let expected = oracles::binomial_oracle(s, s).expect("s >= 1");
        bigint_row(
            suite,
            format!("bose_special s={s}"),
            &expected,
            exact::bose_special_exact(s).map(|r| r.value),
        )
    }));

    let table = oracles::pentagonal_table(EXACT_PARTITION_MAX);
    let partition: Vec<CaseRow> = (1..=EXACT_PARTITION_MAX)
        .into_par_iter()
        .flat_map_iter(|s| {
            let got = exact::partition_exact(s).map(|r| r.value);
            let dp = oracles::partition_oracle(s);
            vec![
                bigint_row(suite, format!("partition_vs_dp s={s}"), &dp, got.clone()),
                bigint_row(suite, format!("partition_vs_pentagonal s={s}"), &table[s as usize], got),
            ]
        })
        .collect();
    rows.extend(partition);
    rows
}

/// Every target of the quadrature grid: all forms for Bose `N, s <= 8`
/// (plus the `N = 0` row for the combined form) and partitions `s <= 6`.
pub fn quadrature_targets() -> Vec<Target> {
    let mut targets = Vec::new();
    for n in 0..=QUAD_BOSE_MAX {
        for s in 1..=QUAD_BOSE_MAX {
            for form in BoseForm::ALL {
                if n == 0 && form != BoseForm::Combined25 {
                    continue;
                }
                targets.push(Target::Bose { n, s, form });
            }
        }
    }
    for s in 1..=QUAD_PARTITION_MAX {
        for form in PartitionForm::ALL {
            targets.push(Target::Partition { s, form });
        }
    }
    targets
}

pub fn quadrature_tolerance(target: &Target) -> f64 {
    match target {
        Target::Bose { form: BoseForm::Combined25, .. }
        | Target::Partition { form: PartitionForm::Combined43, .. } => QUAD_COMBINED_TOL,
        _ => QUAD_SPLIT_TOL,
    }
}

pub fn quadrature_rows() -> Vec<CaseRow> {
    let suite = Suite::Quadrature;
    quadrature_targets()
        .into_par_iter()
        .map(|target| {
            let case = format!(
                "{} {} {} n={}",
                target.quantity(),
                target.params(),
                target.form_name(),
                target.default_rule().len() - 1
            );
            let tol = quadrature_tolerance(&target);
            let expected = match target.exact() {
                Ok(v) => v,
                Err(e) => return error_row(suite, case, "exact value", &e),
            };
            match quad(target, &target.default_rule()) {
                Ok(est) => row(
                    suite,
                    case,
                    format!("{expected} +- {tol:e}"),
                    est.value,
                    est.abs_err <= tol,
                ),
                Err(e) => error_row(suite, case, expected, &e),
            }
        })
        .collect()
}

fn identity_row(case: &IdentityCase, tol: f64) -> CaseRow {
    let name = format!(
        "{} {}",
        serde_json::to_value(case.identity_id)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default(),
        serde_json::to_string(&case.params).unwrap_or_default()
    );
    row(
        Suite::Identities,
        name,
        case.rhs,
        format!("{} (rel_err {:e})", case.lhs, case.rel_err),
        case.passes(tol),
    )
}

pub fn identity_rows(seed: u64) -> Vec<CaseRow> {
    let mut rows: Vec<CaseRow> = identities::random_sum_lemma_cases(seed, RANDOM_IDENTITY_CASES)
        .iter()
        .map(|c| identity_row(c, IDENTITY_TOL))
        .collect();
    match identities::chain_grid_cases(seed) {
        Ok(cases) => rows.extend(cases.iter().map(|c| identity_row(c, IDENTITY_TOL))),
        Err(e) => rows.push(error_row(Suite::Identities, "chain grid".into(), "cases", &e)),
    }
    match identities::orthogonality_grid_cases() {
        Ok(cases) => rows.extend(cases.iter().map(|c| identity_row(c, ORTHOGONALITY_TOL))),
        Err(e) => rows.push(error_row(Suite::Identities, "orthogonality grid".into(), "cases", &e)),
    }
    rows
}

fn parity_row(integrand: Result<Integrand>, case: String) -> CaseRow {
    let suite = Suite::Parity;
    match integrand {
        Ok(it) => {
            let expansion = it.full_expansion();
            let even = expansion.all_frequencies_even();
            let degree = expansion.max_frequency();
            let bound = it.degree_bound();
            row(
                suite,
                case,
                format!("even, max_freq={bound}"),
                format!("{}, max_freq={degree}", if even { "even" } else { "odd" }),
                even && degree == bound,
            )
        }
        Err(e) => error_row(suite, case, "expansion", &e),
    }
}

pub fn parity_rows() -> Vec<CaseRow> {
    let bose_cells: Vec<(u64, u64)> = (0..=EXACT_BOSE_MAX)
        .flat_map(|n| (1..=EXACT_BOSE_MAX).map(move |s| (n, s)))
        .collect();
    let mut rows: Vec<CaseRow> = bose_cells
        .into_par_iter()
        .map(|(n, s)| parity_row(Integrand::bose(n, s), format!("bose N={n} s={s}")))
        .collect();
    rows.par_extend(
        (1..=EXACT_PARTITION_MAX)
            .into_par_iter()
            .map(|s| parity_row(Integrand::partition(s), format!("partition s={s}"))),
    );
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for suite in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn quadrature_grid_size() {
        // 8 * 8 * 3 split/combined cells + 8 N=0 cells + 6 * 3 partition cells
        assert_eq!(quadrature_targets().len(), 192 + 8 + 18);
    }

    #[test]
    fn small_suites_pass() {
        let report = run_suite(Suite::Oracles, 1, oracles::DEFAULT_BUDGET);
        assert!(report.all_passed(), "{}", report.to_text());
        let report = run_suite(Suite::Identities, 42, oracles::DEFAULT_BUDGET);
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn mismatch_is_reported() {
        let r = bigint_row(Suite::Exact, "x".into(), &BigInt::from(3), Ok(BigInt::from(4)));
        assert_eq!(r.status, Status::Fail);
        let r = bigint_row(Suite::Exact, "x".into(), &BigInt::from(3), Err(Error::Domain("d".into())));
        assert_eq!(r.status, Status::Fail);
        assert!(r.got.starts_with("error"));
    }
}
