//! Classical ground truth for `B(N, s)` and `p_s`.
//!
//! Two structurally different partition oracles (series DP and the
//! pentagonal recurrence) plus brute-force enumeration of the delta sums.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Params, Quantity};

/// Default cap on states visited by the brute-force enumerators.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    Binomial,
    EulerDp,
    Pentagonal,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleValue {
    pub quantity: Quantity,
    pub params: Params,
    pub value: BigInt,
    pub method: OracleMethod,
}

/// `C(N+s-1, N)` by the multiplicative formula with exact division at
/// every step.
pub fn binomial_oracle(n: u64, s: u64) -> Result<BigInt> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!("s must be at least 1, got {s}")));
    }
    let top = n + s - 1;
    let k = n.min(s - 1);
    let mut acc = BigInt::one();
    for i in 1..=k {
        // acc = C(top - k + i, i), always an integer
        acc *= top - k + i;
        acc /= i;
    }
    Ok(acc)
}

/// Coefficient of `x^s` in `prod_{k=1}^{s} 1/(1 - x^k)`, truncated at degree `s`.
pub fn partition_oracle(s: u64) -> BigInt {
    let s = s as usize;
    let mut series = vec![BigInt::zero(); s + 1];
    series[0] = BigInt::one();
    for k in 1..=s {
        // multiply by 1/(1 - x^k): running sum with stride k
        for j in k..=s {
            let (lo, hi) = series.split_at_mut(j);
            hi[0] += &lo[j - k];
        }
    }
    series.swap_remove(s)
}

/// `p(0), ..., p(s)` by Euler's pentagonal-number recurrence.
pub fn pentagonal_table(s: u64) -> Vec<BigInt> {
    let s = s as usize;
    let mut p = vec![BigInt::zero(); s + 1];
    p[0] = BigInt::one();
    for i in 1..=s {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[i - g1].clone();
            if g2 <= i {
                term += &p[i - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[i] = acc;
    }
    p
}

pub fn pentagonal_oracle(s: u64) -> BigInt {
    pentagonal_table(s).swap_remove(s as usize)
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Self { limit, used: 0 }
    }

    fn visit(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

/// Counts non-negative tuples with `n_1 + ... + n_s = N` by pruned recursion.
pub fn brute_count_bose(n: u64, s: u64, budget: u64) -> Result<BigInt> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!("s must be at least 1, got {s}")));
    }
    fn walk(remaining: u64, cells: u64, budget: &mut Budget) -> Result<u64> {
        budget.visit()?;
        if cells == 1 {
            return Ok(1);
        }
        let mut count = 0;
        for first in 0..=remaining {
            count += walk(remaining - first, cells - 1, budget)?;
        }
        Ok(count)
    }
    let mut budget = Budget::new(budget);
    walk(n, s, &mut budget).map(BigInt::from)
}

/// Counts non-negative tuples with `n_1 + 2 n_2 + ... + s n_s = s` by pruned
/// recursion over the largest part first.
pub fn brute_count_partition(s: u64, budget: u64) -> Result<BigInt> {
    fn walk(remaining: u64, part: u64, budget: &mut Budget) -> Result<u64> {
        budget.visit()?;
        if part <= 1 {
            return Ok(1);
        }
        let mut count = 0;
        for copies in 0..=remaining / part {
            count += walk(remaining - copies * part, part - 1, budget)?;
        }
        Ok(count)
    }
    let mut budget = Budget::new(budget);
    walk(s, s, &mut budget).map(BigInt::from)
}

/// Visits every point of `[0, bound]^dims` and counts those whose weighted
/// coordinate sum `sum (i+1) n_i` (or plain sum) equals `target`.
fn hypercube_scan(bound: u64, dims: u64, target: u64, weighted: bool, budget: u64) -> Result<BigInt> {
    let points = (bound + 1)
        .checked_pow(dims as u32)
        .filter(|&p| p <= budget)
        .ok_or(Error::BudgetExceeded { budget })?;
    let mut tuple = vec![0u64; dims as usize];
    let mut count = 0u64;
    for _ in 0..points {
        let total: u64 = tuple
            .iter()
            .enumerate()
            .map(|(i, &v)| if weighted { (i as u64 + 1) * v } else { v })
            .sum();
        if total == target {
            count += 1;
        }
        // odometer increment
        for digit in tuple.iter_mut() {
            if *digit == bound {
                *digit = 0;
            } else {
                *digit += 1;
                break;
            }
        }
    }
    Ok(BigInt::from(count))
}

/// Literal delta sum over the hypercube `0 <= n_i <= N`.
pub fn hypercube_count_bose(n: u64, s: u64, budget: u64) -> Result<BigInt> {
    if s < 1 {
        return Err(Error::InvalidArgument(format!("s must be at least 1, got {s}")));
    }
    hypercube_scan(n, s, n, false, budget)
}

/// Literal delta sum over the hypercube `0 <= n_i <= s`.
pub fn hypercube_count_partition(s: u64, budget: u64) -> Result<BigInt> {
    if s == 0 {
        return Ok(BigInt::one());
    }
    hypercube_scan(s, s, s, true, budget)
}

pub fn bose_oracle_value(n: u64, s: u64, method: OracleMethod, budget: u64) -> Result<OracleValue> {
    let value = match method {
        OracleMethod::Binomial => binomial_oracle(n, s)?,
        OracleMethod::BruteForce => brute_count_bose(n, s, budget)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "{other:?} does not compute Bose counts"
            )))
        }
    };
    Ok(OracleValue {
        quantity: Quantity::Bose,
        params: Params::bose(n, s),
        value,
        method,
    })
}

pub fn partition_oracle_value(s: u64, method: OracleMethod, budget: u64) -> Result<OracleValue> {
    let value = match method {
        OracleMethod::EulerDp => partition_oracle(s),
        OracleMethod::Pentagonal => pentagonal_oracle(s),
        OracleMethod::BruteForce => brute_count_partition(s, budget)?,
        OracleMethod::Binomial => {
            return Err(Error::InvalidArgument(
                "binomial oracle does not compute partitions".into(),
            ))
        }
    };
    Ok(OracleValue {
        quantity: Quantity::Partition,
        params: Params::partition(s),
        value,
        method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: u64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_oracle(0, 5).unwrap(), big(1));
        assert_eq!(binomial_oracle(2, 3).unwrap(), big(6));
        assert_eq!(binomial_oracle(5, 3).unwrap(), big(21));
        assert!(binomial_oracle(3, 0).is_err());
    }

    #[test]
    fn binomial_matches_pascal_table() {
        // C(n, k) from Pascal's triangle, independent of the multiplicative route
        let rows = 40usize;
        let mut tri = vec![vec![BigInt::zero(); rows + 1]; rows + 1];
        for n in 0..=rows {
            tri[n][0] = BigInt::one();
            for k in 1..=n {
                tri[n][k] = &tri[n - 1][k - 1] + &tri[n - 1][k];
            }
        }
        for n in 0..=20u64 {
            for s in 1..=20u64 {
                let top = (n + s - 1) as usize;
                assert_eq!(binomial_oracle(n, s).unwrap(), tri[top][n as usize]);
            }
        }
    }

    #[test]
    fn large_binomial_is_exact() {
        // C(199, 100) has 59 digits
        let v = binomial_oracle(100, 100).unwrap();
        assert_eq!(v.to_string().len(), 59);
        assert_eq!(v, binomial_oracle(99, 101).unwrap());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(partition_oracle(0), big(1));
        assert_eq!(partition_oracle(4), big(5));
        assert_eq!(partition_oracle(10), big(42));
        assert_eq!(pentagonal_oracle(1), big(1));
        assert_eq!(pentagonal_oracle(5), big(7));
        assert_eq!(pentagonal_oracle(20), big(627));
        assert_eq!(partition_oracle(20), big(627));
        assert_eq!(pentagonal_oracle(100), "190569292".parse::<BigInt>().unwrap());
    }

    #[test]
    fn series_prefix() {
        let expected = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        let table = pentagonal_table(10);
        for (s, &p) in expected.iter().enumerate() {
            assert_eq!(table[s], big(p));
            assert_eq!(partition_oracle(s as u64), big(p));
        }
    }

    #[test]
    fn partition_oracles_agree_to_forty() {
        let table = pentagonal_table(40);
        for s in 0..=40u64 {
            let dp = partition_oracle(s);
            assert_eq!(dp, table[s as usize]);
            assert_eq!(brute_count_partition(s, DEFAULT_BUDGET).unwrap(), dp);
            if s >= 1 {
                assert!(dp >= partition_oracle(s - 1));
            }
        }
    }

    #[test]
    fn brute_bose_examples() {
        assert_eq!(brute_count_bose(2, 2, DEFAULT_BUDGET).unwrap(), big(3));
        assert_eq!(brute_count_bose(1, 4, DEFAULT_BUDGET).unwrap(), big(4));
        assert_eq!(brute_count_bose(4, 3, DEFAULT_BUDGET).unwrap(), big(15));
        assert_eq!(brute_count_partition(4, DEFAULT_BUDGET).unwrap(), big(5));
        assert_eq!(brute_count_partition(1, DEFAULT_BUDGET).unwrap(), big(1));
        assert_eq!(brute_count_partition(7, DEFAULT_BUDGET).unwrap(), big(15));
    }

    #[test]
    fn brute_bose_matches_binomial() {
        for n in 0..=13u64 {
            for s in 1..=(14 - n) {
                assert_eq!(
                    brute_count_bose(n, s, DEFAULT_BUDGET).unwrap(),
                    binomial_oracle(n, s).unwrap(),
                    "N={n} s={s}"
                );
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            brute_count_bose(30, 12, 1000),
            Err(Error::BudgetExceeded { budget: 1000 })
        );
        assert!(brute_count_partition(60, 1000).is_err());
        assert!(hypercube_count_bose(9, 9, 1000).is_err());
        assert!(hypercube_count_partition(40, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn hypercube_scan_matches_pruned() {
        for s in 1..=4u64 {
            assert_eq!(
                hypercube_count_partition(s, DEFAULT_BUDGET).unwrap(),
                brute_count_partition(s, DEFAULT_BUDGET).unwrap()
            );
            for n in 0..=6u64 {
                assert_eq!(
                    hypercube_count_bose(n, s, DEFAULT_BUDGET).unwrap(),
                    brute_count_bose(n, s, DEFAULT_BUDGET).unwrap()
                );
            }
        }
    }

    #[test]
    fn oracle_values() {
        let v = partition_oracle_value(6, OracleMethod::Pentagonal, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.value, big(11));
        assert!(partition_oracle_value(6, OracleMethod::Binomial, DEFAULT_BUDGET).is_err());
        let v = bose_oracle_value(2, 3, OracleMethod::BruteForce, DEFAULT_BUDGET).unwrap();
        assert_eq!(v.value, big(6));
        assert!(bose_oracle_value(2, 3, OracleMethod::EulerDp, DEFAULT_BUDGET).is_err());
    }

    proptest! {
        #[test]
        fn pascal_identity(n in 1u64..60, s in 2u64..60) {
            prop_assert_eq!(
                binomial_oracle(n, s).unwrap(),
                binomial_oracle(n - 1, s).unwrap() + binomial_oracle(n, s - 1).unwrap()
            );
        }
    }
}
