//! Exact algebra of finite even trigonometric polynomials.
//!
//! A [`SymmetricTrigPoly`] stores integer coefficients `a_m` for
//! non-negative frequencies `m` and stands for the function
//!
//! ```text
//! f(x) = a_0 + sum_{m >= 1} 2 a_m cos(m x) = sum_{m in Z} a_|m| e^{i m x}
//! ```
//!
//! In this symmetric exponential form products of integer polynomials stay
//! integer, so kernel products can be expanded without rounding. The
//! Dirichlet kernel `sin((N+1)x)/sin x` is simply `sum_{j=0}^{N} e^{i(N-2j)x}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::compensated::NeumaierSum;
use crate::error::{Error, Result};

/// Finite even trigonometric polynomial with arbitrary-precision integer
/// coefficients in the symmetric exponential representation.
///
/// No stored coefficient is ever zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymmetricTrigPoly {
    coeffs: BTreeMap<u64, BigInt>,
}

impl SymmetricTrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_constant(1)
    }

    /// The constant function `c`.
    pub fn from_constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs([(0, c.into())])
    }

    /// Builds a polynomial from `(frequency, coefficient)` pairs. Repeated
    /// frequencies are summed and zero coefficients dropped.
    pub fn from_coeffs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigInt)>,
    {
        let mut coeffs: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (m, a) in pairs {
            *coeffs.entry(m).or_default() += a;
        }
        coeffs.retain(|_, a| !a.is_zero());
        Self { coeffs }
    }

    /// Expansion of the Dirichlet kernel `sin((N+1)x) / sin x`.
    ///
    /// Frequencies `N, N-2, ...` down to 0 or 1, each with coefficient 1.
    pub fn dirichlet(order: u64) -> Self {
        let coeffs = (0..=order / 2)
            .map(|j| (order - 2 * j, BigInt::one()))
            .collect();
        Self { coeffs }
    }

    /// The polynomial for `2 cos(mu x)`: `{|mu|: 1}`, or `{0: 2}` when `mu = 0`.
    pub fn double_cosine(mu: i64) -> Self {
        let m = mu.unsigned_abs();
        if m == 0 {
            Self::from_constant(2)
        } else {
            Self::from_coeffs([(m, BigInt::one())])
        }
    }

    /// Substitutes `x -> k x`: every frequency is multiplied by `k`.
    ///
    /// Panics if `k == 0`.
    pub fn scale_frequency(&self, k: u64) -> Self {
        assert!(k >= 1, "frequency multiplier must be positive");
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&m, a)| (m * k, a.clone()))
            .collect();
        Self { coeffs }
    }

    /// Exact product of two polynomials.
    ///
    /// Accumulates into a dense array indexed by frequency `0..=deg p + deg q`,
    /// pairing every stored term of one factor with every stored term of the
    /// other. A term `e^{±imx}` times `e^{±inx}` lands on `m + n` and `|m - n|`.
    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // iterate the sparser factor in the inner loop
        let (outer, inner) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let degree = (outer.max_frequency() + inner.max_frequency()) as usize;
        let mut acc = vec![BigInt::zero(); degree + 1];

        for (&m, a) in &outer.coeffs {
            for (&n, b) in &inner.coeffs {
                let sum = (m + n) as usize;
                if m == 0 || n == 0 {
                    add_product(&mut acc[sum], a, b, false);
                } else if m == n {
                    add_product(&mut acc[sum], a, b, false);
                    add_product(&mut acc[0], a, b, true);
                } else {
                    add_product(&mut acc[sum], a, b, false);
                    add_product(&mut acc[m.abs_diff(n) as usize], a, b, false);
                }
            }
        }

        let coeffs = acc
            .into_iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(m, a)| (m as u64, a))
            .collect();
        Self { coeffs }
    }

    /// `self^exp` by iterated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.multiply(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.multiply(&base);
            }
        }
        result
    }

    /// Multiplies by `cos(mu x)`.
    ///
    /// Requires every stored frequency to have the parity of `mu`, which
    /// makes every frequency of the product even. The product is returned in
    /// doubled form, see [`CosineModulated`].
    pub fn mul_by_cos(&self, mu: i64) -> Result<CosineModulated> {
        let parity = mu.unsigned_abs() % 2;
        if let Some(&frequency) = self.coeffs.keys().find(|&&m| m % 2 != parity) {
            return Err(Error::Parity { frequency, mu });
        }
        Ok(CosineModulated {
            doubled: self.multiply(&Self::double_cosine(mu)),
            mu,
        })
    }

    /// The coefficient `a_0`.
    pub fn constant_coefficient(&self) -> BigInt {
        self.coefficient(0)
    }

    pub fn coefficient(&self, frequency: u64) -> BigInt {
        self.coeffs.get(&frequency).cloned().unwrap_or_default()
    }

    /// Largest stored frequency, 0 for constants and the zero polynomial.
    pub fn max_frequency(&self) -> u64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// Number of stored (non-zero) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn all_frequencies_even(&self) -> bool {
        self.coeffs.keys().all(|m| m % 2 == 0)
    }

    /// `(frequency, coefficient)` pairs in ascending frequency order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&m, a)| (m, a))
    }

    /// Floating-point value `a_0 + sum 2 a_m cos(m x)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let mut sum = NeumaierSum::new();
        for (&m, a) in &self.coeffs {
            let a = a.to_f64().unwrap_or(f64::NAN);
            if m == 0 {
                sum.add(a);
            } else {
                sum.add(2.0 * a * (m as f64 * x).cos());
            }
        }
        sum.value()
    }
}

fn add_product(slot: &mut BigInt, a: &BigInt, b: &BigInt, twice: bool) {
    // Dirichlet factors are all-ones; skip the multiplication for them.
    let term = if b.is_one() {
        a.clone()
    } else if a.is_one() {
        b.clone()
    } else {
        a * b
    };
    if twice {
        *slot += &term;
    }
    *slot += term;
}

impl Mul for &SymmetricTrigPoly {
    type Output = SymmetricTrigPoly;

    fn mul(self, rhs: Self) -> SymmetricTrigPoly {
        self.multiply(rhs)
    }
}

impl fmt::Display for SymmetricTrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (m, a)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}:{a}")?;
        }
        write!(f, "}}")
    }
}

/// The product `p(x) cos(mu x)` held exactly as the integer polynomial
/// `2 p(x) cos(mu x)`.
///
/// The symmetric coefficients of `p cos(mu x)` are `(a_|j-mu| + a_|j+mu|)/2`,
/// which are half-integers in general (the top one always is for `mu != 0`).
/// The constant coefficient is `a_|mu|` and therefore always an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosineModulated {
    doubled: SymmetricTrigPoly,
    mu: i64,
}

impl CosineModulated {
    pub fn mu(&self) -> i64 {
        self.mu
    }

    /// The integer polynomial `2 p(x) cos(mu x)`.
    pub fn doubled(&self) -> &SymmetricTrigPoly {
        &self.doubled
    }

    /// Constant coefficient of `p(x) cos(mu x)`.
    pub fn constant_coefficient(&self) -> BigInt {
        let (half, rem) = self.doubled.constant_coefficient().div_rem(&BigInt::from(2));
        debug_assert!(rem.is_zero(), "doubled constant term is always even");
        half
    }

    pub fn max_frequency(&self) -> u64 {
        self.doubled.max_frequency()
    }

    pub fn term_count(&self) -> usize {
        self.doubled.term_count()
    }

    pub fn all_frequencies_even(&self) -> bool {
        self.doubled.all_frequencies_even()
    }

    /// The product as a plain integer polynomial, when all its symmetric
    /// coefficients happen to be integers.
    pub fn to_integer_poly(&self) -> Option<SymmetricTrigPoly> {
        let two = BigInt::from(2);
        self.doubled
            .iter()
            .map(|(m, a)| {
                let (q, r) = a.div_rem(&two);
                r.is_zero().then_some((m, q))
            })
            .collect::<Option<Vec<_>>>()
            .map(SymmetricTrigPoly::from_coeffs)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        0.5 * self.doubled.evaluate(x)
    }
}
