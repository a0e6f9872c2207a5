//! Truncated power series with exact big-integer coefficients.
//!
//! A [`CountSeries`] of order `N` holds the coefficients of `t^0 ..= t^N`.
//! Binary operations truncate to the smaller operand order and never pad.
//! Loop counts `B(t)` and first-return counts `P(t)` satisfy
//! `B = P·B + 1`, so `P = 1 - 1/B` and `B = 1/(1 - P)`.

use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub const DEFAULT_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountSeries {
    coeffs: Vec<BigInt>,
}

impl CountSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain(
                "a series needs at least the constant coefficient",
            ));
        }
        Ok(CountSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigInt) -> Self {
        CountSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        CountSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        CountSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Decimal strings, index = power of `t`.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    /// JSON array of decimal strings, e.g. `["1","4","36"]`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_decimal_strings()).expect("strings serialize")
    }

    /// `1 - self`, same order.
    pub fn one_minus(&self) -> Self {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().map(|c| -c).collect();
        coeffs[0] += 1;
        CountSeries { coeffs }
    }
}

/// Cauchy product truncated to the smaller order.
pub fn series_mul(f: &CountSeries, g: &CountSeries) -> CountSeries {
    let order = f.order().min(g.order());
    CountSeries::from_fn(order, |n| {
        (0..=n).fold(BigInt::zero(), |acc, k| {
            acc + &f.coeffs[k] * &g.coeffs[n - k]
        })
    })
}

impl Mul for &CountSeries {
    type Output = CountSeries;

    fn mul(self, rhs: &CountSeries) -> CountSeries {
        series_mul(self, rhs)
    }
}

/// Multiplicative inverse up to the same order. The constant term must be
/// `±1` so that every coefficient of the inverse is an integer.
pub fn series_reciprocal(f: &CountSeries) -> Result<CountSeries> {
    let c0 = &f.coeffs[0];
    if !c0.abs().is_one() {
        return Err(Error::domain(format!(
            "reciprocal needs constant term +1 or -1, got {c0}"
        )));
    }
    // dividing by ±1 is multiplying by it
    let inv0 = c0.clone();
    let mut g: Vec<BigInt> = Vec::with_capacity(f.coeffs.len());
    g.push(inv0.clone());
    for n in 1..=f.order() {
        let s = (1..=n).fold(BigInt::zero(), |acc, k| acc + &f.coeffs[k] * &g[n - k]);
        g.push(-s * &inv0);
    }
    Ok(CountSeries { coeffs: g })
}

/// First-return counts `P = 1 - 1/B` from loop counts `B` (constant term 1).
pub fn simple_from_loops(loops: &CountSeries) -> Result<CountSeries> {
    if !loops.coeffs[0].is_one() {
        return Err(Error::domain(format!(
            "loop series must have constant term 1, got {}",
            loops.coeffs[0]
        )));
    }
    Ok(series_reciprocal(loops)?.one_minus())
}

/// Loop counts `B = 1/(1 - P)` from first-return counts `P` (constant term 0).
pub fn loops_from_simple(simple: &CountSeries) -> Result<CountSeries> {
    if !simple.coeffs[0].is_zero() {
        return Err(Error::domain(format!(
            "simple-loop series must have constant term 0, got {}",
            simple.coeffs[0]
        )));
    }
    series_reciprocal(&simple.one_minus())
}
