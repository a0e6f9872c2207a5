//! Closed forms, weighted coefficients and return probabilities.
//!
//! A loop of length `2n` in dimension `d` is a set of walks each carrying
//! probability `(2d)^(-2n)`, so the weighted coefficients are
//! `b_n = B_n / 4^n` (1D) or `B_n / 16^n` (2D), and likewise `p_n` for first
//! returns. The return probability within `2N` steps is
//! `r_N = p_1 + ... + p_N`.
//!
//! Exact values use big rationals up to an exact threshold (default 64
//! terms). Float values come from the ratio recurrence
//! `b_n / b_(n-1) = ((2n - 1) / 2n)^d` and the reciprocal recurrence run on
//! the weighted coefficients directly, so every intermediate stays in
//! `[0, 1]`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::series::{loops_from_simple, simple_from_loops, CountSeries};
use crate::walks::Dimension;
use crate::{Error, Result};

pub const DEFAULT_EXACT_THRESHOLD: usize = 64;

/// `C(2n, n)`.
pub fn central_binomial(n: u32) -> BigUint {
    // C(2k, k) = C(2k-2, k-1) * 2(2k-1) / k, exact at every step
    (1..=n).fold(BigUint::one(), |acc, k| acc * (2 * (2 * k - 1)) / k)
}

/// `C(n) = C(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> BigUint {
    central_binomial(n) / (n + 1)
}

/// `B_n`: `C(2n, n)` in 1D, `C(2n, n)²` in 2D.
pub fn closed_form_loop_count(dim: Dimension, n: u32) -> BigUint {
    let c = central_binomial(n);
    match dim {
        Dimension::One => c,
        Dimension::Two => &c * &c,
    }
}

/// `B(t)` from the closed form, truncated at `order`.
pub fn loop_series(dim: Dimension, order: usize) -> CountSeries {
    let mut c = BigUint::one();
    CountSeries::from_fn(order, |n| {
        if n > 0 {
            let k = n as u64;
            c = &c * (2 * (2 * k - 1)) / k;
        }
        let b = match dim {
            Dimension::One => c.clone(),
            Dimension::Two => &c * &c,
        };
        BigInt::from(b)
    })
}

/// `P(t) = 1 - 1/B(t)` over the closed-form `B`.
pub fn simple_loop_series(dim: Dimension, order: usize) -> CountSeries {
    simple_from_loops(&loop_series(dim, order)).expect("closed-form B has constant term 1")
}

/// Loop counts built without the closed form. 1D: `B = 1/(1 - P)` with the
/// first-return counts `P_n = 2 Catalan(n - 1)`. 2D: a loop of length `2n`
/// interleaves a horizontal 1D loop of length `2k` with a vertical one of
/// length `2n - 2k`, so `B_n = sum_k C(2n, 2k) B1_k B1_(n-k)`.
pub fn loop_series_by_convolution(dim: Dimension, order: usize) -> CountSeries {
    let first_returns = CountSeries::from_fn(order, |n| match n {
        0 => BigInt::zero(),
        n => BigInt::from(catalan(n as u32 - 1) * 2u32),
    });
    let one_d = loops_from_simple(&first_returns).expect("constant term is 0");
    match dim {
        Dimension::One => one_d,
        Dimension::Two => {
            let b1 = one_d.coeffs();
            CountSeries::from_fn(order, |n| {
                let mut binom = BigInt::one(); // C(2n, 0)
                let mut acc = BigInt::zero();
                for k in 0..=n {
                    acc += &binom * &b1[k] * &b1[n - k];
                    if k < n {
                        // C(2n, 2k+2) from C(2n, 2k)
                        let m = (2 * n) as u64;
                        let j = (2 * k) as u64;
                        binom = binom * ((m - j) * (m - j - 1)) / ((j + 1) * (j + 2));
                    }
                }
                acc
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            _ => Err(Error::parse(format!(
                "mode must be exact or float, got {s:?}"
            ))),
        }
    }
}

/// An exact rational or a double.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => rational_to_f64(q),
            Value::Float(x) => *x,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Value::Exact(_) => Mode::Exact,
            Value::Float(_) => Mode::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }
}

/// Rationals print as `p/q` (always with a denominator); floats as the
/// shortest decimal that round-trips.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Within one ulp: the quotient is first taken to 64 significant bits as an
/// integer, then rounded to a double and rescaled.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let (n, d) = (q.numer(), q.denom());
    let shift = 64 + d.bits() as i64 - n.bits() as i64;
    let scaled = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedCoefficient {
    pub n: u32,
    pub value: Value,
}

/// `b_n = B_n / (2d)^(2n)`.
pub fn weighted_loop_coeff(dim: Dimension, n: u32, mode: Mode) -> WeightedCoefficient {
    let value = match mode {
        Mode::Exact => Value::Exact(BigRational::new(
            BigInt::from(closed_form_loop_count(dim, n)),
            BigInt::from(dim.weight_base()).pow(n),
        )),
        Mode::Float => Value::Float(weighted_loop_coeffs(dim, n as usize)[n as usize]),
    };
    WeightedCoefficient { n, value }
}

/// `b_0 ..= b_N` in floating point, by the ratio recurrence.
pub fn weighted_loop_coeffs(dim: Dimension, terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(terms + 1);
    let mut w = 1.0f64;
    out.push(w);
    for n in 1..=terms {
        let r = (2 * n - 1) as f64 / (2 * n) as f64;
        w *= match dim {
            Dimension::One => r,
            Dimension::Two => r * r,
        };
        out.push(w);
    }
    out
}

/// `p_0 ..= p_N` in floating point (`p_0 = 0`): the reciprocal recurrence
/// `p_n = b_n - sum_(k=1)^(n-1) p_k b_(n-k)` on weighted coefficients.
/// O(N²); each coefficient is summed in increasing `k`.
pub fn weighted_simple_coeffs(dim: Dimension, terms: usize) -> Vec<f64> {
    let b = weighted_loop_coeffs(dim, terms);
    let mut p = vec![0.0f64; terms + 1];
    for n in 1..=terms {
        let conv: f64 = p[1..n]
            .iter()
            .zip(b[1..n].iter().rev())
            .map(|(pk, bnk)| pk * bnk)
            .sum();
        p[n] = b[n] - conv;
    }
    p
}

/// `r_N` for a given number of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnProbability {
    pub dim: Dimension,
    pub terms: usize,
    pub value: Value,
}

/// `r_N = sum_(n=1)^N P_n / (2d)^(2n)`, with `P_n` from inverting the
/// closed-form loop series. Exact mode is limited to `exact_threshold`
/// terms.
pub fn return_probability(
    dim: Dimension,
    terms: usize,
    mode: Mode,
    exact_threshold: usize,
) -> Result<ReturnProbability> {
    if terms == 0 {
        return Err(Error::domain("return probability needs at least one term"));
    }
    let value = match mode {
        Mode::Exact => {
            if terms > exact_threshold {
                return Err(Error::resource(format!(
                    "exact partial sum with {terms} terms exceeds the exact threshold {exact_threshold}"
                )));
            }
            Value::Exact(exact_partial_sums(dim, terms).pop().expect("terms >= 1"))
        }
        Mode::Float => Value::Float(float_partial_sums(dim, terms)[terms]),
    };
    Ok(ReturnProbability { dim, terms, value })
}

/// `r_0 ..= r_N` as exact rationals (`r_0 = 0`).
pub fn exact_partial_sums(dim: Dimension, terms: usize) -> Vec<BigRational> {
    let p = simple_loop_series(dim, terms);
    let base = BigInt::from(dim.weight_base());
    let mut denom = BigInt::one();
    let mut acc = BigRational::zero();
    let mut out = Vec::with_capacity(terms + 1);
    out.push(acc.clone());
    for pn in &p.coeffs()[1..] {
        denom *= &base;
        acc += BigRational::new(pn.clone(), denom.clone());
        out.push(acc.clone());
    }
    out
}

/// `r_0 ..= r_N` in floating point.
pub fn float_partial_sums(dim: Dimension, terms: usize) -> Vec<f64> {
    weighted_simple_coeffs(dim, terms)
        .iter()
        .scan(0.0f64, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect()
}

/// Weighted coefficient against its leading-order prediction
/// (`1/sqrt(pi n)` in 1D, `1/(pi n)` in 2D).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub n: u64,
    pub weighted_coefficient: f64,
    pub predicted: f64,
    pub ratio: f64,
}

/// Computed through `ln Γ`, so `n` may be far beyond where `C(2n, n)` fits
/// in a double.
pub fn asymptotic_ratio(dim: Dimension, n: u64) -> Result<AsymptoticReport> {
    if n == 0 {
        return Err(Error::domain("asymptotic ratio needs n >= 1"));
    }
    let d = dim.get() as f64;
    let nf = n as f64;
    // ln(C(2n, n) / 4^n)
    let ln_c = libm::lgamma(2.0 * nf + 1.0)
        - 2.0 * libm::lgamma(nf + 1.0)
        - 2.0 * nf * std::f64::consts::LN_2;
    let ln_weighted = d * ln_c;
    let ln_predicted = -0.5 * d * (std::f64::consts::PI * nf).ln();
    Ok(AsymptoticReport {
        n,
        weighted_coefficient: ln_weighted.exp(),
        predicted: ln_predicted.exp(),
        ratio: (ln_weighted - ln_predicted).exp(),
    })
}

/// `sum_(n=0)^N b_n`, the loop series evaluated at the radius of
/// convergence. Grows like `ln(N)/pi` in 2D and `2 sqrt(N/pi)` in 1D.
pub fn weighted_loop_partial_sum(dim: Dimension, terms: usize) -> f64 {
    weighted_loop_coeffs(dim, terms).iter().sum()
}

/// Checks `1 - 1/(b_0 + ... + b_N) <= r_N <= 1`. Exact when `terms` is
/// within `exact_threshold`, float otherwise.
pub fn recurrence_identity_check(
    dim: Dimension,
    terms: usize,
    exact_threshold: usize,
) -> Result<bool> {
    if terms == 0 {
        return Err(Error::domain("identity check needs at least one term"));
    }
    if terms <= exact_threshold {
        let r = exact_partial_sums(dim, terms).pop().expect("terms >= 1");
        let base = BigInt::from(dim.weight_base());
        let b_sum = loop_series(dim, terms)
            .coeffs()
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (n, b)| {
                acc + BigRational::new(b.clone(), base.pow(n as u32))
            });
        let lower = BigRational::one() - b_sum.recip();
        Ok(r >= lower && r <= BigRational::one())
    } else {
        let r = float_partial_sums(dim, terms)[terms];
        let lower = 1.0 - 1.0 / weighted_loop_partial_sum(dim, terms);
        Ok(r >= lower && r <= 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            closed_form_loop_count(Dimension::Two, 3),
            BigUint::from(400u32)
        );
        assert_eq!(
            closed_form_loop_count(Dimension::One, 0),
            BigUint::from(1u32)
        );
        assert_eq!(
            closed_form_loop_count(Dimension::Two, 2),
            BigUint::from(36u32)
        );
        assert_eq!(
            (0..8).map(catalan).collect::<Vec<_>>(),
            [1u32, 1, 2, 5, 14, 42, 132, 429].map(BigUint::from)
        );
    }

    #[test]
    fn central_binomial_matches_pascal() {
        // independent route: build Pascal's triangle row by row
        let mut row = vec![BigUint::one()];
        for m in 1..=80u32 {
            let mut next = vec![BigUint::one(); m as usize + 1];
            for k in 1..m as usize {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
            if m % 2 == 0 {
                assert_eq!(central_binomial(m / 2), row[m as usize / 2]);
            }
        }
    }

    #[test]
    fn loop_series_matches_closed_form() {
        let s = loop_series(Dimension::Two, 10);
        for n in 0..=10 {
            assert_eq!(
                s.coeff(n).unwrap(),
                &BigInt::from(closed_form_loop_count(Dimension::Two, n as u32))
            );
        }
    }

    #[test]
    fn convolution_route_matches_closed_form() {
        for dim in Dimension::ALL {
            assert_eq!(loop_series_by_convolution(dim, 40), loop_series(dim, 40));
        }
        assert_eq!(
            loop_series_by_convolution(Dimension::Two, 0),
            loop_series(Dimension::Two, 0)
        );
    }

    #[test]
    fn weighted_coefficient_examples() {
        assert_eq!(
            weighted_loop_coeff(Dimension::Two, 1, Mode::Exact).value,
            Value::Exact(q(1, 4))
        );
        assert_eq!(
            weighted_loop_coeff(Dimension::One, 2, Mode::Exact).value,
            Value::Exact(q(3, 8))
        );
        for dim in Dimension::ALL {
            assert_eq!(
                weighted_loop_coeff(dim, 0, Mode::Exact).value,
                Value::Exact(q(1, 1))
            );
            assert_eq!(
                weighted_loop_coeff(dim, 0, Mode::Float).value,
                Value::Float(1.0)
            );
        }
        assert_eq!(
            weighted_loop_coeff(Dimension::Two, 1, Mode::Float).value,
            Value::Float(0.25)
        );
    }

    #[test]
    fn weighted_float_matches_exact() {
        for dim in Dimension::ALL {
            let floats = weighted_loop_coeffs(dim, 200);
            for n in 0..=200u32 {
                let exact = weighted_loop_coeff(dim, n, Mode::Exact).value.to_f64();
                let rel = (floats[n as usize] - exact).abs() / exact;
                assert!(rel < 1e-13, "dim {dim} n {n}: rel {rel}");
            }
        }
    }

    #[test]
    fn return_probability_examples() {
        let t = DEFAULT_EXACT_THRESHOLD;
        let r = |d, n| return_probability(d, n, Mode::Exact, t).unwrap().value;
        assert_eq!(r(Dimension::Two, 1), Value::Exact(q(1, 4)));
        assert_eq!(r(Dimension::Two, 3), Value::Exact(q(95, 256)));
        assert_eq!(r(Dimension::One, 2), Value::Exact(q(5, 8)));
        assert_eq!(r(Dimension::Two, 3).to_string(), "95/256");
        assert_eq!(r(Dimension::One, 1).to_string(), "1/2");
    }

    #[test]
    fn return_probability_errors() {
        assert!(matches!(
            return_probability(Dimension::Two, 0, Mode::Float, 64),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            return_probability(Dimension::Two, 65, Mode::Exact, 64),
            Err(Error::ResourceLimit(_))
        ));
        assert!(return_probability(Dimension::Two, 65, Mode::Float, 64).is_ok());
        assert!(return_probability(Dimension::Two, 10, Mode::Exact, 10).is_ok());
    }

    #[test]
    fn float_simple_coefficients_match_exact_counts() {
        let exact = simple_loop_series(Dimension::Two, 5);
        let floats = weighted_simple_coeffs(Dimension::Two, 5);
        assert_eq!(floats[..3], [0.0, 0.25, 0.078125]);
        for (n, got) in floats.iter().enumerate().skip(1) {
            let want = exact.coeff(n).unwrap().to_f64().unwrap() / 16f64.powi(n as i32);
            assert!((got - want).abs() <= 1e-14 * want, "n {n}");
        }
    }

    #[test]
    fn asymptotic_examples() {
        let r = asymptotic_ratio(Dimension::Two, 1).unwrap();
        assert!((r.ratio - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((r.weighted_coefficient - 0.25).abs() < 1e-14);
        let r = asymptotic_ratio(Dimension::Two, 1000).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-3);
        // second-order term: 1 - 1/(4n)
        assert!((r.ratio - (1.0 - 1.0 / 4000.0)).abs() < 1e-6);
        let r = asymptotic_ratio(Dimension::One, 1000).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-3);
        assert!(asymptotic_ratio(Dimension::One, 0).is_err());
    }

    #[test]
    fn asymptotic_ratio_agrees_with_recurrence() {
        // independent route: the float ratio recurrence
        for dim in Dimension::ALL {
            let b = weighted_loop_coeffs(dim, 3000);
            for n in [1usize, 10, 100, 1000, 3000] {
                let rep = asymptotic_ratio(dim, n as u64).unwrap();
                let rel = (rep.weighted_coefficient - b[n]).abs() / b[n];
                assert!(rel < 1e-10, "dim {dim} n {n}: rel {rel}");
            }
        }
    }

    #[test]
    fn partial_sum_of_loop_weights() {
        assert_eq!(weighted_loop_partial_sum(Dimension::Two, 0), 1.0);
        assert_eq!(weighted_loop_partial_sum(Dimension::Two, 1), 1.25);
        // frozen from a 30-digit evaluation of the same sum
        let s = weighted_loop_partial_sum(Dimension::Two, 10_000);
        assert!((s - 3.998_042_121_255_225).abs() < 1e-11, "{s}");
        let s100 = weighted_loop_partial_sum(Dimension::Two, 100);
        assert!((s100 - 2.534_527_263_722_226).abs() < 1e-12, "{s100}");
    }

    #[test]
    fn identity_check_examples() {
        assert_eq!(recurrence_identity_check(Dimension::Two, 3, 64), Ok(true));
        assert_eq!(recurrence_identity_check(Dimension::One, 1, 64), Ok(true));
        // float branch
        assert_eq!(recurrence_identity_check(Dimension::Two, 3, 0), Ok(true));
        assert!(recurrence_identity_check(Dimension::Two, 0, 64).is_err());
    }

    #[test]
    fn rational_conversion() {
        assert_eq!(rational_to_f64(&q(95, 256)), 95.0 / 256.0);
        assert_eq!(rational_to_f64(&q(1, 3)), 1.0 / 3.0);
        assert_eq!(rational_to_f64(&q(0, 3)), 0.0);
        assert_eq!(rational_to_f64(&q(7, 1)), 7.0);
    }
}
