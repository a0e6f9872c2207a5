//! Two-dimensional walks as pairs of ±1 strings.
//!
//! Step `i` of the walk is read off the pair `(a[i], b[i])`:
//!
//! | `(a, b)`   | step |
//! |------------|------|
//! | `(+1, +1)` | R    |
//! | `(-1, -1)` | L    |
//! | `(-1, +1)` | U    |
//! | `(+1, -1)` | D    |
//!
//! Equivalently `a[i] = sign(dx - dy)` and `b[i] = sign(dx + dy)`, a 45°
//! rotation of the lattice. A walk is a loop exactly when both strings are
//! balanced, which gives `B_n = C(2n, n)²` loops of length `2n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::analysis::central_binomial;
use crate::walks::{Dimension, Direction, Walk};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A string over {+1, -1}, written with `+` and `-`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignString(Vec<Sign>);

impl SignString {
    pub fn new(entries: Vec<Sign>) -> Self {
        SignString(entries)
    }

    pub fn entries(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|s| s.value()).sum()
    }

    /// Equal numbers of `+1` and `-1`.
    pub fn is_balanced(&self) -> bool {
        self.sum() == 0
    }

    /// Running sums after each entry.
    pub fn prefix_sums(&self) -> Vec<i64> {
        self.0
            .iter()
            .scan(0, |acc, s| {
                *acc += s.value();
                Some(*acc)
            })
            .collect()
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

impl FromStr for SignString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::parse(format!("invalid sign {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignString)
    }
}

/// Two sign strings of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignPair {
    a: SignString,
    b: SignString,
}

impl SignPair {
    pub fn new(a: SignString, b: SignString) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::domain(format!(
                "sign strings have unequal lengths {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(SignPair { a, b })
    }

    pub fn a(&self) -> &SignString {
        &self.a
    }

    pub fn b(&self) -> &SignString {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        self.a.is_balanced() && self.b.is_balanced()
    }
}

/// `"a,b"`, e.g. `+---++,++---+`.
impl fmt::Display for SignPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

impl FromStr for SignPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("expected \"a,b\", got {s:?}")))?;
        SignPair::new(a.parse()?, b.parse()?)
    }
}

fn step_for(a: Sign, b: Sign) -> Direction {
    match (a, b) {
        (Sign::Plus, Sign::Plus) => Direction::Right,
        (Sign::Minus, Sign::Minus) => Direction::Left,
        (Sign::Minus, Sign::Plus) => Direction::Up,
        (Sign::Plus, Sign::Minus) => Direction::Down,
    }
}

fn signs_for(d: Direction) -> (Sign, Sign) {
    let (dx, dy) = d.vector();
    // |dx ± dy| = 1 for every unit step
    (
        Sign::of(dx - dy).expect("unit step"),
        Sign::of(dx + dy).expect("unit step"),
    )
}

/// The 2D walk whose `i`-th step is determined by `(a[i], b[i])`.
pub fn decode_pair(pair: &SignPair) -> Walk {
    let steps = pair
        .a
        .entries()
        .iter()
        .zip(pair.b.entries())
        .map(|(&a, &b)| step_for(a, b))
        .collect();
    Walk::new(Dimension::Two, steps).expect("decoded steps are 2D")
}

/// Inverse of [`decode_pair`]. Rejects 1D walks.
pub fn encode_walk(walk: &Walk) -> Result<SignPair> {
    if walk.dimension() != Dimension::Two {
        return Err(Error::domain(
            "sign-pair encoding is defined for 2D walks only",
        ));
    }
    let (a, b): (Vec<_>, Vec<_>) = walk.steps().iter().map(|&d| signs_for(d)).unzip();
    Ok(SignPair {
        a: SignString(a),
        b: SignString(b),
    })
}

/// Number of pairs of balanced strings of length `2n`: `C(2n, n)²`.
pub fn count_balanced_pairs(n: u32) -> BigUint {
    let c = central_binomial(n);
    &c * &c
}

/// Every balanced sign string of length `2n`, in lexicographic order with
/// `+` before `-`.
pub fn balanced_strings(n: u32) -> Vec<SignString> {
    fn go(plus: u32, minus: u32, cur: &mut Vec<Sign>, out: &mut Vec<SignString>) {
        if plus == 0 && minus == 0 {
            out.push(SignString(cur.clone()));
            return;
        }
        if plus > 0 {
            cur.push(Sign::Plus);
            go(plus - 1, minus, cur, out);
            cur.pop();
        }
        if minus > 0 {
            cur.push(Sign::Minus);
            go(plus, minus - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::with_capacity(2 * n as usize), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::LoopClass;

    fn pair(s: &str) -> SignPair {
        s.parse().unwrap()
    }

    #[test]
    fn first_example_figure_decodes() {
        let w = decode_pair(&pair("+---++,++---+"));
        assert_eq!(w.to_string(), "RULLDR");
        assert_eq!(w.classify(), LoopClass::SimpleLoop);
    }

    #[test]
    fn second_example_figure_encodes() {
        let w = Walk::parse(Dimension::Two, "RUDDLU").unwrap();
        let p = encode_walk(&w).unwrap();
        assert_eq!(p.a().to_string(), "+-++--");
        assert_eq!(p.b().to_string(), "++---+");
        assert_eq!(p.to_string(), "+-++--,++---+");
    }

    #[test]
    fn first_figure_read_in_reverse() {
        let w = Walk::parse(Dimension::Two, "RULLDR").unwrap();
        assert_eq!(encode_walk(&w).unwrap().to_string(), "+---++,++---+");
    }

    #[test]
    fn empty_pair_is_trivial_loop() {
        let w = decode_pair(&SignPair::default());
        assert_eq!(w.classify(), LoopClass::TrivialLoop);
        assert_eq!(
            encode_walk(&Walk::trivial(Dimension::Two)).unwrap(),
            SignPair::default()
        );
        assert_eq!(",".parse::<SignPair>().unwrap(), SignPair::default());
    }

    #[test]
    fn unbalanced_pair_is_not_a_loop() {
        let w = decode_pair(&pair("++,++"));
        assert_eq!(w.to_string(), "RR");
        assert_eq!(w.classify(), LoopClass::NotLoop);
    }

    #[test]
    fn unequal_lengths_rejected() {
        assert!(matches!("+,+-".parse::<SignPair>(), Err(Error::Domain(_))));
        assert!(matches!("+-".parse::<SignPair>(), Err(Error::Parse(_))));
        assert!(matches!("+x,+-".parse::<SignPair>(), Err(Error::Parse(_))));
    }

    #[test]
    fn one_dimensional_walks_rejected() {
        let w = Walk::parse(Dimension::One, "RL").unwrap();
        assert!(matches!(encode_walk(&w), Err(Error::Domain(_))));
    }

    #[test]
    fn balanced_pair_counts() {
        assert_eq!(count_balanced_pairs(0), BigUint::from(1u32));
        assert_eq!(count_balanced_pairs(1), BigUint::from(4u32));
        assert_eq!(count_balanced_pairs(2), BigUint::from(36u32));
        // listing: 2 balanced strings of length 2, so 4 pairs
        let strings = balanced_strings(1);
        assert_eq!(
            strings.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            ["+-", "-+"]
        );
        assert_eq!(balanced_strings(2).len(), 6);
        assert_eq!(balanced_strings(3).len(), 20);
    }

    #[test]
    fn prefix_sums_are_rotated_coordinates() {
        let w = Walk::parse(Dimension::Two, "RUDDLU").unwrap();
        let p = encode_walk(&w).unwrap();
        let pos: Vec<_> = w.positions().collect();
        let diff: Vec<_> = pos.iter().map(|(x, y)| x - y).collect();
        let sum: Vec<_> = pos.iter().map(|(x, y)| x + y).collect();
        assert_eq!(p.a().prefix_sums(), diff);
        assert_eq!(p.b().prefix_sums(), sum);
    }
}
