//! Walks on Z and Z², loop classification and exhaustive enumeration.
//!
//! Walks are written as strings over `R`, `L`, `U`, `D` (in that canonical
//! order); 1D walks only use `R` and `L`. The empty string is the trivial
//! loop.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Dimension of the lattice a walk lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Dimension {
    One,
    Two,
}

impl Dimension {
    pub const ALL: [Dimension; 2] = [Dimension::One, Dimension::Two];

    pub fn get(self) -> usize {
        match self {
            Dimension::One => 1,
            Dimension::Two => 2,
        }
    }

    /// The `2d` unit steps in canonical order.
    pub fn directions(self) -> &'static [Direction] {
        match self {
            Dimension::One => &Direction::ALL[..2],
            Dimension::Two => &Direction::ALL,
        }
    }

    /// Number of walks of length 2, i.e. `(2d)²`. A loop of half-length `n`
    /// carries probability weight `base^-n`.
    pub fn weight_base(self) -> u32 {
        match self {
            Dimension::One => 4,
            Dimension::Two => 16,
        }
    }
}

impl TryFrom<u8> for Dimension {
    type Error = Error;

    fn try_from(d: u8) -> Result<Self> {
        match d {
            1 => Ok(Dimension::One),
            2 => Ok(Dimension::Two),
            _ => Err(Error::domain(format!("dimension must be 1 or 2, got {d}"))),
        }
    }
}

impl From<Dimension> for u8 {
    fn from(d: Dimension) -> u8 {
        d.get() as u8
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.get())
    }
}

/// A unit step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Right,
    Left,
    Up,
    Down,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::Right,
        Direction::Left,
        Direction::Up,
        Direction::Down,
    ];

    /// Unit vector `(dx, dy)`; 1D steps have `dy = 0`.
    pub fn vector(self) -> (i64, i64) {
        match self {
            Direction::Right => (1, 0),
            Direction::Left => (-1, 0),
            Direction::Up => (0, 1),
            Direction::Down => (0, -1),
        }
    }

    pub fn from_vector(v: (i64, i64)) -> Option<Self> {
        match v {
            (1, 0) => Some(Direction::Right),
            (-1, 0) => Some(Direction::Left),
            (0, 1) => Some(Direction::Up),
            (0, -1) => Some(Direction::Down),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Right => 'R',
            Direction::Left => 'L',
            Direction::Up => 'U',
            Direction::Down => 'D',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'R' => Some(Direction::Right),
            'L' => Some(Direction::Left),
            'U' => Some(Direction::Up),
            'D' => Some(Direction::Down),
            _ => None,
        }
    }

    /// Smallest dimension this step belongs to.
    pub fn dimension(self) -> Dimension {
        match self {
            Direction::Right | Direction::Left => Dimension::One,
            Direction::Up | Direction::Down => Dimension::Two,
        }
    }

    pub fn fits(self, dim: Dimension) -> bool {
        self.dimension().get() <= dim.get()
    }
}

/// Classification of a walk with respect to returns to the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LoopClass {
    NotLoop,
    TrivialLoop,
    /// Nontrivial loop that first returns to the origin at its last step.
    SimpleLoop,
    /// Loop that visits the origin strictly before its last step.
    CompositeLoop,
}

impl LoopClass {
    pub fn is_loop(self) -> bool {
        self != LoopClass::NotLoop
    }
}

/// A finite walk starting at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    dim: Dimension,
    steps: Vec<Direction>,
}

impl Walk {
    pub fn new(dim: Dimension, steps: Vec<Direction>) -> Result<Self> {
        if let Some(bad) = steps.iter().find(|s| !s.fits(dim)) {
            return Err(Error::domain(format!(
                "step {} does not belong to dimension {dim}",
                bad.symbol()
            )));
        }
        Ok(Walk { dim, steps })
    }

    pub fn trivial(dim: Dimension) -> Self {
        Walk {
            dim,
            steps: Vec::new(),
        }
    }

    /// Parses the `RLUD` text form for the given dimension.
    pub fn parse(dim: Dimension, text: &str) -> Result<Self> {
        let steps = text
            .chars()
            .map(|c| {
                Direction::from_symbol(c)
                    .filter(|d| d.fits(dim))
                    .ok_or_else(|| {
                        Error::parse(format!("invalid step {c:?} in {dim}D walk {text:?}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Walk { dim, steps })
    }

    pub fn dimension(&self) -> Dimension {
        self.dim
    }

    pub fn steps(&self) -> &[Direction] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Positions after each step, excluding the starting origin.
    pub fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.steps.iter().scan((0i64, 0i64), |pos, s| {
            let (dx, dy) = s.vector();
            pos.0 += dx;
            pos.1 += dy;
            Some(*pos)
        })
    }

    /// Componentwise sum of the steps, as a vector of length `d`.
    pub fn displacement(&self) -> Vec<i64> {
        let (x, y) = self.end_point();
        match self.dim {
            Dimension::One => vec![x],
            Dimension::Two => vec![x, y],
        }
    }

    pub fn end_point(&self) -> (i64, i64) {
        self.steps.iter().fold((0, 0), |(x, y), s| {
            let (dx, dy) = s.vector();
            (x + dx, y + dy)
        })
    }

    pub fn is_loop(&self) -> bool {
        self.end_point() == (0, 0)
    }

    /// Smallest `k >= 1` such that the first `k` steps end at the origin.
    pub fn first_return_index(&self) -> Option<usize> {
        self.positions().position(|p| p == (0, 0)).map(|i| i + 1)
    }

    pub fn classify(&self) -> LoopClass {
        if self.steps.is_empty() {
            return LoopClass::TrivialLoop;
        }
        match self.first_return_index() {
            None => LoopClass::NotLoop,
            Some(k) if k == self.len() => LoopClass::SimpleLoop,
            Some(_) if self.is_loop() => LoopClass::CompositeLoop,
            Some(_) => LoopClass::NotLoop,
        }
    }

    /// Splits a nontrivial loop at its first return into a simple loop and
    /// the (possibly trivial) loop that follows it.
    pub fn split_first_return(&self) -> Option<(Walk, Walk)> {
        if !self.is_loop() {
            return None;
        }
        let k = self.first_return_index()?;
        let (head, tail) = self.steps.split_at(k);
        Some((
            Walk {
                dim: self.dim,
                steps: head.to_vec(),
            },
            Walk {
                dim: self.dim,
                steps: tail.to_vec(),
            },
        ))
    }

    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.dim != other.dim {
            return Err(Error::domain(
                "cannot concatenate walks of different dimension",
            ));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk {
            dim: self.dim,
            steps,
        })
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps
            .iter()
            .try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

/// Parses with the smallest dimension that accommodates every step.
impl FromStr for Walk {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let dim = if s.contains(['U', 'D']) {
            Dimension::Two
        } else {
            Dimension::One
        };
        Walk::parse(dim, s)
    }
}

/// Free-function form of [`Walk::displacement`].
pub fn displacement(w: &Walk) -> Vec<i64> {
    w.displacement()
}

/// Free-function form of [`Walk::classify`].
pub fn classify(w: &Walk) -> LoopClass {
    w.classify()
}

/// Free-function form of [`Walk::first_return_index`].
pub fn first_return_index(w: &Walk) -> Option<usize> {
    w.first_return_index()
}

/// Largest half-length the enumeration oracle will accept, per dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumCap {
    pub one: u32,
    pub two: u32,
}

impl EnumCap {
    pub const DEFAULT_ONE: u32 = 10;
    pub const DEFAULT_TWO: u32 = 6;

    /// The same cap for both dimensions.
    pub fn uniform(n: u32) -> Self {
        EnumCap { one: n, two: n }
    }

    pub fn for_dim(&self, dim: Dimension) -> u32 {
        match dim {
            Dimension::One => self.one,
            Dimension::Two => self.two,
        }
    }

    fn check(&self, dim: Dimension, n: u32) -> Result<()> {
        let cap = self.for_dim(dim);
        if n > cap {
            return Err(Error::resource(format!(
                "enumerating {dim}D walks of length {} exceeds the cap n <= {cap}",
                2 * n as u64
            )));
        }
        Ok(())
    }
}

impl Default for EnumCap {
    fn default() -> Self {
        EnumCap {
            one: Self::DEFAULT_ONE,
            two: Self::DEFAULT_TWO,
        }
    }
}

/// Number of loops of length `2n`, by depth-first enumeration.
pub fn enumerate_loop_count(dim: Dimension, n: u32, cap: EnumCap) -> Result<u64> {
    cap.check(dim, n)?;
    Ok(count_closing(dim.directions(), (0, 0), 2 * n, false))
}

/// Number of simple (first-return) loops of length `2n`, by depth-first
/// enumeration. `n = 0` is rejected: the trivial loop is not simple.
pub fn enumerate_simple_loop_count(dim: Dimension, n: u32, cap: EnumCap) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("simple loops are nontrivial; n must be >= 1"));
    }
    cap.check(dim, n)?;
    Ok(count_closing(dim.directions(), (0, 0), 2 * n, true))
}

// Counts continuations of length `remaining` from `pos` that end at the
// origin. Branches that can no longer reach the origin are cut; with
// `avoid_origin` so are branches touching the origin before the end.
fn count_closing(dirs: &[Direction], pos: (i64, i64), remaining: u32, avoid_origin: bool) -> u64 {
    let dist = pos.0.unsigned_abs() + pos.1.unsigned_abs();
    if dist > remaining as u64 {
        return 0;
    }
    if remaining == 0 {
        return u64::from(pos == (0, 0));
    }
    dirs.iter()
        .map(|d| {
            let (dx, dy) = d.vector();
            let next = (pos.0 + dx, pos.1 + dy);
            if avoid_origin && next == (0, 0) && remaining > 1 {
                0
            } else {
                count_closing(dirs, next, remaining - 1, avoid_origin)
            }
        })
        .sum()
}

/// Calls `f` on every walk of length `len`, in lexicographic order of the
/// canonical direction order.
pub fn for_each_walk(dim: Dimension, len: usize, mut f: impl FnMut(&[Direction])) {
    let dirs = dim.directions();
    let mut idx = vec![0usize; len];
    let mut steps = vec![dirs[0]; len];
    loop {
        f(&steps);
        // odometer increment, last position fastest
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < dirs.len() {
                steps[i] = dirs[idx[i]];
                break;
            }
            idx[i] = 0;
            steps[i] = dirs[0];
        }
    }
}

/// Calls `f` on every loop of length `2n`, pruning branches that cannot
/// close. Subject to the same cap as the counting oracle.
pub fn for_each_loop(
    dim: Dimension,
    n: u32,
    cap: EnumCap,
    mut f: impl FnMut(&[Direction]),
) -> Result<()> {
    cap.check(dim, n)?;
    let mut buf = Vec::with_capacity(2 * n as usize);
    visit_loops(dim.directions(), (0, 0), 2 * n, &mut buf, &mut f);
    Ok(())
}

fn visit_loops(
    dirs: &[Direction],
    pos: (i64, i64),
    remaining: u32,
    buf: &mut Vec<Direction>,
    f: &mut impl FnMut(&[Direction]),
) {
    if pos.0.unsigned_abs() + pos.1.unsigned_abs() > remaining as u64 {
        return;
    }
    if remaining == 0 {
        f(buf);
        return;
    }
    for &d in dirs {
        let (dx, dy) = d.vector();
        buf.push(d);
        visit_loops(dirs, (pos.0 + dx, pos.1 + dy), remaining - 1, buf, f);
        buf.pop();
    }
}
