//! Monte Carlo estimate of the probability of returning to the origin
//! within a step budget.
//!
//! # Generator
//!
//! Randomness is counter-based, so every sample is reproducible on its own
//! regardless of how samples are scheduled:
//!
//! * the 64-bit seed is expanded to a ChaCha8 key with
//!   `rand_core::SeedableRng::seed_from_u64` (PCG32 expansion, as pinned by
//!   `rand_core` 0.9);
//! * sample `j` reads ChaCha8 stream `j` from word position 0;
//! * in 2D, step `s` uses bits `2(s mod 32) .. 2(s mod 32) + 2` of the
//!   `(s / 32)`-th `u64` drawn from the stream, indexing `R, L, U, D`;
//!   in 1D, step `s` uses bit `s mod 64` of word `s / 64`, indexing `R, L`.
//!
//! Worker `w` of `W` handles the samples with `j mod W = w` and counts
//! returns in an integer counter, so the estimate depends on the seed only:
//! it is identical for every worker count.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::analysis::{exact_partial_sums, rational_to_f64};
use crate::walks::{Dimension, Direction};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub dim: Dimension,
    /// Even, at least 2.
    pub max_steps: u64,
    pub samples: u64,
    pub seed: u64,
    /// Worker threads.
    pub streams: usize,
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_steps < 2 || !self.max_steps.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "max steps must be even and at least 2, got {}",
                self.max_steps
            )));
        }
        if self.samples == 0 {
            return Err(Error::domain("samples must be at least 1"));
        }
        if self.streams == 0 {
            return Err(Error::domain("streams must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub returned: u64,
    pub samples: u64,
    pub returned_fraction: f64,
    /// `sqrt(f (1 - f) / S)`.
    pub stderr: f64,
}

impl McEstimate {
    pub fn from_counts(returned: u64, samples: u64) -> Self {
        let f = returned as f64 / samples as f64;
        McEstimate {
            returned,
            samples,
            returned_fraction: f,
            stderr: (f * (1.0 - f) / samples as f64).sqrt(),
        }
    }
}

/// Per-sample step source; see the module docs for the bit layout.
struct StepSource {
    rng: ChaCha8Rng,
    word: u64,
    left: u32,
    bits: u32,
    dirs: &'static [Direction],
}

impl StepSource {
    fn new(base: &ChaCha8Rng, dim: Dimension, sample: u64) -> Self {
        let mut rng = base.clone();
        rng.set_stream(sample);
        rng.set_word_pos(0);
        StepSource {
            rng,
            word: 0,
            left: 0,
            bits: dim.get() as u32,
            dirs: dim.directions(),
        }
    }

    fn next_step(&mut self) -> (i64, i64) {
        if self.left == 0 {
            self.word = self.rng.next_u64();
            self.left = 64 / self.bits;
        }
        let mask = (1u64 << self.bits) - 1;
        let idx = (self.word & mask) as usize;
        self.word >>= self.bits;
        self.left -= 1;
        self.dirs[idx].vector()
    }
}

fn returns_within(base: &ChaCha8Rng, dim: Dimension, sample: u64, max_steps: u64) -> bool {
    let mut src = StepSource::new(base, dim, sample);
    let (mut x, mut y) = (0i64, 0i64);
    for _ in 0..max_steps {
        let (dx, dy) = src.next_step();
        x += dx;
        y += dy;
        if x == 0 && y == 0 {
            return true;
        }
    }
    false
}

/// Fraction of `samples` walks that visit the origin within `max_steps`.
pub fn simulate_return(cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let workers = (cfg.streams as u64).min(cfg.samples);
    let returned: u64 = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let base = &base;
                scope.spawn(move || {
                    (w..cfg.samples)
                        .step_by(workers as usize)
                        .filter(|&j| returns_within(base, cfg.dim, j, cfg.max_steps))
                        .count() as u64
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .sum()
    });
    Ok(McEstimate::from_counts(returned, cfg.samples))
}

/// Simulation at `2N` steps set against the exact `r_N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub dim: Dimension,
    pub terms: usize,
    pub max_steps: u64,
    pub seed: u64,
    pub estimate: McEstimate,
    /// `p/q`.
    pub exact: String,
    pub exact_value: f64,
    pub abs_error: f64,
    /// `|estimate - exact| / stderr`; infinite when the stderr is zero but
    /// the estimate is off.
    pub z_score: f64,
}

pub fn estimate_vs_exact(
    dim: Dimension,
    terms: usize,
    samples: u64,
    seed: u64,
    streams: usize,
    exact_threshold: usize,
) -> Result<Comparison> {
    if terms == 0 {
        return Err(Error::domain("comparison needs at least one term"));
    }
    if terms > exact_threshold {
        return Err(Error::resource(format!(
            "{terms} terms exceeds the exact threshold {exact_threshold}"
        )));
    }
    let cfg = McConfig {
        dim,
        max_steps: 2 * terms as u64,
        samples,
        seed,
        streams,
    };
    let estimate = simulate_return(&cfg)?;
    let exact = exact_partial_sums(dim, terms).pop().expect("terms >= 1");
    let exact_value = rational_to_f64(&exact);
    Ok(comparison(cfg, terms, estimate, &exact, exact_value))
}

fn comparison(
    cfg: McConfig,
    terms: usize,
    estimate: McEstimate,
    exact: &num_rational::BigRational,
    exact_value: f64,
) -> Comparison {
    let abs_error = (estimate.returned_fraction - exact_value).abs();
    let z_score = if abs_error == 0.0 {
        0.0
    } else if estimate.stderr == 0.0 {
        f64::INFINITY
    } else {
        abs_error / estimate.stderr
    };
    Comparison {
        dim: cfg.dim,
        terms,
        max_steps: cfg.max_steps,
        seed: cfg.seed,
        estimate,
        exact: format!("{}/{}", exact.numer(), exact.denom()),
        exact_value,
        abs_error,
        z_score,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(dim: Dimension, max_steps: u64, samples: u64, seed: u64) -> McConfig {
        McConfig {
            dim,
            max_steps,
            samples,
            seed,
            streams: 4,
        }
    }

    #[test]
    fn one_dimensional_two_steps() {
        let e = simulate_return(&cfg(Dimension::One, 2, 100_000, 11)).unwrap();
        assert!((e.returned_fraction - 0.5).abs() < 0.01);
    }

    #[test]
    fn two_dimensional_two_steps() {
        let e = simulate_return(&cfg(Dimension::Two, 2, 100_000, 11)).unwrap();
        assert!((e.returned_fraction - 0.25).abs() < 0.01);
    }

    #[test]
    fn two_dimensional_six_steps() {
        let e = simulate_return(&cfg(Dimension::Two, 6, 100_000, 5)).unwrap();
        assert!((e.returned_fraction - 95.0 / 256.0).abs() < 3.0 * e.stderr);
    }

    #[test]
    fn invalid_configs() {
        for c in [
            cfg(Dimension::Two, 0, 10, 0),
            cfg(Dimension::Two, 3, 10, 0),
            cfg(Dimension::Two, 2, 0, 0),
            McConfig {
                streams: 0,
                ..cfg(Dimension::Two, 2, 10, 0)
            },
        ] {
            assert!(matches!(simulate_return(&c), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let base = cfg(Dimension::Two, 10, 5_000, 99);
        let one = simulate_return(&McConfig { streams: 1, ..base }).unwrap();
        for w in [2, 3, 8, 64] {
            assert_eq!(
                simulate_return(&McConfig { streams: w, ..base }).unwrap(),
                one
            );
        }
        assert_eq!(
            simulate_return(&base).unwrap(),
            simulate_return(&base).unwrap()
        );
    }

    #[test]
    fn longer_budget_is_nested() {
        // same stream per sample: return within L implies return within L' > L
        for dim in Dimension::ALL {
            let mut prev = 0;
            for l in [2, 4, 8, 16, 64, 200] {
                let e = simulate_return(&cfg(dim, l, 2_000, 3)).unwrap();
                assert!(e.returned >= prev);
                prev = e.returned;
            }
        }
    }

    #[test]
    fn direction_frequencies_are_uniform() {
        let base = ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0u64; 4];
        for j in 0..2_000 {
            let mut src = StepSource::new(&base, Dimension::Two, j);
            for _ in 0..100 {
                let v = src.next_step();
                let d = Direction::from_vector(v).unwrap();
                counts[d as usize] += 1;
            }
        }
        // 200k draws, expected 50k each, sd ~ 194
        for c in counts {
            assert!((c as i64 - 50_000).abs() < 1_200, "{counts:?}");
        }
    }

    #[test]
    fn comparison_record() {
        let c = estimate_vs_exact(Dimension::Two, 1, 10, 1, 1, 64).unwrap();
        assert_eq!(c.exact, "1/4");
        assert_eq!(c.max_steps, 2);
        let f = c.estimate.returned_fraction;
        assert!((c.estimate.stderr - (f * (1.0 - f) / 10.0).sqrt()).abs() < 1e-15);
        assert!(matches!(
            estimate_vs_exact(Dimension::Two, 65, 10, 1, 1, 64),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn comparisons_within_four_sigma() {
        for (dim, n) in [(Dimension::Two, 3), (Dimension::One, 1)] {
            let c = estimate_vs_exact(dim, n, 100_000, 1, 4, 64).unwrap();
            assert!(c.z_score < 4.0, "{c:?}");
        }
    }
}
