//! Monte Carlo Shapley estimation by random permutation sampling.
//!
//! Permutations are split into fixed chunks of `chunk_size`. Chunk `c` draws
//! from a ChaCha8 stream keyed by `(seed, c)`, and chunk results are merged
//! in chunk order, so the report depends only on the game and the plan and
//! never on how many worker threads ran the chunks.
//!
//! Marginal contributions are accumulated exactly (as non-overlapping float
//! expansions), so the estimates, returned as rationals, sum to `v(N)` with
//! no rounding at all.

use std::convert::Infallible;
use std::fmt::Display;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::game::{CharacteristicFunction, Coalition, PlayerSet};
use crate::rational::{from_f64, to_f64, Rational};

/// Generator used for every chunk stream.
pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.9), stream = chunk index";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("sampling plan needs at least one permutation")]
    NoPermutations,
    #[error("chunk size must be at least 1")]
    ZeroChunkSize,
    #[error("oracle failed on permutation {permutation}: {message}")]
    Oracle { permutation: u64, message: String },
    #[error("oracle returned a non-finite value for {coalition} on permutation {permutation}")]
    NonFinite {
        permutation: u64,
        coalition: Coalition,
    },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingPlan {
    pub permutations: u64,
    pub seed: u64,
    pub chunk_size: u64,
}

impl SamplingPlan {
    pub const DEFAULT_CHUNK_SIZE: u64 = 1024;

    pub fn new(permutations: u64, seed: u64) -> Self {
        Self {
            permutations,
            seed,
            chunk_size: Self::DEFAULT_CHUNK_SIZE,
        }
    }

    fn validate(&self) -> Result<(), SamplingError> {
        if self.permutations == 0 {
            return Err(SamplingError::NoPermutations);
        }
        if self.chunk_size == 0 {
            return Err(SamplingError::ZeroChunkSize);
        }
        Ok(())
    }

    fn chunk_count(&self) -> u64 {
        self.permutations.div_ceil(self.chunk_size)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub players: PlayerSet,
    /// Mean marginal contribution per player, exact.
    pub estimates: Vec<Rational>,
    /// Standard error of each mean; NaN when only one permutation was drawn.
    pub std_error: Vec<f64>,
    pub permutations: u64,
    pub generator: &'static str,
}

impl EstimateReport {
    pub fn estimates_f64(&self) -> Vec<f64> {
        self.estimates.iter().map(to_f64).collect()
    }

    pub fn total(&self) -> Rational {
        self.estimates
            .iter()
            .fold(Rational::zero(), |acc, e| acc + e)
    }
}

/// Error-free running sum of floats, kept as non-overlapping partials.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct ExactSum {
    partials: Vec<f64>,
}

impl ExactSum {
    pub(crate) fn add(&mut self, mut x: f64) {
        let mut kept = 0;
        for j in 0..self.partials.len() {
            let mut y = self.partials[j];
            if x.abs() < y.abs() {
                std::mem::swap(&mut x, &mut y);
            }
            let hi = x + y;
            let lo = y - (hi - x);
            if lo != 0.0 {
                self.partials[kept] = lo;
                kept += 1;
            }
            x = hi;
        }
        self.partials.truncate(kept);
        self.partials.push(x);
    }

    pub(crate) fn merge(&mut self, other: &ExactSum) {
        for &p in &other.partials {
            self.add(p);
        }
    }

    pub(crate) fn to_rational(&self) -> Rational {
        self.partials.iter().fold(Rational::zero(), |acc, p| {
            acc + from_f64(*p).expect("finite partial")
        })
    }
}

/// Running per-player statistics for one chunk.
#[derive(Debug, Clone)]
struct ChunkStats {
    sums: Vec<ExactSum>,
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl ChunkStats {
    fn new(n: usize) -> Self {
        Self {
            sums: vec![ExactSum::default(); n],
            count: 0,
            mean: vec![0.0; n],
            m2: vec![0.0; n],
        }
    }

    fn merge(&mut self, other: &ChunkStats) {
        let total = self.count + other.count;
        if other.count == 0 {
            return;
        }
        for i in 0..self.sums.len() {
            self.sums[i].merge(&other.sums[i]);
            let delta = other.mean[i] - self.mean[i];
            let (na, nb, nt) = (self.count as f64, other.count as f64, total as f64);
            self.mean[i] += delta * nb / nt;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / nt;
        }
        self.count = total;
    }
}

fn run_chunk<F, E>(
    oracle: &F,
    n: usize,
    plan: &SamplingPlan,
    chunk: u64,
) -> Result<ChunkStats, SamplingError>
where
    F: Fn(Coalition) -> Result<f64, E>,
    E: Display,
{
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    rng.set_stream(chunk);
    let start = chunk * plan.chunk_size;
    let end = (start + plan.chunk_size).min(plan.permutations);
    let mut stats = ChunkStats::new(n);
    let mut order: Vec<usize> = (0..n).collect();
    for permutation in start..end {
        order.sort_unstable();
        order.shuffle(&mut rng);
        stats.count += 1;
        let mut coalition = Coalition::EMPTY;
        let mut previous = 0.0;
        for &i in &order {
            coalition = coalition.with(i);
            let value = oracle(coalition).map_err(|e| SamplingError::Oracle {
                permutation,
                message: e.to_string(),
            })?;
            if !value.is_finite() {
                return Err(SamplingError::NonFinite {
                    permutation,
                    coalition,
                });
            }
            stats.sums[i].add(value);
            stats.sums[i].add(-previous);
            let marginal = value - previous;
            let delta = marginal - stats.mean[i];
            stats.mean[i] += delta / stats.count as f64;
            stats.m2[i] += delta * (marginal - stats.mean[i]);
            previous = value;
        }
    }
    Ok(stats)
}

/// Estimates the Shapley allocation on the current rayon pool.
///
/// `oracle` maps a non-empty coalition to its value and must be pure; the
/// empty coalition is worth 0 and is never queried.
pub fn sample_shapley<F, E>(
    oracle: F,
    players: &PlayerSet,
    plan: &SamplingPlan,
) -> Result<EstimateReport, SamplingError>
where
    F: Fn(Coalition) -> Result<f64, E> + Sync,
    E: Display,
{
    plan.validate()?;
    let n = players.len();
    let chunks: Vec<Result<ChunkStats, SamplingError>> = (0..plan.chunk_count())
        .into_par_iter()
        .map(|c| run_chunk(&oracle, n, plan, c))
        .collect();

    // fixed merge order: chunk index
    let mut total = ChunkStats::new(n);
    for chunk in chunks {
        total.merge(&chunk?);
    }

    let m = total.count;
    let m_rational = Rational::from_integer(m.into());
    let estimates = total
        .sums
        .iter()
        .map(|s| s.to_rational() / &m_rational)
        .collect();
    let std_error = total
        .m2
        .iter()
        .map(|m2| {
            if m < 2 {
                f64::NAN
            } else {
                (m2 / (m - 1) as f64).sqrt() / (m as f64).sqrt()
            }
        })
        .collect();
    Ok(EstimateReport {
        players: players.clone(),
        estimates,
        std_error,
        permutations: m,
        generator: GENERATOR,
    })
}

/// Same as [`sample_shapley`] on a dedicated pool of `workers` threads.
pub fn sample_shapley_with_workers<F, E>(
    oracle: F,
    players: &PlayerSet,
    plan: &SamplingPlan,
    workers: usize,
) -> Result<EstimateReport, SamplingError>
where
    F: Fn(Coalition) -> Result<f64, E> + Sync + Send,
    E: Display,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SamplingError::Pool(e.to_string()))?;
    pool.install(|| sample_shapley(oracle, players, plan))
}

/// Oracle over a tabulated game's values, as floats.
pub fn table_oracle(
    game: &CharacteristicFunction,
) -> impl Fn(Coalition) -> Result<f64, Infallible> + Sync + Send {
    let table = game.to_f64_table();
    move |c: Coalition| Ok(table[c.bits() as usize])
}
