//! Shared fixtures and reference implementations for integration tests.
//!
//! Everything here is computed without the library's own formulas: the
//! Shapley oracle walks every player ordering explicitly.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valueshare::{CharacteristicFunction, Coalition, PlayerSet, Rational};

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn players(n: usize) -> PlayerSet {
    PlayerSet::new((1..=n).map(|i| format!("P{i}"))).unwrap()
}

/// v(A)=1000, v(B)=500, v(C)=300, v(AB)=2000, v(AC)=1500, v(BC)=1200, v(ABC)=3000.
pub fn case_study_game() -> CharacteristicFunction {
    let values = [0, 1000, 500, 2000, 300, 1500, 1200, 3000];
    CharacteristicFunction::from_fn(PlayerSet::new(["A", "B", "C"]).unwrap(), |c| {
        int(values[c.bits() as usize])
    })
    .unwrap()
}

pub fn case_study_factors() -> Vec<Rational> {
    vec![ratio(6648, 10000), ratio(2633, 10000), ratio(703, 10000)]
}

/// Game from a table of `2^n - 1` values for the non-empty coalitions.
pub fn game_from_values(n: usize, values: &[i64]) -> CharacteristicFunction {
    assert_eq!(values.len(), (1 << n) - 1);
    CharacteristicFunction::from_fn(players(n), |c| int(values[c.bits() as usize - 1])).unwrap()
}

pub fn random_game(rng: &mut ChaCha8Rng, n: usize) -> CharacteristicFunction {
    let values: Vec<i64> = (0..(1 << n) - 1)
        .map(|_| rng.random_range(-1000..=1000))
        .collect();
    game_from_values(n, &values)
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive rational factors summing to exactly one.
pub fn random_factors(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.random_range(1..=1000)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|r| ratio(r, total)).collect()
}

/// Games with 1..=max_n players and integer values in [-100, 100].
pub fn arb_game(max_n: usize) -> impl Strategy<Value = CharacteristicFunction> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-100i64..=100, (1 << n) - 1)
            .prop_map(move |values| game_from_values(n, &values))
    })
}

pub fn arb_game_of(n: usize) -> impl Strategy<Value = CharacteristicFunction> {
    proptest::collection::vec(-100i64..=100, (1 << n) - 1)
        .prop_map(move |values| game_from_values(n, &values))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for shorter in permutations(n - 1) {
        for pos in 0..=shorter.len() {
            let mut p = shorter.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Average marginal contribution over all `n!` orderings.
pub fn brute_force_shapley(game: &CharacteristicFunction) -> Vec<Rational> {
    let n = game.player_count();
    let orders = permutations(n);
    let mut totals = vec![Rational::zero(); n];
    for order in &orders {
        let mut before = Coalition::EMPTY;
        for &p in order {
            let after = before.with(p);
            totals[p] += game.value(after) - game.value(before);
            before = after;
        }
    }
    let count = int(orders.len() as i64);
    totals.into_iter().map(|t| t / &count).collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(n-s)!(s-1)!/n!` from factorials.
pub fn factorial_weight(n: usize, s: usize) -> Rational {
    Rational::new(factorial(n - s) * factorial(s - 1), factorial(n))
}

/// Per-coalition adjusted payoff by direct subset enumeration:
/// `Σ_{S∋i} W(|S|)·(v(S) - v(S\{i}) + v(S)·ΔG_i)`.
pub fn per_coalition_oracle(game: &CharacteristicFunction, delta_g: &[Rational]) -> Vec<Rational> {
    let n = game.player_count();
    (0..n)
        .map(|i| {
            let mut total = Rational::zero();
            for bits in 1u64..(1 << n) {
                let s = Coalition::from_bits(bits);
                if !s.contains(i) {
                    continue;
                }
                let w = factorial_weight(n, s.size());
                let marginal = game.value(s) - game.value(s.without(i));
                total += w * (marginal + game.value(s) * &delta_g[i]);
            }
            total
        })
        .collect()
}

/// `A_i = Σ_{S∋i} W(|S|)·v(S)` by direct enumeration.
pub fn value_mass_oracle(game: &CharacteristicFunction, i: usize) -> Rational {
    let n = game.player_count();
    (1u64..(1 << n))
        .map(Coalition::from_bits)
        .filter(|s| s.contains(i))
        .fold(Rational::zero(), |acc, s| {
            acc + factorial_weight(n, s.size()) * game.value(s)
        })
}

pub fn sum(values: &[Rational]) -> Rational {
    values.iter().fold(Rational::zero(), |acc, v| acc + v)
}

/// Reference weights of the seven-criterion hierarchy.
pub const CRITERIA_WEIGHTS: [f64; 7] = [0.4182, 0.2401, 0.1218, 0.1030, 0.0442, 0.0351, 0.0377];

/// Saaty-scale judgments whose principal eigenvector lies within 0.02 of
/// [`CRITERIA_WEIGHTS`] in every component.
pub fn criteria_judgments() -> Vec<Vec<f64>> {
    let upper: [&[f64]; 6] = [
        &[2.0, 3.0, 4.0, 9.0, 9.0, 9.0],
        &[2.0, 2.0, 5.0, 7.0, 6.0],
        &[1.0, 3.0, 4.0, 3.0],
        &[2.0, 3.0, 3.0],
        &[1.0, 1.0],
        &[1.0],
    ];
    let mut a = vec![vec![1.0; 7]; 7];
    for (i, row) in upper.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            let j = i + 1 + k;
            a[i][j] = v;
            a[j][i] = 1.0 / v;
        }
    }
    a
}

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Reciprocal matrix `a[i][j] = w_i / w_j`.
pub fn consistent_matrix(w: &[f64]) -> Vec<Vec<f64>> {
    w.iter()
        .map(|wi| w.iter().map(|wj| wi / wj).collect())
        .collect()
}

pub fn scenario_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

pub fn scenario_corpus() -> Vec<std::path::PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(scenario_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "scenario"))
        .collect();
    files.sort();
    files
}
