//! Innovation-capability adjustment of the classical allocation.
//!
//! Each player carries a factor `G_i` (shares summing to one) and its
//! deviation `ΔG_i = G_i - 1/n` from the uniform share. Two readings of the
//! adjustment are supported:
//!
//! * [`AdjustmentMode::PerCoalition`] adds `v(S)·ΔG_i` inside every weighted
//!   term of the Shapley sum, so the adjustment is `ΔG_i·A_i` with
//!   `A_i = Σ_{S∋i} W(|S|)·v(S)`. It does not preserve efficiency.
//! * [`AdjustmentMode::GrandCoalition`] adds `v(N)·ΔG_i` to the classical
//!   payoff, which preserves efficiency whenever `Σ G_i = 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{CharacteristicFunction, Coalition, GameError, PlayerSet};
use crate::rational::{ratio, to_exact_string, Rational};
use crate::shapley::{shapley_exact, weight_table, Allocation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjustError {
    #[error("expected {expected} factors, got {got}")]
    FactorCount { expected: usize, got: usize },
    #[error("factor for `{player}` is negative ({value})")]
    NegativeFactor { player: String, value: String },
    #[error("factors sum to {sum}, outside 1 ± {tolerance}")]
    FactorSum { sum: String, tolerance: String },
    #[error("factors sum to zero and cannot be normalized")]
    ZeroFactorSum,
    #[error("factors are defined for players {factors:?} but the game has {game:?}")]
    Misaligned {
        factors: Vec<String>,
        game: Vec<String>,
    },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Default tolerance on `|Σ G_i - 1|`.
pub fn default_factor_tolerance() -> Rational {
    ratio(1, 100)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorOptions {
    pub tolerance: Rational,
    /// Rescale `G` to sum to exactly one before taking deviations.
    pub normalize: bool,
}

impl Default for FactorOptions {
    fn default() -> Self {
        Self {
            tolerance: default_factor_tolerance(),
            normalize: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustmentFactors {
    pub players: PlayerSet,
    pub g: Vec<Rational>,
    pub delta_g: Vec<Rational>,
}

impl AdjustmentFactors {
    pub fn sum(&self) -> Rational {
        self.g.iter().fold(Rational::zero(), |acc, g| acc + g)
    }
}

/// Validates raw factors and derives `ΔG_i = G_i - 1/n`.
pub fn compute_deltas(
    players: &PlayerSet,
    g: Vec<Rational>,
    options: &FactorOptions,
) -> Result<AdjustmentFactors, AdjustError> {
    let n = players.len();
    if g.len() != n {
        return Err(AdjustError::FactorCount {
            expected: n,
            got: g.len(),
        });
    }
    if let Some(i) = g.iter().position(|x| x.is_negative()) {
        return Err(AdjustError::NegativeFactor {
            player: players.name(i).to_string(),
            value: to_exact_string(&g[i]),
        });
    }
    let sum = g.iter().fold(Rational::zero(), |acc, x| acc + x);
    let g = if options.normalize {
        if sum.is_zero() {
            return Err(AdjustError::ZeroFactorSum);
        }
        g.into_iter().map(|x| x / &sum).collect()
    } else {
        if (&sum - ratio(1, 1)).abs() > options.tolerance {
            return Err(AdjustError::FactorSum {
                sum: to_exact_string(&sum),
                tolerance: to_exact_string(&options.tolerance),
            });
        }
        g
    };
    let uniform = ratio(1, n as i64);
    let delta_g = g.iter().map(|x| x - &uniform).collect();
    Ok(AdjustmentFactors {
        players: players.clone(),
        g,
        delta_g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum AdjustmentMode {
    /// Deviation applied to every coalition value in the weighted sum.
    #[default]
    #[serde(rename = "eq3")]
    PerCoalition,
    /// Deviation applied once to the grand-coalition value.
    #[serde(rename = "grand")]
    GrandCoalition,
}

impl AdjustmentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AdjustmentMode::PerCoalition => "eq3",
            AdjustmentMode::GrandCoalition => "grand",
        }
    }
}

impl fmt::Display for AdjustmentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AdjustmentMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eq3" => Ok(AdjustmentMode::PerCoalition),
            "grand" => Ok(AdjustmentMode::GrandCoalition),
            other => Err(format!(
                "unknown adjustment mode `{other}` (expected eq3 or grand)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjustedAllocation {
    pub base: Allocation,
    pub mode: AdjustmentMode,
    pub adjusted_payoffs: Vec<Rational>,
    /// Adjusted minus classical payoff.
    pub delta_v: Vec<Rational>,
    /// `Σ adjusted - v(N)`.
    pub efficiency_gap: Rational,
    /// `true` where the adjusted payoff is at least the standalone value `v({i})`.
    pub rationality_flags: Vec<bool>,
}

impl AdjustedAllocation {
    /// Players whose adjusted payoff falls below their standalone value.
    pub fn irrational_players(&self) -> Vec<&str> {
        self.rationality_flags
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(i, _)| self.base.players.name(i))
            .collect()
    }
}

/// `A_i = Σ_{S∋i} W(|S|)·v(S)`, the weighted value mass a player's
/// per-coalition adjustment scales.
pub fn weighted_value_mass(
    game: &CharacteristicFunction,
    player: usize,
) -> Result<Rational, GameError> {
    let n = game.player_count();
    let weights = weight_table(n)?;
    let mut total = Rational::zero();
    for bits in 1..(1u64 << n) {
        let s = Coalition::from_bits(bits);
        if s.contains(player) {
            total += &weights[s.size()] * game.value(s);
        }
    }
    Ok(total)
}

pub fn adjusted_shapley(
    game: &CharacteristicFunction,
    factors: &AdjustmentFactors,
    mode: AdjustmentMode,
) -> Result<AdjustedAllocation, AdjustError> {
    if &factors.players != game.players() {
        return Err(AdjustError::Misaligned {
            factors: factors.players.names().to_vec(),
            game: game.players().names().to_vec(),
        });
    }
    let base = shapley_exact(game)?;
    let adjusted_payoffs: Vec<Rational> = match mode {
        AdjustmentMode::PerCoalition => base
            .terms
            .iter()
            .zip(&factors.delta_g)
            .map(|(terms, dg)| {
                terms.iter().fold(Rational::zero(), |acc, t| {
                    acc + &t.weight * (&t.marginal + game.value(t.coalition) * dg)
                })
            })
            .collect(),
        AdjustmentMode::GrandCoalition => base
            .payoffs
            .iter()
            .zip(&factors.delta_g)
            .map(|(phi, dg)| phi + game.grand_value() * dg)
            .collect(),
    };
    let delta_v = adjusted_payoffs
        .iter()
        .zip(&base.payoffs)
        .map(|(adj, phi)| adj - phi)
        .collect();
    let efficiency_gap = adjusted_payoffs
        .iter()
        .fold(Rational::zero(), |acc, p| acc + p)
        - game.grand_value();
    let rationality_flags = adjusted_payoffs
        .iter()
        .enumerate()
        .map(|(i, p)| p >= game.value(Coalition::singleton(i)))
        .collect();
    Ok(AdjustedAllocation {
        base,
        mode,
        adjusted_payoffs,
        delta_v,
        efficiency_gap,
        rationality_flags,
    })
}
