//! Profit allocation for cooperative value-chain games.
//!
//! * [`game`] and [`shapley`]: coalition games and the exact classical
//!   Shapley allocation, computed with exact rationals.
//! * [`adjust`]: innovation-capability adjustment of that allocation.
//! * [`ahp`]: analytic hierarchy process weights and factor synthesis.
//! * [`sampling`]: seeded, reproducible permutation sampling for large games.
//! * [`scenario`], [`pipeline`] and [`report`]: the scenario file format, the
//!   per-command workflows, and rendered reports.

pub mod adjust;
pub mod ahp;
mod error;
pub mod game;
pub mod pipeline;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod scenario;
pub mod shapley;

pub use adjust::{
    adjusted_shapley, compute_deltas, AdjustedAllocation, AdjustmentFactors, AdjustmentMode,
    FactorOptions,
};
pub use ahp::{
    check_consistency, principal_weights, synthesize_factors, ComparisonMatrix, ConsistencyReport,
    CriteriaHierarchy, WeightVector,
};
pub use error::Error;
pub use game::{CharacteristicFunction, Coalition, GameBuilder, GameError, PlayerSet};
pub use rational::Rational;
pub use sampling::{sample_shapley, EstimateReport, SamplingPlan};
pub use scenario::{load_scenario, parse_scenario, ScenarioFile};
pub use shapley::{coalition_weight, shapley_exact, validate_game, Allocation, ShapleyTerm};
