//! Scenario-to-report workflows, one per CLI subcommand.

use std::collections::HashMap;

use crate::adjust::{
    adjusted_shapley, compute_deltas, AdjustmentFactors, AdjustmentMode, FactorOptions,
};
use crate::ahp::{synthesize_factors, CriteriaHierarchy, WeightMethod};
use crate::error::Error;
use crate::game::{Coalition, PlayerSet};
use crate::rational::{from_f64, to_f64, Rational};
use crate::report::{ReportDocument, WeightBlock};
use crate::sampling::{sample_shapley, sample_shapley_with_workers, SamplingPlan};
use crate::scenario::{AhpSection, ScenarioFile};
use crate::shapley::{shapley_exact, validate_game};

#[derive(Debug, Clone, Default)]
pub struct AllocateOptions {
    /// Overrides the scenario's `mode`; the default is the per-coalition mode.
    pub mode: Option<AdjustmentMode>,
    /// Combined with the scenario's `normalize_factors` by OR.
    pub normalize: bool,
    pub method: WeightMethod,
    pub allow_inconsistent: bool,
}

pub fn classical(scenario: &ScenarioFile) -> Result<ReportDocument, Error> {
    let game = scenario.game()?;
    let allocation = shapley_exact(&game)?;
    Ok(
        ReportDocument::new("classical Shapley allocation", &scenario.players)
            .with_classical(&allocation)
            .with_validation(&validate_game(&game), &scenario.players, false),
    )
}

fn ahp_section(scenario: &ScenarioFile) -> Result<&AhpSection, Error> {
    scenario
        .ahp
        .as_ref()
        .ok_or_else(|| Error::Input("scenario has no `ahp` block".into()))
}

fn hierarchy_blocks(h: &CriteriaHierarchy) -> Vec<WeightBlock> {
    let mut blocks = vec![WeightBlock::from_priority("criteria", &h.criteria)];
    for (label, column) in h.criteria.weights.labels().iter().zip(&h.player_scores) {
        blocks.push(WeightBlock::from_priority(label.clone(), column));
    }
    blocks
}

pub fn ahp_weights(scenario: &ScenarioFile, method: WeightMethod) -> Result<ReportDocument, Error> {
    let h = ahp_section(scenario)?.hierarchy(&scenario.players, method)?;
    let mut doc = ReportDocument::new("AHP priority weights", &scenario.players);
    doc.weight_blocks = hierarchy_blocks(&h);
    Ok(doc)
}

pub fn ahp_synthesize(
    scenario: &ScenarioFile,
    method: WeightMethod,
    allow_inconsistent: bool,
) -> Result<ReportDocument, Error> {
    let mut h = ahp_section(scenario)?.hierarchy(&scenario.players, method)?;
    h.allow_inconsistent = allow_inconsistent;
    let g = synthesize_factors(&h)?;
    let mut doc = ReportDocument::new("AHP synthesized factors", &scenario.players);
    doc.weight_blocks = hierarchy_blocks(&h);
    doc.synthesized = Some(g.g);
    Ok(doc)
}

/// Factors from the scenario's `factors`, or synthesized from its `ahp` block.
pub fn resolve_factors(
    scenario: &ScenarioFile,
    options: &AllocateOptions,
) -> Result<AdjustmentFactors, Error> {
    let raw: Vec<Rational> = match (&scenario.factors, &scenario.ahp) {
        (Some(f), _) => f.clone(),
        (None, Some(ahp)) => {
            let mut h = ahp.hierarchy(&scenario.players, options.method)?;
            h.allow_inconsistent = options.allow_inconsistent;
            synthesize_factors(&h)?
                .g
                .into_iter()
                .map(|g| from_f64(g).ok_or_else(|| Error::Input(format!("non-finite factor {g}"))))
                .collect::<Result<_, _>>()?
        }
        (None, None) => {
            return Err(Error::Input(
                "scenario has neither `factors` nor an `ahp` block".into(),
            ))
        }
    };
    let factor_options = FactorOptions {
        normalize: options.normalize || scenario.normalize_factors,
        ..FactorOptions::default()
    };
    Ok(compute_deltas(&scenario.players, raw, &factor_options)?)
}

pub fn allocate(
    scenario: &ScenarioFile,
    options: &AllocateOptions,
) -> Result<ReportDocument, Error> {
    let game = scenario.game()?;
    let factors = resolve_factors(scenario, options)?;
    let mode = options.mode.or(scenario.mode).unwrap_or_default();
    let adjusted = adjusted_shapley(&game, &factors, mode)?;
    Ok(
        ReportDocument::new(format!("adjusted allocation ({mode})"), &scenario.players)
            .with_adjustment(&adjusted, &factors)
            .with_validation(&validate_game(&game), &scenario.players, false),
    )
}

/// Coalition values as floats, keyed by coalition; missing coalitions fail
/// when the sampler asks for them.
fn sparse_oracle(
    scenario: &ScenarioFile,
) -> impl Fn(Coalition) -> Result<f64, String> + Sync + Send {
    let values: HashMap<Coalition, f64> = scenario
        .coalitions
        .iter()
        .map(|c| (c.coalition, to_f64(&c.value)))
        .collect();
    let players: PlayerSet = scenario.players.clone();
    move |c: Coalition| {
        values
            .get(&c)
            .copied()
            .ok_or_else(|| format!("coalition {} has no value", players.describe(c)))
    }
}

pub fn sample(
    scenario: &ScenarioFile,
    plan: &SamplingPlan,
    workers: Option<usize>,
) -> Result<ReportDocument, Error> {
    let oracle = sparse_oracle(scenario);
    let report = match workers {
        Some(w) => sample_shapley_with_workers(oracle, &scenario.players, plan, w)?,
        None => sample_shapley(oracle, &scenario.players, plan)?,
    };
    Ok(
        ReportDocument::new("sampled Shapley estimate", &scenario.players)
            .with_estimates(&report, plan),
    )
}

pub fn validate(scenario: &ScenarioFile) -> Result<ReportDocument, Error> {
    let game = scenario.game()?;
    Ok(
        ReportDocument::new("superadditivity check", &scenario.players).with_validation(
            &validate_game(&game),
            &scenario.players,
            true,
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    const GAME: &str = r#"
        "players": ["A", "B"],
        "coalitions": [
          {"members": ["A"], "value": "10"},
          {"members": ["B"], "value": "20"},
          {"members": ["A", "B"], "value": "40"}
        ]"#;

    fn with(extra: &str) -> ScenarioFile {
        parse_scenario(&format!("{{{GAME}{extra}}}")).unwrap()
    }

    #[test]
    fn classical_without_factors() {
        let doc = classical(&with("")).unwrap();
        assert_eq!(
            doc.classical.unwrap(),
            vec![
                Rational::from_integer(15.into()),
                Rational::from_integer(25.into())
            ]
        );
        assert!(doc.adjustment.is_none());
    }

    #[test]
    fn allocate_needs_factors() {
        assert!(matches!(
            allocate(&with(""), &AllocateOptions::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn option_mode_overrides_the_file() {
        let s = with(r#", "factors": {"A": "0.75", "B": "0.25"}, "mode": "grand""#);
        let from_file = allocate(&s, &AllocateOptions::default()).unwrap();
        assert_eq!(
            from_file.adjustment.unwrap().mode,
            AdjustmentMode::GrandCoalition
        );
        let options = AllocateOptions {
            mode: Some(AdjustmentMode::PerCoalition),
            ..Default::default()
        };
        assert_eq!(
            allocate(&s, &options).unwrap().adjustment.unwrap().mode,
            AdjustmentMode::PerCoalition
        );
    }

    #[test]
    fn factors_can_come_from_the_hierarchy() {
        let s = with(
            r#", "ahp": {"criteria": ["R"], "criteria_matrix": [["1"]],
                 "alternatives": {"R": {"scores": ["3", "1"]}}}"#,
        );
        let f = resolve_factors(&s, &AllocateOptions::default()).unwrap();
        assert_eq!(
            f.g,
            vec![crate::rational::ratio(3, 4), crate::rational::ratio(1, 4)]
        );
        let doc = ahp_synthesize(&s, WeightMethod::Eigenvector, false).unwrap();
        assert_eq!(doc.synthesized.unwrap(), vec![0.75, 0.25]);
        assert_eq!(doc.weight_blocks.len(), 2);
    }

    #[test]
    fn sampling_a_sparse_game_names_the_gap() {
        let s = parse_scenario(
            r#"{"players": ["A", "B"], "coalitions": [{"members": ["A", "B"], "value": "1"}]}"#,
        )
        .unwrap();
        let err = sample(&s, &SamplingPlan::new(4, 0), None).unwrap_err();
        assert!(err.to_string().contains("has no value"), "{err}");
    }

    #[test]
    fn validate_lists_violations() {
        let s = parse_scenario(
            r#"{"players": ["A", "B"], "coalitions": [
                {"members": ["A"], "value": "10"}, {"members": ["B"], "value": "5"},
                {"members": ["A", "B"], "value": "5"}]}"#,
        )
        .unwrap();
        assert_eq!(validate(&s).unwrap().violations.unwrap().len(), 1);
    }
}
