//! Scenario files: players, coalition values, and optional adjustment inputs.
//!
//! A scenario is a JSON document:
//!
//! ```json
//! {
//!   "players": ["A", "B", "C"],
//!   "coalitions": [
//!     { "members": ["A"], "value": "1000" },
//!     { "members": ["A", "B"], "value": "2000" }
//!   ],
//!   "factors": { "A": "0.6648", "B": "0.2633", "C": "0.0703" },
//!   "mode": "eq3",
//!   "normalize_factors": false
//! }
//! ```
//!
//! Instead of `factors` a scenario may carry an `ahp` block with `criteria`,
//! a `criteria_matrix`, and per-criterion `alternatives`, each either
//! `{ "matrix": [[...]] }` over the players or `{ "scores": [...] }` in player
//! order. Coalition values and factors are decimal strings; judgments may also
//! be fractions such as `"1/3"`.

use std::collections::HashSet;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::adjust::AdjustmentMode;
use crate::ahp::{build_hierarchy, ComparisonMatrix, CriteriaHierarchy, ScoreSource, WeightMethod};
use crate::game::{CharacteristicFunction, Coalition, GameBuilder, GameError, PlayerSet};
use crate::rational::{parse_decimal, parse_ratio, to_exact_string, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl ToString) -> ScenarioError {
    ScenarioError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

/// A judgment or score entry: the text as written plus its value.
#[derive(Debug, Clone, PartialEq)]
pub struct Judgment {
    text: String,
    value: f64,
}

impl Judgment {
    pub fn parse(text: &str) -> Result<Self, String> {
        let exact = parse_ratio(text).map_err(|e| e.to_string())?;
        Ok(Self {
            text: text.to_string(),
            value: to_f64(&exact),
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Alternative {
    Matrix(Vec<Vec<Judgment>>),
    Scores(Vec<Judgment>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct AhpSection {
    pub criteria: Vec<String>,
    pub criteria_matrix: Vec<Vec<Judgment>>,
    /// One entry per criterion, in criteria order.
    pub alternatives: Vec<Alternative>,
}

fn values(rows: &[Vec<Judgment>]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|r| r.iter().map(Judgment::value).collect())
        .collect()
}

impl AhpSection {
    pub fn criteria_matrix(&self) -> Result<ComparisonMatrix, crate::ahp::AhpError> {
        ComparisonMatrix::new(self.criteria.clone(), values(&self.criteria_matrix))
    }

    pub fn score_sources(
        &self,
        players: &PlayerSet,
    ) -> Result<Vec<ScoreSource>, crate::ahp::AhpError> {
        self.alternatives
            .iter()
            .map(|alt| match alt {
                Alternative::Matrix(rows) => {
                    ComparisonMatrix::new(players.names().to_vec(), values(rows))
                        .map(ScoreSource::Matrix)
                }
                Alternative::Scores(s) => {
                    Ok(ScoreSource::Direct(s.iter().map(Judgment::value).collect()))
                }
            })
            .collect()
    }

    pub fn hierarchy(
        &self,
        players: &PlayerSet,
        method: WeightMethod,
    ) -> Result<CriteriaHierarchy, crate::ahp::AhpError> {
        build_hierarchy(
            &self.criteria_matrix()?,
            players.names(),
            &self.score_sources(players)?,
            method,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionValue {
    pub coalition: Coalition,
    pub value: Rational,
}

/// A parsed and validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioFile {
    pub players: PlayerSet,
    /// In file order; member lists are canonicalized to player order.
    pub coalitions: Vec<CoalitionValue>,
    /// Per-player factors, in player order.
    pub factors: Option<Vec<Rational>>,
    pub ahp: Option<AhpSection>,
    pub mode: Option<AdjustmentMode>,
    pub normalize_factors: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    players: Vec<String>,
    coalitions: Vec<RawCoalition>,
    #[serde(default)]
    factors: Option<Map<String, Value>>,
    #[serde(default)]
    ahp: Option<RawAhp>,
    #[serde(default)]
    mode: Option<AdjustmentMode>,
    #[serde(default)]
    normalize_factors: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCoalition {
    members: Vec<String>,
    value: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAhp {
    criteria: Vec<String>,
    criteria_matrix: Vec<Vec<Value>>,
    alternatives: Map<String, Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlternative {
    #[serde(default)]
    matrix: Option<Vec<Vec<Value>>>,
    #[serde(default)]
    scores: Option<Vec<Value>>,
}

fn judgment(value: &Value, field: &str) -> Result<Judgment, ScenarioError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(field_error(field, "expected a number or a numeric string")),
    };
    Judgment::parse(&text).map_err(|e| field_error(field, e))
}

fn judgment_rows(rows: &[Vec<Value>], field: &str) -> Result<Vec<Vec<Judgment>>, ScenarioError> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| judgment(v, &format!("{field}[{i}][{j}]")))
                .collect()
        })
        .collect()
}

/// Parses and validates scenario text.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile, ScenarioError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;

    let players = PlayerSet::new(raw.players.clone()).map_err(|e| field_error("players", e))?;

    let mut coalitions = Vec::with_capacity(raw.coalitions.len());
    let mut seen = HashSet::new();
    for (i, c) in raw.coalitions.iter().enumerate() {
        let field = format!("coalitions[{i}]");
        if c.members.is_empty() {
            return Err(field_error(
                format!("{field}.members"),
                GameError::EmptyCoalition,
            ));
        }
        let mut coalition = Coalition::EMPTY;
        for (j, m) in c.members.iter().enumerate() {
            let index = players.index_of(m).ok_or_else(|| {
                field_error(
                    format!("{field}.members[{j}]"),
                    GameError::UnknownPlayer(m.clone()),
                )
            })?;
            if coalition.contains(index) {
                return Err(field_error(
                    format!("{field}.members[{j}]"),
                    format!("player `{m}` listed twice"),
                ));
            }
            coalition = coalition.with(index);
        }
        if !seen.insert(coalition) {
            return Err(field_error(
                field,
                GameError::DuplicateCoalition(players.describe(coalition)),
            ));
        }
        let value =
            parse_decimal(&c.value).map_err(|e| field_error(format!("{field}.value"), e))?;
        coalitions.push(CoalitionValue { coalition, value });
    }

    if raw.factors.is_some() && raw.ahp.is_some() {
        return Err(field_error(
            "factors",
            "give either `factors` or `ahp`, not both",
        ));
    }

    let factors = raw
        .factors
        .as_ref()
        .map(|map| parse_factors(map, &players))
        .transpose()?;
    let ahp = raw
        .ahp
        .as_ref()
        .map(|a| parse_ahp(a, &players))
        .transpose()?;

    Ok(ScenarioFile {
        players,
        coalitions,
        factors,
        ahp,
        mode: raw.mode,
        normalize_factors: raw.normalize_factors.unwrap_or(false),
    })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn parse_factors(
    map: &Map<String, Value>,
    players: &PlayerSet,
) -> Result<Vec<Rational>, ScenarioError> {
    if let Some(unknown) = map.keys().find(|k| players.index_of(k).is_none()) {
        return Err(field_error(
            format!("factors.{unknown}"),
            GameError::UnknownPlayer(unknown.clone()),
        ));
    }
    players
        .names()
        .iter()
        .map(|p| {
            let field = format!("factors.{p}");
            match map.get(p) {
                None => Err(field_error(field, "missing factor")),
                Some(Value::String(s)) => parse_decimal(s).map_err(|e| field_error(field, e)),
                Some(_) => Err(field_error(field, "expected a decimal string")),
            }
        })
        .collect()
}

fn parse_ahp(raw: &RawAhp, players: &PlayerSet) -> Result<AhpSection, ScenarioError> {
    let criteria_matrix = judgment_rows(&raw.criteria_matrix, "ahp.criteria_matrix")?;
    let section_criteria = raw.criteria.clone();
    if let Some(unknown) = raw
        .alternatives
        .keys()
        .find(|k| !section_criteria.contains(k))
    {
        return Err(field_error(
            format!("ahp.alternatives.{unknown}"),
            "not one of the listed criteria",
        ));
    }
    let mut alternatives = Vec::with_capacity(section_criteria.len());
    for criterion in &section_criteria {
        let field = format!("ahp.alternatives.{criterion}");
        let value = raw
            .alternatives
            .get(criterion)
            .ok_or_else(|| field_error(&field, "missing alternatives for this criterion"))?;
        let alt: RawAlternative =
            serde_json::from_value(value.clone()).map_err(|e| field_error(&field, e))?;
        let parsed = match (alt.matrix, alt.scores) {
            (Some(m), None) => Alternative::Matrix(judgment_rows(&m, &format!("{field}.matrix"))?),
            (None, Some(s)) => {
                if s.len() != players.len() {
                    return Err(field_error(
                        format!("{field}.scores"),
                        format!("expected {} scores, got {}", players.len(), s.len()),
                    ));
                }
                Alternative::Scores(
                    s.iter()
                        .enumerate()
                        .map(|(i, v)| judgment(v, &format!("{field}.scores[{i}]")))
                        .collect::<Result<_, _>>()?,
                )
            }
            _ => {
                return Err(field_error(
                    field,
                    "give exactly one of `matrix` or `scores`",
                ))
            }
        };
        alternatives.push(parsed);
    }
    let section = AhpSection {
        criteria: section_criteria,
        criteria_matrix,
        alternatives,
    };
    // reject malformed matrices and scores now rather than at synthesis time
    section
        .criteria_matrix()
        .map_err(|e| field_error("ahp.criteria_matrix", e))?;
    for (criterion, alt) in section.criteria.iter().zip(&section.alternatives) {
        let field = format!("ahp.alternatives.{criterion}");
        match alt {
            Alternative::Matrix(rows) => {
                ComparisonMatrix::new(players.names().to_vec(), values(rows))
                    .map_err(|e| field_error(format!("{field}.matrix"), e))?;
            }
            Alternative::Scores(s) => {
                crate::ahp::WeightVector::normalized(
                    players.names().to_vec(),
                    s.iter().map(Judgment::value).collect(),
                )
                .map_err(|e| field_error(format!("{field}.scores"), e))?;
            }
        }
    }
    Ok(section)
}

/// Reads and parses a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioFile, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_scenario(&text)
}

impl ScenarioFile {
    /// The characteristic function; every non-empty coalition must be given.
    pub fn game(&self) -> Result<CharacteristicFunction, GameError> {
        let mut builder = GameBuilder::new(self.players.clone())?;
        for c in &self.coalitions {
            builder.set(c.coalition, c.value.clone())?;
        }
        builder.build()
    }

    pub fn to_json_value(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("players".into(), json!(self.players.names()));
        let coalitions: Vec<Value> = self
            .coalitions
            .iter()
            .map(|c| {
                let members: Vec<&str> = c
                    .coalition
                    .members()
                    .map(|i| self.players.name(i))
                    .collect();
                json!({ "members": members, "value": to_exact_string(&c.value) })
            })
            .collect();
        doc.insert("coalitions".into(), Value::Array(coalitions));
        if let Some(f) = &self.factors {
            let map: Map<String, Value> = self
                .players
                .names()
                .iter()
                .zip(f)
                .map(|(p, g)| (p.clone(), Value::String(to_exact_string(g))))
                .collect();
            doc.insert("factors".into(), Value::Object(map));
        }
        if let Some(ahp) = &self.ahp {
            let rows = |rows: &[Vec<Judgment>]| -> Value {
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .map(|j| Value::String(j.text.clone()))
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>()
                    .into()
            };
            let alternatives: Map<String, Value> = ahp
                .criteria
                .iter()
                .zip(&ahp.alternatives)
                .map(|(c, alt)| {
                    let v = match alt {
                        Alternative::Matrix(m) => json!({ "matrix": rows(m) }),
                        Alternative::Scores(s) => {
                            let s: Vec<&str> = s.iter().map(|j| j.text.as_str()).collect();
                            json!({ "scores": s })
                        }
                    };
                    (c.clone(), v)
                })
                .collect();
            doc.insert(
                "ahp".into(),
                json!({
                    "criteria": ahp.criteria,
                    "criteria_matrix": rows(&ahp.criteria_matrix),
                    "alternatives": alternatives,
                }),
            );
        }
        if let Some(mode) = self.mode {
            doc.insert("mode".into(), Value::String(mode.as_str().into()));
        }
        if self.normalize_factors {
            doc.insert("normalize_factors".into(), Value::Bool(true));
        }
        Value::Object(doc)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_json_value()).expect("scenario serializes");
        s.push('\n');
        s
    }
}
