//! Report documents and their table, CSV and JSON renderings.
//!
//! A [`ReportDocument`] only holds numbers produced by the engines; the
//! renderers format them and never recompute anything. Tables and CSV show
//! four decimals; structured output carries exact values.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::adjust::{AdjustedAllocation, AdjustmentFactors, AdjustmentMode};
use crate::ahp::{ConsistencyReport, Priority};
use crate::game::PlayerSet;
use crate::rational::{format_fixed, format_fixed_f64, to_exact_string, to_f64, Rational};
use crate::sampling::{EstimateReport, SamplingPlan};
use crate::shapley::{Allocation, ValidationReport};

/// Decimal places used by table and CSV output.
pub const DISPLAY_PLACES: usize = 4;

/// Header of allocation CSV output.
pub const ALLOCATION_CSV_HEADER: [&str; 5] =
    ["player", "classical", "adjusted", "delta_g", "delta_v"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Structured,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            "structured" => Ok(Format::Structured),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdjustmentSection {
    pub mode: AdjustmentMode,
    pub g: Vec<Rational>,
    pub delta_g: Vec<Rational>,
    pub adjusted: Vec<Rational>,
    pub delta_v: Vec<Rational>,
    pub efficiency_gap: Rational,
    pub rationality_flags: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSection {
    pub estimates: Vec<Rational>,
    pub std_error: Vec<f64>,
    pub permutations: u64,
    pub seed: u64,
    pub chunk_size: u64,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightBlock {
    pub source: String,
    pub labels: Vec<String>,
    pub weights: Vec<f64>,
    pub consistency: Option<ConsistencyReport>,
}

impl WeightBlock {
    pub fn from_priority(source: impl Into<String>, p: &Priority) -> Self {
        Self {
            source: source.into(),
            labels: p.weights.labels().to_vec(),
            weights: p.weights.weights().to_vec(),
            consistency: p.consistency,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationRow {
    pub left: String,
    pub right: String,
    pub union_value: Rational,
    pub separate_sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReportDocument {
    pub title: String,
    pub players: Vec<String>,
    pub classical: Option<Vec<Rational>>,
    pub adjustment: Option<AdjustmentSection>,
    pub estimates: Option<EstimateSection>,
    pub weight_blocks: Vec<WeightBlock>,
    /// Synthesized factors `G`, in player order.
    pub synthesized: Option<Vec<f64>>,
    pub violations: Option<Vec<ViolationRow>>,
    pub warnings: Vec<String>,
}

impl ReportDocument {
    pub fn new(title: impl Into<String>, players: &PlayerSet) -> Self {
        Self {
            title: title.into(),
            players: players.names().to_vec(),
            ..Self::default()
        }
    }

    pub fn with_classical(mut self, allocation: &Allocation) -> Self {
        self.classical = Some(allocation.payoffs.clone());
        self
    }

    pub fn with_adjustment(
        mut self,
        adjusted: &AdjustedAllocation,
        factors: &AdjustmentFactors,
    ) -> Self {
        self.classical = Some(adjusted.base.payoffs.clone());
        self.adjustment = Some(AdjustmentSection {
            mode: adjusted.mode,
            g: factors.g.clone(),
            delta_g: factors.delta_g.clone(),
            adjusted: adjusted.adjusted_payoffs.clone(),
            delta_v: adjusted.delta_v.clone(),
            efficiency_gap: adjusted.efficiency_gap.clone(),
            rationality_flags: adjusted.rationality_flags.clone(),
        });
        for name in adjusted.irrational_players() {
            self.warnings.push(format!(
                "adjusted payoff of `{name}` is below its standalone value"
            ));
        }
        self
    }

    pub fn with_estimates(mut self, report: &EstimateReport, plan: &SamplingPlan) -> Self {
        self.estimates = Some(EstimateSection {
            estimates: report.estimates.clone(),
            std_error: report.std_error.clone(),
            permutations: report.permutations,
            seed: plan.seed,
            chunk_size: plan.chunk_size,
            generator: report.generator.to_string(),
        });
        self
    }

    pub fn with_validation(
        mut self,
        report: &ValidationReport,
        players: &PlayerSet,
        list: bool,
    ) -> Self {
        self.warnings.extend(report.warnings(players));
        if list {
            self.violations = Some(
                report
                    .violations
                    .iter()
                    .map(|v| ViolationRow {
                        left: players.describe(v.left),
                        right: players.describe(v.right),
                        union_value: v.union_value.clone(),
                        separate_sum: v.separate_sum.clone(),
                    })
                    .collect(),
            );
        }
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Csv => self.to_csv(),
            Format::Structured => self.to_structured(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let fixed = |r: &Rational| format_fixed(r, DISPLAY_PLACES);
        let float = |x: f64| format_fixed_f64(x, DISPLAY_PLACES);
        let result = (|| -> csv::Result<()> {
            if let Some(classical) = &self.classical {
                w.write_record(ALLOCATION_CSV_HEADER)?;
                for (i, player) in self.players.iter().enumerate() {
                    let (adjusted, dg, dv) = match &self.adjustment {
                        Some(a) => (
                            fixed(&a.adjusted[i]),
                            fixed(&a.delta_g[i]),
                            fixed(&a.delta_v[i]),
                        ),
                        None => Default::default(),
                    };
                    w.write_record([player.as_str(), &fixed(&classical[i]), &adjusted, &dg, &dv])?;
                }
            } else if let Some(e) = &self.estimates {
                w.write_record(["player", "estimate", "std_error"])?;
                for (i, player) in self.players.iter().enumerate() {
                    w.write_record([
                        player.as_str(),
                        &fixed(&e.estimates[i]),
                        &float(e.std_error[i]),
                    ])?;
                }
            } else if let Some(violations) = &self.violations {
                w.write_record(["left", "right", "union_value", "separate_sum"])?;
                for v in violations {
                    w.write_record([
                        v.left.as_str(),
                        &v.right,
                        &fixed(&v.union_value),
                        &fixed(&v.separate_sum),
                    ])?;
                }
            } else {
                w.write_record(["source", "item", "weight"])?;
                for block in &self.weight_blocks {
                    for (label, weight) in block.labels.iter().zip(&block.weights) {
                        w.write_record([block.source.as_str(), label, &float(*weight)])?;
                    }
                }
                if let Some(g) = &self.synthesized {
                    for (player, gi) in self.players.iter().zip(g) {
                        w.write_record(["G", player.as_str(), &float(*gi)])?;
                    }
                }
            }
            Ok(())
        })();
        result.expect("writing CSV to memory");
        String::from_utf8(w.into_inner().expect("flushing CSV to memory")).expect("CSV is UTF-8")
    }

    pub fn to_table(&self) -> String {
        let fixed = |r: &Rational| format_fixed(r, DISPLAY_PLACES);
        let float = |x: f64| format_fixed_f64(x, DISPLAY_PLACES);
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);

        if let Some(classical) = &self.classical {
            let mut header = vec!["player", "classical"];
            let mut rows: Vec<Vec<String>> = self
                .players
                .iter()
                .zip(classical)
                .map(|(p, c)| vec![p.clone(), fixed(c)])
                .collect();
            if let Some(a) = &self.adjustment {
                header.extend(["G", "delta_g", "adjusted", "delta_v", "rational"]);
                for (i, row) in rows.iter_mut().enumerate() {
                    row.extend([
                        fixed(&a.g[i]),
                        fixed(&a.delta_g[i]),
                        fixed(&a.adjusted[i]),
                        fixed(&a.delta_v[i]),
                        if a.rationality_flags[i] { "yes" } else { "NO" }.to_string(),
                    ]);
                }
            }
            out.push_str(&grid(&header, &rows));
            if let Some(a) = &self.adjustment {
                let _ = writeln!(out, "mode: {}", a.mode);
                let _ = writeln!(out, "efficiency gap: {}", fixed(&a.efficiency_gap));
            }
        }

        if let Some(e) = &self.estimates {
            let rows: Vec<Vec<String>> = self
                .players
                .iter()
                .enumerate()
                .map(|(i, p)| vec![p.clone(), fixed(&e.estimates[i]), float(e.std_error[i])])
                .collect();
            out.push_str(&grid(&["player", "estimate", "std_error"], &rows));
            let _ = writeln!(
                out,
                "permutations: {}, seed: {}, chunk size: {}",
                e.permutations, e.seed, e.chunk_size
            );
            let _ = writeln!(out, "generator: {}", e.generator);
        }

        for block in &self.weight_blocks {
            let _ = writeln!(out, "[{}]", block.source);
            let rows: Vec<Vec<String>> = block
                .labels
                .iter()
                .zip(&block.weights)
                .map(|(l, w)| vec![l.clone(), float(*w)])
                .collect();
            out.push_str(&grid(&["item", "weight"], &rows));
            if let Some(r) = &block.consistency {
                let _ = writeln!(
                    out,
                    "lambda_max = {}, CI = {}, RI = {:.2}, CR = {} ({})",
                    float(r.lambda_max),
                    float(r.ci),
                    r.ri,
                    float(r.cr),
                    if r.pass { "consistent" } else { "INCONSISTENT" }
                );
            }
        }

        if let Some(g) = &self.synthesized {
            let _ = writeln!(out, "[synthesized factors]");
            let rows: Vec<Vec<String>> = self
                .players
                .iter()
                .zip(g)
                .map(|(p, gi)| vec![p.clone(), float(*gi)])
                .collect();
            out.push_str(&grid(&["player", "G"], &rows));
        }

        if let Some(v) = &self.violations {
            if v.is_empty() {
                out.push_str("no superadditivity violations\n");
            } else {
                let _ = writeln!(out, "{} superadditivity violation(s)", v.len());
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        out
    }

    pub fn to_structured(&self) -> String {
        let exact = |r: &Rational| json!({ "exact": to_exact_string(r), "approx": to_f64(r) });
        let exact_list = |v: &[Rational]| Value::Array(v.iter().map(exact).collect());
        let mut doc = Map::new();
        doc.insert("title".into(), json!(self.title));
        doc.insert("players".into(), json!(self.players));
        if let Some(c) = &self.classical {
            doc.insert("classical".into(), exact_list(c));
        }
        if let Some(a) = &self.adjustment {
            doc.insert(
                "adjustment".into(),
                json!({
                    "mode": a.mode.as_str(),
                    "g": exact_list(&a.g),
                    "delta_g": exact_list(&a.delta_g),
                    "adjusted": exact_list(&a.adjusted),
                    "delta_v": exact_list(&a.delta_v),
                    "efficiency_gap": exact(&a.efficiency_gap),
                    "rationality_flags": a.rationality_flags,
                }),
            );
        }
        if let Some(e) = &self.estimates {
            doc.insert(
                "estimates".into(),
                json!({
                    "values": exact_list(&e.estimates),
                    "std_error": e.std_error,
                    "permutations": e.permutations,
                    "seed": e.seed,
                    "chunk_size": e.chunk_size,
                    "generator": e.generator,
                }),
            );
        }
        if !self.weight_blocks.is_empty() {
            let blocks: Vec<Value> = self
                .weight_blocks
                .iter()
                .map(|b| {
                    let consistency = b.consistency.map(|r| {
                        json!({
                            "order": r.order,
                            "lambda_max": r.lambda_max,
                            "ci": r.ci,
                            "ri": r.ri,
                            "cr": r.cr,
                            "pass": r.pass,
                        })
                    });
                    json!({
                        "source": b.source,
                        "labels": b.labels,
                        "weights": b.weights,
                        "consistency": consistency,
                    })
                })
                .collect();
            doc.insert("weights".into(), Value::Array(blocks));
        }
        if let Some(g) = &self.synthesized {
            doc.insert("synthesized_factors".into(), json!(g));
        }
        if let Some(v) = &self.violations {
            let rows: Vec<Value> = v
                .iter()
                .map(|row| {
                    json!({
                        "left": row.left,
                        "right": row.right,
                        "union_value": exact(&row.union_value),
                        "separate_sum": exact(&row.separate_sum),
                    })
                })
                .collect();
            doc.insert("violations".into(), Value::Array(rows));
        }
        doc.insert("warnings".into(), json!(self.warnings));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Left-aligned first column, right-aligned numbers.
fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| -> String {
        let mut s = String::new();
        for (i, cell) in cells.enumerate() {
            if i == 0 {
                let _ = write!(s, "{cell:<width$}", width = widths[0]);
            } else {
                let _ = write!(s, "  {cell:>width$}", width = widths[i]);
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(&mut header.iter().copied());
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
    }
    out
}
