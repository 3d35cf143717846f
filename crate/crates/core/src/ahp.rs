//! Analytic hierarchy process: priority weights from reciprocal pairwise
//! comparison matrices, the consistency-ratio gate, and synthesis of
//! per-player factors from a two-level criteria hierarchy.

use thiserror::Error;

/// Reciprocity tolerance on `a[i][j] * a[j][i]`.
pub const RECIPROCAL_TOLERANCE: f64 = 1e-9;

/// Tolerance on `Σ w = 1` for weight vectors.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Judgments are acceptable while the consistency ratio stays below this.
pub const CONSISTENCY_THRESHOLD: f64 = 0.1;

/// Successive-iterate max-norm change at which power iteration stops.
pub const POWER_TOLERANCE: f64 = 1e-12;

pub const POWER_MAX_ITERATIONS: usize = 10_000;

/// Saaty's random consistency index for matrix orders 1 through 10.
const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AhpError {
    #[error("comparison matrix has no items")]
    Empty,
    #[error("expected {expected} labels for a {expected}x{expected} matrix, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) = {value} is not a finite positive number")]
    NonPositive { row: usize, col: usize, value: f64 },
    #[error("diagonal entry ({0},{0}) must be 1")]
    Diagonal(usize),
    #[error("entries ({row},{col}) and ({col},{row}) are not reciprocal (product {product})")]
    NotReciprocal {
        row: usize,
        col: usize,
        product: f64,
    },
    #[error("no random index is tabulated for order {0} (supported: 1..=10)")]
    UnsupportedOrder(usize),
    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("weights must be finite and positive; `{0}` is not")]
    BadWeight(String),
    #[error("weights sum to {0}, not 1")]
    WeightSum(f64),
    #[error("{0}")]
    Hierarchy(String),
    #[error("judgments for {source_name} are inconsistent (CR = {cr:.4}, threshold {CONSISTENCY_THRESHOLD})")]
    Inconsistent { source_name: String, cr: f64 },
}

/// Square reciprocal judgment matrix with item labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl ComparisonMatrix {
    #[allow(clippy::needless_range_loop)]
    pub fn new(labels: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self, AhpError> {
        let n = entries.len();
        if n == 0 {
            return Err(AhpError::Empty);
        }
        if labels.len() != n {
            return Err(AhpError::LabelCount {
                expected: n,
                got: labels.len(),
            });
        }
        check_labels(&labels)?;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(AhpError::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: n,
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !(x.is_finite() && x > 0.0) {
                    return Err(AhpError::NonPositive {
                        row: i,
                        col: j,
                        value: x,
                    });
                }
            }
        }
        for i in 0..n {
            if (entries[i][i] - 1.0).abs() > RECIPROCAL_TOLERANCE {
                return Err(AhpError::Diagonal(i));
            }
            for j in (i + 1)..n {
                let product = entries[i][j] * entries[j][i];
                if (product - 1.0).abs() > RECIPROCAL_TOLERANCE {
                    return Err(AhpError::NotReciprocal {
                        row: i,
                        col: j,
                        product,
                    });
                }
            }
        }
        Ok(Self { labels, entries })
    }

    /// The perfectly consistent matrix `a[i][j] = w_i / w_j`.
    pub fn from_weights(labels: Vec<String>, weights: &[f64]) -> Result<Self, AhpError> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(AhpError::BadWeight(w.to_string()));
        }
        let entries = weights
            .iter()
            .map(|wi| weights.iter().map(|wj| wi / wj).collect())
            .collect();
        Self::new(labels, entries)
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }
}

fn check_labels(labels: &[String]) -> Result<(), AhpError> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(AhpError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Positive weights over labelled items, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl WeightVector {
    pub fn new(labels: Vec<String>, weights: Vec<f64>) -> Result<Self, AhpError> {
        Self::validate_shape(&labels, &weights)?;
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(AhpError::WeightSum(sum));
        }
        Ok(Self { labels, weights })
    }

    /// Rescales positive raw scores so they sum to one.
    pub fn normalized(labels: Vec<String>, raw: Vec<f64>) -> Result<Self, AhpError> {
        Self::validate_shape(&labels, &raw)?;
        let sum: f64 = raw.iter().sum();
        let weights = raw.into_iter().map(|x| x / sum).collect();
        Ok(Self { labels, weights })
    }

    fn validate_shape(labels: &[String], weights: &[f64]) -> Result<(), AhpError> {
        if weights.is_empty() {
            return Err(AhpError::Empty);
        }
        if labels.len() != weights.len() {
            return Err(AhpError::LabelCount {
                expected: weights.len(),
                got: labels.len(),
            });
        }
        check_labels(labels)?;
        if let Some((l, _)) = labels
            .iter()
            .zip(weights)
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(AhpError::BadWeight(l.clone()));
        }
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.weights[i])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    pub order: usize,
    pub lambda_max: f64,
    pub ci: f64,
    pub ri: f64,
    pub cr: f64,
    pub pass: bool,
}

impl ConsistencyReport {
    /// Derives CI, RI and CR for a matrix of the given order.
    ///
    /// Orders 1 and 2 are always consistent: CI and CR are reported as 0.
    pub fn from_lambda(lambda_max: f64, order: usize) -> Result<Self, AhpError> {
        let ri = random_index(order).ok_or(AhpError::UnsupportedOrder(order))?;
        let (ci, cr) = if order <= 2 {
            (0.0, 0.0)
        } else {
            let ci = (lambda_max - order as f64) / (order as f64 - 1.0);
            (ci, ci / ri)
        };
        Ok(Self {
            order,
            lambda_max,
            ci,
            ri,
            cr,
            pass: cr < CONSISTENCY_THRESHOLD,
        })
    }
}

pub fn random_index(order: usize) -> Option<f64> {
    order
        .checked_sub(1)
        .and_then(|i| RANDOM_INDEX.get(i).copied())
}

/// Strict `cr < 0.1`.
pub fn check_consistency(report: &ConsistencyReport) -> bool {
    report.cr < CONSISTENCY_THRESHOLD
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMethod {
    /// Normalized dominant right eigenvector by power iteration.
    #[default]
    Eigenvector,
    /// Normalized row geometric means.
    GeometricMean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIteration {
    pub vector: Vec<f64>,
    pub lambda_max: f64,
    pub iterations: usize,
}

fn mat_vec(a: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(aij, xj)| aij * xj).sum())
        .collect()
}

/// `mean((A·w)_i / w_i)`.
fn rayleigh_ratio(a: &[Vec<f64>], w: &[f64]) -> f64 {
    let aw = mat_vec(a, w);
    aw.iter().zip(w).map(|(x, wi)| x / wi).sum::<f64>() / w.len() as f64
}

/// Power iteration on a positive square matrix, normalizing each iterate to
/// unit sum. Stops once the max-norm change between iterates drops below
/// `tolerance`.
pub fn power_iteration(
    a: &[Vec<f64>],
    tolerance: f64,
    max_iterations: usize,
) -> Result<PowerIteration, AhpError> {
    let n = a.len();
    if n == 0 {
        return Err(AhpError::Empty);
    }
    let mut w = vec![1.0 / n as f64; n];
    for iteration in 1..=max_iterations {
        let mut next = mat_vec(a, &w);
        let sum: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= sum);
        let change = next
            .iter()
            .zip(&w)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        w = next;
        if change < tolerance {
            return Ok(PowerIteration {
                lambda_max: rayleigh_ratio(a, &w),
                vector: w,
                iterations: iteration,
            });
        }
    }
    Err(AhpError::NoConvergence {
        iterations: max_iterations,
    })
}

pub fn geometric_mean_weights(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len() as f64;
    let means: Vec<f64> = a
        .iter()
        .map(|row| (row.iter().map(|x| x.ln()).sum::<f64>() / n).exp())
        .collect();
    let sum: f64 = means.iter().sum();
    means.into_iter().map(|m| m / sum).collect()
}

/// Eigenvector priority weights and their consistency verdict.
pub fn principal_weights(
    m: &ComparisonMatrix,
) -> Result<(WeightVector, ConsistencyReport), AhpError> {
    weights_with(m, WeightMethod::Eigenvector)
}

pub fn weights_with(
    m: &ComparisonMatrix,
    method: WeightMethod,
) -> Result<(WeightVector, ConsistencyReport), AhpError> {
    // order check first so unsupported sizes fail before any iteration
    random_index(m.order()).ok_or(AhpError::UnsupportedOrder(m.order()))?;
    let (w, lambda_max) = match method {
        WeightMethod::Eigenvector => {
            let p = power_iteration(m.entries(), POWER_TOLERANCE, POWER_MAX_ITERATIONS)?;
            (p.vector, p.lambda_max)
        }
        WeightMethod::GeometricMean => {
            let w = geometric_mean_weights(m.entries());
            let lambda = rayleigh_ratio(m.entries(), &w);
            (w, lambda)
        }
    };
    let report = ConsistencyReport::from_lambda(lambda_max, m.order())?;
    let weights = WeightVector::normalized(m.labels().to_vec(), w)?;
    Ok((weights, report))
}

/// Weights plus the consistency report of the matrix they came from, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Priority {
    pub weights: WeightVector,
    pub consistency: Option<ConsistencyReport>,
}

impl Priority {
    pub fn from_matrix(m: &ComparisonMatrix, method: WeightMethod) -> Result<Self, AhpError> {
        let (weights, report) = weights_with(m, method)?;
        Ok(Self {
            weights,
            consistency: Some(report),
        })
    }

    pub fn direct(weights: WeightVector) -> Self {
        Self {
            weights,
            consistency: None,
        }
    }

    fn is_consistent(&self) -> bool {
        self.consistency.as_ref().is_none_or(check_consistency)
    }
}

/// Criteria weights over the top level and, per criterion, player scores.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaHierarchy {
    pub criteria: Priority,
    /// One entry per criterion, in criteria order.
    pub player_scores: Vec<Priority>,
    /// Skip the consistency gate during synthesis.
    pub allow_inconsistent: bool,
}

impl CriteriaHierarchy {
    pub fn new(criteria: Priority, player_scores: Vec<Priority>) -> Result<Self, AhpError> {
        if player_scores.len() != criteria.weights.len() {
            return Err(AhpError::Hierarchy(format!(
                "{} criteria but {} player-score columns",
                criteria.weights.len(),
                player_scores.len()
            )));
        }
        if let Some(first) = player_scores.first() {
            let players = first.weights.labels();
            for (k, column) in player_scores.iter().enumerate() {
                if column.weights.labels() != players {
                    return Err(AhpError::Hierarchy(format!(
                        "player labels under criterion `{}` differ from the first criterion",
                        criteria.weights.labels()[k]
                    )));
                }
            }
        }
        Ok(Self {
            criteria,
            player_scores,
            allow_inconsistent: false,
        })
    }

    pub fn players(&self) -> &[String] {
        self.player_scores[0].weights.labels()
    }
}

/// Per-player synthesized factors, in player order.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesizedFactors {
    pub players: Vec<String>,
    pub g: Vec<f64>,
}

/// `G_i = Σ_k W_k · s_k[i]`, after the consistency gate.
pub fn synthesize_factors(h: &CriteriaHierarchy) -> Result<SynthesizedFactors, AhpError> {
    if !h.allow_inconsistent {
        if !h.criteria.is_consistent() {
            return Err(AhpError::Inconsistent {
                source_name: "criteria".into(),
                cr: h.criteria.consistency.map_or(0.0, |r| r.cr),
            });
        }
        for (label, column) in h.criteria.weights.labels().iter().zip(&h.player_scores) {
            if !column.is_consistent() {
                return Err(AhpError::Inconsistent {
                    source_name: format!("criterion `{label}`"),
                    cr: column.consistency.map_or(0.0, |r| r.cr),
                });
            }
        }
    }
    let players = h.players().to_vec();
    let mut g = vec![0.0; players.len()];
    for (wk, column) in h.criteria.weights.weights().iter().zip(&h.player_scores) {
        for (gi, s) in g.iter_mut().zip(column.weights.weights()) {
            *gi += wk * s;
        }
    }
    Ok(SynthesizedFactors { players, g })
}

/// How one criterion scores the players.
#[derive(Debug, Clone, PartialEq)]
pub enum ScoreSource {
    Matrix(ComparisonMatrix),
    /// Positive raw scores, rescaled to unit sum.
    Direct(Vec<f64>),
}

/// Builds a hierarchy from a criteria matrix and one score source per criterion.
pub fn build_hierarchy(
    criteria: &ComparisonMatrix,
    players: &[String],
    sources: &[ScoreSource],
    method: WeightMethod,
) -> Result<CriteriaHierarchy, AhpError> {
    let top = Priority::from_matrix(criteria, method)?;
    let columns = sources
        .iter()
        .zip(criteria.labels())
        .map(|(source, label)| match source {
            ScoreSource::Matrix(m) => {
                if m.labels() != players {
                    return Err(AhpError::Hierarchy(format!(
                        "matrix for criterion `{label}` is not over the players"
                    )));
                }
                Priority::from_matrix(m, method)
            }
            ScoreSource::Direct(raw) => {
                WeightVector::normalized(players.to_vec(), raw.clone()).map(Priority::direct)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    CriteriaHierarchy::new(top, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("R{i}")).collect()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn lambda_from_reference_case() {
        let r = ConsistencyReport::from_lambda(7.5838, 7).unwrap();
        assert!(close(r.ci, 0.0973, 1e-4), "ci = {}", r.ci);
        assert_eq!(r.ri, 1.32);
        assert!(close(r.cr, 0.0737, 1e-4), "cr = {}", r.cr);
        assert!(close(r.cr, 0.073, 0.005));
        assert!(r.pass && check_consistency(&r));
    }

    #[test]
    fn consistent_matrix_recovers_weights() {
        let m = ComparisonMatrix::from_weights(labels(3), &[0.5, 0.3, 0.2]).unwrap();
        let (w, r) = principal_weights(&m).unwrap();
        for (got, want) in w.weights().iter().zip([0.5, 0.3, 0.2]) {
            assert!(close(*got, want, 1e-9));
        }
        assert!(close(r.lambda_max, 3.0, 1e-9));
        assert!(close(r.cr, 0.0, 1e-9));
    }

    #[test]
    fn identity_matrix() {
        // every pair judged equal
        let m = ComparisonMatrix::new(labels(3), vec![vec![1.0; 3]; 3]).unwrap();
        let (w, r) = principal_weights(&m).unwrap();
        assert!(w.weights().iter().all(|x| close(*x, 1.0 / 3.0, 1e-12)));
        assert!(close(r.lambda_max, 3.0, 1e-12));
        assert!(close(r.ci, 0.0, 1e-12));
    }

    #[test]
    fn consistency_boundary_is_strict() {
        let mut r = ConsistencyReport::from_lambda(7.0, 7).unwrap();
        r.cr = 0.1;
        assert!(!check_consistency(&r));
        r.cr = 0.073;
        assert!(check_consistency(&r));
    }

    #[test]
    fn two_by_two_is_always_consistent() {
        let m =
            ComparisonMatrix::new(labels(2), vec![vec![1.0, 9.0], vec![1.0 / 9.0, 1.0]]).unwrap();
        let (w, r) = principal_weights(&m).unwrap();
        assert!(close(w.weights()[0], 0.9, 1e-12));
        assert_eq!((r.ci, r.cr, r.ri), (0.0, 0.0, 0.0));
        assert!(check_consistency(&r));
    }

    #[test]
    fn single_item() {
        let m = ComparisonMatrix::new(labels(1), vec![vec![1.0]]).unwrap();
        let (w, r) = principal_weights(&m).unwrap();
        assert_eq!(w.weights(), &[1.0]);
        assert!(r.pass);
    }

    #[test]
    fn matrix_validation_errors() {
        assert_eq!(ComparisonMatrix::new(vec![], vec![]), Err(AhpError::Empty));
        assert!(matches!(
            ComparisonMatrix::new(labels(2), vec![vec![1.0, 2.0], vec![0.4, 1.0]]),
            Err(AhpError::NotReciprocal { row: 0, col: 1, .. })
        ));
        assert!(matches!(
            ComparisonMatrix::new(labels(2), vec![vec![1.0, -2.0], vec![-0.5, 1.0]]),
            Err(AhpError::NonPositive { row: 0, col: 1, .. })
        ));
        assert_eq!(
            ComparisonMatrix::new(labels(2), vec![vec![2.0, 1.0], vec![1.0, 1.0]]),
            Err(AhpError::Diagonal(0))
        );
        assert!(matches!(
            ComparisonMatrix::new(labels(2), vec![vec![1.0], vec![1.0, 1.0]]),
            Err(AhpError::RaggedRow { row: 0, .. })
        ));
        assert!(matches!(
            ComparisonMatrix::new(labels(3), vec![vec![1.0]]),
            Err(AhpError::LabelCount { .. })
        ));
        assert_eq!(
            ComparisonMatrix::new(
                vec!["x".into(), "x".into()],
                vec![vec![1.0, 1.0], vec![1.0, 1.0]]
            ),
            Err(AhpError::DuplicateLabel("x".into()))
        );
    }

    #[test]
    fn orders_beyond_the_index_table() {
        let m = ComparisonMatrix::from_weights(labels(11), &[1.0; 11]).unwrap();
        assert_eq!(principal_weights(&m), Err(AhpError::UnsupportedOrder(11)));
    }

    #[test]
    fn non_convergence_is_reported() {
        // a zero tolerance can never be met
        let a = vec![vec![1.0, 3.0], vec![1.0 / 3.0, 1.0]];
        assert_eq!(
            power_iteration(&a, 0.0, 5),
            Err(AhpError::NoConvergence { iterations: 5 })
        );
        assert_eq!(power_iteration(&[], 1e-12, 5), Err(AhpError::Empty));
    }

    #[test]
    fn random_index_table() {
        let expected = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];
        for (n, ri) in (1..=10).zip(expected) {
            assert_eq!(random_index(n), Some(ri));
        }
        assert_eq!(random_index(0), None);
        assert_eq!(random_index(11), None);
    }

    #[test]
    fn weight_vector_invariants() {
        assert!(WeightVector::new(labels(2), vec![0.5, 0.5]).is_ok());
        assert!(matches!(
            WeightVector::new(labels(2), vec![0.5, 0.6]),
            Err(AhpError::WeightSum(_))
        ));
        assert_eq!(
            WeightVector::new(labels(2), vec![1.0, 0.0]),
            Err(AhpError::BadWeight("R2".into()))
        );
        let w = WeightVector::normalized(labels(2), vec![3.0, 1.0]).unwrap();
        assert_eq!(w.weights(), &[0.75, 0.25]);
        assert_eq!(w.get("R1"), Some(0.75));
    }

    #[test]
    fn single_criterion_synthesis() {
        let players: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        let top = Priority::direct(WeightVector::new(vec!["R1".into()], vec![1.0]).unwrap());
        let col = Priority::direct(WeightVector::new(players, vec![0.6, 0.3, 0.1]).unwrap());
        let h = CriteriaHierarchy::new(top, vec![col]).unwrap();
        let g = synthesize_factors(&h).unwrap();
        assert_eq!(g.g, vec![0.6, 0.3, 0.1]);
    }

    #[test]
    fn gate_names_the_offending_criterion() {
        let players: Vec<String> = ["A", "B", "C"].iter().map(|s| s.to_string()).collect();
        // intransitive: A > B > C > A
        let bad = ComparisonMatrix::new(
            players.clone(),
            vec![
                vec![1.0, 9.0, 1.0 / 9.0],
                vec![1.0 / 9.0, 1.0, 9.0],
                vec![9.0, 1.0 / 9.0, 1.0],
            ],
        )
        .unwrap();
        let criteria = ComparisonMatrix::from_weights(labels(2), &[0.7, 0.3]).unwrap();
        let sources = vec![
            ScoreSource::Direct(vec![1.0, 1.0, 1.0]),
            ScoreSource::Matrix(bad),
        ];
        let mut h =
            build_hierarchy(&criteria, &players, &sources, WeightMethod::Eigenvector).unwrap();
        match synthesize_factors(&h) {
            Err(AhpError::Inconsistent { source_name, cr }) => {
                assert_eq!(source_name, "criterion `R2`");
                assert!(cr >= CONSISTENCY_THRESHOLD);
            }
            other => panic!("expected gate failure, got {other:?}"),
        }
        h.allow_inconsistent = true;
        let g = synthesize_factors(&h).unwrap();
        assert!(close(g.g.iter().sum::<f64>(), 1.0, 1e-9));
    }

    #[test]
    fn hierarchy_shape_errors() {
        let top = Priority::direct(WeightVector::new(labels(2), vec![0.5, 0.5]).unwrap());
        let col = Priority::direct(WeightVector::new(vec!["A".into()], vec![1.0]).unwrap());
        assert!(matches!(
            CriteriaHierarchy::new(top.clone(), vec![col.clone()]),
            Err(AhpError::Hierarchy(_))
        ));
        let other = Priority::direct(WeightVector::new(vec!["B".into()], vec![1.0]).unwrap());
        assert!(matches!(
            CriteriaHierarchy::new(top, vec![col, other]),
            Err(AhpError::Hierarchy(_))
        ));
    }
}
