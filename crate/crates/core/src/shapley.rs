//! Exact classical Shapley allocation and superadditivity diagnostics.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::game::{CharacteristicFunction, Coalition, GameError, PlayerSet, MAX_EXACT_PLAYERS};
use crate::rational::Rational;

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(n - s)! (s - 1)! / n!`, the weight of a size-`s` coalition in an `n`-player game.
pub fn coalition_weight(n: usize, s: usize) -> Result<Rational, GameError> {
    if n == 0 || n > MAX_EXACT_PLAYERS {
        return Err(GameError::Domain(format!(
            "player count {n} outside 1..={MAX_EXACT_PLAYERS}"
        )));
    }
    if s == 0 || s > n {
        return Err(GameError::Domain(format!(
            "coalition size {s} outside 1..={n}"
        )));
    }
    Ok(Rational::new(
        factorial(n - s) * factorial(s - 1),
        factorial(n),
    ))
}

/// Weights indexed by coalition size; slot 0 is unused.
pub(crate) fn weight_table(n: usize) -> Result<Vec<Rational>, GameError> {
    let mut table = vec![Rational::zero()];
    for s in 1..=n {
        table.push(coalition_weight(n, s)?);
    }
    Ok(table)
}

/// One summand of a player's Shapley value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyTerm {
    /// Coalition containing the player.
    pub coalition: Coalition,
    pub weight: Rational,
    /// `v(S) - v(S \ {i})`.
    pub marginal: Rational,
}

/// Whether [`shapley_exact_with`] keeps the per-term audit trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Audit {
    On,
    Off,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    pub players: PlayerSet,
    pub payoffs: Vec<Rational>,
    /// `terms[i]` lists every coalition containing player `i` in bitmask
    /// order. Empty when computed with [`Audit::Off`].
    pub terms: Vec<Vec<ShapleyTerm>>,
}

impl Allocation {
    pub fn payoff(&self, player: &str) -> Option<&Rational> {
        self.players.index_of(player).map(|i| &self.payoffs[i])
    }

    pub fn total(&self) -> Rational {
        self.payoffs.iter().fold(Rational::zero(), |acc, p| acc + p)
    }
}

/// Classical Shapley allocation with the full audit trail.
pub fn shapley_exact(game: &CharacteristicFunction) -> Result<Allocation, GameError> {
    shapley_exact_with(game, Audit::On)
}

/// Classical Shapley allocation by enumerating every coalition.
///
/// The audit trail holds `n * 2^(n-1)` terms; switch it off for large tables.
pub fn shapley_exact_with(
    game: &CharacteristicFunction,
    audit: Audit,
) -> Result<Allocation, GameError> {
    let n = game.player_count();
    if n > MAX_EXACT_PLAYERS {
        return Err(GameError::EnumerationBound { n });
    }
    let weights = weight_table(n)?;
    let mut payoffs = Vec::with_capacity(n);
    let mut terms = Vec::with_capacity(if audit == Audit::On { n } else { 0 });

    for i in 0..n {
        // marginals summed per coalition size, weighted once per size
        let mut by_size = vec![Rational::zero(); n + 1];
        let mut player_terms = Vec::new();
        for bits in 1..(1u64 << n) {
            let s = Coalition::from_bits(bits);
            if !s.contains(i) {
                continue;
            }
            let marginal = game.value(s) - game.value(s.without(i));
            by_size[s.size()] += &marginal;
            if audit == Audit::On {
                player_terms.push(ShapleyTerm {
                    coalition: s,
                    weight: weights[s.size()].clone(),
                    marginal,
                });
            }
        }
        let payoff = by_size
            .iter()
            .zip(&weights)
            .skip(1)
            .fold(Rational::zero(), |acc, (m, w)| acc + m * w);
        payoffs.push(payoff);
        if audit == Audit::On {
            terms.push(player_terms);
        }
    }

    Ok(Allocation {
        players: game.players().clone(),
        payoffs,
        terms,
    })
}

/// A disjoint pair with `v(S ∪ T) < v(S) + v(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperadditivityViolation {
    pub left: Coalition,
    pub right: Coalition,
    pub union_value: Rational,
    pub separate_sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<SuperadditivityViolation>,
}

impl ValidationReport {
    pub fn is_superadditive(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn warnings(&self, players: &PlayerSet) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                format!(
                    "superadditivity violated: v({}) = {} < v({}) + v({}) = {}",
                    players.describe(v.left.union(v.right)),
                    crate::rational::to_exact_string(&v.union_value),
                    players.describe(v.left),
                    players.describe(v.right),
                    crate::rational::to_exact_string(&v.separate_sum),
                )
            })
            .collect()
    }
}

/// Lists every unordered disjoint pair of non-empty coalitions that breaks
/// superadditivity. Visits `O(3^n)` pairs.
pub fn validate_game(game: &CharacteristicFunction) -> ValidationReport {
    let full = game.players().grand().bits();
    let mut violations = Vec::new();
    for s in 1..=full {
        let rest = full & !s;
        // submasks of the complement, keeping t > s so each pair appears once
        let mut t = rest;
        while t != 0 {
            if t > s {
                let (left, right) = (Coalition::from_bits(s), Coalition::from_bits(t));
                let sum = game.value(left) + game.value(right);
                let union_value = game.value(left.union(right));
                if union_value < &sum {
                    violations.push(SuperadditivityViolation {
                        left,
                        right,
                        union_value: union_value.clone(),
                        separate_sum: sum,
                    });
                }
            }
            t = (t - 1) & rest;
        }
    }
    violations.sort_by_key(|v| (v.left, v.right));
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::GameBuilder;
    use crate::rational::{int, ratio};

    fn case_study_game() -> CharacteristicFunction {
        let p = PlayerSet::new(["A", "B", "C"]).unwrap();
        let mut b = GameBuilder::new(p).unwrap();
        for (m, v) in [
            (&["A"][..], 1000),
            (&["B"], 500),
            (&["C"], 300),
            (&["A", "B"], 2000),
            (&["A", "C"], 1500),
            (&["B", "C"], 1200),
            (&["A", "B", "C"], 3000),
        ] {
            b.set_named(m, int(v)).unwrap();
        }
        b.build().unwrap()
    }

    #[test]
    fn weights_match_worked_expansions() {
        assert_eq!(coalition_weight(3, 1).unwrap(), ratio(1, 3));
        assert_eq!(coalition_weight(3, 2).unwrap(), ratio(1, 6));
        assert_eq!(coalition_weight(3, 3).unwrap(), ratio(1, 3));
        assert_eq!(coalition_weight(1, 1).unwrap(), int(1));
    }

    #[test]
    fn weight_domain_errors() {
        for (n, s) in [(3, 0), (3, 4), (0, 0), (21, 1)] {
            assert!(matches!(coalition_weight(n, s), Err(GameError::Domain(_))));
        }
    }

    #[test]
    fn weights_sum_to_one_per_player() {
        for n in 1..=12usize {
            // number of coalitions of size s containing a fixed player: C(n-1, s-1)
            let total = (1..=n).fold(Rational::zero(), |acc, s| {
                let count = num_integer::binomial(BigInt::from(n - 1), BigInt::from(s - 1));
                acc + coalition_weight(n, s).unwrap() * Rational::from_integer(count)
            });
            assert_eq!(total, int(1), "n = {n}");
        }
    }

    #[test]
    fn case_study_classical_values() {
        let a = shapley_exact(&case_study_game()).unwrap();
        assert_eq!(
            a.payoffs,
            vec![ratio(4150, 3), ratio(2950, 3), ratio(1900, 3)]
        );
        assert_eq!(a.total(), int(3000));
        assert_eq!(a.payoff("B"), Some(&ratio(2950, 3)));
    }

    #[test]
    fn audit_trail_lists_every_containing_coalition() {
        let a = shapley_exact(&case_study_game()).unwrap();
        assert!(a.terms.iter().all(|t| t.len() == 4));
        // A: {A}, {A,B}, {A,C}, {A,B,C} with marginals from the worked expansion
        let marginals: Vec<Rational> = a.terms[0].iter().map(|t| t.marginal.clone()).collect();
        assert_eq!(marginals, vec![int(1000), int(1500), int(1200), int(1800)]);
        let recomputed = a.terms[0]
            .iter()
            .fold(Rational::zero(), |acc, t| acc + &t.weight * &t.marginal);
        assert_eq!(recomputed, a.payoffs[0]);

        let quiet = shapley_exact_with(&case_study_game(), Audit::Off).unwrap();
        assert!(quiet.terms.is_empty());
        assert_eq!(quiet.payoffs, a.payoffs);
    }

    #[test]
    fn small_closed_form_games() {
        let one =
            CharacteristicFunction::from_fn(PlayerSet::new(["P"]).unwrap(), |_| int(7)).unwrap();
        assert_eq!(shapley_exact(&one).unwrap().payoffs, vec![int(7)]);

        let two = CharacteristicFunction::from_fn(PlayerSet::new(["1", "2"]).unwrap(), |c| {
            if c.size() == 2 {
                int(10)
            } else {
                int(0)
            }
        })
        .unwrap();
        assert_eq!(shapley_exact(&two).unwrap().payoffs, vec![int(5), int(5)]);

        let c = [int(3), ratio(-1, 2), int(0), ratio(17, 10)];
        let additive =
            CharacteristicFunction::from_fn(PlayerSet::new(["a", "b", "c", "d"]).unwrap(), |s| {
                s.members().fold(Rational::zero(), |acc, i| acc + &c[i])
            })
            .unwrap();
        assert_eq!(shapley_exact(&additive).unwrap().payoffs, c.to_vec());
    }

    #[test]
    fn validation_examples() {
        assert!(validate_game(&case_study_game()).is_superadditive());

        let p = PlayerSet::new(["1", "2"]).unwrap();
        let mut b = GameBuilder::new(p.clone()).unwrap();
        b.set_named(&["1"], int(10)).unwrap();
        b.set_named(&["2"], int(5)).unwrap();
        b.set_named(&["1", "2"], int(5)).unwrap();
        let report = validate_game(&b.build().unwrap());
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(
            (v.left, v.right),
            (Coalition::singleton(0), Coalition::singleton(1))
        );
        assert_eq!(v.separate_sum, int(15));
        assert_eq!(
            report.warnings(&p),
            vec!["superadditivity violated: v({1,2}) = 5 < v({1}) + v({2}) = 15".to_string()]
        );

        let one =
            CharacteristicFunction::from_fn(PlayerSet::new(["P"]).unwrap(), |_| int(-4)).unwrap();
        assert!(validate_game(&one).is_superadditive());
    }

    #[test]
    fn validation_visits_each_pair_once() {
        // constant v = 1 breaks every disjoint pair
        let g =
            CharacteristicFunction::from_fn(PlayerSet::new(["a", "b", "c", "d"]).unwrap(), |_| {
                int(1)
            })
            .unwrap();
        // unordered pairs of disjoint non-empty subsets of a 4-set: (3^4 - 2*2^4 + 1) / 2 = 25
        assert_eq!(validate_game(&g).violations.len(), 25);
    }
}
