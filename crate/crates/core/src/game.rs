//! Transferable-utility coalition games.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rational;

/// Largest player count a [`Coalition`] bitmask can carry.
pub const MAX_PLAYERS: usize = 64;

/// Largest player count for which a full value table is built and enumerated.
pub const MAX_EXACT_PLAYERS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("player set is empty")]
    EmptyPlayerSet,
    #[error("player identifier at position {0} is empty")]
    EmptyPlayerId(usize),
    #[error("duplicate player `{0}`")]
    DuplicatePlayer(String),
    #[error("{n} players exceeds the coalition capacity of {MAX_PLAYERS}")]
    TooManyPlayers { n: usize },
    #[error(
        "{n} players exceeds the exact enumeration bound of {MAX_EXACT_PLAYERS}; \
         use the permutation sampler instead"
    )]
    EnumerationBound { n: usize },
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("the empty coalition has no stored value")]
    EmptyCoalition,
    #[error("coalition {0} is given more than once")]
    DuplicateCoalition(String),
    #[error("coalition {0} has no value; the characteristic function must be total")]
    Incomplete(String),
    #[error("{0}")]
    Domain(String),
}

/// Ordered, duplicate-free list of player identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlayerSet {
    players: Vec<String>,
}

impl PlayerSet {
    pub fn new<I, S>(ids: I) -> Result<Self, GameError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let players: Vec<String> = ids.into_iter().map(Into::into).collect();
        if players.is_empty() {
            return Err(GameError::EmptyPlayerSet);
        }
        if players.len() > MAX_PLAYERS {
            return Err(GameError::TooManyPlayers { n: players.len() });
        }
        for (i, p) in players.iter().enumerate() {
            if p.is_empty() {
                return Err(GameError::EmptyPlayerId(i));
            }
            if players[..i].contains(p) {
                return Err(GameError::DuplicatePlayer(p.clone()));
            }
        }
        Ok(Self { players })
    }

    pub fn len(&self) -> usize {
        self.players.len()
    }

    pub fn is_empty(&self) -> bool {
        self.players.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.players
    }

    pub fn name(&self, index: usize) -> &str {
        &self.players[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.players.iter().position(|p| p == name)
    }

    pub fn grand(&self) -> Coalition {
        Coalition::full(self.len())
    }

    /// Builds a coalition from member names; order and repeats do not matter.
    pub fn coalition<S: AsRef<str>>(&self, members: &[S]) -> Result<Coalition, GameError> {
        members.iter().try_fold(Coalition::EMPTY, |c, m| {
            let m = m.as_ref();
            self.index_of(m)
                .map(|i| c.with(i))
                .ok_or_else(|| GameError::UnknownPlayer(m.to_string()))
        })
    }

    /// `{A,B}`-style rendering in player order.
    pub fn describe(&self, coalition: Coalition) -> String {
        let names: Vec<&str> = coalition.members().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A subset of players as a bitmask over player order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        if n == 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1u64 << player)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 & (1u64 << player) != 0
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | (1u64 << player))
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1u64 << player))
    }

    pub fn union(self, other: Coalition) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn is_disjoint(self, other: Coalition) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

/// A total characteristic function over at most [`MAX_EXACT_PLAYERS`] players.
///
/// Values are indexed by coalition bitmask; slot 0 holds the implicit
/// `v(∅) = 0` and is never set from outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicFunction {
    players: PlayerSet,
    values: Vec<Rational>,
}

impl CharacteristicFunction {
    /// Tabulates `f` over every non-empty coalition.
    pub fn from_fn<F>(players: PlayerSet, mut f: F) -> Result<Self, GameError>
    where
        F: FnMut(Coalition) -> Rational,
    {
        check_exact_bound(players.len())?;
        let size = 1usize << players.len();
        let mut values = Vec::with_capacity(size);
        values.push(Rational::zero());
        values.extend((1..size as u64).map(|bits| f(Coalition(bits))));
        Ok(Self { players, values })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn value(&self, coalition: Coalition) -> &Rational {
        &self.values[coalition.0 as usize]
    }

    pub fn grand_value(&self) -> &Rational {
        self.value(self.players.grand())
    }

    /// Non-empty coalitions with their values, in bitmask order.
    pub fn entries(&self) -> impl Iterator<Item = (Coalition, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(bits, v)| (Coalition(bits as u64), v))
    }

    /// Float view of the value table, for samplers and quick oracles.
    pub fn to_f64_table(&self) -> Vec<f64> {
        self.values.iter().map(crate::rational::to_f64).collect()
    }
}

fn check_exact_bound(n: usize) -> Result<(), GameError> {
    if n > MAX_EXACT_PLAYERS {
        Err(GameError::EnumerationBound { n })
    } else {
        Ok(())
    }
}

/// Collects coalition values one at a time and checks totality on `build`.
#[derive(Debug, Clone)]
pub struct GameBuilder {
    players: PlayerSet,
    values: Vec<Option<Rational>>,
}

impl GameBuilder {
    pub fn new(players: PlayerSet) -> Result<Self, GameError> {
        check_exact_bound(players.len())?;
        let mut values = vec![None; 1usize << players.len()];
        values[0] = Some(Rational::zero());
        Ok(Self { players, values })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn set(&mut self, coalition: Coalition, value: Rational) -> Result<&mut Self, GameError> {
        if coalition.is_empty() {
            return Err(GameError::EmptyCoalition);
        }
        let slot = &mut self.values[coalition.0 as usize];
        if slot.is_some() {
            return Err(GameError::DuplicateCoalition(
                self.players.describe(coalition),
            ));
        }
        *slot = Some(value);
        Ok(self)
    }

    pub fn set_named<S: AsRef<str>>(
        &mut self,
        members: &[S],
        value: Rational,
    ) -> Result<&mut Self, GameError> {
        let c = self.players.coalition(members)?;
        self.set(c, value)
    }

    /// Fails on the first coalition (in bitmask order) that has no value.
    pub fn build(self) -> Result<CharacteristicFunction, GameError> {
        let mut values = Vec::with_capacity(self.values.len());
        for (bits, v) in self.values.into_iter().enumerate() {
            match v {
                Some(v) => values.push(v),
                None => {
                    return Err(GameError::Incomplete(
                        self.players.describe(Coalition(bits as u64)),
                    ))
                }
            }
        }
        Ok(CharacteristicFunction {
            players: self.players,
            values,
        })
    }
}
