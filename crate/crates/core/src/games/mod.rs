//! Game models that induce comparison relations between collections:
//! transferable-utility games compared by coalition worths or per-player
//! splits, recursive block-local generators, semi-unions of component games,
//! friendship-based partition preferences, and a small fixed three-player
//! relation used as a counterexample fixture.

use std::fmt;

use crate::orders::{Multiset, OrderError, OrderKind};
use crate::partition::{Coalition, Collection, PartitionError, Player, DEFAULT_PLAYER_CAP};
use crate::rational::Rat;

pub mod fixture;
pub mod friends;
pub mod generators;
pub mod instance;
pub mod relations;
pub mod semi_union;

pub use fixture::Example5Relation;
pub use friends::{ExchangeRelation, HedonicRelation};
pub use generators::{build_example61, build_example62, GeneratorName};
pub use instance::{build_relation, load_instance, GameInstance};
pub use relations::{Basis, PayoffRelation, WorthRelation};
pub use semi_union::{composition, semi_union, ComponentGame};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameError {
    PlayerCapExceeded { n: u32 },
    NegativeValue { coalition: Coalition, value: Rat },
    EpsilonNotPositive { epsilon: Rat },
    EpsilonTooLarge { epsilon: Rat, bound: Rat },
    ComponentNotSuperadditive { index: usize, a: Coalition, b: Coalition },
    ComponentNotPositive { index: usize, coalition: Coalition },
    BlockMismatch { detail: String },
    UnsupportedGeneratorOrder { name: &'static str, kind: OrderKind },
    OrderRequired,
    OrderForbidden,
    OrderMismatch { embedded: OrderKind, given: OrderKind },
    BasisForbidden,
    BadInstance(String),
    Order(OrderError),
}

impl fmt::Display for GameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameError::PlayerCapExceeded { n } => {
                write!(f, "n={n} exceeds the player cap {DEFAULT_PLAYER_CAP}")
            }
            GameError::NegativeValue { coalition, value } => {
                write!(f, "v({{{coalition}}}) = {value} is negative")
            }
            GameError::EpsilonNotPositive { epsilon } => {
                write!(f, "epsilon {epsilon} must be strictly positive")
            }
            GameError::EpsilonTooLarge { epsilon, bound } => {
                write!(f, "epsilon {epsilon} must stay below {bound}, the least straddling value")
            }
            GameError::ComponentNotSuperadditive { index, a, b } => {
                write!(
                    f,
                    "component {index} is not strictly superadditive: v({{{a}}}) + v({{{b}}}) >= v(union)"
                )
            }
            GameError::ComponentNotPositive { index, coalition } => {
                write!(f, "component {index} assigns no positive value to {{{coalition}}}")
            }
            GameError::BlockMismatch { detail } => write!(f, "component blocks mismatch: {detail}"),
            GameError::UnsupportedGeneratorOrder { name, kind } => {
                write!(f, "generator {name} does not support the {kind} order")
            }
            GameError::OrderRequired => write!(f, "this game kind requires an order"),
            GameError::OrderForbidden => {
                write!(f, "this game kind carries its own relation; an order cannot be chosen")
            }
            GameError::OrderMismatch { embedded, given } => {
                write!(f, "instance embeds order {embedded}, but {given} was requested")
            }
            GameError::BasisForbidden => {
                write!(f, "this game kind carries its own relation; a basis cannot be chosen")
            }
            GameError::BadInstance(msg) => write!(f, "bad game instance: {msg}"),
            GameError::Order(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GameError {}

impl From<OrderError> for GameError {
    fn from(e: OrderError) -> Self {
        GameError::Order(e)
    }
}

impl From<PartitionError> for GameError {
    fn from(e: PartitionError) -> Self {
        GameError::BadInstance(e.to_string())
    }
}

/// Transferable-utility game: a non-negative worth for every coalition of
/// {1..n}, with v(∅) = 0. Values are stored per coalition bitmask.
#[derive(Clone, PartialEq, Eq)]
pub struct TuGame {
    n: u32,
    values: Vec<Rat>,
}

impl TuGame {
    pub fn new(n: u32, values: Vec<Rat>) -> Result<Self, GameError> {
        if n == 0 || n > DEFAULT_PLAYER_CAP {
            return Err(GameError::PlayerCapExceeded { n });
        }
        assert_eq!(values.len(), 1usize << n, "value table must cover every subset");
        assert!(values[0].is_zero(), "the empty coalition must have value 0");
        for (mask, v) in values.iter().enumerate().skip(1) {
            if v.is_negative() {
                return Err(GameError::NegativeValue {
                    coalition: Coalition::from_mask(mask as u32),
                    value: v.clone(),
                });
            }
        }
        Ok(TuGame { n, values })
    }

    pub fn from_fn(n: u32, f: impl Fn(Coalition) -> Rat) -> Result<Self, GameError> {
        if n == 0 || n > DEFAULT_PLAYER_CAP {
            return Err(GameError::PlayerCapExceeded { n });
        }
        let mut values = vec![Rat::zero(); 1 << n];
        for mask in 1..(1u32 << n) {
            values[mask as usize] = f(Coalition::from_mask(mask));
        }
        TuGame::new(n, values)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The grand coalition {1..n}.
    pub fn players(&self) -> Coalition {
        Coalition::full(self.n)
    }

    pub fn v(&self, c: Coalition) -> &Rat {
        debug_assert!(c.is_subset(self.players()), "coalition outside the player set");
        &self.values[c.mask() as usize]
    }

    /// All non-empty coalitions, ascending by mask.
    pub fn coalitions(&self) -> impl Iterator<Item = Coalition> {
        (1..(1u32 << self.n)).map(Coalition::from_mask)
    }

    /// Multiset of block worths, multiplicities preserved.
    pub fn value_multiset(&self, c: &Collection) -> Multiset {
        Multiset::new(c.blocks().iter().map(|&b| self.v(b).clone()).collect())
    }
}

impl fmt::Debug for TuGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TuGame(n={})", self.n)
    }
}

/// Per-player division of a coalition's worth.
pub trait IndividualValues: Send + Sync {
    /// Player i's share of coalition a; only called with i ∈ a.
    fn phi(&self, game: &TuGame, i: Player, a: Coalition) -> Rat;
}

/// Splits every coalition's worth equally among its members.
pub struct EqualSplit;

impl IndividualValues for EqualSplit {
    fn phi(&self, game: &TuGame, i: Player, a: Coalition) -> Rat {
        debug_assert!(a.contains(i), "player {i} not in the coalition");
        game.v(a) / &Rat::from(a.len())
    }
}

/// Multiset of every member's share across the collection's blocks.
pub fn phi_multiset(game: &TuGame, phi: &dyn IndividualValues, c: &Collection) -> Multiset {
    let mut shares = Vec::new();
    for &block in c.blocks() {
        for i in block.players() {
            shares.push(phi.phi(game, i, block));
        }
    }
    Multiset::new(shares)
}

/// Player-indexed shares across the collection's blocks.
pub fn phi_vector(
    game: &TuGame,
    phi: &dyn IndividualValues,
    c: &Collection,
) -> crate::orders::PayoffVector {
    let mut entries = Vec::new();
    for &block in c.blocks() {
        for i in block.players() {
            entries.push((i, phi.phi(game, i, block)));
        }
    }
    crate::orders::PayoffVector::from_entries(entries)
}

/// First coalition whose shares do not sum back to its worth, if any.
pub fn check_efficiency(game: &TuGame, phi: &dyn IndividualValues) -> Option<Coalition> {
    game.coalitions().find(|&a| {
        let total: Rat = a.players().map(|i| phi.phi(game, i, a)).sum::<Rat>();
        total != *game.v(a)
    })
}

/// None when v depends only on coalition size; otherwise a permutation π
/// (as an image table) and a coalition A with v(A) ≠ v(π(A)).
pub fn check_anonymous(game: &TuGame) -> Option<(Vec<Player>, Coalition)> {
    let n = game.n();
    for size in 1..=n {
        let mut reference: Option<Coalition> = None;
        for a in game.coalitions() {
            if a.len() != size {
                continue;
            }
            match reference {
                None => reference = Some(a),
                Some(r) => {
                    if game.v(a) != game.v(r) {
                        return Some((permutation_mapping(r, a, n), r));
                    }
                }
            }
        }
    }
    None
}

/// A permutation of {1..n} carrying `from` onto `to` (and the complement onto
/// the complement), as an image table indexed by player − 1.
fn permutation_mapping(from: Coalition, to: Coalition, n: u32) -> Vec<Player> {
    debug_assert_eq!(from.len(), to.len(), "same-size coalitions required");
    let mut image = vec![0 as Player; n as usize];
    for (src, dst) in from.players().zip(to.players()) {
        image[(src - 1) as usize] = dst;
    }
    let full = Coalition::full(n).mask();
    let co_from = full & !from.mask();
    let co_to = full & !to.mask();
    let co_src = (1..=n).filter(|p| co_from & (1 << (p - 1)) != 0);
    let co_dst: Vec<Player> = (1..=n).filter(|p| co_to & (1 << (p - 1)) != 0).collect();
    for (src, dst) in co_src.zip(co_dst) {
        image[(src - 1) as usize] = dst;
    }
    debug_assert!(image.iter().all(|&p| p >= 1), "image table incomplete");
    image
}

/// First disjoint pair with v(A) + v(B) ≥ v(A ∪ B), if any; None means the
/// game is strictly superadditive.
pub fn check_strict_superadditivity(game: &TuGame) -> Option<(Coalition, Coalition)> {
    let top = 1u32 << game.n();
    for u_mask in 3..top {
        if u_mask.count_ones() < 2 {
            continue;
        }
        // proper non-empty submasks of u_mask, ascending
        let mut a_mask = 0u32;
        loop {
            a_mask = a_mask.wrapping_sub(u_mask) & u_mask;
            if a_mask == u_mask {
                break;
            }
            let b_mask = u_mask & !a_mask;
            if a_mask > b_mask {
                continue; // each unordered pair once
            }
            let a = Coalition::from_mask(a_mask);
            let b = Coalition::from_mask(b_mask);
            if &(game.v(a) + game.v(b)) >= game.v(a.union(b)) {
                return Some((a, b));
            }
        }
    }
    None
}
