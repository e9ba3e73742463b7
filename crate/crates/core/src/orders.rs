use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::partition::{Coalition, Collection, Player};
use crate::rational::Rat;

/// The eight preference orders. The first six compare value multisets, the
/// last two compare player-indexed payoff vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderKind {
    Utilitarian,
    Nash,
    Leximin,
    Average,
    Elitist,
    Egalitarian,
    Majority,
    Pareto,
}

pub const ALL_ORDER_KINDS: [OrderKind; 8] = [
    OrderKind::Utilitarian,
    OrderKind::Nash,
    OrderKind::Leximin,
    OrderKind::Average,
    OrderKind::Elitist,
    OrderKind::Egalitarian,
    OrderKind::Majority,
    OrderKind::Pareto,
];

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Utilitarian => "utilitarian",
            OrderKind::Nash => "nash",
            OrderKind::Leximin => "leximin",
            OrderKind::Average => "average",
            OrderKind::Elitist => "elitist",
            OrderKind::Egalitarian => "egalitarian",
            OrderKind::Majority => "majority",
            OrderKind::Pareto => "pareto",
        }
    }

    pub fn is_vector_basis(self) -> bool {
        matches!(self, OrderKind::Majority | OrderKind::Pareto)
    }

    /// Kinds proven to induce genuine comparison relations (irreflexive,
    /// transitive, monotonic); only these may drive the engine. The rest are
    /// harness-only.
    pub fn engine_admissible(self) -> bool {
        matches!(
            self,
            OrderKind::Utilitarian | OrderKind::Nash | OrderKind::Leximin | OrderKind::Pareto
        )
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, OrderError> {
        ALL_ORDER_KINDS
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| OrderError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderError {
    UnknownKind(String),
    /// Multiset comparison requested for a vector kind or vice versa.
    WrongBasis { kind: OrderKind },
    SupportMismatch,
    /// A harness-only kind was requested where a genuine comparison relation
    /// is required.
    InadmissibleOrder { kind: OrderKind },
}

impl fmt::Display for OrderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderError::UnknownKind(s) => write!(f, "unknown order kind {s:?}"),
            OrderError::WrongBasis { kind } => {
                let want = if kind.is_vector_basis() { "payoff vectors" } else { "multisets" };
                write!(f, "order {kind} compares {want}")
            }
            OrderError::SupportMismatch => write!(f, "payoff vectors have different supports"),
            OrderError::InadmissibleOrder { kind } => {
                write!(f, "order {kind} is not a comparison relation; harness use only")
            }
        }
    }
}

impl std::error::Error for OrderError {}

/// Multiset of rationals; multiplicities preserved, stored ascending so two
/// multisets compare equal by value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multiset {
    sorted: Vec<Rat>,
}

impl Multiset {
    pub fn new(mut values: Vec<Rat>) -> Self {
        values.sort();
        Multiset { sorted: values }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Ascending values.
    pub fn values(&self) -> &[Rat] {
        &self.sorted
    }

    /// Decreasing sort a* used by the leximin order.
    pub fn decreasing(&self) -> Vec<Rat> {
        self.sorted.iter().rev().cloned().collect()
    }

    pub fn sum(&self) -> Rat {
        self.sorted.iter().sum()
    }

    pub fn product(&self) -> Rat {
        self.sorted.iter().product()
    }

    pub fn min(&self) -> &Rat {
        self.sorted.first().expect("non-empty multiset")
    }

    pub fn max(&self) -> &Rat {
        self.sorted.last().expect("non-empty multiset")
    }

    pub fn mean(&self) -> Rat {
        &self.sum() / &Rat::from(self.len() as u64)
    }

    /// Multiset union (concatenation).
    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut merged = Vec::with_capacity(self.len() + other.len());
        merged.extend_from_slice(&self.sorted);
        merged.extend_from_slice(&other.sorted);
        merged.sort();
        Multiset { sorted: merged }
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.sorted.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl<T: Into<Rat>> FromIterator<T> for Multiset {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Multiset::new(iter.into_iter().map(Into::into).collect())
    }
}

/// Payoff per player over a stated support, kept sorted by player id.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PayoffVector {
    entries: Vec<(Player, Rat)>,
}

impl PayoffVector {
    pub fn new(map: BTreeMap<Player, Rat>) -> Self {
        PayoffVector { entries: map.into_iter().collect() }
    }

    pub fn from_entries(mut entries: Vec<(Player, Rat)>) -> Self {
        entries.sort_by_key(|&(p, _)| p);
        debug_assert!(
            entries.windows(2).all(|w| w[0].0 < w[1].0),
            "duplicate player in payoff vector"
        );
        PayoffVector { entries }
    }

    pub fn support(&self) -> Coalition {
        Coalition::from_players(self.entries.iter().map(|&(p, _)| p))
            .expect("non-empty payoff vector")
    }

    pub fn entries(&self) -> &[(Player, Rat)] {
        &self.entries
    }

    pub fn get(&self, i: Player) -> Option<&Rat> {
        self.entries
            .binary_search_by_key(&i, |&(p, _)| p)
            .ok()
            .map(|idx| &self.entries[idx].1)
    }

    pub fn same_support(&self, other: &PayoffVector) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.0 == b.0)
    }

    pub fn disjoint_support(&self, other: &PayoffVector) -> bool {
        !self.support().intersects(other.support())
    }

    /// Union over disjoint supports.
    pub fn disjoint_union(&self, other: &PayoffVector) -> PayoffVector {
        debug_assert!(self.disjoint_support(other), "supports overlap");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        entries.sort_by_key(|&(p, _)| p);
        PayoffVector { entries }
    }
}

impl fmt::Debug for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (p, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}:{v}")?;
        }
        write!(f, ")")
    }
}

/// The extended lexicographic order on sequences of possibly different
/// lengths: the first differing position decides; if one sequence extends the
/// other, the longer one is greater.
pub fn extended_lex_greater(s: &[Rat], t: &[Rat]) -> bool {
    let m = s.len().min(t.len());
    for i in 0..m {
        if s[i] != t[i] {
            return s[i] > t[i];
        }
    }
    s.len() > t.len()
}

/// Strict comparison a ≻_kind b for the multiset-basis kinds.
///
/// Leximin is implemented exactly as defined here: each multiset is sorted in
/// *decreasing* order and the extended lexicographic order is applied, so the
/// largest entries dominate (a leximax-style rule). The conventional leximin
/// found elsewhere sorts increasing; no such variant is provided.
pub fn compare_multisets(kind: OrderKind, a: &Multiset, b: &Multiset) -> Result<bool, OrderError> {
    if kind.is_vector_basis() {
        return Err(OrderError::WrongBasis { kind });
    }
    debug_assert!(!a.is_empty() && !b.is_empty(), "comparing empty multisets");
    Ok(match kind {
        OrderKind::Utilitarian => a.sum() > b.sum(),
        OrderKind::Nash => a.product() > b.product(),
        OrderKind::Leximin => extended_lex_greater(&a.decreasing(), &b.decreasing()),
        OrderKind::Average => a.mean() > b.mean(),
        OrderKind::Elitist => a.max() > b.max(),
        OrderKind::Egalitarian => a.min() > b.min(),
        OrderKind::Majority | OrderKind::Pareto => unreachable!(),
    })
}

/// Strict comparison x ≻_kind y for the vector-basis kinds (player-by-player;
/// no anonymity is imposed).
pub fn compare_vectors(kind: OrderKind, x: &PayoffVector, y: &PayoffVector) -> Result<bool, OrderError> {
    if !kind.is_vector_basis() {
        return Err(OrderError::WrongBasis { kind });
    }
    if !x.same_support(y) {
        return Err(OrderError::SupportMismatch);
    }
    Ok(match kind {
        OrderKind::Majority => {
            let mut wins = 0usize;
            let mut losses = 0usize;
            for ((_, xa), (_, ya)) in x.entries.iter().zip(&y.entries) {
                match xa.cmp(ya) {
                    std::cmp::Ordering::Greater => wins += 1,
                    std::cmp::Ordering::Less => losses += 1,
                    std::cmp::Ordering::Equal => {}
                }
            }
            wins > losses
        }
        OrderKind::Pareto => {
            let mut strict = false;
            for ((_, xa), (_, ya)) in x.entries.iter().zip(&y.entries) {
                match xa.cmp(ya) {
                    std::cmp::Ordering::Greater => strict = true,
                    std::cmp::Ordering::Less => return Ok(false),
                    std::cmp::Ordering::Equal => {}
                }
            }
            strict
        }
        _ => unreachable!(),
    })
}

/// Strict preference between collections over equal supports. Implementations
/// must be pure and deterministic; they are shared across threads.
pub trait ComparisonRelation: Sync {
    /// a ≻ b. Only called with support(a) = support(b).
    fn prefers(&self, a: &Collection, b: &Collection) -> bool;

    /// Short description for reports (order kind, basis, underlying game).
    fn describe(&self) -> String;

    /// Whether the relation is safe to drive the merge/split engine
    /// (irreflexive, transitive, monotonic). Harness-only orders return false.
    fn engine_admissible(&self) -> bool {
        true
    }
}
