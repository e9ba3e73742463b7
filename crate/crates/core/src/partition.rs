use std::fmt;
use std::str::FromStr;

/// Players are numbered 1..=n within a fixed grand coalition.
pub type Player = u32;

/// Hard bound of the bitmask representation.
pub const REPR_MAX_PLAYERS: u32 = 32;

/// Default cap on instance size; exhaustive scans are exponential in n, so
/// loaders reject anything larger instead of silently truncating.
pub const DEFAULT_PLAYER_CAP: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    EmptyBlock,
    EmptyCollection,
    Overlap(Coalition, Coalition),
    OutOfRange(Player),
    /// The blocks do not cover exactly the stated base set.
    SupportMismatch { expected: Coalition, found: Coalition },
    BadLiteral(String),
}

impl fmt::Display for PartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionError::EmptyBlock => write!(f, "empty block"),
            PartitionError::EmptyCollection => write!(f, "collection has no blocks"),
            PartitionError::Overlap(a, b) => write!(f, "blocks {a} and {b} overlap"),
            PartitionError::OutOfRange(p) => write!(f, "player id {p} out of range"),
            PartitionError::SupportMismatch { expected, found } => {
                write!(f, "blocks cover {found}, expected {expected}")
            }
            PartitionError::BadLiteral(s) => write!(f, "bad partition literal: {s}"),
        }
    }
}

impl std::error::Error for PartitionError {}

/// Non-empty set of players, stored as a bitmask (bit i-1 ⇔ player i).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u32);

impl Coalition {
    pub fn from_players<I: IntoIterator<Item = Player>>(players: I) -> Result<Self, PartitionError> {
        let mut mask = 0u32;
        for p in players {
            if p == 0 || p > REPR_MAX_PLAYERS {
                return Err(PartitionError::OutOfRange(p));
            }
            mask |= 1 << (p - 1);
        }
        if mask == 0 {
            return Err(PartitionError::EmptyBlock);
        }
        Ok(Coalition(mask))
    }

    pub fn singleton(p: Player) -> Self {
        assert!(p >= 1 && p <= REPR_MAX_PLAYERS, "player id {p} out of range");
        Coalition(1 << (p - 1))
    }

    /// Grand coalition {1,…,n}.
    pub fn full(n: u32) -> Self {
        assert!(n >= 1 && n <= REPR_MAX_PLAYERS, "n={n} out of range");
        Coalition(if n == 32 { u32::MAX } else { (1 << n) - 1 })
    }

    pub fn from_mask(mask: u32) -> Self {
        debug_assert!(mask != 0, "coalitions are non-empty");
        Coalition(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn min_player(self) -> Player {
        self.0.trailing_zeros() + 1
    }

    pub fn players(self) -> impl Iterator<Item = Player> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let p = rest.trailing_zeros() + 1;
                rest &= rest - 1;
                Some(p)
            }
        })
    }

    pub fn contains(self, p: Player) -> bool {
        p >= 1 && p <= REPR_MAX_PLAYERS && self.0 & (1 << (p - 1)) != 0
    }

    pub fn is_subset(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Coalition) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Coalition) -> Option<Coalition> {
        match self.0 & other.0 {
            0 => None,
            m => Some(Coalition(m)),
        }
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in self.players() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Family of pairwise-disjoint coalitions, canonically ordered by least member
/// so equal collections compare equal by value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collection {
    blocks: Vec<Coalition>,
}

impl Collection {
    pub fn new(mut blocks: Vec<Coalition>) -> Result<Self, PartitionError> {
        if blocks.is_empty() {
            return Err(PartitionError::EmptyCollection);
        }
        blocks.sort_by_key(|b| b.min_player());
        let mut seen = 0u32;
        for &b in &blocks {
            if seen & b.mask() != 0 {
                let other = *blocks.iter().find(|o| o.mask() & b.mask() != 0 && **o != b).unwrap_or(&b);
                return Err(PartitionError::Overlap(other, b));
            }
            seen |= b.mask();
        }
        Ok(Collection { blocks })
    }

    /// Validating constructor from raw member lists (ids checked against n).
    pub fn from_members(blocks: &[Vec<Player>], n: u32) -> Result<Self, PartitionError> {
        let full = Coalition::full(n);
        let mut out = Vec::with_capacity(blocks.len());
        for members in blocks {
            let c = Coalition::from_players(members.iter().copied())?;
            if !c.is_subset(full) {
                return Err(PartitionError::OutOfRange(
                    c.players().find(|&p| p > n).unwrap_or(n + 1),
                ));
            }
            out.push(c);
        }
        Collection::new(out)
    }

    pub fn singleton(c: Coalition) -> Self {
        Collection { blocks: vec![c] }
    }

    pub fn blocks(&self) -> &[Coalition] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one block
    }

    pub fn support(&self) -> Coalition {
        Coalition(self.blocks.iter().fold(0, |m, b| m | b.mask()))
    }

    /// Block containing player i, if any.
    pub fn block_of(&self, i: Player) -> Option<Coalition> {
        self.blocks.iter().copied().find(|b| b.contains(i))
    }

    pub fn contains_block(&self, c: Coalition) -> bool {
        self.blocks.binary_search_by_key(&c.min_player(), |b| b.min_player())
            .map(|idx| self.blocks[idx] == c)
            .unwrap_or(false)
    }

    /// Union of two collections over disjoint supports.
    pub fn disjoint_union(&self, other: &Collection) -> Collection {
        debug_assert!(!self.support().intersects(other.support()), "supports overlap");
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        blocks.sort_by_key(|b| b.min_player());
        Collection { blocks }
    }
}

impl fmt::Display for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.blocks {
            if !first {
                write!(f, "|")?;
            }
            write!(f, "{b}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Collection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Collection {
    type Err = PartitionError;

    /// Parses the literal block form `1,2|3|4,5` (whitespace ignored).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut blocks = Vec::new();
        for block in s.split('|') {
            let mut members = Vec::new();
            for tok in block.split(',') {
                let tok = tok.trim();
                if tok.is_empty() {
                    return Err(PartitionError::BadLiteral(s.to_string()));
                }
                let p: Player = tok
                    .parse()
                    .map_err(|_| PartitionError::BadLiteral(s.to_string()))?;
                members.push(p);
            }
            blocks.push(Coalition::from_players(members)?);
        }
        Collection::new(blocks)
    }
}

/// A collection whose support equals a stated base set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    coll: Collection,
}

impl Partition {
    pub fn new(base: Coalition, blocks: Vec<Coalition>) -> Result<Self, PartitionError> {
        let coll = Collection::new(blocks)?;
        Partition::from_collection(base, coll)
    }

    pub fn from_collection(base: Coalition, coll: Collection) -> Result<Self, PartitionError> {
        if coll.support() != base {
            return Err(PartitionError::SupportMismatch {
                expected: base,
                found: coll.support(),
            });
        }
        Ok(Partition { coll })
    }

    /// Single-block partition of the given set.
    pub fn lumped(base: Coalition) -> Self {
        Partition { coll: Collection::singleton(base) }
    }

    pub fn grand(n: u32) -> Self {
        Partition::lumped(Coalition::full(n))
    }

    pub fn singletons(n: u32) -> Self {
        let blocks = (1..=n).map(Coalition::singleton).collect();
        Partition { coll: Collection { blocks } }
    }

    pub fn parse(s: &str, base: Coalition) -> Result<Self, PartitionError> {
        let coll: Collection = s.parse()?;
        Partition::from_collection(base, coll)
    }

    pub fn base(&self) -> Coalition {
        self.coll.support()
    }

    pub fn collection(&self) -> &Collection {
        &self.coll
    }

    pub fn into_collection(self) -> Collection {
        self.coll
    }

    pub fn blocks(&self) -> &[Coalition] {
        self.coll.blocks()
    }

    pub fn len(&self) -> usize {
        self.coll.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Block containing player i. Panics if i is outside the base set.
    pub fn block_of(&self, i: Player) -> Coalition {
        self.coll
            .block_of(i)
            .unwrap_or_else(|| panic!("player {i} not in partition base"))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coll.fmt(f)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coll.fmt(f)
    }
}

/// The frame C[P]: blocks of P intersected with the support of C, empties
/// dropped. Always a partition of support(C).
pub fn frame(c: &Collection, p: &Partition) -> Collection {
    let sup = c.support();
    let mut blocks: Vec<Coalition> = p
        .blocks()
        .iter()
        .filter_map(|&pi| pi.intersection(sup))
        .collect();
    debug_assert!(!blocks.is_empty(), "frame of a non-empty collection is non-empty");
    // P's block order does not survive intersection; restore canonical form.
    blocks.sort_unstable_by_key(|b| b.min_player());
    Collection { blocks }
}

/// True iff T lies inside a single block of P.
pub fn is_compatible(t: Coalition, p: &Partition) -> bool {
    p.blocks().iter().any(|&pi| t.is_subset(pi))
}

/// Set partitions of `set`, in lexicographic restricted-growth-string order.
pub fn partitions_of(set: Coalition) -> PartitionIter {
    PartitionIter {
        members: set.players().collect(),
        rgs: Vec::new(),
        started: false,
        done: false,
    }
}

/// Set partitions of the grand coalition {1..n}.
pub fn all_partitions(n: u32) -> PartitionIter {
    partitions_of(Coalition::full(n))
}

/// Every collection in {1..n}: for each non-empty S ⊆ N (by ascending mask),
/// every partition of S. Total count is B(n+1) − 1.
pub fn all_collections(n: u32) -> impl Iterator<Item = Collection> {
    let full = Coalition::full(n).mask();
    (1..=full)
        .filter(move |m| m & !full == 0)
        .flat_map(|m| partitions_of(Coalition::from_mask(m)).map(Partition::into_collection))
}

pub struct PartitionIter {
    members: Vec<Player>,
    rgs: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIter {
    fn emit(&self) -> Partition {
        let nblocks = self.rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut masks = vec![0u32; nblocks];
        for (i, &g) in self.rgs.iter().enumerate() {
            masks[g] |= 1 << (self.members[i] - 1);
        }
        let blocks = masks.into_iter().map(Coalition::from_mask).collect();
        // Groups are indexed by first appearance, so blocks are already
        // ordered by least member.
        Partition { coll: Collection { blocks } }
    }

    /// Advance the restricted growth string a (a[0]=0, a[i] ≤ max(a[..i])+1)
    /// to its lexicographic successor.
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            let prefix_max = *self.rgs[..i].iter().max().unwrap();
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for j in i + 1..n {
                    self.rgs[j] = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        if !self.started {
            assert!(!self.members.is_empty(), "cannot partition the empty set");
            self.rgs = vec![0; self.members.len()];
            self.started = true;
            return Some(self.emit());
        }
        if self.advance() {
            Some(self.emit())
        } else {
            self.done = true;
            None
        }
    }
}

/// Bell number B(n) (number of set partitions), via the Bell triangle.
pub fn bell(n: u32) -> u64 {
    assert!(n <= 25, "B({n}) overflows u64");
    if n == 0 {
        return 1;
    }
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    *row.last().unwrap()
}
