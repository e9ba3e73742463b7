//! Merge/split dynamics: applicable-move enumeration, scheduled iteration to
//! a terminal partition, exhaustive outcome exploration, and the stability
//! checkers with their cross-validation forms.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::orders::ComparisonRelation;
use crate::partition::{
    all_collections, all_partitions, frame, is_compatible, partitions_of, Coalition, Collection,
    Partition,
};

/// Largest player count the exhaustive operations (full partition or
/// collection sweeps) accept; per-trace iteration has no such limit.
pub const EXHAUSTIVE_CAP: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    InvalidMove { detail: String },
    /// The iteration step cap tripped — a bug signal, not an expected outcome.
    CapExceeded { cap: usize },
    /// A partition recurred along a trace, breaking strict descent.
    RepeatedPartition { partition: Partition },
    /// The relation is harness-only; dynamics would be meaningless.
    Inadmissible { relation: String },
    /// Two distinct stable partitions were found where at most one may exist.
    MultipleStable { first: Partition, second: Partition },
    TooManyPlayers { n: u32 },
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::InvalidMove { detail } => write!(f, "invalid move: {detail}"),
            EngineError::CapExceeded { cap } => {
                write!(f, "iteration exceeded the {cap}-step cap; descent is broken")
            }
            EngineError::RepeatedPartition { partition } => {
                write!(f, "partition {partition} repeated along a trace")
            }
            EngineError::Inadmissible { relation } => {
                write!(f, "relation \"{relation}\" is not admissible for the engine")
            }
            EngineError::MultipleStable { first, second } => {
                write!(f, "both {first} and {second} test stable; at most one may")
            }
            EngineError::TooManyPlayers { n } => {
                write!(f, "n={n} exceeds the exhaustive-operation cap {EXHAUSTIVE_CAP}")
            }
        }
    }
}

impl std::error::Error for EngineError {}

fn ensure_admissible(rel: &dyn ComparisonRelation) -> Result<(), EngineError> {
    if !rel.engine_admissible() {
        return Err(EngineError::Inadmissible { relation: rel.describe() });
    }
    Ok(())
}

fn ensure_exhaustive(n: u32) -> Result<(), EngineError> {
    if n > EXHAUSTIVE_CAP {
        return Err(EngineError::TooManyPlayers { n });
    }
    Ok(())
}

/// One rewrite: merge several blocks into their union, or split one block
/// into at least two parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Merge { blocks: Vec<Coalition> },
    Split { block: Coalition, parts: Vec<Coalition> },
}

impl Move {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Move::Merge { .. } => "merge",
            Move::Split { .. } => "split",
        }
    }

    /// Coalitions a trace line lists: the inputs of a merge, the outputs of a
    /// split.
    pub fn listed_blocks(&self) -> &[Coalition] {
        match self {
            Move::Merge { blocks } => blocks,
            Move::Split { parts, .. } => parts,
        }
    }
}

/// A run of the rewrite system from `start` to a partition with no
/// applicable move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: Partition,
    pub steps: Vec<(Move, Partition)>,
    pub terminal: Partition,
}

fn blocks_json(blocks: &[Coalition]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|b| {
            let ids: Vec<String> = b.players().map(|p| p.to_string()).collect();
            format!("[{}]", ids.join(","))
        })
        .collect();
    format!("[{}]", inner.join(","))
}

impl MoveTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One JSON object per line: the start, each move with its result, and a
    /// closing terminal line with the step count.
    pub fn json_lines(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.steps.len() + 2);
        out.push(format!(r#"{{"start":"{}"}}"#, self.start));
        for (m, result) in &self.steps {
            out.push(format!(
                r#"{{"move":"{}","blocks":{},"result":"{}"}}"#,
                m.kind_name(),
                blocks_json(m.listed_blocks()),
                result
            ));
        }
        out.push(format!(r#"{{"terminal":"{}","steps":{}}}"#, self.terminal, self.steps.len()));
        out
    }
}

fn merge_moves(
    blocks: &[Coalition],
    rel: &dyn ComparisonRelation,
    start: usize,
    chosen: &mut Vec<Coalition>,
    moves: &mut Vec<Move>,
) {
    for i in start..blocks.len() {
        chosen.push(blocks[i]);
        if chosen.len() >= 2 {
            let union = chosen.iter().fold(chosen[0], |u, &b| u.union(b));
            let merged = Collection::singleton(union);
            let parts = Collection::new(chosen.clone()).expect("distinct blocks of a partition");
            if rel.prefers(&merged, &parts) {
                moves.push(Move::Merge { blocks: chosen.clone() });
            }
        }
        merge_moves(blocks, rel, i + 1, chosen, moves);
        chosen.pop();
    }
}

/// Every preferred rewrite of P, deterministically ordered: merges over block
/// subsets in lexicographic index order, then splits per block in enumeration
/// order.
pub fn applicable_moves(p: &Partition, rel: &dyn ComparisonRelation) -> Vec<Move> {
    let mut moves = Vec::new();
    let mut chosen = Vec::new();
    merge_moves(p.blocks(), rel, 0, &mut chosen, &mut moves);
    for &block in p.blocks() {
        if block.len() < 2 {
            continue;
        }
        let whole = Collection::singleton(block);
        for q in partitions_of(block) {
            if q.len() < 2 {
                continue;
            }
            let parts = q.into_collection();
            if rel.prefers(&parts, &whole) {
                moves.push(Move::Split { block, parts: parts.blocks().to_vec() });
            }
        }
    }
    moves
}

fn invalid(detail: String) -> EngineError {
    EngineError::InvalidMove { detail }
}

/// Applies a move to a partition it references.
pub fn apply_move(p: &Partition, m: &Move) -> Result<Partition, EngineError> {
    match m {
        Move::Merge { blocks } => {
            if blocks.len() < 2 {
                return Err(invalid("a merge needs at least two blocks".to_string()));
            }
            let mut mask = 0u32;
            for b in blocks {
                if !p.collection().contains_block(*b) {
                    return Err(invalid(format!("{{{b}}} is not a block of {p}")));
                }
                if mask & b.mask() != 0 {
                    return Err(invalid("merge blocks repeat".to_string()));
                }
                mask |= b.mask();
            }
            let mut next: Vec<Coalition> =
                p.blocks().iter().copied().filter(|b| !blocks.contains(b)).collect();
            next.push(Coalition::from_mask(mask));
            Ok(Partition::new(p.base(), next).expect("merging blocks preserves the cover"))
        }
        Move::Split { block, parts } => {
            if !p.collection().contains_block(*block) {
                return Err(invalid(format!("{{{block}}} is not a block of {p}")));
            }
            if parts.len() < 2 {
                return Err(invalid("a split needs at least two parts".to_string()));
            }
            let mut mask = 0u32;
            for part in parts {
                if mask & part.mask() != 0 {
                    return Err(invalid("split parts overlap".to_string()));
                }
                mask |= part.mask();
            }
            if mask != block.mask() {
                return Err(invalid(format!("split parts do not cover {{{block}}}")));
            }
            let mut next: Vec<Coalition> =
                p.blocks().iter().copied().filter(|b| b != block).collect();
            next.extend_from_slice(parts);
            Ok(Partition::new(p.base(), next).expect("splitting a block preserves the cover"))
        }
    }
}

/// Move selection per step: always the first applicable move, or a uniform
/// seeded draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    First,
    Random { seed: u64 },
}

/// Runs the rewrite system from `p0` until no move applies. The cap bounds
/// the step count; tripping it (or revisiting a partition) means the
/// relation's strict descent is broken.
pub fn iterate(
    p0: &Partition,
    rel: &dyn ComparisonRelation,
    schedule: Schedule,
    cap: usize,
) -> Result<MoveTrace, EngineError> {
    ensure_admissible(rel)?;
    let mut rng = match schedule {
        Schedule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        Schedule::First => None,
    };
    let mut seen = HashSet::new();
    seen.insert(p0.clone());
    let mut current = p0.clone();
    let mut steps = Vec::new();
    loop {
        let mut moves = applicable_moves(&current, rel);
        if moves.is_empty() {
            break;
        }
        if steps.len() >= cap {
            return Err(EngineError::CapExceeded { cap });
        }
        let idx = match rng.as_mut() {
            Some(r) => r.gen_range(0..moves.len()),
            None => 0,
        };
        let m = moves.swap_remove(idx);
        let next = apply_move(&current, &m)?;
        if !seen.insert(next.clone()) {
            return Err(EngineError::RepeatedPartition { partition: next });
        }
        steps.push((m, next.clone()));
        current = next;
    }
    Ok(MoveTrace { start: p0.clone(), steps, terminal: current })
}

/// Every terminal partition reachable from `p0`: a memoized sweep of the
/// move graph (acyclic under strict descent; a cycle is reported as a
/// repeated partition).
pub fn all_terminal_outcomes(
    p0: &Partition,
    rel: &dyn ComparisonRelation,
) -> Result<BTreeSet<Partition>, EngineError> {
    ensure_admissible(rel)?;
    ensure_exhaustive(p0.base().len())?;
    let mut succs: HashMap<Partition, Vec<Partition>> = HashMap::new();
    let mut done: HashMap<Partition, BTreeSet<Partition>> = HashMap::new();
    let mut in_progress: HashSet<Partition> = HashSet::new();
    let mut stack = vec![p0.clone()];
    while let Some(top) = stack.last().cloned() {
        if done.contains_key(&top) {
            stack.pop();
            continue;
        }
        if in_progress.contains(&top) {
            let nexts = &succs[&top];
            if let Some(q) = nexts.iter().find(|q| !done.contains_key(*q)) {
                return Err(EngineError::RepeatedPartition { partition: q.clone() });
            }
            let set = if nexts.is_empty() {
                BTreeSet::from([top.clone()])
            } else {
                let mut set = BTreeSet::new();
                for q in nexts {
                    set.extend(done[q].iter().cloned());
                }
                set
            };
            done.insert(top.clone(), set);
            in_progress.remove(&top);
            stack.pop();
            continue;
        }
        in_progress.insert(top.clone());
        let nexts: Vec<Partition> = applicable_moves(&top, rel)
            .iter()
            .map(|m| apply_move(&top, m).expect("applicable moves apply"))
            .collect();
        for q in &nexts {
            if !done.contains_key(q) && !in_progress.contains(q) {
                stack.push(q.clone());
            }
        }
        succs.insert(top, nexts);
    }
    Ok(done.remove(p0).expect("the start resolves"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Dp,
    DcDirect,
    DcLemma,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dp => "dp",
            Method::DcDirect => "dc-direct",
            Method::DcLemma => "dc-lemma",
        }
    }
}

/// What broke stability: a partition the candidate fails to dominate, or a
/// defecting collection whose frame is not preferred to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityWitness {
    Partition(Partition),
    Collection(Collection),
}

impl StabilityWitness {
    pub fn literal(&self) -> String {
        match self {
            StabilityWitness::Partition(p) => p.to_string(),
            StabilityWitness::Collection(c) => c.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub witness: Option<StabilityWitness>,
    pub method: Method,
}

impl StabilityVerdict {
    fn stable(method: Method) -> Self {
        StabilityVerdict { stable: true, witness: None, method }
    }

    fn unstable(method: Method, witness: StabilityWitness) -> Self {
        StabilityVerdict { stable: false, witness: Some(witness), method }
    }
}

/// Maximality test: stable iff P is preferred to every other partition of
/// the same base. Witness: the first partition P fails to dominate.
pub fn is_dp_stable(
    p: &Partition,
    rel: &dyn ComparisonRelation,
) -> Result<StabilityVerdict, EngineError> {
    ensure_admissible(rel)?;
    let n = p.base().len();
    ensure_exhaustive(n)?;
    debug_assert_eq!(p.base(), Coalition::full(n), "partitions of {{1..n}} expected");
    for q in all_partitions(n) {
        if q == *p {
            continue;
        }
        if !rel.prefers(p.collection(), q.collection()) {
            return Ok(StabilityVerdict::unstable(Method::Dp, StabilityWitness::Partition(q)));
        }
    }
    Ok(StabilityVerdict::stable(Method::Dp))
}

/// Definition-form cross-check of [`is_dp_stable`]: every rival partition,
/// viewed as a collection, must be beaten by its frame.
pub fn is_dp_stable_direct(
    p: &Partition,
    rel: &dyn ComparisonRelation,
) -> Result<StabilityVerdict, EngineError> {
    ensure_admissible(rel)?;
    let n = p.base().len();
    ensure_exhaustive(n)?;
    debug_assert_eq!(p.base(), Coalition::full(n), "partitions of {{1..n}} expected");
    for q in all_partitions(n) {
        let c = q.collection();
        let fr = frame(c, p);
        if fr == *c {
            continue;
        }
        if !rel.prefers(&fr, c) {
            return Ok(StabilityVerdict::unstable(Method::Dp, StabilityWitness::Partition(q)));
        }
    }
    Ok(StabilityVerdict::stable(Method::Dp))
}

/// Definition-form check over every collection: each one that differs from
/// its frame must be beaten by it. Witness: the first defecting collection.
pub fn is_dc_stable_direct(
    p: &Partition,
    rel: &dyn ComparisonRelation,
) -> Result<StabilityVerdict, EngineError> {
    ensure_admissible(rel)?;
    let n = p.base().len();
    ensure_exhaustive(n)?;
    debug_assert_eq!(p.base(), Coalition::full(n), "partitions of {{1..n}} expected");
    for c in all_collections(n) {
        let fr = frame(&c, p);
        if fr == c {
            continue;
        }
        if !rel.prefers(&fr, &c) {
            return Ok(StabilityVerdict::unstable(Method::DcDirect, StabilityWitness::Collection(c)));
        }
    }
    Ok(StabilityVerdict::stable(Method::DcDirect))
}

/// Two-condition characterization: (i) inside every block, merging any two
/// disjoint pieces must pay; (ii) every coalition straddling blocks must be
/// beaten by its frame. Agrees with [`is_dc_stable_direct`] everywhere.
pub fn is_dc_stable_lemma(
    p: &Partition,
    rel: &dyn ComparisonRelation,
) -> Result<StabilityVerdict, EngineError> {
    ensure_admissible(rel)?;
    let n = p.base().len();
    ensure_exhaustive(n)?;
    debug_assert_eq!(p.base(), Coalition::full(n), "partitions of {{1..n}} expected");
    for &block in p.blocks() {
        if block.len() < 2 {
            continue;
        }
        let bm = block.mask();
        let mut u_mask = 0u32;
        loop {
            u_mask = u_mask.wrapping_sub(bm) & bm;
            if u_mask == 0 {
                break;
            }
            if u_mask.count_ones() < 2 {
                continue;
            }
            let merged = Collection::singleton(Coalition::from_mask(u_mask));
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
                let pair = Collection::new(vec![
                    Coalition::from_mask(a_mask),
                    Coalition::from_mask(b_mask),
                ])
                .expect("disjoint non-empty pieces");
                if !rel.prefers(&merged, &pair) {
                    return Ok(StabilityVerdict::unstable(
                        Method::DcLemma,
                        StabilityWitness::Collection(pair),
                    ));
                }
            }
        }
    }
    for t_mask in 1..(1u32 << n) {
        let t = Coalition::from_mask(t_mask);
        if is_compatible(t, p) {
            continue;
        }
        let single = Collection::singleton(t);
        let fr = frame(&single, p);
        if !rel.prefers(&fr, &single) {
            return Ok(StabilityVerdict::unstable(
                Method::DcLemma,
                StabilityWitness::Collection(single),
            ));
        }
    }
    Ok(StabilityVerdict::stable(Method::DcLemma))
}

/// Scans every partition of {1..n} for stability under the chosen checker.
/// At most one may test stable; two is an upstream relation bug, reported as
/// such.
pub fn find_stable(
    rel: &dyn ComparisonRelation,
    n: u32,
    method: Method,
) -> Result<Option<Partition>, EngineError> {
    ensure_admissible(rel)?;
    ensure_exhaustive(n)?;
    let check = match method {
        Method::Dp => is_dp_stable,
        Method::DcDirect => is_dc_stable_direct,
        Method::DcLemma => is_dc_stable_lemma,
    };
    let mut found: Option<Partition> = None;
    for p in all_partitions(n) {
        if check(&p, rel)?.stable {
            if let Some(first) = found {
                return Err(EngineError::MultipleStable { first, second: p });
            }
            found = Some(p);
        }
    }
    Ok(found)
}

/// [`find_stable`] with the two-condition checker, the usual scan.
pub fn find_dc_stable(
    rel: &dyn ComparisonRelation,
    n: u32,
) -> Result<Option<Partition>, EngineError> {
    find_stable(rel, n, Method::DcLemma)
}

/// The whole move graph over the partitions of {1..n}: one successor per
/// applicable move, in move order. Lets outcome protocols replay many walks
/// without re-enumerating moves.
pub struct MoveGraph {
    nodes: Vec<Partition>,
    index: HashMap<Partition, usize>,
    edges: Vec<Vec<usize>>,
}

impl MoveGraph {
    pub fn build(n: u32, rel: &dyn ComparisonRelation) -> Result<Self, EngineError> {
        ensure_admissible(rel)?;
        ensure_exhaustive(n)?;
        let nodes: Vec<Partition> = all_partitions(n).collect();
        let index: HashMap<Partition, usize> =
            nodes.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let edges = nodes
            .iter()
            .map(|p| {
                applicable_moves(p, rel)
                    .iter()
                    .map(|m| index[&apply_move(p, m).expect("applicable moves apply")])
                    .collect()
            })
            .collect();
        Ok(MoveGraph { nodes, index, edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.nodes[i]
    }

    pub fn is_terminal(&self, i: usize) -> bool {
        self.edges[i].is_empty()
    }

    /// Terminal reached by always taking the first applicable move.
    pub fn first_walk(&self, start: usize) -> usize {
        let mut cur = start;
        let mut steps = 0;
        while let Some(&next) = self.edges[cur].first() {
            cur = next;
            steps += 1;
            assert!(steps <= self.nodes.len(), "walk exceeded the node count; cycle");
        }
        cur
    }

    /// Terminal reached drawing uniformly per step from the seeded stream —
    /// the same draws `iterate` makes under the random schedule.
    pub fn random_walk(&self, start: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cur = start;
        let mut steps = 0;
        loop {
            let outs = &self.edges[cur];
            if outs.is_empty() {
                return cur;
            }
            cur = outs[rng.gen_range(0..outs.len())];
            steps += 1;
            assert!(steps <= self.nodes.len(), "walk exceeded the node count; cycle");
        }
    }

    /// Terminal sets for every node at once, folded in reverse topological
    /// order. Errors if the graph has a cycle (broken descent).
    pub fn terminal_sets(&self) -> Result<Vec<BTreeSet<usize>>, EngineError> {
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        for outs in &self.edges {
            for &q in outs {
                indegree[q] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &q in &self.edges[v] {
                indegree[q] -= 1;
                if indegree[q] == 0 {
                    ready.push(q);
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).expect("cycle node exists");
            return Err(EngineError::RepeatedPartition { partition: self.nodes[stuck].clone() });
        }
        let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &v in order.iter().rev() {
            if self.edges[v].is_empty() {
                sets[v].insert(v);
            } else {
                let mut set = BTreeSet::new();
                for &q in &self.edges[v] {
                    set.extend(sets[q].iter().copied());
                }
                sets[v] = set;
            }
        }
        Ok(sets)
    }
}
