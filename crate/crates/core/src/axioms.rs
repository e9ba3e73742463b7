//! Exhaustive axiom checking for preference orders over finite domains.
//!
//! A domain is prepared as an [`AxiomUniverse`]: a deduplicated element table
//! (base domain first, unions appended), support keys deciding which pairs
//! compare (equal key) or combine (disjoint key, if the universe allows it),
//! and the strict preference itself. The driver scans each axiom in a fixed
//! deterministic order, so a reported witness is always the first
//! counterexample under that order, whether or not the scan runs in parallel.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::orders::{
    compare_vectors, extended_lex_greater, ComparisonRelation, Multiset, OrderError, OrderKind,
    PayoffVector,
};
use crate::par;
use crate::partition::{Collection, Player};
use crate::rational::Rat;

/// The five axioms the harness can check. `Monotone1` is the two-pair union
/// law (a≻b ∧ c≻d ⇒ a∪c≻b∪d) and `Monotone2` the one-sided variant
/// (a≻b ⇒ a∪c≻b∪c); both range over whatever unions the universe permits.
/// `SemiLinear` asks that exactly one direction relates each pair of distinct
/// comparable elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axiom {
    Irreflexive,
    Transitive,
    Monotone1,
    Monotone2,
    SemiLinear,
}

pub const ALL_AXIOMS: [Axiom; 5] = [
    Axiom::Irreflexive,
    Axiom::Transitive,
    Axiom::Monotone1,
    Axiom::Monotone2,
    Axiom::SemiLinear,
];

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Irreflexive => "irreflexive",
            Axiom::Transitive => "transitive",
            Axiom::Monotone1 => "m1",
            Axiom::Monotone2 => "m2",
            Axiom::SemiLinear => "semi-linear",
        }
    }
}

/// Outcome of checking one axiom over one universe.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub holds: bool,
    /// First counterexample in scan order, rendered by the universe.
    pub witness: Option<Value>,
    /// Semi-linearity failures only: true when neither direction holds
    /// (a tie), false when both do.
    pub tie: Option<bool>,
}

impl AxiomReport {
    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "axiom": self.axiom.name(),
            "holds": self.holds,
            "witness": self.witness.clone().unwrap_or(Value::Null),
        });
        if let Some(t) = self.tie {
            obj["tie"] = json!(t);
        }
        obj
    }
}

/// Axioms each order kind is expected to satisfy on finite grid domains;
/// semi-linearity is reported but never expected (equal aggregates tie).
pub fn expected_axioms(kind: OrderKind) -> &'static [Axiom] {
    use Axiom::*;
    match kind {
        OrderKind::Utilitarian | OrderKind::Nash | OrderKind::Leximin | OrderKind::Pareto => {
            &[Irreflexive, Transitive, Monotone1, Monotone2]
        }
        OrderKind::Average => &[Irreflexive, Transitive],
        OrderKind::Elitist | OrderKind::Egalitarian => &[Irreflexive, Transitive, Monotone1],
        OrderKind::Majority => &[Irreflexive, Monotone1, Monotone2],
    }
}

/// True when every expected axiom for the kind holds in the reports.
pub fn expected_axioms_hold(kind: OrderKind, reports: &[AxiomReport]) -> bool {
    expected_axioms(kind).iter().all(|want| {
        reports
            .iter()
            .find(|r| r.axiom == *want)
            .map(|r| r.holds)
            .unwrap_or(false)
    })
}

/// A finite comparison domain prepared for axiom checking.
///
/// Ids `0..base_len()` are the quantification domain; larger ids address
/// unions formed during checking. Whether a union is permitted must depend
/// only on the two support keys, so one representative pair decides for a
/// whole group.
pub trait AxiomUniverse: Sync {
    fn base_len(&self) -> usize;
    /// Elements compare only within equal keys; unions need disjoint keys.
    fn support_key(&self, id: usize) -> u64;
    /// Strict preference; only called on ids with equal support keys.
    fn prefers(&self, a: usize, b: usize) -> bool;
    /// Id of the union of two base elements, if the universe permits it.
    fn union_of(&self, a: usize, b: usize) -> Option<usize>;
    /// Rendering for witness tuples.
    fn render(&self, id: usize) -> Value;
}

/// Checks the requested axioms over the universe, in the requested order.
pub fn run_axiom_checks(u: &dyn AxiomUniverse, axioms: &[Axiom]) -> Vec<AxiomReport> {
    let n = u.base_len();

    // Comparability groups in first-seen id order, members ascending.
    let mut groups: Vec<(u64, Vec<usize>)> = Vec::new();
    for id in 0..n {
        let key = u.support_key(id);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(id),
            None => groups.push((key, vec![id])),
        }
    }

    // Strict-preference matrix per group, diagonal included.
    let matrices: Vec<Vec<bool>> = groups
        .iter()
        .map(|(_, members)| {
            let m = members.len();
            let mut mat = vec![false; m * m];
            for i in 0..m {
                for j in 0..m {
                    mat[i * m + j] = u.prefers(members[i], members[j]);
                }
            }
            mat
        })
        .collect();

    // (i, j) with members[i] ≻ members[j], in scan order, per group.
    let pref_pairs: Vec<Vec<(usize, usize)>> = groups
        .iter()
        .zip(&matrices)
        .map(|((_, members), mat)| {
            let m = members.len();
            let mut pairs = Vec::new();
            for i in 0..m {
                for j in 0..m {
                    if mat[i * m + j] {
                        pairs.push((i, j));
                    }
                }
            }
            pairs
        })
        .collect();

    axioms
        .iter()
        .map(|&axiom| {
            let (witness, tie) = match axiom {
                Axiom::Irreflexive => (find_irreflexive(u, &groups, &matrices), None),
                Axiom::Transitive => (find_transitive(u, &groups, &matrices), None),
                Axiom::Monotone1 => (find_monotone1(u, &groups, &pref_pairs), None),
                Axiom::Monotone2 => (find_monotone2(u, &groups, &pref_pairs), None),
                Axiom::SemiLinear => find_semi_linear(u, &groups, &matrices),
            };
            AxiomReport { axiom, holds: witness.is_none(), witness, tie }
        })
        .collect()
}

fn find_irreflexive(
    u: &dyn AxiomUniverse,
    groups: &[(u64, Vec<usize>)],
    matrices: &[Vec<bool>],
) -> Option<Value> {
    for ((_, members), mat) in groups.iter().zip(matrices) {
        let m = members.len();
        for i in 0..m {
            if mat[i * m + i] {
                return Some(json!([u.render(members[i])]));
            }
        }
    }
    None
}

fn find_transitive(
    u: &dyn AxiomUniverse,
    groups: &[(u64, Vec<usize>)],
    matrices: &[Vec<bool>],
) -> Option<Value> {
    let mut outer = Vec::new();
    for (g, (_, members)) in groups.iter().enumerate() {
        for i in 0..members.len() {
            outer.push((g, i));
        }
    }
    par::find_first_map(&outer, |&(g, i)| {
        let members = &groups[g].1;
        let m = members.len();
        let mat = &matrices[g];
        for j in 0..m {
            if !mat[i * m + j] {
                continue;
            }
            for k in 0..m {
                if mat[j * m + k] && !mat[i * m + k] {
                    return Some(json!([
                        u.render(members[i]),
                        u.render(members[j]),
                        u.render(members[k]),
                    ]));
                }
            }
        }
        None
    })
}

fn find_monotone1(
    u: &dyn AxiomUniverse,
    groups: &[(u64, Vec<usize>)],
    pref_pairs: &[Vec<(usize, usize)>],
) -> Option<Value> {
    let mut outer = Vec::new();
    for gi in 0..groups.len() {
        for gj in 0..groups.len() {
            // One representative decides unionability for the whole pair.
            if u.union_of(groups[gi].1[0], groups[gj].1[0]).is_none() {
                continue;
            }
            for p1 in 0..pref_pairs[gi].len() {
                outer.push((gi, gj, p1));
            }
        }
    }
    par::find_first_map(&outer, |&(gi, gj, p1)| {
        let (i, j) = pref_pairs[gi][p1];
        let (a, b) = (groups[gi].1[i], groups[gi].1[j]);
        for &(k, l) in &pref_pairs[gj] {
            let (c, d) = (groups[gj].1[k], groups[gj].1[l]);
            if let (Some(ac), Some(bd)) = (u.union_of(a, c), u.union_of(b, d)) {
                if !u.prefers(ac, bd) {
                    return Some(json!([
                        u.render(a),
                        u.render(b),
                        u.render(c),
                        u.render(d),
                    ]));
                }
            }
        }
        None
    })
}

fn find_monotone2(
    u: &dyn AxiomUniverse,
    groups: &[(u64, Vec<usize>)],
    pref_pairs: &[Vec<(usize, usize)>],
) -> Option<Value> {
    let n = u.base_len();
    let mut outer = Vec::new();
    for g in 0..groups.len() {
        for p in 0..pref_pairs[g].len() {
            outer.push((g, p));
        }
    }
    par::find_first_map(&outer, |&(g, p)| {
        let (i, j) = pref_pairs[g][p];
        let (a, b) = (groups[g].1[i], groups[g].1[j]);
        for c in 0..n {
            if let (Some(ac), Some(bc)) = (u.union_of(a, c), u.union_of(b, c)) {
                if !u.prefers(ac, bc) {
                    return Some(json!([u.render(a), u.render(b), u.render(c)]));
                }
            }
        }
        None
    })
}

fn find_semi_linear(
    u: &dyn AxiomUniverse,
    groups: &[(u64, Vec<usize>)],
    matrices: &[Vec<bool>],
) -> (Option<Value>, Option<bool>) {
    for ((_, members), mat) in groups.iter().zip(matrices) {
        let m = members.len();
        for i in 0..m {
            for j in (i + 1)..m {
                let ab = mat[i * m + j];
                let ba = mat[j * m + i];
                if ab != ba {
                    continue; // exactly one direction holds
                }
                let witness = json!([u.render(members[i]), u.render(members[j])]);
                return (Some(witness), Some(!ab));
            }
        }
    }
    (None, None)
}

/// All multisets of sizes 1..=max_size drawn from the grid values,
/// in size-then-lexicographic order.
pub fn multiset_domain(grid: &[Rat], max_size: usize) -> Vec<Multiset> {
    let mut vals = grid.to_vec();
    vals.sort();
    vals.dedup();
    fn rec(vals: &[Rat], size: usize, start: usize, cur: &mut Vec<Rat>, out: &mut Vec<Multiset>) {
        if cur.len() == size {
            out.push(Multiset::new(cur.clone()));
            return;
        }
        for k in start..vals.len() {
            cur.push(vals[k].clone());
            rec(vals, size, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        rec(&vals, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

struct MsEntry {
    ms: Multiset,
    sum: Rat,
    product: Rat,
    mean: Rat,
    dec: Vec<Rat>,
}

impl MsEntry {
    fn new(ms: Multiset) -> Self {
        let sum = ms.sum();
        let product = ms.product();
        let mean = ms.mean();
        let dec = ms.decreasing();
        MsEntry { ms, sum, product, mean, dec }
    }
}

/// Every multiset from the grid domain, with aggregates precomputed so the
/// quadratic and quartic axiom scans stay cheap.
pub struct MultisetUniverse {
    kind: OrderKind,
    elems: Vec<MsEntry>,
    base_len: usize,
    union_tbl: Vec<usize>,
}

impl MultisetUniverse {
    pub fn new(kind: OrderKind, grid: &[Rat], max_size: usize) -> Result<Self, OrderError> {
        if kind.is_vector_basis() {
            return Err(OrderError::WrongBasis { kind });
        }
        let base = multiset_domain(grid, max_size);
        let base_len = base.len();
        let mut elems: Vec<MsEntry> = base.into_iter().map(MsEntry::new).collect();
        let mut index: HashMap<Multiset, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.ms.clone(), i)).collect();
        let mut union_tbl = vec![0usize; base_len * base_len];
        for i in 0..base_len {
            for j in 0..base_len {
                let merged = elems[i].ms.union(&elems[j].ms);
                let id = *index.entry(merged.clone()).or_insert_with(|| {
                    elems.push(MsEntry::new(merged));
                    elems.len() - 1
                });
                union_tbl[i * base_len + j] = id;
            }
        }
        Ok(MultisetUniverse { kind, elems, base_len, union_tbl })
    }
}

impl AxiomUniverse for MultisetUniverse {
    fn base_len(&self) -> usize {
        self.base_len
    }

    fn support_key(&self, _id: usize) -> u64 {
        0 // any two multisets compare and combine
    }

    fn prefers(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (&self.elems[a], &self.elems[b]);
        match self.kind {
            OrderKind::Utilitarian => ea.sum > eb.sum,
            OrderKind::Nash => ea.product > eb.product,
            OrderKind::Leximin => extended_lex_greater(&ea.dec, &eb.dec),
            OrderKind::Average => ea.mean > eb.mean,
            OrderKind::Elitist => ea.ms.max() > eb.ms.max(),
            OrderKind::Egalitarian => ea.ms.min() > eb.ms.min(),
            OrderKind::Majority | OrderKind::Pareto => unreachable!("vector kind"),
        }
    }

    fn union_of(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.union_tbl[a * self.base_len + b])
    }

    fn render(&self, id: usize) -> Value {
        Value::Array(
            self.elems[id].ms.values().iter().rev().map(|r| Value::String(r.to_string())).collect(),
        )
    }
}

/// Payoff vectors over two banks of disjoint supports ({1..k} and
/// {max_len+1..max_len+k} for k ≤ max_len), grid values in each coordinate.
/// Unions are capped at max_len+1 combined players to keep the quartic scans
/// tractable; the monotonicity checks quantify over that capped range.
pub struct VectorUniverse {
    kind: OrderKind,
    elems: Vec<PayoffVector>,
    keys: Vec<u64>,
    base_len: usize,
    union_tbl: Vec<Option<usize>>,
}

impl VectorUniverse {
    pub fn new(kind: OrderKind, grid: &[Rat], max_len: usize) -> Result<Self, OrderError> {
        if !kind.is_vector_basis() {
            return Err(OrderError::WrongBasis { kind });
        }
        let mut vals = grid.to_vec();
        vals.sort();
        vals.dedup();
        let mut elems: Vec<PayoffVector> = Vec::new();
        for bank in 0..2u32 {
            let offset = bank * max_len as u32;
            for k in 1..=max_len {
                let players: Vec<Player> = (1..=k as Player).map(|p| p + offset).collect();
                let mut idx = vec![0usize; k];
                loop {
                    elems.push(PayoffVector::from_entries(
                        players.iter().zip(&idx).map(|(&p, &v)| (p, vals[v].clone())).collect(),
                    ));
                    // odometer over grid indices, last coordinate fastest
                    let mut pos = k;
                    while pos > 0 {
                        idx[pos - 1] += 1;
                        if idx[pos - 1] < vals.len() {
                            break;
                        }
                        idx[pos - 1] = 0;
                        pos -= 1;
                    }
                    if pos == 0 {
                        break;
                    }
                }
            }
        }
        let base_len = elems.len();
        let cap = max_len as u32 + 1;
        let mut keys: Vec<u64> = elems.iter().map(|pv| pv.support().mask() as u64).collect();
        let mut index: HashMap<PayoffVector, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut union_tbl = vec![None; base_len * base_len];
        for i in 0..base_len {
            for j in 0..base_len {
                let (ki, kj) = (keys[i], keys[j]);
                if ki & kj != 0 || (ki | kj).count_ones() > cap {
                    continue;
                }
                let merged = elems[i].disjoint_union(&elems[j]);
                let id = *index.entry(merged.clone()).or_insert_with(|| {
                    elems.push(merged);
                    keys.push(ki | kj);
                    elems.len() - 1
                });
                union_tbl[i * base_len + j] = Some(id);
            }
        }
        Ok(VectorUniverse { kind, elems, keys, base_len, union_tbl })
    }
}

impl AxiomUniverse for VectorUniverse {
    fn base_len(&self) -> usize {
        self.base_len
    }

    fn support_key(&self, id: usize) -> u64 {
        self.keys[id]
    }

    fn prefers(&self, a: usize, b: usize) -> bool {
        compare_vectors(self.kind, &self.elems[a], &self.elems[b])
            .expect("equal supports by construction")
    }

    fn union_of(&self, a: usize, b: usize) -> Option<usize> {
        self.union_tbl[a * self.base_len + b]
    }

    fn render(&self, id: usize) -> Value {
        Value::Array(
            self.elems[id]
                .entries()
                .iter()
                .map(|(_, v)| Value::String(v.to_string()))
                .collect(),
        )
    }
}

/// Collections grouped by support, compared through a game-induced relation.
pub struct CollectionUniverse<'a> {
    rel: &'a dyn ComparisonRelation,
    elems: Vec<Collection>,
    keys: Vec<u64>,
    base_len: usize,
    union_tbl: Vec<Option<usize>>,
}

impl<'a> CollectionUniverse<'a> {
    pub fn new(rel: &'a dyn ComparisonRelation, collections: &[Collection]) -> Self {
        let mut elems: Vec<Collection> = Vec::new();
        let mut index: HashMap<Collection, usize> = HashMap::new();
        for c in collections {
            index.entry(c.clone()).or_insert_with(|| {
                elems.push(c.clone());
                elems.len() - 1
            });
        }
        let base_len = elems.len();
        let mut keys: Vec<u64> = elems.iter().map(|c| c.support().mask() as u64).collect();
        let mut union_tbl = vec![None; base_len * base_len];
        for i in 0..base_len {
            for j in 0..base_len {
                if keys[i] & keys[j] != 0 {
                    continue;
                }
                let merged = elems[i].disjoint_union(&elems[j]);
                let key = keys[i] | keys[j];
                let id = *index.entry(merged.clone()).or_insert_with(|| {
                    keys.push(key);
                    elems.push(merged);
                    elems.len() - 1
                });
                union_tbl[i * base_len + j] = Some(id);
            }
        }
        CollectionUniverse { rel, elems, keys, base_len, union_tbl }
    }
}

impl AxiomUniverse for CollectionUniverse<'_> {
    fn base_len(&self) -> usize {
        self.base_len
    }

    fn support_key(&self, id: usize) -> u64 {
        self.keys[id]
    }

    fn prefers(&self, a: usize, b: usize) -> bool {
        self.rel.prefers(&self.elems[a], &self.elems[b])
    }

    fn union_of(&self, a: usize, b: usize) -> Option<usize> {
        self.union_tbl[a * self.base_len + b]
    }

    fn render(&self, id: usize) -> Value {
        Value::String(self.elems[id].to_string())
    }
}

/// All five axioms for a multiset-basis kind over the grid domain.
pub fn check_multiset_order(
    kind: OrderKind,
    grid: &[Rat],
    max_size: usize,
) -> Result<Vec<AxiomReport>, OrderError> {
    let u = MultisetUniverse::new(kind, grid, max_size)?;
    Ok(run_axiom_checks(&u, &ALL_AXIOMS))
}

/// All five axioms for a vector-basis kind over the grid domain.
pub fn check_vector_order(
    kind: OrderKind,
    grid: &[Rat],
    max_len: usize,
) -> Result<Vec<AxiomReport>, OrderError> {
    let u = VectorUniverse::new(kind, grid, max_len)?;
    Ok(run_axiom_checks(&u, &ALL_AXIOMS))
}

/// Dispatches to the multiset or vector universe by the kind's basis.
pub fn check_order_properties(
    kind: OrderKind,
    grid: &[Rat],
    max_size: usize,
) -> Result<Vec<AxiomReport>, OrderError> {
    if kind.is_vector_basis() {
        check_vector_order(kind, grid, max_size)
    } else {
        check_multiset_order(kind, grid, max_size)
    }
}

/// All five axioms for a game-induced relation over the given collection
/// groups (each group shares a support; unions form across disjoint groups).
pub fn check_relation_properties(
    rel: &dyn ComparisonRelation,
    groups: &[Vec<Collection>],
) -> Vec<AxiomReport> {
    let flat: Vec<Collection> = groups.iter().flatten().cloned().collect();
    let u = CollectionUniverse::new(rel, &flat);
    run_axiom_checks(&u, &ALL_AXIOMS)
}

/// Convenience: checks a relation over every collection of subsets of {1..n}.
pub fn check_relation(rel: &dyn ComparisonRelation, n: u32) -> Vec<AxiomReport> {
    let all: Vec<Collection> = crate::partition::all_collections(n).collect();
    let u = CollectionUniverse::new(rel, &all);
    run_axiom_checks(&u, &ALL_AXIOMS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::compare_multisets;

    fn grid(vals: &[&str]) -> Vec<Rat> {
        vals.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn report(reports: &[AxiomReport], axiom: Axiom) -> &AxiomReport {
        reports.iter().find(|r| r.axiom == axiom).unwrap()
    }

    #[test]
    fn domain_size_matches_combinations_with_repetition() {
        let g = grid(&["0", "1/2", "1", "2", "3"]);
        // sizes 1..3 over 5 values: 5 + 15 + 35
        assert_eq!(multiset_domain(&g, 3).len(), 55);
        // duplicates in the grid collapse
        assert_eq!(multiset_domain(&grid(&["1", "1", "2"]), 1).len(), 2);
    }

    #[test]
    fn utilitarian_satisfies_all_but_semi_linearity() {
        let reports =
            check_multiset_order(OrderKind::Utilitarian, &grid(&["0", "1", "2"]), 2).unwrap();
        for a in [Axiom::Irreflexive, Axiom::Transitive, Axiom::Monotone1, Axiom::Monotone2] {
            assert!(report(&reports, a).holds, "{:?} should hold", a);
        }
        let semi = report(&reports, Axiom::SemiLinear);
        assert!(!semi.holds);
        assert_eq!(semi.tie, Some(true), "equal sums tie, never conflict");
    }

    #[test]
    fn universe_preferences_agree_with_direct_comparison() {
        let g = grid(&["0", "1", "3"]);
        for kind in [OrderKind::Utilitarian, OrderKind::Nash, OrderKind::Leximin, OrderKind::Average]
        {
            let u = MultisetUniverse::new(kind, &g, 2).unwrap();
            let domain = multiset_domain(&g, 2);
            for (i, a) in domain.iter().enumerate() {
                for (j, b) in domain.iter().enumerate() {
                    assert_eq!(
                        u.prefers(i, j),
                        compare_multisets(kind, a, b).unwrap(),
                        "{kind} on {a:?} vs {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn averaging_breaks_the_two_pair_union_law() {
        let reports =
            check_multiset_order(OrderKind::Average, &grid(&["0", "1", "2", "3"]), 3).unwrap();
        assert!(report(&reports, Axiom::Irreflexive).holds);
        assert!(report(&reports, Axiom::Transitive).holds);
        let m1 = report(&reports, Axiom::Monotone1);
        assert!(!m1.holds);
        assert!(m1.witness.is_some());
        // The classic quadruple fails the law directly: means 3 > 2 and
        // 1 > 0, yet the unions tie at 7/5 vs 8/5 reversed.
        let a = Multiset::new(vec![Rat::from(3)]);
        let b = Multiset::new(vec![Rat::from(2); 4]);
        let c = Multiset::new(vec![Rat::from(1); 4]);
        let d = Multiset::new(vec![Rat::from(0)]);
        assert!(compare_multisets(OrderKind::Average, &a, &b).unwrap());
        assert!(compare_multisets(OrderKind::Average, &c, &d).unwrap());
        assert!(!compare_multisets(OrderKind::Average, &a.union(&c), &b.union(&d)).unwrap());
    }

    #[test]
    fn extremal_kinds_break_the_one_sided_union_law() {
        let g = grid(&["0", "1", "2", "3"]);
        for kind in [OrderKind::Elitist, OrderKind::Egalitarian] {
            let reports = check_multiset_order(kind, &g, 2).unwrap();
            assert!(report(&reports, Axiom::Irreflexive).holds);
            assert!(report(&reports, Axiom::Transitive).holds);
            assert!(report(&reports, Axiom::Monotone1).holds, "{kind} m1");
            assert!(!report(&reports, Axiom::Monotone2).holds, "{kind} m2");
        }
        // {2} ≻ {1} in both kinds, but appending {3} (elitist) or {0}
        // (egalitarian) equalizes the extremes.
        let two = Multiset::new(vec![Rat::from(2)]);
        let one = Multiset::new(vec![Rat::from(1)]);
        let three = Multiset::new(vec![Rat::from(3)]);
        let zero = Multiset::new(vec![Rat::from(0)]);
        assert!(compare_multisets(OrderKind::Elitist, &two, &one).unwrap());
        assert!(!compare_multisets(OrderKind::Elitist, &two.union(&three), &one.union(&three))
            .unwrap());
        assert!(compare_multisets(OrderKind::Egalitarian, &two, &one).unwrap());
        assert!(!compare_multisets(OrderKind::Egalitarian, &two.union(&zero), &one.union(&zero))
            .unwrap());
    }

    #[test]
    fn majority_cycles_but_stays_monotone() {
        let reports =
            check_vector_order(OrderKind::Majority, &grid(&["0", "1", "2", "3"]), 3).unwrap();
        assert!(report(&reports, Axiom::Irreflexive).holds);
        assert!(!report(&reports, Axiom::Transitive).holds);
        assert!(report(&reports, Axiom::Monotone1).holds);
        assert!(report(&reports, Axiom::Monotone2).holds);
    }

    #[test]
    fn pareto_satisfies_all_but_semi_linearity() {
        let reports = check_vector_order(OrderKind::Pareto, &grid(&["0", "1"]), 2).unwrap();
        for a in [Axiom::Irreflexive, Axiom::Transitive, Axiom::Monotone1, Axiom::Monotone2] {
            assert!(report(&reports, a).holds, "{:?} should hold", a);
        }
        let semi = report(&reports, Axiom::SemiLinear);
        assert!(!semi.holds);
        assert_eq!(semi.tie, Some(true));
    }

    #[test]
    fn basis_mismatch_is_rejected() {
        assert!(matches!(
            check_multiset_order(OrderKind::Pareto, &grid(&["0", "1"]), 2),
            Err(OrderError::WrongBasis { .. })
        ));
        assert!(matches!(
            check_vector_order(OrderKind::Nash, &grid(&["0", "1"]), 2),
            Err(OrderError::WrongBasis { .. })
        ));
    }

    /// Prefers whichever collection has fewer blocks: irreflexive,
    /// transitive, and monotone both ways, but silent on equal block counts.
    struct FewerBlocks;

    impl ComparisonRelation for FewerBlocks {
        fn prefers(&self, a: &Collection, b: &Collection) -> bool {
            a.len() < b.len()
        }

        fn describe(&self) -> String {
            "fewer blocks".into()
        }
    }

    #[test]
    fn collection_universe_drives_relation_checks() {
        let reports = check_relation(&FewerBlocks, 3);
        for a in [Axiom::Irreflexive, Axiom::Transitive, Axiom::Monotone1, Axiom::Monotone2] {
            assert!(report(&reports, a).holds, "{:?} should hold", a);
        }
        let semi = report(&reports, Axiom::SemiLinear);
        assert!(!semi.holds);
        assert_eq!(semi.tie, Some(true));
    }

    #[test]
    fn expected_axiom_table() {
        assert!(expected_axioms(OrderKind::Utilitarian).contains(&Axiom::Monotone2));
        assert!(!expected_axioms(OrderKind::Average).contains(&Axiom::Monotone1));
        assert!(!expected_axioms(OrderKind::Majority).contains(&Axiom::Transitive));
        assert!(expected_axioms(OrderKind::Majority).contains(&Axiom::Monotone1));
        let reports =
            check_multiset_order(OrderKind::Average, &grid(&["0", "1", "2", "3"]), 2).unwrap();
        assert!(expected_axioms_hold(OrderKind::Average, &reports));
        assert!(!expected_axioms_hold(OrderKind::Utilitarian, &reports));
    }

    #[test]
    fn report_json_shape() {
        let reports = check_multiset_order(OrderKind::Utilitarian, &grid(&["0", "1"]), 2).unwrap();
        let j = report(&reports, Axiom::Irreflexive).to_json();
        assert_eq!(j["axiom"], "irreflexive");
        assert_eq!(j["holds"], true);
        assert!(j["witness"].is_null());
        assert!(j.get("tie").is_none());
        let semi = report(&reports, Axiom::SemiLinear).to_json();
        assert_eq!(semi["axiom"], "semi-linear");
        assert_eq!(semi["tie"], true);
    }
}
