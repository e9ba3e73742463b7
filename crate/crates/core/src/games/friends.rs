use crate::orders::ComparisonRelation;
use crate::partition::{Coalition, Collection, Partition, Player};

/// Each player ranks coalitions by loyalty to their home block: any subset of
/// the home block beats any coalition that strays outside it, and among
/// subsets of the home block a strictly larger one is strictly better.
pub struct HedonicRelation {
    p: Partition,
}

impl HedonicRelation {
    pub fn new(p: Partition) -> Self {
        HedonicRelation { p }
    }

    pub fn partition(&self) -> &Partition {
        &self.p
    }

    fn strictly_better(&self, i: Player, s: Coalition, t: Coalition) -> bool {
        let home = self.p.block_of(i);
        if !s.is_subset(home) {
            return false;
        }
        (t != s && t.is_subset(s)) || !t.is_subset(home)
    }
}

impl ComparisonRelation for HedonicRelation {
    fn prefers(&self, a: &Collection, b: &Collection) -> bool {
        if a.support() != b.support() {
            return false;
        }
        let mut strict = false;
        for i in a.support().players() {
            let s = a.block_of(i).expect("i drawn from the support");
            let t = b.block_of(i).expect("equal support");
            if self.strictly_better(i, s, t) {
                strict = true;
            } else if s != t {
                return false;
            }
        }
        strict
    }

    fn describe(&self) -> String {
        format!("hedonic-friends over {}", self.p)
    }
}

/// Players swap between coalitions; a rearrangement wins when every member of
/// each changed coalition gains friends from their home block, or keeps the
/// same number of friends in a strictly smaller coalition.
pub struct ExchangeRelation {
    p: Partition,
}

impl ExchangeRelation {
    pub fn new(p: Partition) -> Self {
        ExchangeRelation { p }
    }

    pub fn partition(&self) -> &Partition {
        &self.p
    }
}

impl ComparisonRelation for ExchangeRelation {
    fn prefers(&self, a: &Collection, b: &Collection) -> bool {
        if a == b || a.support() != b.support() {
            return false;
        }
        for &al in a.blocks() {
            if b.contains_block(al) {
                continue;
            }
            for j in al.players() {
                let home = self.p.block_of(j);
                let bj = b.block_of(j).expect("equal support");
                let now = al.intersection(home).map_or(0, Coalition::len);
                let before = bj.intersection(home).map_or(0, Coalition::len);
                let better = now > before || (now == before && al.len() < bj.len());
                if !better {
                    return false;
                }
            }
        }
        true
    }

    fn describe(&self) -> String {
        format!("exchange-friends over {}", self.p)
    }
}
