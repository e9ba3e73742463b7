use crate::orders::ComparisonRelation;
use crate::partition::{Coalition, Collection};

/// Hand-built three-player relation (the "example5" game kind). Full
/// partitions of {1,2,3} form one strict ladder, every two-player support
/// prefers its singletons split over the pair, and singleton supports are
/// unrelated.
pub struct Example5Relation;

/// Ladder position; lower is better.
fn rank(c: &Collection) -> u32 {
    match c.len() {
        1 => 0, // {1,2,3}
        3 => 1, // 1|2|3
        _ => {
            let pair = c.blocks().iter().copied().find(|b| b.len() == 2).expect("a pair block");
            match pair.mask() {
                0b011 => 2, // 1,2|3
                0b101 => 3, // 1,3|2
                _ => 4,     // 1|2,3
            }
        }
    }
}

impl ComparisonRelation for Example5Relation {
    fn prefers(&self, a: &Collection, b: &Collection) -> bool {
        let support = a.support();
        if support != b.support() {
            return false;
        }
        debug_assert!(support.is_subset(Coalition::full(3)), "three-player fixture");
        match support.len() {
            3 => rank(a) < rank(b),
            2 => a.len() == 2 && b.len() == 1,
            _ => false,
        }
    }

    fn describe(&self) -> String {
        "example5".to_string()
    }
}
