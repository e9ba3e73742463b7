use crate::games::{check_strict_superadditivity, GameError, TuGame};
use crate::partition::{is_compatible, Coalition, Partition};
use crate::rational::Rat;

/// One block of the partition together with its own game, stated over local
/// player ids 1..|block| (block members in ascending order).
pub struct ComponentGame {
    block: Coalition,
    game: TuGame,
}

impl ComponentGame {
    pub fn new(block: Coalition, game: TuGame) -> Result<Self, GameError> {
        if game.n() != block.len() {
            return Err(GameError::BlockMismatch {
                detail: format!(
                    "component over {} local players paired with block {{{block}}}",
                    game.n()
                ),
            });
        }
        Ok(ComponentGame { block, game })
    }

    pub fn block(&self) -> Coalition {
        self.block
    }

    pub fn game(&self) -> &TuGame {
        &self.game
    }

    /// Component value of a non-empty subset of the block, by original ids.
    pub fn value(&self, part: Coalition) -> &Rat {
        debug_assert!(part.is_subset(self.block), "subset of the block required");
        self.game.v(Coalition::from_mask(to_local(part.mask(), self.block.mask())))
    }
}

/// Renumbers a submask of `block` into contiguous low bits.
fn to_local(sub: u32, block: u32) -> u32 {
    debug_assert_eq!(sub & !block, 0, "not a submask");
    let mut local = 0u32;
    let mut j = 0;
    let mut rest = block;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if sub & bit != 0 {
            local |= 1 << j;
        }
        j += 1;
        rest &= rest - 1;
    }
    local
}

/// Inverse of `to_local`.
fn to_global(local: u32, block: u32) -> u32 {
    let mut global = 0u32;
    let mut j = 0;
    let mut rest = block;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        if local & (1 << j) != 0 {
            global |= bit;
        }
        j += 1;
        rest &= rest - 1;
    }
    global
}

fn validate(components: &[ComponentGame], p: &Partition) -> Result<(), GameError> {
    let n = p.base().len();
    debug_assert_eq!(p.base(), Coalition::full(n), "partition base must be {{1..n}}");
    if components.len() != p.len() {
        return Err(GameError::BlockMismatch {
            detail: format!("{} components for {} blocks", components.len(), p.len()),
        });
    }
    let mut blocks: Vec<Coalition> = components.iter().map(|c| c.block).collect();
    blocks.sort_by_key(|b| b.min_player());
    if blocks != p.blocks() {
        return Err(GameError::BlockMismatch {
            detail: "component blocks do not form the partition".to_string(),
        });
    }
    for (index, comp) in components.iter().enumerate() {
        for local in comp.game.coalitions() {
            if !comp.game.v(local).is_positive() {
                return Err(GameError::ComponentNotPositive {
                    index,
                    coalition: Coalition::from_mask(to_global(local.mask(), comp.block.mask())),
                });
            }
        }
        if let Some((a, b)) = check_strict_superadditivity(&comp.game) {
            return Err(GameError::ComponentNotSuperadditive {
                index,
                a: Coalition::from_mask(to_global(a.mask(), comp.block.mask())),
                b: Coalition::from_mask(to_global(b.mask(), comp.block.mask())),
            });
        }
    }
    Ok(())
}

/// Sum of component values over the pieces each block contributes.
fn composed_value(components: &[ComponentGame], a: Coalition) -> Rat {
    let mut total = Rat::zero();
    for comp in components {
        if let Some(part) = comp.block.intersection(a) {
            total += comp.value(part);
        }
    }
    total
}

/// Blockwise sum of the component games, no penalty anywhere.
pub fn composition(components: &[ComponentGame], p: &Partition) -> Result<TuGame, GameError> {
    validate(components, p)?;
    let n = p.base().len();
    let mut values = vec![Rat::zero(); 1usize << n];
    for mask in 1..(1u32 << n) {
        values[mask as usize] = composed_value(components, Coalition::from_mask(mask));
    }
    Ok(TuGame::new(n, values).expect("positive components compose to positive values"))
}

/// The composition with every coalition that straddles blocks of P penalized
/// by epsilon. Epsilon must be strictly positive yet small enough that every
/// penalized value stays strictly positive — below the least composed value
/// among straddling coalitions.
pub fn semi_union(
    components: &[ComponentGame],
    p: &Partition,
    epsilon: &Rat,
) -> Result<TuGame, GameError> {
    validate(components, p)?;
    if !epsilon.is_positive() {
        return Err(GameError::EpsilonNotPositive { epsilon: epsilon.clone() });
    }
    let n = p.base().len();
    let mut values = vec![Rat::zero(); 1usize << n];
    let mut bound: Option<Rat> = None;
    let mut straddlers = Vec::new();
    for mask in 1..(1u32 << n) {
        let a = Coalition::from_mask(mask);
        let composed = composed_value(components, a);
        if !is_compatible(a, p) {
            if bound.as_ref().map_or(true, |b| composed < *b) {
                bound = Some(composed.clone());
            }
            straddlers.push(mask);
        }
        values[mask as usize] = composed;
    }
    if let Some(bound) = bound {
        if *epsilon >= bound {
            return Err(GameError::EpsilonTooLarge { epsilon: epsilon.clone(), bound });
        }
    }
    for mask in straddlers {
        values[mask as usize] -= epsilon;
    }
    Ok(TuGame::new(n, values).expect("penalized values stay positive"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadratic(block: &[u32]) -> ComponentGame {
        let b = Coalition::from_players(block.iter().copied()).unwrap();
        let g = TuGame::from_fn(b.len(), |c| Rat::from(c.len() * c.len())).unwrap();
        ComponentGame::new(b, g).unwrap()
    }

    fn two_one() -> (Vec<ComponentGame>, Partition) {
        let p = Partition::parse("1,2|3", Coalition::full(3)).unwrap();
        (vec![quadratic(&[1, 2]), quadratic(&[3])], p)
    }

    fn c(players: &[u32]) -> Coalition {
        Coalition::from_players(players.iter().copied()).unwrap()
    }

    #[test]
    fn straddlers_lose_epsilon_and_block_subsets_do_not() {
        let (comps, p) = two_one();
        let half = Rat::new(1, 2);
        let v = semi_union(&comps, &p, &half).unwrap();
        assert_eq!(*v.v(c(&[1, 3])), Rat::new(3, 2), "1 + 1 - 1/2");
        assert_eq!(*v.v(c(&[1, 2])), Rat::from(4));
        assert_eq!(*v.v(c(&[3])), Rat::one());
        assert_eq!(*v.v(c(&[1, 2, 3])), Rat::new(9, 2), "4 + 1 - 1/2");

        let plain = composition(&comps, &p).unwrap();
        assert_eq!(*plain.v(c(&[1, 3])), Rat::from(2));
        assert_eq!(*plain.v(c(&[1, 2, 3])), Rat::from(5));
        // straddlers are strictly below their composed value, others equal
        for a in v.coalitions() {
            if is_compatible(a, &p) {
                assert_eq!(v.v(a), plain.v(a));
            } else {
                assert!(v.v(a) < plain.v(a));
            }
        }
    }

    #[test]
    fn epsilon_bounds_are_enforced() {
        let (comps, p) = two_one();
        assert!(matches!(
            semi_union(&comps, &p, &Rat::zero()),
            Err(GameError::EpsilonNotPositive { .. })
        ));
        // least straddling composition: v({1,3}) = v({2,3}) = 2
        let err = semi_union(&comps, &p, &Rat::from(2)).unwrap_err();
        match err {
            GameError::EpsilonTooLarge { bound, .. } => assert_eq!(bound, Rat::from(2)),
            other => panic!("expected EpsilonTooLarge, got {other:?}"),
        }
        assert!(semi_union(&comps, &p, &Rat::new(199, 100)).is_ok());
    }

    #[test]
    fn single_block_accepts_any_positive_epsilon() {
        let p = Partition::grand(3);
        let comps = vec![quadratic(&[1, 2, 3])];
        let v = semi_union(&comps, &p, &Rat::from(1000)).unwrap();
        assert_eq!(*v.v(c(&[1, 2, 3])), Rat::from(9));
    }

    #[test]
    fn component_validation() {
        let p = Partition::parse("1,2|3", Coalition::full(3)).unwrap();
        // wrong count
        assert!(matches!(
            composition(&[quadratic(&[1, 2])], &p),
            Err(GameError::BlockMismatch { .. })
        ));
        // wrong blocks
        assert!(matches!(
            composition(&[quadratic(&[1, 3]), quadratic(&[2])], &p),
            Err(GameError::BlockMismatch { .. })
        ));
        // additive component is not strictly superadditive
        let additive = ComponentGame::new(
            c(&[1, 2]),
            TuGame::from_fn(2, |s| Rat::from(s.len())).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            composition(&[additive, quadratic(&[3])], &p),
            Err(GameError::ComponentNotSuperadditive { index: 0, .. })
        ));
        // zero value inside a block
        let flat = ComponentGame::new(
            c(&[1, 2]),
            TuGame::from_fn(2, |s| if s.len() == 2 { Rat::one() } else { Rat::zero() }).unwrap(),
        )
        .unwrap();
        match composition(&[flat, quadratic(&[3])], &p).unwrap_err() {
            GameError::ComponentNotPositive { index: 0, coalition } => {
                assert_eq!(coalition, c(&[1]))
            }
            other => panic!("expected ComponentNotPositive, got {other:?}"),
        }
        // size mismatch at construction
        assert!(ComponentGame::new(c(&[1, 2]), TuGame::from_fn(1, |_| Rat::one()).unwrap())
            .is_err());
    }

    #[test]
    fn local_renumbering_round_trips() {
        let block = 0b101100u32; // players 3,4,6
        for sub in [0b100000u32, 0b101000, 0b001100, 0b101100] {
            let local = to_local(sub, block);
            assert_eq!(to_global(local, block), sub);
        }
        assert_eq!(to_local(0b101100, block), 0b111);
        let comp = quadratic(&[3, 4, 6]);
        assert_eq!(*comp.value(c(&[3, 6])), Rat::from(4));
        assert_eq!(*comp.value(c(&[4])), Rat::one());
    }
}
