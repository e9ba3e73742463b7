use std::fmt;
use std::str::FromStr;

use crate::games::{phi_multiset, phi_vector, GameError, IndividualValues, TuGame};
use crate::orders::{compare_multisets, compare_vectors, ComparisonRelation, OrderError, OrderKind};
use crate::partition::Collection;

/// What a TU-game relation compares: whole-block worths or per-player shares.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    V,
    Phi,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::V => "v",
            Basis::Phi => "phi",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, GameError> {
        match s {
            "v" => Ok(Basis::V),
            "phi" => Ok(Basis::Phi),
            other => Err(GameError::BadInstance(format!("unknown basis {other:?}"))),
        }
    }
}

/// Collections compared by the multiset of their block worths.
pub struct WorthRelation {
    game: TuGame,
    kind: OrderKind,
}

impl WorthRelation {
    /// Engine-ready relation; harness-only kinds are refused here.
    pub fn new(game: TuGame, kind: OrderKind) -> Result<Self, GameError> {
        if !kind.engine_admissible() {
            return Err(GameError::Order(OrderError::InadmissibleOrder { kind }));
        }
        WorthRelation::for_harness(game, kind)
    }

    /// Accepts any multiset-basis kind; the engine will refuse to iterate it,
    /// but the axiom harness may probe it.
    pub fn for_harness(game: TuGame, kind: OrderKind) -> Result<Self, GameError> {
        if kind.is_vector_basis() {
            return Err(GameError::Order(OrderError::WrongBasis { kind }));
        }
        Ok(WorthRelation { game, kind })
    }

    pub fn game(&self) -> &TuGame {
        &self.game
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }
}

impl ComparisonRelation for WorthRelation {
    fn prefers(&self, a: &Collection, b: &Collection) -> bool {
        debug_assert_eq!(a.support(), b.support(), "collections must share a support");
        let va = self.game.value_multiset(a);
        let vb = self.game.value_multiset(b);
        compare_multisets(self.kind, &va, &vb).expect("multiset kind by construction")
    }

    fn describe(&self) -> String {
        format!("{} over coalition worths", self.kind)
    }

    fn engine_admissible(&self) -> bool {
        self.kind.engine_admissible()
    }
}

/// Collections compared by the players' individual shares: as a multiset for
/// multiset-basis kinds, player-by-player for majority and Pareto.
pub struct PayoffRelation {
    game: TuGame,
    phi: Box<dyn IndividualValues>,
    kind: OrderKind,
}

impl PayoffRelation {
    /// Engine-ready relation; harness-only kinds are refused here.
    pub fn new(
        game: TuGame,
        phi: Box<dyn IndividualValues>,
        kind: OrderKind,
    ) -> Result<Self, GameError> {
        if !kind.engine_admissible() {
            return Err(GameError::Order(OrderError::InadmissibleOrder { kind }));
        }
        Ok(PayoffRelation { game, phi, kind })
    }

    /// Accepts any kind for axiom probing.
    pub fn for_harness(game: TuGame, phi: Box<dyn IndividualValues>, kind: OrderKind) -> Self {
        PayoffRelation { game, phi, kind }
    }

    pub fn game(&self) -> &TuGame {
        &self.game
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }
}

impl ComparisonRelation for PayoffRelation {
    fn prefers(&self, a: &Collection, b: &Collection) -> bool {
        debug_assert_eq!(a.support(), b.support(), "collections must share a support");
        if self.kind.is_vector_basis() {
            let xa = phi_vector(&self.game, self.phi.as_ref(), a);
            let xb = phi_vector(&self.game, self.phi.as_ref(), b);
            compare_vectors(self.kind, &xa, &xb).expect("equal supports")
        } else {
            let ma = phi_multiset(&self.game, self.phi.as_ref(), a);
            let mb = phi_multiset(&self.game, self.phi.as_ref(), b);
            compare_multisets(self.kind, &ma, &mb).expect("multiset kind")
        }
    }

    fn describe(&self) -> String {
        format!("{} over individual shares", self.kind)
    }

    fn engine_admissible(&self) -> bool {
        self.kind.engine_admissible()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::EqualSplit;
    use crate::rational::Rat;

    fn pairs_game() -> TuGame {
        TuGame::from_fn(2, |c| if c.len() == 1 { Rat::one() } else { Rat::from(2) }).unwrap()
    }

    fn flat_game(n: u32) -> TuGame {
        TuGame::from_fn(n, |_| Rat::from(6)).unwrap()
    }

    fn coll(s: &str) -> Collection {
        s.parse().unwrap()
    }

    #[test]
    fn worth_relation_distinguishes_by_nash() {
        let rel = WorthRelation::new(pairs_game(), OrderKind::Nash).unwrap();
        assert!(rel.prefers(&coll("1,2"), &coll("1|2")));
        assert!(!rel.prefers(&coll("1|2"), &coll("1,2")));
        assert!(!rel.prefers(&coll("1|2"), &coll("1|2")));
        let ut = WorthRelation::new(pairs_game(), OrderKind::Utilitarian).unwrap();
        assert!(!ut.prefers(&coll("1,2"), &coll("1|2")), "sums tie at 2");
        assert!(!ut.prefers(&coll("1|2"), &coll("1,2")));
    }

    #[test]
    fn share_relations_split_ties_the_worth_basis_cannot() {
        let g = flat_game(4);
        let fine = coll("1|2,3,4"); // shares {6,2,2,2}
        let even = coll("1,2|3,4"); // shares {3,3,3,3}
        let worths = WorthRelation::new(g.clone(), OrderKind::Utilitarian).unwrap();
        assert!(!worths.prefers(&fine, &even), "worth multisets are both {{6,6}}");
        assert!(!worths.prefers(&even, &fine));

        let leximin =
            PayoffRelation::new(g.clone(), Box::new(EqualSplit), OrderKind::Leximin).unwrap();
        assert!(leximin.prefers(&fine, &even), "6 beats 3 at the top");
        assert!(!leximin.prefers(&even, &fine));

        let nash = PayoffRelation::new(g.clone(), Box::new(EqualSplit), OrderKind::Nash).unwrap();
        assert!(nash.prefers(&even, &fine), "81 beats 48");
        assert!(!nash.prefers(&fine, &even));

        let pareto = PayoffRelation::new(g, Box::new(EqualSplit), OrderKind::Pareto).unwrap();
        assert!(!pareto.prefers(&fine, &even), "player 1 gains, players 2..4 lose");
        assert!(!pareto.prefers(&even, &fine));
    }

    #[test]
    fn equal_shares_relate_nothing() {
        // shares of {{1,2}} and {{1},{2}} are both {1,1} here
        let g = pairs_game();
        for kind in [OrderKind::Utilitarian, OrderKind::Nash, OrderKind::Leximin, OrderKind::Pareto]
        {
            let rel = PayoffRelation::new(g.clone(), Box::new(EqualSplit), kind).unwrap();
            assert!(!rel.prefers(&coll("1,2"), &coll("1|2")), "{kind}");
            assert!(!rel.prefers(&coll("1|2"), &coll("1,2")), "{kind}");
        }
    }

    #[test]
    fn pareto_shares_need_every_player_weakly_up() {
        let g = TuGame::from_fn(2, |c| if c.len() == 1 { Rat::one() } else { Rat::from(4) })
            .unwrap();
        let rel = PayoffRelation::new(g, Box::new(EqualSplit), OrderKind::Pareto).unwrap();
        assert!(rel.prefers(&coll("1,2"), &coll("1|2")), "(2,2) dominates (1,1)");
        assert!(!rel.prefers(&coll("1|2"), &coll("1,2")));
    }

    #[test]
    fn admissibility_is_enforced_at_construction() {
        assert!(matches!(
            WorthRelation::new(pairs_game(), OrderKind::Average),
            Err(GameError::Order(OrderError::InadmissibleOrder { .. }))
        ));
        assert!(matches!(
            WorthRelation::for_harness(pairs_game(), OrderKind::Pareto),
            Err(GameError::Order(OrderError::WrongBasis { .. }))
        ));
        let probe = WorthRelation::for_harness(pairs_game(), OrderKind::Average).unwrap();
        assert!(!probe.engine_admissible());
        assert!(matches!(
            PayoffRelation::new(pairs_game(), Box::new(EqualSplit), OrderKind::Majority),
            Err(GameError::Order(OrderError::InadmissibleOrder { .. }))
        ));
        let probe = PayoffRelation::for_harness(pairs_game(), Box::new(EqualSplit), OrderKind::Majority);
        assert!(!probe.engine_admissible());
    }

    #[test]
    fn basis_names_round_trip() {
        assert_eq!("v".parse::<Basis>().unwrap(), Basis::V);
        assert_eq!("phi".parse::<Basis>().unwrap(), Basis::Phi);
        assert!("w".parse::<Basis>().is_err());
        assert_eq!(Basis::Phi.to_string(), "phi");
    }
}
