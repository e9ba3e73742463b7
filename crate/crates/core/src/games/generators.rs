use std::fmt;
use std::str::FromStr;

use crate::games::{EqualSplit, GameError, TuGame};
use crate::orders::OrderKind;
use crate::partition::{is_compatible, Coalition, Partition};
use crate::rational::Rat;

/// The two built-in game constructions targeting a chosen partition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorName {
    Example61,
    Example62,
}

impl GeneratorName {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorName::Example61 => "example61",
            GeneratorName::Example62 => "example62",
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorName {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, GameError> {
        match s {
            "example61" => Ok(GeneratorName::Example61),
            "example62" => Ok(GeneratorName::Example62),
            other => Err(GameError::BadInstance(format!("unknown generator {other:?}"))),
        }
    }
}

/// Shared recursion: singletons are worth 1; a larger coalition inside one
/// block of P takes the best split into two disjoint non-empty parts,
/// combined by `f`, plus 1; anything straddling blocks is worth 0.
fn generator_game(p: &Partition, f: impl Fn(&Rat, &Rat) -> Rat) -> TuGame {
    let n = p.base().len();
    let mut values = vec![Rat::zero(); 1usize << n];
    for mask in 1..(1u32 << n) {
        let c = Coalition::from_mask(mask);
        if c.len() == 1 {
            values[mask as usize] = Rat::one();
            continue;
        }
        if !is_compatible(c, p) {
            continue; // stays 0
        }
        // two-part splits; sub-values are at smaller masks, already computed
        let mut best: Option<Rat> = None;
        let mut part = (mask - 1) & mask;
        while part != 0 {
            let rest = mask & !part;
            let candidate = f(&values[part as usize], &values[rest as usize]);
            if best.as_ref().map_or(true, |b| candidate > *b) {
                best = Some(candidate);
            }
            part = (part - 1) & mask;
        }
        values[mask as usize] = best.expect("size >= 2 has a split") + Rat::one();
    }
    TuGame::new(n, values).expect("generator values are non-negative")
}

/// Worth-basis target construction: utilitarian adds split values, Nash
/// multiplies them, leximin takes their max.
pub fn build_example61(p: &Partition, kind: OrderKind) -> Result<TuGame, GameError> {
    let game = match kind {
        OrderKind::Utilitarian => generator_game(p, |x, y| x + y),
        OrderKind::Nash => generator_game(p, |x, y| x * y),
        OrderKind::Leximin => generator_game(p, |x, y| if x >= y { x.clone() } else { y.clone() }),
        other => {
            return Err(GameError::UnsupportedGeneratorOrder { name: "example61", kind: other })
        }
    };
    Ok(game)
}

/// Share-basis target construction: leximin and Pareto scale the max split
/// value by n before the increment, utilitarian and Nash add split values.
/// Shares are always the equal split.
pub fn build_example62(p: &Partition, kind: OrderKind) -> Result<(TuGame, EqualSplit), GameError> {
    let n = Rat::from(p.base().len());
    let game = match kind {
        OrderKind::Utilitarian | OrderKind::Nash => generator_game(p, |x, y| x + y),
        OrderKind::Leximin | OrderKind::Pareto => generator_game(p, move |x, y| {
            let m = if x >= y { x } else { y };
            &(&n * m) + &Rat::one()
        }),
        other => {
            return Err(GameError::UnsupportedGeneratorOrder { name: "example62", kind: other })
        }
    };
    Ok((game, EqualSplit))
}
