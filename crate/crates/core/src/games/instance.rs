//! JSON instance files: one object per game with a `kind` tag, loaded into a
//! [`GameInstance`] plus loader warnings, then turned into a comparison
//! relation according to the kind's rules for orders and bases.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::games::fixture::Example5Relation;
use crate::games::friends::{ExchangeRelation, HedonicRelation};
use crate::games::generators::{build_example61, build_example62, GeneratorName};
use crate::games::relations::{Basis, PayoffRelation, WorthRelation};
use crate::games::semi_union::{semi_union, ComponentGame};
use crate::games::{EqualSplit, GameError, TuGame};
use crate::orders::{ComparisonRelation, OrderKind};
use crate::partition::{Coalition, Partition, Player, DEFAULT_PLAYER_CAP};
use crate::rational::Rat;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TuSpec {
    #[allow(dead_code)]
    kind: String,
    n: u32,
    values: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    #[allow(dead_code)]
    kind: String,
    name: String,
    order: String,
    partition: Vec<Vec<Player>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentSpec {
    values: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SemiUnionSpec {
    #[allow(dead_code)]
    kind: String,
    partition: Vec<Vec<Player>>,
    epsilon: String,
    components: Vec<ComponentSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionOnlySpec {
    #[allow(dead_code)]
    kind: String,
    partition: Vec<Vec<Player>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KindOnlySpec {
    #[allow(dead_code)]
    kind: String,
}

/// A loaded game, ready to induce a comparison relation.
#[derive(Debug)]
pub enum GameInstance {
    Tu { game: TuGame },
    Generator { name: GeneratorName, order: OrderKind, partition: Partition, game: TuGame },
    SemiUnion { partition: Partition, epsilon: Rat, game: TuGame },
    HedonicFriends { partition: Partition },
    ExchangeFriends { partition: Partition },
    Example5,
}

impl GameInstance {
    pub fn kind_name(&self) -> &'static str {
        match self {
            GameInstance::Tu { .. } => "tu",
            GameInstance::Generator { .. } => "generator",
            GameInstance::SemiUnion { .. } => "semi-union",
            GameInstance::HedonicFriends { .. } => "hedonic-friends",
            GameInstance::ExchangeFriends { .. } => "exchange-friends",
            GameInstance::Example5 => "example5",
        }
    }

    /// Number of players the instance is played over.
    pub fn n(&self) -> u32 {
        match self {
            GameInstance::Tu { game }
            | GameInstance::Generator { game, .. }
            | GameInstance::SemiUnion { game, .. } => game.n(),
            GameInstance::HedonicFriends { partition }
            | GameInstance::ExchangeFriends { partition } => partition.base().len(),
            GameInstance::Example5 => 3,
        }
    }

    pub fn game(&self) -> Option<&TuGame> {
        match self {
            GameInstance::Tu { game }
            | GameInstance::Generator { game, .. }
            | GameInstance::SemiUnion { game, .. } => Some(game),
            _ => None,
        }
    }
}

fn bad(msg: String) -> GameError {
    GameError::BadInstance(msg)
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, GameError> {
    serde_json::from_value(v).map_err(|e| bad(e.to_string()))
}

fn parse_rat(text: &str, what: &str) -> Result<Rat, GameError> {
    text.parse().map_err(|_| bad(format!("bad rational {text:?} for {what}")))
}

/// Key "i,j,k" with strictly ascending ids in 1..=n, as a mask.
fn parse_subset_key(key: &str, n: u32) -> Result<u32, GameError> {
    let mut mask = 0u32;
    let mut last = 0u32;
    for part in key.split(',') {
        let id: u32 =
            part.parse().map_err(|_| bad(format!("bad coalition key {key:?}")))?;
        if id == 0 || id > n {
            return Err(bad(format!("player {id} out of range in coalition key {key:?}")));
        }
        if id <= last {
            return Err(bad(format!(
                "coalition key {key:?} must list players in strictly ascending order"
            )));
        }
        last = id;
        mask |= 1 << (id - 1);
    }
    Ok(mask)
}

/// Component key over the block's original player ids, as a local mask.
fn parse_component_key(key: &str, members: &[Player]) -> Result<u32, GameError> {
    let mut mask = 0u32;
    let mut last = 0u32;
    for part in key.split(',') {
        let id: Player =
            part.parse().map_err(|_| bad(format!("bad coalition key {key:?}")))?;
        if id <= last {
            return Err(bad(format!(
                "coalition key {key:?} must list players in strictly ascending order"
            )));
        }
        last = id;
        let pos = members.iter().position(|&m| m == id).ok_or_else(|| {
            bad(format!("player {id} in key {key:?} is outside the component's block"))
        })?;
        mask |= 1 << pos;
    }
    Ok(mask)
}

fn partition_from_lists(lists: &[Vec<Player>]) -> Result<Partition, GameError> {
    let max = lists.iter().flatten().copied().max().unwrap_or(0);
    if max == 0 {
        return Err(bad("partition must name at least one player".to_string()));
    }
    if max > DEFAULT_PLAYER_CAP {
        return Err(GameError::PlayerCapExceeded { n: max });
    }
    let mut blocks = Vec::with_capacity(lists.len());
    for members in lists {
        blocks.push(Coalition::from_players(members.iter().copied())?);
    }
    Ok(Partition::new(Coalition::full(max), blocks)?)
}

fn values_table(
    values: &BTreeMap<String, String>,
    n: u32,
    parse_key: impl Fn(&str) -> Result<u32, GameError>,
    label: &str,
    warnings: &mut Vec<String>,
) -> Result<Vec<Rat>, GameError> {
    let total = (1usize << n) - 1;
    let mut table = vec![Rat::zero(); 1usize << n];
    for (key, text) in values {
        let mask = parse_key(key)?;
        table[mask as usize] = parse_rat(text, key)?;
    }
    let missing = total - values.len();
    if missing > 0 {
        warnings.push(format!(
            "{label}{missing} of {total} coalition values missing; defaulting to 0"
        ));
    }
    Ok(table)
}

/// Parses one instance file. Warnings report recoverable gaps (missing
/// coalition values); hard shape or validity problems are errors.
pub fn load_instance(text: &str) -> Result<(GameInstance, Vec<String>), GameError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let kind = value
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("missing string field \"kind\"".to_string()))?
        .to_string();
    let mut warnings = Vec::new();
    let instance = match kind.as_str() {
        "tu" => {
            let spec: TuSpec = from_value(value)?;
            if spec.n == 0 || spec.n > DEFAULT_PLAYER_CAP {
                return Err(GameError::PlayerCapExceeded { n: spec.n });
            }
            let table = values_table(
                &spec.values,
                spec.n,
                |key| parse_subset_key(key, spec.n),
                "",
                &mut warnings,
            )?;
            GameInstance::Tu { game: TuGame::new(spec.n, table)? }
        }
        "generator" => {
            let spec: GeneratorSpec = from_value(value)?;
            let name: GeneratorName = spec.name.parse()?;
            let order: OrderKind = spec.order.parse().map_err(GameError::from)?;
            let partition = partition_from_lists(&spec.partition)?;
            let game = match name {
                GeneratorName::Example61 => build_example61(&partition, order)?,
                GeneratorName::Example62 => build_example62(&partition, order)?.0,
            };
            GameInstance::Generator { name, order, partition, game }
        }
        "semi-union" => {
            let spec: SemiUnionSpec = from_value(value)?;
            let partition = partition_from_lists(&spec.partition)?;
            let epsilon = parse_rat(&spec.epsilon, "epsilon")?;
            if spec.components.len() != spec.partition.len() {
                return Err(GameError::BlockMismatch {
                    detail: format!(
                        "{} components for {} blocks",
                        spec.components.len(),
                        spec.partition.len()
                    ),
                });
            }
            // Components pair with blocks in file order.
            let mut comps = Vec::with_capacity(spec.components.len());
            for (idx, (lists, cspec)) in
                spec.partition.iter().zip(&spec.components).enumerate()
            {
                let block = Coalition::from_players(lists.iter().copied())?;
                let members: Vec<Player> = block.players().collect();
                let table = values_table(
                    &cspec.values,
                    block.len(),
                    |key| parse_component_key(key, &members),
                    &format!("component {idx}: "),
                    &mut warnings,
                )?;
                comps.push(ComponentGame::new(block, TuGame::new(block.len(), table)?)?);
            }
            let game = semi_union(&comps, &partition, &epsilon)?;
            GameInstance::SemiUnion { partition, epsilon, game }
        }
        "hedonic-friends" => {
            let spec: PartitionOnlySpec = from_value(value)?;
            GameInstance::HedonicFriends { partition: partition_from_lists(&spec.partition)? }
        }
        "exchange-friends" => {
            let spec: PartitionOnlySpec = from_value(value)?;
            GameInstance::ExchangeFriends { partition: partition_from_lists(&spec.partition)? }
        }
        "example5" => {
            let _spec: KindOnlySpec = from_value(value)?;
            GameInstance::Example5
        }
        other => return Err(bad(format!("unknown game kind {other:?}"))),
    };
    Ok((instance, warnings))
}

fn tu_relation(
    game: &TuGame,
    kind: OrderKind,
    basis: Basis,
) -> Result<Box<dyn ComparisonRelation>, GameError> {
    match basis {
        Basis::V => Ok(Box::new(WorthRelation::new(game.clone(), kind)?)),
        Basis::Phi => {
            Ok(Box::new(PayoffRelation::new(game.clone(), Box::new(EqualSplit), kind)?))
        }
    }
}

fn forbid_choices(order: Option<OrderKind>, basis: Option<Basis>) -> Result<(), GameError> {
    if order.is_some() {
        return Err(GameError::OrderForbidden);
    }
    if basis.is_some() {
        return Err(GameError::BasisForbidden);
    }
    Ok(())
}

/// Builds the instance's comparison relation. Worth-valued kinds need an
/// order (basis defaults to coalition worths); generators embed their order
/// and default to the basis they are built for; relation kinds carry their
/// own comparison and accept neither choice.
pub fn build_relation(
    instance: &GameInstance,
    order: Option<OrderKind>,
    basis: Option<Basis>,
) -> Result<Box<dyn ComparisonRelation>, GameError> {
    match instance {
        GameInstance::Tu { game } | GameInstance::SemiUnion { game, .. } => {
            let kind = order.ok_or(GameError::OrderRequired)?;
            tu_relation(game, kind, basis.unwrap_or(Basis::V))
        }
        GameInstance::Generator { name, order: embedded, game, .. } => {
            if let Some(given) = order {
                if given != *embedded {
                    return Err(GameError::OrderMismatch { embedded: *embedded, given });
                }
            }
            let basis = basis.unwrap_or(match name {
                GeneratorName::Example61 => Basis::V,
                GeneratorName::Example62 => Basis::Phi,
            });
            tu_relation(game, *embedded, basis)
        }
        GameInstance::HedonicFriends { partition } => {
            forbid_choices(order, basis)?;
            Ok(Box::new(HedonicRelation::new(partition.clone())))
        }
        GameInstance::ExchangeFriends { partition } => {
            forbid_choices(order, basis)?;
            Ok(Box::new(ExchangeRelation::new(partition.clone())))
        }
        GameInstance::Example5 => {
            forbid_choices(order, basis)?;
            Ok(Box::new(Example5Relation))
        }
    }
}
