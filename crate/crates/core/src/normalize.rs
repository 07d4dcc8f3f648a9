//! Turns a predicate's raw argument list into scoring units.
//!
//! Continuation parts (`C-X`) are folded into the unit of their `X`
//! argument, whichever part happens to carry the prefix. Reference units
//! (`R-X`) stay separate and are linked to the `X` unit they point at.

use std::collections::BTreeMap;

use crate::model::{MergedArgument, RawArgument, RoleLabel};

/// Merges continuation parts into whole arguments.
///
/// Parts are grouped by base label and reference flag. Within a group every
/// unprefixed part opens its own unit (duplicate plain labels stay separate)
/// and each `C-` part joins the nearest unprefixed part to its left, or the
/// leftmost one if none precedes it. A group with only `C-` parts becomes a
/// single unit. `V` arguments are dropped. Units are ordered by first token.
pub fn merge_continuations(arguments: &[RawArgument]) -> Vec<MergedArgument> {
    let mut groups: BTreeMap<RoleLabel, Vec<&RawArgument>> = BTreeMap::new();
    for arg in arguments.iter().filter(|a| !a.label.is_verb()) {
        groups
            .entry(arg.label.without_continuation())
            .or_default()
            .push(arg);
    }

    let mut units = Vec::new();
    for (label, mut parts) in groups {
        parts.sort_by_key(|a| (a.extent, a.label.is_continuation()));
        let plain: Vec<usize> = parts
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.label.is_continuation())
            .map(|(i, _)| i)
            .collect();

        let mut members: Vec<Vec<&RawArgument>> = if plain.is_empty() {
            vec![Vec::new()]
        } else {
            vec![Vec::new(); plain.len()]
        };
        for (i, part) in parts.iter().enumerate() {
            let slot = if plain.is_empty() {
                0
            } else {
                plain.iter().rposition(|&p| p <= i).unwrap_or(0)
            };
            members[slot].push(part);
        }

        for group in members {
            let mut tokens: Vec<usize> = group.iter().flat_map(|a| a.extent.tokens()).collect();
            tokens.sort_unstable();
            tokens.dedup();
            units.push(MergedArgument {
                label: label.clone(),
                tokens,
                part_count: group.len(),
                first_part_is_base: !group[0].label.is_continuation(),
            });
        }
    }
    units.sort();
    units
}

/// Where a unit's reference points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Referent {
    /// The unit is not a reference.
    None,
    /// Index of the single non-reference unit with the same base.
    Resolved(usize),
    /// More than one candidate; correctness is tested against any of them.
    Ambiguous(Vec<usize>),
    /// No unit with the referenced base exists under this predicate.
    Dangling,
}

impl Referent {
    pub fn candidates(&self) -> &[usize] {
        match self {
            Referent::Resolved(i) => std::slice::from_ref(i),
            Referent::Ambiguous(v) => v,
            Referent::None | Referent::Dangling => &[],
        }
    }

    pub fn is_dangling(&self) -> bool {
        matches!(self, Referent::Dangling)
    }
}

/// Links each `R-X` unit to the `X` unit(s) of the same predicate.
pub fn resolve_references(units: &[MergedArgument]) -> Vec<Referent> {
    units
        .iter()
        .map(|unit| {
            if !unit.label.is_reference() {
                return Referent::None;
            }
            let target = unit.label.with_reference(false);
            let found: Vec<usize> = units
                .iter()
                .enumerate()
                .filter(|(_, u)| u.label == target)
                .map(|(i, _)| i)
                .collect();
            match found.len() {
                0 => Referent::Dangling,
                1 => Referent::Resolved(found[0]),
                _ => Referent::Ambiguous(found),
            }
        })
        .collect()
}
