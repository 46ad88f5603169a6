//! Bases of the balls `B_k`: the minimal permutations outside the ball.
//!
//! Every basis element has length at most `3k+1` (block transpositions) or
//! `2k+1` (prefix transpositions). Since `B_k` is closed under deletion, a
//! permutation outside the ball is minimal iff all its one-point deletions lie
//! inside; [`verify_class_closure`] checks that closure directly.

use rayon::prelude::*;

use crate::distance::DistanceTable;
use crate::enumerate::{enumerate_plus_irreducible, Limits};
use crate::error::{Error, Result};
use crate::genset::{generating_set_constructive, generator_length, mi_union_member};
use crate::model::Model;
use crate::pattern::{is_plus_irreducible, one_point_deletions};
use crate::perm::{pack_values, permutations, Permutation};
use crate::permset::PermSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probe {
    pub length: usize,
    /// Minimal excluded permutations found at `length`; empty when the length bound holds.
    pub found: PermSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub k: u32,
    pub model: Model,
    pub elements: PermSet,
    pub length_bound_used: usize,
    pub probe: Option<Probe>,
}

/// Largest possible basis element length for `B_k`.
pub fn basis_length_bound(k: u32, model: Model) -> usize {
    generator_length(k, model)
}

fn check_basis_request(k: u32, model: Model) -> Result<()> {
    if k == 0 {
        return Err(Error::Refused("basis search needs k >= 1".into()));
    }
    if model == Model::BlockTransposition && k >= 3 {
        return Err(Error::Refused(format!(
            "block transposition basis for k = {k} needs exhaustive search of S_{}",
            basis_length_bound(k, model)
        )));
    }
    Ok(())
}

/// Exhaustive filter: every `p ∈ S_n`, `2 ≤ n ≤ bound`, outside the ball with
/// all one-point deletions inside. With `probe_extra` the length `bound + 1`
/// is searched too and reported separately.
pub fn basis(k: u32, model: Model, probe_extra: bool, limits: &Limits) -> Result<BasisReport> {
    check_basis_request(k, model)?;
    let bound = basis_length_bound(k, model);
    let top = bound + usize::from(probe_extra);
    limits.check_len("basis search", top)?;

    let tables = ball_tables(k, model, top, limits)?;
    let mut elements = PermSet::new();
    let mut probe = None;
    for n in 2..=top {
        let found = minimal_excluded(&tables[n], &tables[n - 1], n);
        if n <= bound {
            elements.extend_from(found);
        } else {
            probe = Some(Probe { length: n, found });
        }
    }
    Ok(BasisReport {
        k,
        model,
        elements,
        length_bound_used: bound,
        probe,
    })
}

/// `tables[n]` holds `B_k(n)` for `n` in `0..=top`.
fn ball_tables(k: u32, model: Model, top: usize, limits: &Limits) -> Result<Vec<DistanceTable>> {
    (0..=top)
        .map(|n| DistanceTable::build(n, model, Some(k), limits))
        .collect()
}

fn minimal_excluded(ball_n: &DistanceTable, ball_below: &DistanceTable, n: usize) -> PermSet {
    permutations(n)
        .par_bridge()
        .filter(|p| {
            let v = p.values();
            ball_n.distance_packed(pack_values(v)).is_none()
                && (0..n).all(|pos| ball_below.distance_packed(delete_packed(v, pos)).is_some())
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Packed form of `v` with the entry at 0-based `pos` removed and the rest rescaled.
fn delete_packed(v: &[u8], pos: usize) -> u64 {
    let removed = v[pos];
    let mut key = 0u64;
    let mut slot = 0;
    for (i, &x) in v.iter().enumerate() {
        if i == pos {
            continue;
        }
        let y = if x > removed { x - 1 } else { x };
        key |= u64::from(y - 1) << (4 * slot);
        slot += 1;
    }
    key
}

/// Top-down descent through the pattern poset.
///
/// Starts from the plus irreducible permutations of the bound length that lie
/// outside the ball; a permutation whose covered permutations all lie inside is
/// a basis element, otherwise the descent continues from the covered ones that
/// lie outside. Membership comes from the constructive generating set and
/// monotone inflation classes, not from distance searches.
pub fn basis_via_poset_descent(k: u32, model: Model, limits: &Limits) -> Result<BasisReport> {
    check_basis_request(k, model)?;
    let bound = basis_length_bound(k, model);
    limits.check_len("basis search", bound)?;
    let generators = generating_set_constructive(k, model, limits)?;
    let inside = |p: &Permutation| mi_union_member(p, &generators);

    let mut frontier: PermSet = enumerate_plus_irreducible(bound, limits)?
        .into_iter()
        .filter(|p| !inside(p))
        .collect();
    let mut elements = PermSet::new();
    while !frontier.is_empty() {
        let level: Vec<Permutation> = frontier.into_iter().collect();
        let expanded: Vec<(Permutation, Vec<Permutation>)> = level
            .into_par_iter()
            .map(|p| {
                let outside: Vec<Permutation> = one_point_deletions(&p)
                    .map(|d| d.into_iter().filter(|q| !inside(q)).collect())
                    .unwrap_or_default();
                (p, outside)
            })
            .collect();
        frontier = PermSet::new();
        for (p, outside) in expanded {
            if outside.is_empty() {
                elements.insert(p);
            } else {
                frontier.extend(outside);
            }
        }
    }
    Ok(BasisReport {
        k,
        model,
        elements,
        length_bound_used: bound,
        probe: None,
    })
}

/// Whether every one-point deletion of every member of `B_k(n)`, `n ≤ n_max`,
/// is again in the ball.
pub fn verify_class_closure(k: u32, model: Model, n_max: usize, limits: &Limits) -> Result<bool> {
    limits.check_len("class closure check", n_max)?;
    let tables = ball_tables(k, model, n_max, limits)?;
    Ok((2..=n_max).all(|n| {
        (0..=k.min(tables[n].radius())).all(|d| {
            tables[n].level_keys(d).par_iter().all(|&key| {
                let v = Permutation::unpack(key, n).into_values();
                (0..n).all(|pos| tables[n - 1].distance_packed(delete_packed(&v, pos)).is_some())
            })
        })
    }))
}

/// Elements breaking the structural facts of a basis: every element is plus
/// irreducible and does not end with its maximum; under block transpositions
/// it also does not start with 1.
pub fn basis_shape_violations(report: &BasisReport) -> Vec<Permutation> {
    let starts_with_one_allowed = report.model == Model::PrefixTransposition;
    report
        .elements
        .iter()
        .filter(|p| {
            !is_plus_irreducible(p)
                || p.at(p.len()) as usize == p.len()
                || (!starts_with_one_allowed && p.at(1) == 1)
        })
        .cloned()
        .collect()
}
