//! Monotone inflations and membership in `MI(α)`.

use crate::error::{Error, Result};
use crate::pattern::{contains_pattern, is_plus_irreducible, reduce};
use crate::perm::Permutation;
use crate::permset::PermSet;

/// One run length per position of the base permutation; zero deletes the position.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InflationVector(pub Vec<usize>);

impl InflationVector {
    pub fn ones(n: usize) -> Self {
        InflationVector(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl From<Vec<usize>> for InflationVector {
    fn from(v: Vec<usize>) -> Self {
        InflationVector(v)
    }
}

/// Replaces entry `i` of `p` by an increasing run of length `v[i]`, runs
/// stacked in the order of the values of `p`.
pub fn monotone_inflate(p: &Permutation, v: &InflationVector) -> Result<Permutation> {
    if v.len() != p.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            actual: v.len(),
        });
    }
    let total = v.total();
    if total > u8::MAX as usize {
        return Err(Error::CapExceeded {
            what: "monotone inflation",
            len: total,
            cap: u8::MAX as usize,
        });
    }
    // first value of the run replacing the entry with value r
    let inv = p.inverse();
    let mut run_start = vec![0usize; p.len() + 1];
    let mut next = 1;
    for r in 1..=p.len() {
        run_start[r] = next;
        next += v.0[inv.at(r) as usize - 1];
    }
    let mut out = Vec::with_capacity(total);
    for (i, &x) in p.values().iter().enumerate() {
        let s = run_start[x as usize];
        out.extend((s..s + v.0[i]).map(|y| y as u8));
    }
    Ok(Permutation::from_vec_unchecked(out))
}

/// Whether `p` is a monotone inflation of the plus irreducible `alpha`.
///
/// `MI(α)` is closed under deletion and under lengthening strips, so `p`
/// belongs iff `red(p)` does; a plus irreducible inflation of `α` only uses run
/// lengths 0 and 1, so this holds iff `red(p)` is a pattern of `α`.
pub fn mi_member(p: &Permutation, alpha: &Permutation) -> Result<bool> {
    if !is_plus_irreducible(alpha) {
        return Err(Error::NotPlusIrreducible(alpha.to_string()));
    }
    Ok(contains_pattern(alpha, &reduce(p)))
}

/// All members of `MI(alpha)` of length at most `max_len` (including the empty one).
pub fn mi_members(alpha: &Permutation, max_len: usize) -> Result<PermSet> {
    let mut out = PermSet::new();
    let mut v = vec![0usize; alpha.len()];
    fill_vectors(alpha, &mut v, 0, max_len, &mut out)?;
    Ok(out)
}

fn fill_vectors(
    alpha: &Permutation,
    v: &mut Vec<usize>,
    i: usize,
    budget: usize,
    out: &mut PermSet,
) -> Result<()> {
    if i == v.len() {
        out.insert(monotone_inflate(alpha, &InflationVector(v.clone()))?);
        return Ok(());
    }
    for x in 0..=budget {
        v[i] = x;
        fill_vectors(alpha, v, i + 1, budget - x, out)?;
    }
    v[i] = 0;
    Ok(())
}
