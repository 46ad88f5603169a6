//! Block transpositions and prefix transpositions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permset::PermSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// Exchange any two adjacent blocks.
    BlockTransposition,
    /// Exchange a prefix with the block right after it.
    PrefixTransposition,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::BlockTransposition, Model::PrefixTransposition];

    /// Short tag: `td` or `ptd`.
    pub fn tag(self) -> &'static str {
        match self {
            Model::BlockTransposition => "td",
            Model::PrefixTransposition => "ptd",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "td" | "block" | "transposition" => Ok(Model::BlockTransposition),
            "ptd" | "prefix" | "prefix-transposition" => Ok(Model::PrefixTransposition),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected model td or ptd".into(),
            }),
        }
    }
}

/// Indices `1 ≤ i < j < k ≤ n+1`: blocks `[i, j-1]` and `[j, k-1]` trade places.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranspositionIndices {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl TranspositionIndices {
    pub fn new(i: usize, j: usize, k: usize, n: usize) -> Result<Self> {
        if 1 <= i && i < j && j < k && k <= n + 1 {
            Ok(TranspositionIndices { i, j, k })
        } else {
            Err(Error::IndexOutOfRange {
                indices: vec![i, j, k],
                len: n,
            })
        }
    }

    pub fn is_prefix(&self) -> bool {
        self.i == 1
    }

    /// The operation undoing this one.
    pub fn inverse(&self) -> Self {
        TranspositionIndices {
            i: self.i,
            j: self.i + self.k - self.j,
            k: self.k,
        }
    }

    /// All index triples allowed by `model` on length `n`, lexicographic in `(i, j, k)`.
    pub fn all(n: usize, model: Model) -> impl Iterator<Item = TranspositionIndices> {
        let max_i = match model {
            Model::BlockTransposition => n.saturating_sub(1),
            Model::PrefixTransposition => n.min(1),
        };
        (1..=max_i).flat_map(move |i| {
            (i + 1..=n).flat_map(move |j| (j + 1..=n + 1).map(move |k| TranspositionIndices { i, j, k }))
        })
    }
}

pub fn apply_transposition(p: &Permutation, t: TranspositionIndices) -> Result<Permutation> {
    let t = TranspositionIndices::new(t.i, t.j, t.k, p.len())?;
    let v = p.values();
    let mut out = Vec::with_capacity(v.len());
    out.extend_from_slice(&v[..t.i - 1]);
    out.extend_from_slice(&v[t.j - 1..t.k - 1]);
    out.extend_from_slice(&v[t.i - 1..t.j - 1]);
    out.extend_from_slice(&v[t.k - 1..]);
    Ok(Permutation::from_vec_unchecked(out))
}

/// Every permutation one operation away from `p` (excluding `p`).
pub fn neighbors(p: &Permutation, model: Model) -> PermSet {
    TranspositionIndices::all(p.len(), model)
        .map(|t| apply_transposition(p, t).expect("generated indices are valid"))
        .filter(|q| q != p)
        .collect()
}

/// Bits `4a..4b` set.
#[inline]
fn nibble_mask(a: usize, b: usize) -> u64 {
    let hi = if b >= 16 { u64::MAX } else { (1u64 << (4 * b)) - 1 };
    let lo = (1u64 << (4 * a)) - 1;
    hi & !lo
}

/// Applies a transposition to a packed permutation (see [`Permutation::pack`]).
#[inline]
pub(crate) fn transpose_packed(key: u64, t: TranspositionIndices) -> u64 {
    let (a, b, c) = (t.i - 1, t.j - 1, t.k - 1);
    let left = nibble_mask(a, b);
    let right = nibble_mask(b, c);
    (key & !(left | right)) | ((key & right) >> (4 * (b - a))) | ((key & left) << (4 * (c - b)))
}

/// Precomputed operation list for one `(n, model)` pair.
#[derive(Debug, Clone)]
pub(crate) struct MoveTable {
    moves: Vec<TranspositionIndices>,
}

impl MoveTable {
    pub(crate) fn new(n: usize, model: Model) -> Self {
        MoveTable {
            moves: TranspositionIndices::all(n, model).collect(),
        }
    }

    #[inline]
    pub(crate) fn for_each_neighbor(&self, key: u64, mut f: impl FnMut(u64)) {
        for &t in &self.moves {
            f(transpose_packed(key, t));
        }
    }
}
