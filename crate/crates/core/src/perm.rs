//! The permutation value type, its text format and the packed word encoding
//! used as a hash key by the search code.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest permutation that fits in a packed `u64` key (4 bits per entry).
pub const MAX_PACKED_LEN: usize = 16;

/// A permutation of `1..=n` in one-line notation.
///
/// Ordering is lexicographic on the one-line sequence. The empty permutation
/// is allowed and acts as the identity of length zero.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    /// Validates that `values` is a bijection of `1..=values.len()`.
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        let ok = n <= u8::MAX as usize
            && values.iter().all(|&v| {
                let v = v as usize;
                if v == 0 || v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
                true
            });
        if ok {
            Ok(Permutation(values))
        } else {
            Err(Error::NotAPermutation {
                values: values.iter().map(|&v| v as usize).collect(),
                len: n,
            })
        }
    }

    pub fn from_slice(values: &[u8]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    pub(crate) fn from_vec_unchecked(values: Vec<u8>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok(), "{values:?}");
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "permutation length {n} too large");
        Permutation((1..=n as u8).collect())
    }

    /// Rescales a sequence of distinct values to `1..=len`, keeping relative order.
    pub fn standardize(values: &[u8]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_unstable_by_key(|&i| values[i]);
        let mut out = vec![0u8; values.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u8 + 1;
        }
        Permutation(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn into_values(self) -> Vec<u8> {
        self.0
    }

    /// Value at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> u8 {
        self.0[pos - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. the permutation `i ↦ self(other(i))`.
    ///
    /// Left-multiplying by `self` relabels the values of `other` and leaves
    /// positions alone.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(Permutation(
            other.0.iter().map(|&v| self.0[v as usize - 1]).collect(),
        ))
    }

    /// Removes the entry at 1-based position `pos` and rescales.
    pub fn delete_at(&self, pos: usize) -> Self {
        let removed = self.0[pos - 1];
        Permutation(
            self.0
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos - 1)
                .map(|(_, &v)| if v > removed { v - 1 } else { v })
                .collect(),
        )
    }

    /// Packs the permutation into one word, 4 bits per entry, entry `i` in bits `4i..4i+4`.
    pub fn pack(&self) -> Option<u64> {
        (self.len() <= MAX_PACKED_LEN).then(|| pack_values(&self.0))
    }

    /// Inverse of [`Permutation::pack`]; `n` must be the original length.
    pub fn unpack(key: u64, n: usize) -> Self {
        Permutation::from_vec_unchecked(unpack_values(key, n))
    }
}

pub(crate) fn pack_values(values: &[u8]) -> u64 {
    values
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &v)| acc | (u64::from(v - 1) << (4 * i)))
}

pub(crate) fn unpack_values(key: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((key >> (4 * i)) & 0xf) as u8 + 1).collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let mut first = true;
            for v in &self.0 {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts the compact digit form (`1352647`) or comma-separated integers (`3,1,2`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let fail = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let raw: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| fail("bad integer")))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d > 0 => Ok(d as usize),
                    _ => Err(fail("expected digits 1-9")),
                })
                .collect::<Result<_>>()?
        };
        if raw.len() > u8::MAX as usize || raw.iter().any(|&v| v > u8::MAX as usize) {
            return Err(fail("too long"));
        }
        Permutation::new(raw.into_iter().map(|v| v as u8).collect())
            .map_err(|e| fail(&e.to_string()))
    }
}

impl TryFrom<&[u8]> for Permutation {
    type Error = Error;

    fn try_from(values: &[u8]) -> Result<Self> {
        Permutation::from_slice(values)
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn permutations(n: usize) -> Permutations {
    Permutations {
        next: Some((1..=n as u8).collect()),
    }
}

pub struct Permutations {
    next: Option<Vec<u8>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation(current))
    }
}

fn next_lexicographic(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_both_forms() {
        assert_eq!(p("312"), p("3,1,2"));
        assert_eq!(p("").len(), 0);
        let long = p("10,1,2,3,4,5,6,7,8,9");
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert_eq!(p("1352647").to_string(), "1352647");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1224".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("1a2".parse::<Permutation>().is_err());
        assert!("102".parse::<Permutation>().is_err());
        assert!("1,,2".parse::<Permutation>().is_err());
    }

    #[test]
    fn pack_roundtrip() {
        let q = p("10,16,1,2,3,4,5,6,7,8,9,11,12,13,14,15");
        assert_eq!(Permutation::unpack(q.pack().unwrap(), 16), q);
        assert!(Permutation::identity(17).pack().is_none());
    }

    #[test]
    fn compose_and_inverse() {
        let a = p("2413");
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
        assert!(a.inverse().compose(&a).unwrap().is_identity());
        // relabels values: (231 ∘ 213)_i = 231(213_i)
        assert_eq!(p("231").compose(&p("213")).unwrap(), p("321"));
    }

    #[test]
    fn enumerates_symmetric_group() {
        let all: Vec<_> = permutations(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(permutations(0).count(), 1);
        assert_eq!(permutations(1).count(), 1);
    }

    #[test]
    fn delete_rescales() {
        assert_eq!(p("1324").delete_at(2), p("123"));
        assert_eq!(p("1324").delete_at(1), p("213"));
    }
}
