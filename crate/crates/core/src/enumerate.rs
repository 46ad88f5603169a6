use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permset::PermSet;

pub const DEFAULT_MAX_LEN: usize = 10;

/// Budgets guarding every exhaustive enumeration and search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Longest permutation length any enumeration may touch.
    pub max_len: usize,
    /// Upper bound on states held by a single breadth-first search.
    pub max_states: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_len: DEFAULT_MAX_LEN,
            max_states: None,
        }
    }
}

impl Limits {
    pub fn with_max_len(max_len: usize) -> Self {
        Limits {
            max_len,
            ..Self::default()
        }
    }

    pub fn check_len(&self, what: &'static str, len: usize) -> Result<()> {
        if len > self.max_len {
            Err(Error::CapExceeded {
                what,
                len,
                cap: self.max_len,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_states(&self, states: usize) -> Result<()> {
        match self.max_states {
            Some(limit) if states > limit => Err(Error::StateBudget { limit }),
            _ => Ok(()),
        }
    }
}

/// `f_n = n f_{n-1} + (n-1) f_{n-2}` with `f_0 = f_1 = 1`: the number of plus
/// irreducible permutations of length `n + 1`.
pub fn plus_irreducible_count(n: usize) -> BigUint {
    let mut prev = BigUint::from(1u32);
    let mut cur = BigUint::from(1u32);
    for m in 2..=n {
        let next = &cur * m + &prev * (m - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Every plus irreducible permutation of length `n`, in lexicographic order.
pub fn enumerate_plus_irreducible(n: usize, limits: &Limits) -> Result<PermSet> {
    limits.check_len("plus irreducible enumeration", n)?;
    let mut out = PermSet::new();
    let mut used = vec![false; n + 1];
    let mut prefix = Vec::with_capacity(n);
    extend_irreducible(n, &mut used, &mut prefix, &mut out);
    Ok(out)
}

fn extend_irreducible(n: usize, used: &mut [bool], prefix: &mut Vec<u8>, out: &mut PermSet) {
    if prefix.len() == n {
        out.insert(Permutation::from_vec_unchecked(prefix.clone()));
        return;
    }
    let forbidden = prefix.last().map(|&v| v + 1);
    for v in 1..=n as u8 {
        if used[v as usize] || Some(v) == forbidden {
            continue;
        }
        used[v as usize] = true;
        prefix.push(v);
        extend_irreducible(n, used, prefix, out);
        prefix.pop();
        used[v as usize] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::is_plus_irreducible;
    use crate::perm::permutations;

    #[test]
    fn recurrence_values() {
        let got: Vec<BigUint> = (0..=7).map(plus_irreducible_count).collect();
        let want: Vec<BigUint> = [1u32, 1, 3, 11, 53, 309, 2119, 16687]
            .into_iter()
            .map(BigUint::from)
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn enumeration_examples() {
        let l = Limits::default();
        assert_eq!(enumerate_plus_irreducible(1, &l).unwrap().to_strings(), vec!["1"]);
        assert_eq!(
            enumerate_plus_irreducible(3, &l).unwrap().to_strings(),
            vec!["132", "213", "321"]
        );
        assert_eq!(enumerate_plus_irreducible(4, &l).unwrap().len(), 11);
        assert!(enumerate_plus_irreducible(11, &l).unwrap_err().is_budget());
    }

    #[test]
    fn enumeration_matches_filter_and_recurrence() {
        let l = Limits::default();
        for n in 1..=8 {
            let direct = enumerate_plus_irreducible(n, &l).unwrap();
            let filtered: PermSet = permutations(n).filter(is_plus_irreducible).collect();
            assert_eq!(direct, filtered);
            assert_eq!(BigUint::from(direct.len()), plus_irreducible_count(n - 1));
        }
    }
}
