//! Strips, plus irreducibility, reduction and pattern containment.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permset::PermSet;

/// A maximal run of positions whose values increase by exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strip {
    /// 1-based position of the first entry.
    pub start: usize,
    pub len: usize,
}

pub fn strips(p: &Permutation) -> Vec<Strip> {
    let v = p.values();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=v.len() {
        if i == v.len() || v[i] != v[i - 1] + 1 {
            out.push(Strip {
                start: start + 1,
                len: i - start,
            });
            start = i;
        }
    }
    out
}

pub fn is_plus_irreducible(p: &Permutation) -> bool {
    p.values().windows(2).all(|w| w[1] != w[0] + 1)
}

/// Collapses every strip to a single point and rescales.
pub fn reduce(p: &Permutation) -> Permutation {
    let v = p.values();
    let heads: Vec<u8> = strips(p).iter().map(|s| v[s.start - 1]).collect();
    Permutation::standardize(&heads)
}

/// Whether some subsequence of `text` is order-isomorphic to `patt`.
pub fn contains_pattern(text: &Permutation, patt: &Permutation) -> bool {
    let k = patt.len();
    if k == 0 {
        return true;
    }
    if k > text.len() {
        return false;
    }
    // For each pattern entry, the earlier entries holding the nearest smaller
    // and nearest larger value; matched text values must fall strictly between them.
    let pv = patt.values();
    let bounds: Vec<(Option<usize>, Option<usize>)> = (0..k)
        .map(|t| {
            let below = (0..t).filter(|&s| pv[s] < pv[t]).max_by_key(|&s| pv[s]);
            let above = (0..t).filter(|&s| pv[s] > pv[t]).min_by_key(|&s| pv[s]);
            (below, above)
        })
        .collect();
    let mut chosen = vec![0u8; k];
    search(text.values(), &bounds, &mut chosen, 0, 0)
}

fn search(
    text: &[u8],
    bounds: &[(Option<usize>, Option<usize>)],
    chosen: &mut [u8],
    t: usize,
    from: usize,
) -> bool {
    let k = bounds.len();
    if t == k {
        return true;
    }
    let (below, above) = bounds[t];
    let lo = below.map_or(0, |s| chosen[s]);
    let hi = above.map_or(u8::MAX, |s| chosen[s]);
    // leave room for the remaining k - t - 1 entries
    let last = text.len() - (k - t);
    for pos in from..=last {
        let x = text[pos];
        if x > lo && x < hi {
            chosen[t] = x;
            if search(text, bounds, chosen, t + 1, pos + 1) {
                return true;
            }
        }
    }
    false
}

pub fn avoids_all<'a, I>(text: &Permutation, patterns: I) -> bool
where
    I: IntoIterator<Item = &'a Permutation>,
{
    patterns.into_iter().all(|b| !contains_pattern(text, b))
}

/// Distinct permutations obtained by deleting one entry and rescaling.
pub fn one_point_deletions(p: &Permutation) -> Result<PermSet> {
    if p.is_empty() {
        return Err(Error::EmptyPermutation);
    }
    Ok((1..=p.len()).map(|pos| p.delete_at(pos)).collect())
}

/// Breakpoints among `0..=n`: internal positions where `π_{i+1} ≠ π_i + 1`,
/// plus `0` when `π_1 ≠ 1` and `n` when `π_n ≠ n`.
pub fn breakpoint_count(p: &Permutation) -> Result<usize> {
    let v = p.values();
    let n = v.len();
    if n == 0 {
        return Err(Error::EmptyPermutation);
    }
    let internal = v.windows(2).filter(|w| w[1] != w[0] + 1).count();
    Ok(internal + usize::from(v[0] != 1) + usize::from(v[n - 1] as usize != n))
}

/// `⌈Br(p)/3⌉`, a lower bound on the block transposition distance.
pub fn breakpoint_lower_bound(p: &Permutation) -> u32 {
    if p.is_empty() {
        return 0;
    }
    breakpoint_count(p).map_or(0, |b| b.div_ceil(3) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Subsequence enumeration over all position subsets.
    fn contains_brute(text: &Permutation, patt: &Permutation) -> bool {
        let n = text.len();
        let k = patt.len();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .any(|mask| {
                let sub: Vec<u8> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| text.values()[i])
                    .collect();
                Permutation::standardize(&sub) == *patt
            })
    }

    #[test]
    fn strips_examples() {
        let s = strips(&p("435612789"));
        let lens: Vec<_> = s.iter().map(|s| s.len).collect();
        assert_eq!(lens, vec![1, 1, 2, 2, 3]);
        assert_eq!(s.iter().map(|s| s.start).collect::<Vec<_>>(), vec![1, 2, 3, 5, 7]);
        assert_eq!(strips(&Permutation::identity(5)), vec![Strip { start: 1, len: 5 }]);
        assert_eq!(strips(&p("321")).len(), 3);
        assert!(strips(&Permutation::identity(0)).is_empty());
    }

    #[test]
    fn plus_irreducible_examples() {
        assert!(is_plus_irreducible(&p("1324")));
        assert!(!is_plus_irreducible(&p("435612789")));
        assert!(is_plus_irreducible(&p("1")));
        assert!(is_plus_irreducible(&p("")));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&p("435612789")), p("32415"));
        for n in 1..6 {
            assert_eq!(reduce(&Permutation::identity(n)), p("1"));
        }
        assert_eq!(reduce(&p("3142")), p("3142"));
    }

    #[test]
    fn containment_examples() {
        assert!(contains_pattern(&p("1352647"), &p("1324")));
        assert!(contains_pattern(&p("2413"), &p("2413")));
        assert!(!contains_pattern(&p("123"), &p("321")));
        assert!(contains_pattern(&p("123"), &p("")));
        assert!(!contains_pattern(&p("12"), &p("123")));
    }

    #[test]
    fn containment_matches_brute_force() {
        for n in 0..=6 {
            for text in permutations(n) {
                for k in 0..=4.min(n) {
                    for patt in permutations(k) {
                        assert_eq!(
                            contains_pattern(&text, &patt),
                            contains_brute(&text, &patt),
                            "{text} / {patt}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn deletion_examples() {
        assert_eq!(one_point_deletions(&p("321")).unwrap().to_strings(), vec!["21"]);
        assert_eq!(
            one_point_deletions(&p("1324")).unwrap().to_strings(),
            vec!["123", "132", "213"]
        );
        assert_eq!(one_point_deletions(&p("12")).unwrap().to_strings(), vec!["1"]);
        assert_eq!(one_point_deletions(&p("")), Err(Error::EmptyPermutation));
    }

    #[test]
    fn breakpoint_examples() {
        assert_eq!(breakpoint_count(&Permutation::identity(6)).unwrap(), 0);
        assert_eq!(breakpoint_count(&p("321")).unwrap(), 4);
        assert_eq!(breakpoint_count(&p("1352647")).unwrap(), 6);
        assert!(breakpoint_count(&p("")).is_err());
        assert_eq!(breakpoint_lower_bound(&p("321")), 2);
    }

    #[test]
    fn reduction_is_canonical_up_to_8() {
        for n in 0..=8 {
            for q in permutations(n) {
                let r = reduce(&q);
                assert!(is_plus_irreducible(&r));
                assert_eq!(reduce(&r), r);
                assert!(contains_pattern(&q, &r));
            }
        }
    }
}
