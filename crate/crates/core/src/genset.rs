//! Generating sets of the balls `B_k`.
//!
//! A generating permutation of `B_k` is a maximal plus irreducible member of
//! the ball; the ball is the union of the monotone inflation classes of its
//! generators. Two independent routes produce the generating set:
//!
//! * **direct**: plus irreducible permutations of length `3k+1` (block
//!   transpositions) or `2k+1` (prefix transpositions) at distance exactly `k`;
//! * **constructive**: `k` rounds of the inflate-then-transpose recursions
//!   starting from the single point `1`.

use std::fmt;

use rayon::prelude::*;

use crate::distance::DistanceTable;
use crate::enumerate::Limits;
use crate::error::{Error, Result};
use crate::inflation::{mi_members, monotone_inflate, InflationVector};
use crate::model::{apply_transposition, Model, TranspositionIndices};
use crate::pattern::{contains_pattern, is_plus_irreducible, reduce};
use crate::perm::Permutation;
use crate::permset::PermSet;

/// A sorted multiset `{i ≤ j ≤ k}` of three positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexMultiset {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl IndexMultiset {
    /// Sorts the three positions and checks them against `1..=n`.
    pub fn new(a: usize, b: usize, c: usize, n: usize) -> Result<Self> {
        let mut s = [a, b, c];
        s.sort_unstable();
        if s[0] == 0 || s[2] > n {
            return Err(Error::IndexOutOfRange {
                indices: s.to_vec(),
                len: n,
            });
        }
        Ok(IndexMultiset {
            i: s[0],
            j: s[1],
            k: s[2],
        })
    }

    /// All `C(n+2, 3)` multisets over `1..=n`.
    pub fn all(n: usize) -> impl Iterator<Item = IndexMultiset> {
        (1..=n).flat_map(move |i| (i..=n).flat_map(move |j| (j..=n).map(move |k| IndexMultiset { i, j, k })))
    }

    pub fn multiplicity(&self, pos: usize) -> usize {
        [self.i, self.j, self.k].iter().filter(|&&x| x == pos).count()
    }
}

/// Inflates the positions of `I` into strips (length 2, 3 or 4 according to
/// multiplicity) and breaks them all with the transposition `(i+1, j+2, k+3)`.
///
/// Returns `(p_I, p̃_I)`.
pub fn td_inflate(p: &Permutation, idx: IndexMultiset) -> Result<(Permutation, Permutation)> {
    if !is_plus_irreducible(p) {
        return Err(Error::NotPlusIrreducible(p.to_string()));
    }
    let idx = IndexMultiset::new(idx.i, idx.j, idx.k, p.len())?;
    let v: Vec<usize> = (1..=p.len()).map(|pos| 1 + idx.multiplicity(pos)).collect();
    let inflated = monotone_inflate(p, &InflationVector(v))?;
    let t = TranspositionIndices::new(idx.i + 1, idx.j + 2, idx.k + 3, inflated.len())?;
    let broken = apply_transposition(&inflated, t)?;
    Ok((inflated, broken))
}

/// A decomposition `τ = π a ρ b γ` (or `τ = π a ρ`) of a prefix-model
/// generator, by 1-based positions of `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PtdCase {
    /// `a` before `b`, `a < b`.
    Ascending { pos_a: usize, pos_b: usize },
    /// `a` before `b`, `a > b`.
    Descending { pos_a: usize, pos_b: usize },
    /// A single entry `a`.
    Single { pos_a: usize },
}

impl PtdCase {
    /// 1, 2 or 3.
    pub fn number(&self) -> u8 {
        match self {
            PtdCase::Ascending { .. } => 1,
            PtdCase::Descending { .. } => 2,
            PtdCase::Single { .. } => 3,
        }
    }
}

impl fmt::Display for PtdCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PtdCase::Ascending { pos_a, pos_b } | PtdCase::Descending { pos_a, pos_b } => {
                write!(f, "case {} at ({pos_a}, {pos_b})", self.number())
            }
            PtdCase::Single { pos_a } => write!(f, "case 3 at {pos_a}"),
        }
    }
}

/// Every decomposition of `p`: ordered position pairs split by value order,
/// then single positions. `C(n+1, 2)` in total.
pub fn ptd_cases(p: &Permutation) -> Vec<PtdCase> {
    let n = p.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for pos_a in 1..=n {
        for pos_b in pos_a + 1..=n {
            if p.at(pos_a) < p.at(pos_b) {
                out.push(PtdCase::Ascending { pos_a, pos_b });
            } else {
                out.push(PtdCase::Descending { pos_a, pos_b });
            }
        }
    }
    out.extend((1..=n).map(|pos_a| PtdCase::Single { pos_a }));
    out
}

/// Entries between `lo` and `hi` move up by one, entries above `hi` by two.
fn shift_up(xs: &[u8], lo: u8, hi: u8) -> impl Iterator<Item = u8> + '_ {
    xs.iter().map(move |&x| {
        if x < lo {
            x
        } else if x < hi {
            x + 1
        } else {
            x + 2
        }
    })
}

/// Inverse of [`shift_up`] on the entries it produces.
fn shift_down(ys: &[u8], lo: u8, hi: u8) -> impl Iterator<Item = u8> + '_ {
    ys.iter().map(move |&y| {
        if y < lo {
            y
        } else if y <= hi {
            y - 1
        } else {
            y - 2
        }
    })
}

/// Builds a generator of `B_{k+1}` from a generator `p` of `B_k` under prefix
/// transpositions:
///
/// * case 1: `(a+1) ρ̂ (b+1) π̂ a (b+2) γ̂`
/// * case 2: `(a+2) ρ̂ b π̂ (a+1) (b+1) γ̂`
/// * case 3: `(a+1) π̂ a (a+2) ρ̂`
pub fn ptd_inflate(p: &Permutation, case: PtdCase) -> Result<Permutation> {
    if !is_plus_irreducible(p) {
        return Err(Error::NotPlusIrreducible(p.to_string()));
    }
    let n = p.len();
    let v = p.values();
    let invalid = || Error::InvalidDecomposition(format!("{case} on {p}"));
    let mut out = Vec::with_capacity(n + 2);
    match case {
        PtdCase::Ascending { pos_a, pos_b } | PtdCase::Descending { pos_a, pos_b } => {
            if !(1 <= pos_a && pos_a < pos_b && pos_b <= n) {
                return Err(invalid());
            }
            let (a, b) = (v[pos_a - 1], v[pos_b - 1]);
            let (pi, rho, gamma) = (&v[..pos_a - 1], &v[pos_a..pos_b - 1], &v[pos_b..]);
            if matches!(case, PtdCase::Ascending { .. }) {
                if a > b {
                    return Err(invalid());
                }
                out.push(a + 1);
                out.extend(shift_up(rho, a, b));
                out.push(b + 1);
                out.extend(shift_up(pi, a, b));
                out.extend([a, b + 2]);
                out.extend(shift_up(gamma, a, b));
            } else {
                if a < b {
                    return Err(invalid());
                }
                out.push(a + 2);
                out.extend(shift_up(rho, b, a));
                out.push(b);
                out.extend(shift_up(pi, b, a));
                out.extend([a + 1, b + 1]);
                out.extend(shift_up(gamma, b, a));
            }
        }
        PtdCase::Single { pos_a } => {
            if !(1..=n).contains(&pos_a) {
                return Err(invalid());
            }
            let a = v[pos_a - 1];
            let (pi, rho) = (&v[..pos_a - 1], &v[pos_a..]);
            out.push(a + 1);
            out.extend(shift_up(pi, a, a));
            out.extend([a, a + 2]);
            out.extend(shift_up(rho, a, a));
        }
    }
    Ok(Permutation::from_vec_unchecked(out))
}

/// Which construction case produced the prefix-model generator `s`, read off
/// the entry to the right of `s_1 - 1`.
pub fn ptd_case_number(s: &Permutation) -> Option<u8> {
    let v = s.values();
    let first = *v.first()?;
    if first == 1 {
        return None;
    }
    let q = v.iter().position(|&x| x == first - 1)?;
    let right = *v.get(q + 1)?;
    if right >= first + 2 {
        Some(1)
    } else if right + 2 <= first {
        Some(2)
    } else if right == first + 1 {
        Some(3)
    } else {
        None
    }
}

/// Recovers the unique `(parent, case)` with `ptd_inflate(parent, case) == s`.
pub fn ptd_parent(s: &Permutation) -> Result<(Permutation, PtdCase)> {
    if !is_plus_irreducible(s) {
        return Err(Error::NotPlusIrreducible(s.to_string()));
    }
    if s.len() < 3 {
        return Err(Error::InvalidDecomposition(format!("{s} is too short to have a parent")));
    }
    if s.at(1) == 1 {
        return Err(Error::InvalidDecomposition(format!("{s} starts with 1")));
    }
    let no_case = || Error::InvalidDecomposition(format!("no construction case yields {s}"));
    let v = s.values();
    let first = v[0];
    let q = v.iter().position(|&x| x == first - 1).unwrap();
    let position = |value: u8| v.iter().position(|&x| x == value).unwrap();

    let mut parent = Vec::with_capacity(v.len() - 2);
    let case = match ptd_case_number(s).ok_or_else(no_case)? {
        1 => {
            // (a+1) ρ̂ (b+1) π̂ a (b+2) γ̂
            let a = first - 1;
            let b = v[q + 1] - 2;
            let u = position(b + 1);
            if u > q {
                return Err(no_case());
            }
            let (rho, pi, gamma) = (&v[1..u], &v[u + 1..q], &v[q + 2..]);
            parent.extend(shift_down(pi, a, b + 1));
            parent.push(a);
            parent.extend(shift_down(rho, a, b + 1));
            parent.push(b);
            parent.extend(shift_down(gamma, a, b + 1));
            PtdCase::Ascending {
                pos_a: pi.len() + 1,
                pos_b: pi.len() + rho.len() + 2,
            }
        }
        2 => {
            // (a+2) ρ̂ b π̂ (a+1) (b+1) γ̂
            let a = first - 2;
            let b = v[q + 1] - 1;
            let u = position(b);
            if u > q {
                return Err(no_case());
            }
            let (rho, pi, gamma) = (&v[1..u], &v[u + 1..q], &v[q + 2..]);
            parent.extend(shift_down(pi, b, a + 1));
            parent.push(a);
            parent.extend(shift_down(rho, b, a + 1));
            parent.push(b);
            parent.extend(shift_down(gamma, b, a + 1));
            PtdCase::Descending {
                pos_a: pi.len() + 1,
                pos_b: pi.len() + rho.len() + 2,
            }
        }
        _ => {
            // (a+1) π̂ a (a+2) ρ̂
            let a = first - 1;
            let (pi, rho) = (&v[1..q], &v[q + 2..]);
            parent.extend(shift_down(pi, a, a + 1));
            parent.push(a);
            parent.extend(shift_down(rho, a, a + 1));
            PtdCase::Single { pos_a: pi.len() + 1 }
        }
    };
    let parent = Permutation::new(parent).map_err(|_| no_case())?;
    if ptd_inflate(&parent, case)? != *s {
        return Err(no_case());
    }
    Ok((parent, case))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Constructive,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Constructive => "constructive",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "constructive" => Ok(Method::Constructive),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "expected direct or constructive".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSetReport {
    pub k: u32,
    pub model: Model,
    pub method: Method,
    pub elements: PermSet,
    pub element_length: usize,
}

/// Length of every generator of `B_k`: `3k+1` or `2k+1`.
pub fn generator_length(k: u32, model: Model) -> usize {
    match model {
        Model::BlockTransposition => 3 * k as usize + 1,
        Model::PrefixTransposition => 2 * k as usize + 1,
    }
}

pub fn generating_set(k: u32, model: Model, method: Method, limits: &Limits) -> Result<GeneratingSetReport> {
    match method {
        Method::Direct => generating_set_direct(k, model, limits),
        Method::Constructive => generating_set_constructive(k, model, limits),
    }
}

/// `k` rounds of inflation starting from `{1}`, duplicates removed.
pub fn generating_set_constructive(k: u32, model: Model, limits: &Limits) -> Result<GeneratingSetReport> {
    let len = generator_length(k, model);
    limits.check_len("generating set", len)?;
    let mut current = PermSet::from_iter([Permutation::identity(1)]);
    for _ in 0..k {
        let parents: Vec<Permutation> = current.into_iter().collect();
        let children: Vec<Vec<Permutation>> = parents
            .par_iter()
            .map(|p| -> Result<Vec<Permutation>> {
                match model {
                    Model::BlockTransposition => IndexMultiset::all(p.len())
                        .map(|idx| td_inflate(p, idx).map(|(_, broken)| broken))
                        .collect(),
                    Model::PrefixTransposition => {
                        ptd_cases(p).into_iter().map(|c| ptd_inflate(p, c)).collect()
                    }
                }
            })
            .collect::<Result<_>>()?;
        current = children.into_iter().flatten().collect();
        limits.check_states(current.len())?;
    }
    Ok(GeneratingSetReport {
        k,
        model,
        method: Method::Constructive,
        elements: current,
        element_length: len,
    })
}

/// Plus irreducible permutations of generator length at distance exactly `k`,
/// read off an exact breadth-first distance table.
pub fn generating_set_direct(k: u32, model: Model, limits: &Limits) -> Result<GeneratingSetReport> {
    let len = generator_length(k, model);
    limits.check_len("generating set", len)?;
    let table = DistanceTable::build(len, model, Some(k), limits)?;
    let elements = table.level(k).into_iter().filter(is_plus_irreducible).collect();
    Ok(GeneratingSetReport {
        k,
        model,
        method: Method::Direct,
        elements,
        element_length: len,
    })
}

/// Whether `p` lies in `MI(g)` for some generator `g` of the report.
pub fn mi_union_member(p: &Permutation, generators: &GeneratingSetReport) -> bool {
    let r = reduce(p);
    generators
        .elements
        .iter()
        .any(|g| contains_pattern(&reduce(g), &r))
}

/// Members of length at most `n_max` of `⋃_I MI(α̃_I)`, the permutations one
/// block transposition away from `MI(α)`.
pub fn mi_plus_one(alpha: &Permutation, n_max: usize, limits: &Limits) -> Result<PermSet> {
    if !is_plus_irreducible(alpha) {
        return Err(Error::NotPlusIrreducible(alpha.to_string()));
    }
    limits.check_len("one-step inflation class", n_max)?;
    let parts: Vec<PermSet> = IndexMultiset::all(alpha.len())
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&idx| {
            let (_, broken) = td_inflate(alpha, idx)?;
            mi_members(&broken, n_max)
        })
        .collect::<Result<_>>()?;
    let mut out = PermSet::new();
    for part in parts {
        out.extend_from(part);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{ball, DistanceEngine};
    use crate::model::neighbors;

    const TD: Model = Model::BlockTransposition;
    const PTD: Model = Model::PrefixTransposition;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(xs: &[&str]) -> PermSet {
        xs.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn td_inflate_examples() {
        let idx = IndexMultiset::new(4, 2, 2, 4).unwrap();
        assert_eq!(td_inflate(&p("1324"), idx).unwrap(), (p("1345267"), p("1352647")));
        let idx = IndexMultiset::new(1, 1, 1, 1).unwrap();
        assert_eq!(td_inflate(&p("1"), idx).unwrap(), (p("1234"), p("1324")));
        assert!(td_inflate(&p("12"), idx).is_err());
        assert!(IndexMultiset::new(1, 2, 5, 4).is_err());
        assert_eq!(IndexMultiset::all(4).count(), 20);
    }

    #[test]
    fn td_inflate_keeps_endpoints() {
        for idx in IndexMultiset::all(4) {
            let (_, t) = td_inflate(&p("1324"), idx).unwrap();
            assert!(is_plus_irreducible(&t));
            assert_eq!(t.len(), 7);
            assert_eq!(t.at(1), 1);
            assert_eq!(t.at(7), 7);
        }
    }

    #[test]
    fn ptd_inflate_examples() {
        let q = p("213");
        assert_eq!(ptd_inflate(&q, PtdCase::Single { pos_a: 1 }).unwrap(), p("32415"));
        let asc = PtdCase::Ascending { pos_a: 1, pos_b: 3 };
        assert_eq!(ptd_inflate(&q, asc).unwrap(), p("31425"));
        let desc = PtdCase::Descending { pos_a: 1, pos_b: 2 };
        assert_eq!(ptd_inflate(&q, desc).unwrap(), p("41325"));
        let wrong = PtdCase::Ascending { pos_a: 1, pos_b: 2 };
        assert!(matches!(ptd_inflate(&q, wrong), Err(Error::InvalidDecomposition(_))));
        assert!(ptd_inflate(&q, PtdCase::Single { pos_a: 4 }).is_err());
        assert_eq!(ptd_cases(&q).len(), 6);
    }

    #[test]
    fn ptd_parent_examples() {
        assert_eq!(ptd_parent(&p("32415")).unwrap(), (p("213"), PtdCase::Single { pos_a: 1 }));
        assert_eq!(
            ptd_parent(&p("31425")).unwrap(),
            (p("213"), PtdCase::Ascending { pos_a: 1, pos_b: 3 })
        );
        assert_eq!(
            ptd_parent(&p("41325")).unwrap(),
            (p("213"), PtdCase::Descending { pos_a: 1, pos_b: 2 })
        );
        assert_eq!(ptd_parent(&p("213")).unwrap(), (p("1"), PtdCase::Single { pos_a: 1 }));
        assert!(ptd_parent(&p("1324")).is_err());
        assert!(ptd_parent(&p("2314")).is_err());
        assert!(ptd_parent(&p("21")).is_err());
    }

    #[test]
    fn small_generating_sets() {
        let l = Limits::default();
        for method in [Method::Direct, Method::Constructive] {
            assert_eq!(generating_set(1, TD, method, &l).unwrap().elements, set(&["1324"]));
            assert_eq!(generating_set(1, PTD, method, &l).unwrap().elements, set(&["213"]));
            let td2 = set(&[
                "1324657", "1352647", "1354627", "1364257", "1426357", "1436527", "1462537",
                "1524637", "1536247", "1624357", "1632547",
            ]);
            assert_eq!(generating_set(2, TD, method, &l).unwrap().elements, td2);
            let ptd2 = set(&["32415", "41325", "31425", "24135", "24315", "42135"]);
            assert_eq!(generating_set(2, PTD, method, &l).unwrap().elements, ptd2);
        }
    }

    #[test]
    fn direct_route_matches_per_element_distances() {
        let engine = DistanceEngine::plain(Limits::default());
        let l = Limits::default();
        for (k, m) in [(1, TD), (2, TD), (1, PTD), (2, PTD), (3, PTD)] {
            let len = generator_length(k, m);
            let filtered: PermSet = crate::enumerate::enumerate_plus_irreducible(len, &l)
                .unwrap()
                .into_iter()
                .filter(|q| engine.distance(q, m).unwrap() == k)
                .collect();
            assert_eq!(generating_set_direct(k, m, &l).unwrap().elements, filtered, "{m} k={k}");
        }
    }

    #[test]
    fn prefix_generators_have_unique_parents() {
        let l = Limits::default();
        for k in 1..=3 {
            let gens = generating_set_constructive(k, PTD, &l).unwrap();
            let parents = generating_set_constructive(k - 1, PTD, &l).unwrap();
            for s in &gens.elements {
                let (parent, case) = ptd_parent(s).unwrap();
                assert!(parents.elements.contains(&parent));
                assert_eq!(Some(case.number()), ptd_case_number(s));
                let producers = parents
                    .elements
                    .iter()
                    .flat_map(|q| ptd_cases(q).into_iter().map(move |c| (q, c)))
                    .filter(|(q, c)| ptd_inflate(q, *c).unwrap() == *s)
                    .count();
                assert_eq!(producers, 1, "{s}");
            }
        }
    }

    #[test]
    fn union_membership_examples() {
        let l = Limits::default();
        let td1 = generating_set_direct(1, TD, &l).unwrap();
        for q in ball(6, 1, TD, &l).unwrap() {
            assert!(mi_union_member(&q, &td1));
        }
        assert!(mi_union_member(&Permutation::identity(5), &td1));
        assert!(!mi_union_member(&p("321"), &td1));
    }

    /// Members of `MI(alpha)` up to `n_max`, plus everything one block transposition away.
    fn one_step_brute(alpha: &Permutation, n_max: usize) -> PermSet {
        let base = mi_members(alpha, n_max).unwrap();
        let mut out = base.clone();
        for q in &base {
            out.extend(neighbors(q, TD));
        }
        out
    }

    #[test]
    fn one_step_class_matches_brute_force() {
        let l = Limits::default();
        let got = mi_plus_one(&p("1324"), 6, &l).unwrap();
        assert_eq!(got, one_step_brute(&p("1324"), 6));
        let got = mi_plus_one(&p("1"), 4, &l).unwrap();
        let within_one: PermSet = (0..=4)
            .flat_map(|n| ball(n, 1, TD, &l).unwrap())
            .collect();
        assert_eq!(got, within_one);
        for q in &mi_plus_one(&p("1324"), 6, &l).unwrap() {
            assert!(crate::distance::distance(q, TD).unwrap() <= 2);
        }
    }
}
