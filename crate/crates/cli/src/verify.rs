//! The `verify` suite: golden values plus the invariants of every module.

use std::collections::HashMap;

use permball::basis::{basis_shape_violations, basis_via_poset_descent};
use permball::genset::{generator_length, ptd_case_number, ptd_cases};
use permball::pattern::{avoids_all, breakpoint_lower_bound};
use permball::{
    basis, breakpoint_count, enumerate_plus_irreducible, generating_set, generating_set_direct,
    mi_plus_one, mi_members, mi_union_member, monotone_inflate, neighbors, permutations,
    plus_irreducible_count, ptd_inflate, ptd_parent, reduce, verify_class_closure,
    apply_transposition, DistanceEngine, DistanceTable, Error, Limits, Method, Model, PermSet,
    Permutation, TranspositionIndices,
};
use serde::Serialize;

use crate::golden::Golden;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

pub struct Suite<'a> {
    pub model: Model,
    pub k: u32,
    pub max_n: usize,
    pub limits: Limits,
    pub golden: &'a Golden,
}

type Outcome = Result<(bool, String), Error>;

impl Suite<'_> {
    pub fn run(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        let mut add = |name: String, outcome: Outcome| {
            let (status, detail) = match outcome {
                Ok((true, d)) => (Status::Pass, d),
                Ok((false, d)) => (Status::Fail, d),
                Err(e) if e.is_budget() => (Status::Skipped, e.to_string()),
                Err(e) => (Status::Fail, e.to_string()),
            };
            checks.push(Check { name, status, detail });
        };

        add("golden/irreducible-counts".into(), self.golden_irreducible());
        for (i, case) in self.golden.reduce.iter().enumerate() {
            add(format!("golden/reduce[{i}]"), golden_reduce(&case.input, &case.output));
        }
        for (i, case) in self.golden.inflate.iter().enumerate() {
            add(
                format!("golden/inflate[{i}]"),
                golden_inflate(&case.perm, &case.vector, &case.output),
            );
        }
        for case in self.golden.distance.iter().filter(|c| self.applies(&c.model, 0)) {
            add(format!("golden/distance {}", case.perm), self.golden_distance(&case.perm, case.value));
        }
        for g in self.golden.genset.iter().filter(|g| self.applies(&g.model, g.k)) {
            for method in [Method::Direct, Method::Constructive] {
                add(
                    format!("golden/genset k={} {}", g.k, method.name()),
                    self.golden_genset(g.k, method, &g.elements),
                );
            }
        }
        for c in self.golden.genset_count.iter().filter(|c| self.applies(&c.model, c.k)) {
            add(format!("golden/genset-count k={}", c.k), self.golden_genset_count(c.k, c.count));
        }
        for b in self.golden.basis.iter().filter(|b| self.applies(&b.model, b.k)) {
            add(format!("golden/basis k={} exhaustive", b.k), self.golden_basis(b.k, false, &b.elements));
            add(format!("golden/basis k={} descent", b.k), self.golden_basis(b.k, true, &b.elements));
        }

        if self.model == Model::BlockTransposition {
            add("breakpoint-bound".into(), self.breakpoint_bound());
            add("reduction-invariance".into(), self.reduction_invariance());
            add("one-step-class 1324".into(), self.one_step_class());
        } else {
            add("reduction-invariance (empirical)".into(), self.reduction_invariance());
        }
        for k in 1..=self.k {
            add(format!("genset-cross-method k={k}"), self.genset_cross_method(k));
            add(format!("genset-shape k={k}"), self.genset_shape(k));
            add(format!("ball-characterization k={k}"), self.ball_characterization(k));
            add(format!("down-set-closure k={k}"), self.closure(k));
            add(format!("basis-cross-method k={k}"), self.basis_cross_method(k));
            add(format!("basis-shape-and-probe k={k}"), self.basis_shape_and_probe(k));
            add(format!("avoidance-equivalence k={k}"), self.avoidance_equivalence(k));
            if self.model == Model::PrefixTransposition {
                add(format!("genset-cardinality k={k}"), self.ptd_cardinality(k));
                add(format!("parent-uniqueness k={k}"), self.parent_uniqueness(k));
            }
        }
        add("left-invariance".into(), self.left_invariance());
        add("model-refinement".into(), self.model_refinement());
        add("transposition-inverse".into(), self.transposition_inverse());
        checks
    }

    fn applies(&self, model: &str, k: u32) -> bool {
        model.parse::<Model>().ok() == Some(self.model) && k <= self.k
    }

    fn engine(&self) -> DistanceEngine {
        DistanceEngine::new(self.limits)
    }

    fn golden_irreducible(&self) -> Outcome {
        let Some(irr) = &self.golden.irreducible else {
            return Ok((true, "no entries".into()));
        };
        let mut enumerated = 0;
        for (i, &want) in irr.counts.iter().enumerate() {
            let len = i + 1;
            let rec = plus_irreducible_count(i);
            if rec != want.into() {
                return Ok((false, format!("length {len}: recurrence gives {rec}, expected {want}")));
            }
            if len <= self.limits.max_len.min(8) {
                let got = enumerate_plus_irreducible(len, &self.limits)?.len() as u64;
                if got != want {
                    return Ok((false, format!("length {len}: enumeration gives {got}, expected {want}")));
                }
                enumerated += 1;
            }
        }
        Ok((true, format!("{} lengths, {enumerated} enumerated", irr.counts.len())))
    }

    fn golden_distance(&self, perm: &str, want: u32) -> Outcome {
        let p = parse(perm)?;
        let got = self.engine().distance(&p, self.model)?;
        Ok((got == want, format!("got {got}, expected {want}")))
    }

    fn golden_genset(&self, k: u32, method: Method, want: &[String]) -> Outcome {
        let want = parse_set(want)?;
        let got = generating_set(k, self.model, method, &self.limits)?.elements;
        Ok(compare_sets(&got, &want))
    }

    fn golden_genset_count(&self, k: u32, want: usize) -> Outcome {
        let got = generating_set(k, self.model, Method::Constructive, &self.limits)?.elements.len();
        Ok((got == want, format!("got {got}, expected {want}")))
    }

    fn golden_basis(&self, k: u32, descent: bool, want: &[String]) -> Outcome {
        let want = parse_set(want)?;
        let got = if descent {
            basis_via_poset_descent(k, self.model, &self.limits)?
        } else {
            basis(k, self.model, false, &self.limits)?
        };
        Ok(compare_sets(&got.elements, &want))
    }

    fn full_tables(&self) -> Result<Vec<DistanceTable>, Error> {
        self.limits.check_len("verify", self.max_n)?;
        (0..=self.max_n)
            .map(|n| DistanceTable::build(n, self.model, None, &self.limits))
            .collect()
    }

    fn breakpoint_bound(&self) -> Outcome {
        let tables = self.full_tables()?;
        let mut checked = 0;
        for (n, table) in tables.iter().enumerate().skip(1) {
            for p in permutations(n) {
                let d = table.distance(&p).unwrap();
                if d < breakpoint_lower_bound(&p) {
                    let br = breakpoint_count(&p)?;
                    return Ok((false, format!("{p}: distance {d}, {br} breakpoints")));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} permutations, 0 violations")))
    }

    fn reduction_invariance(&self) -> Outcome {
        let tables = self.full_tables()?;
        let mut checked = 0;
        for (n, table) in tables.iter().enumerate() {
            for p in permutations(n) {
                let r = reduce(&p);
                let (dp, dr) = (table.distance(&p).unwrap(), tables[r.len()].distance(&r).unwrap());
                if dp != dr {
                    return Ok((false, format!("{p}: {dp} but reduced {r}: {dr}")));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} permutations, 0 violations")))
    }

    fn one_step_class(&self) -> Outcome {
        let alpha = parse("1324")?;
        let n_max = self.max_n.min(6);
        let got = mi_plus_one(&alpha, n_max, &self.limits)?;
        let base = mi_members(&alpha, n_max)?;
        let mut want = base.clone();
        for q in &base {
            want.extend(neighbors(q, Model::BlockTransposition));
        }
        let (ok, detail) = compare_sets(&got, &want);
        Ok((ok, format!("lengths <= {n_max}: {detail}")))
    }

    fn genset_cross_method(&self, k: u32) -> Outcome {
        let direct = generating_set(k, self.model, Method::Direct, &self.limits)?.elements;
        let constructive = generating_set(k, self.model, Method::Constructive, &self.limits)?.elements;
        Ok(compare_sets(&direct, &constructive))
    }

    fn genset_shape(&self, k: u32) -> Outcome {
        let gens = generating_set(k, self.model, Method::Constructive, &self.limits)?.elements;
        let len = generator_length(k, self.model);
        let engine = self.engine();
        for g in &gens {
            let ends_max = g.at(g.len()) as usize == g.len();
            let starts_one = g.at(1) == 1;
            let shape_ok = g.len() == len
                && permball::is_plus_irreducible(g)
                && ends_max
                && match self.model {
                    Model::BlockTransposition => starts_one,
                    Model::PrefixTransposition => !starts_one,
                };
            if !shape_ok {
                return Ok((false, format!("{g} has the wrong shape")));
            }
            let d = engine.distance(g, self.model)?;
            if d != k {
                return Ok((false, format!("{g} at distance {d}")));
            }
        }
        Ok((true, format!("{} generators of length {len}", gens.len())))
    }

    fn ball_characterization(&self, k: u32) -> Outcome {
        let gens = generating_set_direct(k, self.model, &self.limits)?;
        let tables = self.full_tables()?;
        let mut checked = 0;
        for (n, table) in tables.iter().enumerate() {
            for p in permutations(n) {
                let inside = table.distance(&p).unwrap() <= k;
                if inside != mi_union_member(&p, &gens) {
                    return Ok((false, format!("{p}: ball {inside}, union {}", !inside)));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} permutations up to length {}", self.max_n)))
    }

    fn closure(&self, k: u32) -> Outcome {
        let ok = verify_class_closure(k, self.model, self.max_n, &self.limits)?;
        Ok((ok, format!("lengths <= {}", self.max_n)))
    }

    fn basis_cross_method(&self, k: u32) -> Outcome {
        let a = basis(k, self.model, false, &self.limits)?.elements;
        let b = basis_via_poset_descent(k, self.model, &self.limits)?.elements;
        Ok(compare_sets(&a, &b))
    }

    fn basis_shape_and_probe(&self, k: u32) -> Outcome {
        let report = basis(k, self.model, true, &self.limits)?;
        let bad = basis_shape_violations(&report);
        if !bad.is_empty() {
            return Ok((false, format!("shape violated by {}", join(&bad))));
        }
        let probe = report.probe.expect("probe requested");
        if !probe.found.is_empty() {
            return Ok((false, format!("length {} holds {}", probe.length, join(probe.found.iter()))));
        }
        Ok((true, format!("{} elements, nothing at length {}", report.elements.len(), probe.length)))
    }

    fn avoidance_equivalence(&self, k: u32) -> Outcome {
        let b = basis(k, self.model, false, &self.limits)?.elements;
        let tables = self.full_tables()?;
        let mut checked = 0;
        for (n, table) in tables.iter().enumerate() {
            for p in permutations(n) {
                let inside = table.distance(&p).unwrap() <= k;
                if inside != avoids_all(&p, &b) {
                    return Ok((false, format!("{p}: ball {inside}, avoids basis {}", !inside)));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} permutations")))
    }

    fn ptd_cardinality(&self, k: u32) -> Outcome {
        let got = generating_set(k, self.model, Method::Constructive, &self.limits)?.elements.len();
        let want = (1..=2 * k as usize).product::<usize>() >> k;
        Ok((got == want, format!("got {got}, (2k)!/2^k = {want}")))
    }

    fn parent_uniqueness(&self, k: u32) -> Outcome {
        let gens = generating_set(k, self.model, Method::Constructive, &self.limits)?.elements;
        let parents = generating_set(k - 1, self.model, Method::Constructive, &self.limits)?.elements;
        let mut by_case: HashMap<u8, usize> = HashMap::new();
        for s in &gens {
            let (parent, case) = ptd_parent(s)?;
            if !parents.contains(&parent) || ptd_inflate(&parent, case)? != *s {
                return Ok((false, format!("{s}: bad parent {parent}")));
            }
            let producers = parents
                .iter()
                .flat_map(|q| ptd_cases(q).into_iter().map(move |c| (q, c)))
                .filter(|(q, c)| ptd_inflate(q, *c).is_ok_and(|x| x == *s))
                .count();
            if producers != 1 || ptd_case_number(s) != Some(case.number()) {
                return Ok((false, format!("{s}: produced {producers} times")));
            }
            *by_case.entry(case.number()).or_default() += 1;
        }
        let mut counts: Vec<_> = by_case.into_iter().collect();
        counts.sort_unstable();
        Ok((true, format!("{} generators, per case {counts:?}", gens.len())))
    }

    fn left_invariance(&self) -> Outcome {
        let engine = self.engine();
        let perms: Vec<Permutation> = permutations(4).collect();
        let mut checked = 0;
        for sigma in &perms {
            for a in &perms {
                for b in &perms {
                    let lhs = engine.pairwise(a, b, self.model)?;
                    let rhs = engine.pairwise(&sigma.compose(a)?, &sigma.compose(b)?, self.model)?;
                    if lhs != rhs {
                        return Ok((false, format!("sigma={sigma} a={a} b={b}: {lhs} vs {rhs}")));
                    }
                    checked += 1;
                }
            }
        }
        Ok((true, format!("{checked} triples in S_4")))
    }

    fn model_refinement(&self) -> Outcome {
        let n_max = self.max_n.min(6);
        let engine = self.engine();
        let mut checked = 0;
        for n in 0..=n_max {
            for p in permutations(n) {
                let (td, ptd) = (
                    engine.distance(&p, Model::BlockTransposition)?,
                    engine.distance(&p, Model::PrefixTransposition)?,
                );
                if td > ptd {
                    return Ok((false, format!("{p}: td {td} > ptd {ptd}")));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} permutations")))
    }

    fn transposition_inverse(&self) -> Outcome {
        let n_max = self.max_n.min(6);
        let mut checked = 0;
        for n in 0..=n_max {
            for p in permutations(n) {
                for t in TranspositionIndices::all(n, Model::BlockTransposition) {
                    let back = apply_transposition(&apply_transposition(&p, t)?, t.inverse())?;
                    if back != p {
                        return Ok((false, format!("{p} with {t:?}")));
                    }
                    checked += 1;
                }
            }
        }
        Ok((true, format!("{checked} (permutation, operation) pairs")))
    }
}

fn golden_reduce(input: &str, output: &str) -> Outcome {
    let got = reduce(&parse(input)?);
    Ok((got.to_string() == output, format!("red({input}) = {got}")))
}

fn golden_inflate(perm: &str, vector: &[usize], output: &str) -> Outcome {
    let got = monotone_inflate(&parse(perm)?, &vector.to_vec().into())?;
    Ok((got.to_string() == output, format!("{perm}{vector:?} = {got}")))
}

fn parse(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn parse_set(xs: &[String]) -> Result<PermSet, Error> {
    xs.iter().map(|s| parse(s)).collect()
}

fn join<'a>(xs: impl IntoIterator<Item = &'a Permutation>) -> String {
    xs.into_iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn compare_sets(got: &PermSet, want: &PermSet) -> (bool, String) {
    if got == want {
        return (true, format!("{} elements", got.len()));
    }
    let missing = want.difference(got);
    let extra = got.difference(want);
    (
        false,
        format!("missing [{}], unexpected [{}]", join(&missing), join(&extra)),
    )
}
