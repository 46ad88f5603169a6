//! Exact distances by breadth-first search over packed permutations.
//!
//! Single queries run a bidirectional search between the permutation and the
//! identity. Balls and full distance tables come from a forward level-by-level
//! expansion of the identity, which yields sorting distances directly because
//! both distances are left-invariant.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::enumerate::Limits;
use crate::error::{Error, Result};
use crate::model::{Model, MoveTable};
use crate::pattern::{breakpoint_lower_bound, reduce};
use crate::perm::{Permutation, MAX_PACKED_LEN};
use crate::permset::PermSet;

/// Frontiers smaller than this are expanded on the calling thread.
const PAR_THRESHOLD: usize = 4096;
/// Cached results are dropped beyond this many entries.
const CACHE_CAPACITY: usize = 1 << 22;

type CacheKey = (Model, u8, u64);

/// Distance oracle with an optional memo for block-transposition queries.
///
/// With `canonical` set, block-transposition queries are answered on `red(p)`
/// and memoized under that key. Prefix queries are never reduced.
pub struct DistanceEngine {
    limits: Limits,
    canonical: bool,
    cache: Mutex<HashMap<CacheKey, u32>>,
}

impl DistanceEngine {
    pub fn new(limits: Limits) -> Self {
        DistanceEngine {
            limits,
            canonical: true,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// An engine that searches on the permutation as given, with no memo.
    pub fn plain(limits: Limits) -> Self {
        DistanceEngine {
            canonical: false,
            ..Self::new(limits)
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// Length of a shortest sorting sequence for `p`.
    pub fn distance(&self, p: &Permutation, model: Model) -> Result<u32> {
        let reduced;
        let target = if self.canonical && model == Model::BlockTransposition {
            reduced = reduce(p);
            &reduced
        } else {
            p
        };
        let n = target.len();
        if n <= 1 || target.is_identity() {
            return Ok(0);
        }
        check_searchable(&self.limits, n)?;
        let key = target.pack().expect("length checked");
        let cache_key = (model, n as u8, key);
        if self.canonical {
            if let Some(&d) = self.cache.lock().unwrap().get(&cache_key) {
                return Ok(d);
            }
        }
        let d = bidirectional(key, identity_key(n), n, model, &self.limits)?;
        if self.canonical {
            let mut cache = self.cache.lock().unwrap();
            if cache.len() < CACHE_CAPACITY {
                cache.insert(cache_key, d);
            }
        }
        Ok(d)
    }

    /// `distance(p) ≤ k`, skipping the search when the breakpoint bound already exceeds `k`.
    pub fn distance_at_most(&self, p: &Permutation, model: Model, k: u32) -> Result<bool> {
        if model == Model::BlockTransposition && breakpoint_lower_bound(p) > k {
            return Ok(false);
        }
        Ok(self.distance(p, model)? <= k)
    }

    /// Fewest operations turning `p` into `q`.
    pub fn pairwise(&self, p: &Permutation, q: &Permutation, model: Model) -> Result<u32> {
        if p.len() != q.len() {
            return Err(Error::LengthMismatch {
                expected: p.len(),
                actual: q.len(),
            });
        }
        let n = p.len();
        if p == q {
            return Ok(0);
        }
        check_searchable(&self.limits, n)?;
        bidirectional(p.pack().unwrap(), q.pack().unwrap(), n, model, &self.limits)
    }
}

impl Default for DistanceEngine {
    fn default() -> Self {
        Self::new(Limits::with_max_len(MAX_PACKED_LEN))
    }
}

fn shared_engine() -> &'static DistanceEngine {
    static ENGINE: OnceLock<DistanceEngine> = OnceLock::new();
    ENGINE.get_or_init(DistanceEngine::default)
}

/// Sorting distance of `p` under `model`, using a process-wide memoizing engine.
pub fn distance(p: &Permutation, model: Model) -> Result<u32> {
    shared_engine().distance(p, model)
}

pub fn pairwise_distance(p: &Permutation, q: &Permutation, model: Model) -> Result<u32> {
    shared_engine().pairwise(p, q, model)
}

fn check_searchable(limits: &Limits, n: usize) -> Result<()> {
    limits.check_len("distance search", n)?;
    if n > MAX_PACKED_LEN {
        return Err(Error::CapExceeded {
            what: "packed search",
            len: n,
            cap: MAX_PACKED_LEN,
        });
    }
    Ok(())
}

fn identity_key(n: usize) -> u64 {
    Permutation::identity(n).pack().unwrap()
}

fn bidirectional(src: u64, dst: u64, n: usize, model: Model, limits: &Limits) -> Result<u32> {
    if src == dst {
        return Ok(0);
    }
    let moves = MoveTable::new(n, model);
    let mut seen = [HashMap::from([(src, 0u32)]), HashMap::from([(dst, 0u32)])];
    let mut frontier = [vec![src], vec![dst]];
    let mut depth = [0u32; 2];
    loop {
        let side = usize::from(frontier[0].len() > frontier[1].len());
        let [a, b] = &mut seen;
        let (mine, theirs) = if side == 0 { (a, &*b) } else { (b, &*a) };
        let d = depth[side] + 1;
        let mut next = Vec::new();
        let mut best: Option<u32> = None;
        for &x in &frontier[side] {
            moves.for_each_neighbor(x, |y| {
                if let Some(&e) = theirs.get(&y) {
                    best = Some(best.map_or(d + e, |b| b.min(d + e)));
                }
                if let std::collections::hash_map::Entry::Vacant(slot) = mine.entry(y) {
                    slot.insert(d);
                    next.push(y);
                }
            });
        }
        // With both sides expanded level by level and no earlier meeting, every
        // hit on this level lies on a shortest path.
        if let Some(found) = best {
            return Ok(found);
        }
        assert!(!next.is_empty(), "transposition graphs are connected");
        depth[side] = d;
        frontier[side] = next;
        limits.check_states(seen[0].len() + seen[1].len())?;
    }
}

/// Exact distances from the identity for every permutation of one length, up
/// to a given radius.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    n: usize,
    model: Model,
    levels: Vec<Vec<u64>>,
    index: HashMap<u64, u32>,
}

impl DistanceTable {
    /// Expands the identity of length `n` level by level, stopping after
    /// `max_level` levels (or when the group is exhausted).
    pub fn build(n: usize, model: Model, max_level: Option<u32>, limits: &Limits) -> Result<Self> {
        check_searchable(limits, n)?;
        let start = identity_key(n);
        let moves = MoveTable::new(n, model);
        let mut index = HashMap::from([(start, 0u32)]);
        let mut levels = vec![vec![start]];
        while max_level.is_none_or(|m| (levels.len() as u32) <= m) {
            let frontier = levels.last().unwrap();
            let candidates: Vec<u64> = if frontier.len() >= PAR_THRESHOLD {
                frontier
                    .par_iter()
                    .flat_map_iter(|&x| {
                        let mut out = Vec::new();
                        moves.for_each_neighbor(x, |y| out.push(y));
                        out
                    })
                    .collect()
            } else {
                let mut out = Vec::new();
                for &x in frontier {
                    moves.for_each_neighbor(x, |y| out.push(y));
                }
                out
            };
            let d = levels.len() as u32;
            let mut next = Vec::new();
            for y in candidates {
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                    e.insert(d);
                    next.push(y);
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
            limits.check_states(index.len())?;
        }
        Ok(DistanceTable {
            n,
            model,
            levels,
            index,
        })
    }

    pub fn len_of_perms(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// Number of permutations reached.
    pub fn size(&self) -> usize {
        self.index.len()
    }

    /// Largest distance reached.
    pub fn radius(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// Distance of `p`, or `None` if it lies beyond the explored radius.
    pub fn distance(&self, p: &Permutation) -> Option<u32> {
        if p.len() != self.n {
            return None;
        }
        self.distance_packed(p.pack()?)
    }

    pub(crate) fn distance_packed(&self, key: u64) -> Option<u32> {
        self.index.get(&key).copied()
    }

    pub(crate) fn level_keys(&self, d: u32) -> &[u64] {
        self.levels.get(d as usize).map_or(&[], Vec::as_slice)
    }

    /// Permutations at distance exactly `d`.
    pub fn level(&self, d: u32) -> PermSet {
        self.level_keys(d)
            .iter()
            .map(|&key| Permutation::unpack(key, self.n))
            .collect()
    }

    /// Permutations at distance at most `k`.
    pub fn ball(&self, k: u32) -> PermSet {
        (0..=k.min(self.radius())).flat_map(|d| self.level(d)).collect()
    }
}

/// `B_k(n)`: permutations of length `n` within distance `k` of the identity.
pub fn ball(n: usize, k: u32, model: Model, limits: &Limits) -> Result<PermSet> {
    limits.check_len("ball", n)?;
    Ok(DistanceTable::build(n, model, Some(k), limits)?.ball(k))
}
