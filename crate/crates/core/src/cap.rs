//! Cover by arithmetic progressions: the bounded search tree.
//!
//! A call covers the uncovered part of the instance with at most `k2`
//! further progressions. Small remainders (at most `k^2` elements) go to the
//! exact set-cover engine; otherwise two of the `k^2 + 1` smallest uncovered
//! elements must share a solution progression with no chosen progression
//! ending between them, and the shared progression's difference is `D / l`
//! for some `l <= 2^k` dividing their gap `D`.

use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::ap::Ap;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::setcover::{min_set_cover, SetCoverInstance, DEFAULT_UNIVERSE_CAP};
use crate::solution::{verify_solution, CoverKind, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapConfig {
    /// Largest remainder handed to the set-cover engine.
    pub setcover_cap: usize,
    /// Skip `(covered, budget)` states already known to fail.
    pub dedup: bool,
}

impl Default for CapConfig {
    fn default() -> Self {
        CapConfig {
            setcover_cap: DEFAULT_UNIVERSE_CAP,
            dedup: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub setcover_calls: u64,
    pub duplicate_skips: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapOutcome {
    pub solution: Option<Solution>,
    pub stats: SearchStats,
}

impl CapOutcome {
    pub fn is_yes(&self) -> bool {
        self.solution.is_some()
    }
}

/// Differences `D / l` for every `l` in `1..=2^k` dividing `D`, largest first.
pub fn candidate_differences(gap: &BigInt, k: usize) -> Vec<BigInt> {
    if gap.is_zero() {
        return Vec::new();
    }
    let limit = 1u64.checked_shl(k as u32).unwrap_or(u64::MAX);
    let limit = gap.to_u64().map_or(limit, |g| g.min(limit));
    (1..=limit)
        .filter_map(|l| {
            let (q, r) = gap.div_rem(&BigInt::from(l));
            r.is_zero().then_some(q)
        })
        .collect()
}

struct Search<'a> {
    x: &'a Instance,
    k: usize,
    cfg: CapConfig,
    runs: Vec<(Ap, Vec<usize>)>,
    longest: usize,
    failed: HashSet<(FixedBitSet, usize)>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn new(x: &'a Instance, k: usize, cfg: CapConfig) -> Self {
        let n = x.len();
        let mut by_ap = BTreeMap::new();
        if n == 1 {
            by_ap.insert(Ap::singleton(x.get(0).clone()), vec![0]);
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = x.get(j) - x.get(i);
                let (ap, idx) = x.maximal_run(i, &d);
                by_ap.entry(ap).or_insert(idx);
            }
        }
        let runs: Vec<_> = by_ap.into_iter().collect();
        let longest = runs.iter().map(|(_, idx)| idx.len()).max().unwrap_or(0);
        Search {
            x,
            k,
            cfg,
            runs,
            longest,
            failed: HashSet::new(),
            stats: SearchStats::default(),
        }
    }

    /// Cover `X \ covered` with at most `budget` progressions.
    fn covering(&mut self, covered: &FixedBitSet, budget: usize) -> Result<Option<Vec<Ap>>> {
        self.stats.nodes += 1;
        let n = self.x.len();
        let uncovered = n - covered.count_ones(..);
        if uncovered == 0 {
            return Ok(Some(Vec::new()));
        }
        if budget == 0 || self.longest * budget < uncovered {
            return Ok(None);
        }
        let kk = self.k * self.k;
        if uncovered <= kk {
            return self.finish_with_set_cover(covered, budget);
        }

        let smallest: Vec<usize> = covered.zeroes().take(kk + 1).collect();
        let mut seen = HashSet::new();
        let mut branches = Vec::new();
        for a in 0..smallest.len() {
            for b in a + 1..smallest.len() {
                let (ui, uj) = (smallest[a], smallest[b]);
                let gap = self.x.get(uj) - self.x.get(ui);
                for d in candidate_differences(&gap, self.k) {
                    let (ap, idx) = self.x.maximal_run(ui, &d);
                    if !seen.insert(ap.clone()) {
                        continue;
                    }
                    let gain = idx.iter().filter(|&&i| !covered.contains(i)).count();
                    branches.push((gain, branches.len(), ap, idx));
                }
            }
        }
        // most new coverage first; generation order breaks ties
        branches.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        for (_, _, ap, idx) in branches {
            let mut next = covered.clone();
            for i in idx {
                next.insert(i);
            }
            if self.cfg.dedup && self.failed.contains(&(next.clone(), budget - 1)) {
                self.stats.duplicate_skips += 1;
                continue;
            }
            match self.covering(&next, budget - 1)? {
                Some(mut rest) => {
                    rest.push(ap);
                    return Ok(Some(rest));
                }
                None => {
                    if self.cfg.dedup {
                        self.failed.insert((next, budget - 1));
                    }
                }
            }
        }
        Ok(None)
    }

    fn finish_with_set_cover(
        &mut self,
        covered: &FixedBitSet,
        budget: usize,
    ) -> Result<Option<Vec<Ap>>> {
        self.stats.setcover_calls += 1;
        let universe: Vec<usize> = covered.zeroes().collect();
        if universe.len() > self.cfg.setcover_cap {
            return Err(Error::capacity(
                "uncovered remainder",
                self.cfg.setcover_cap,
                universe.len(),
            ));
        }
        let mut bit = vec![usize::MAX; self.x.len()];
        for (b, &i) in universe.iter().enumerate() {
            bit[i] = b;
        }
        let mut masks = HashSet::new();
        let mut sets = Vec::new();
        for (id, (_, idx)) in self.runs.iter().enumerate() {
            let m = idx
                .iter()
                .filter(|&&i| bit[i] != usize::MAX)
                .fold(0u64, |m, &i| m | 1 << bit[i]);
            if m != 0 && masks.insert(m) {
                sets.push((m, id));
            }
        }
        let inst = SetCoverInstance::new(universe.len(), sets)?.with_cap(self.cfg.setcover_cap);
        Ok(min_set_cover(&inst)?
            .filter(|c| c.size <= budget)
            .map(|c| c.ids.iter().map(|&id| self.runs[id].0.clone()).collect()))
    }
}

/// Decides whether `x` is the union of at most `k` progressions contained in
/// `x`; on success the witness is returned.
pub fn cover_decide(x: &Instance, k: usize) -> Result<CapOutcome> {
    cover_decide_with(x, k, CapConfig::default())
}

pub fn cover_decide_with(x: &Instance, k: usize, cfg: CapConfig) -> Result<CapOutcome> {
    let mut search = Search::new(x, k, cfg);
    let found = search.covering(&FixedBitSet::with_capacity(x.len()), k)?;
    let solution = found.map(|aps| {
        let s = Solution::new(aps, CoverKind::Cover);
        debug_assert_eq!(verify_solution(x, &s), Ok(()));
        s
    });
    Ok(CapOutcome {
        solution,
        stats: search.stats,
    })
}

/// Smallest `k` with a cover, by iterative deepening from `k = 0`.
pub fn cover_minimize(x: &Instance) -> Result<(usize, Solution)> {
    for k in 0..=x.len().div_ceil(2) {
        if let Some(s) = cover_decide(x, k)?.solution {
            return Ok((k, s));
        }
    }
    unreachable!("pairs always give a cover with ceil(n/2) progressions")
}
