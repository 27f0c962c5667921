//! Exact cover by arithmetic progressions.
//!
//! The search keeps, for each of the `k` solution slots, the elements
//! committed to it (`assigned`), the continuation it would cover if nothing
//! interrupts it (`potential`) and its difference once known. Each node does
//! exactly one of:
//!
//! 1. resolve the smallest element shared by two potential sets, by cutting
//!    one of them just before it;
//! 2. fix the difference of a slot that has just received its second
//!    element, from a bounded candidate list;
//! 3. report the solution when every element is assigned or potential;
//! 4. put the smallest unaccounted element into a slot with fewer than two
//!    assigned elements.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::ap::Ap;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::solution::{verify_solution, CoverKind, Solution};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Slot {
    /// sorted positions
    assigned: Vec<usize>,
    /// sorted positions, a prefix of the continuation past `assigned`
    potential: Vec<usize>,
    /// zero while undetermined
    diff: BigInt,
}

impl Slot {
    fn empty() -> Self {
        Slot {
            assigned: Vec::new(),
            potential: Vec::new(),
            diff: BigInt::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct PartitionState {
    slots: Vec<Slot>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct XcapStats {
    pub nodes: u64,
    pub overlap_splits: u64,
    pub difference_branches: u64,
    pub assignment_branches: u64,
    pub aborts: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XcapOutcome {
    pub solution: Option<Solution>,
    pub stats: XcapStats,
}

impl XcapOutcome {
    pub fn is_yes(&self) -> bool {
        self.solution.is_some()
    }
}

/// `p` cut just before its smallest element that lies in `t`; `p` itself if
/// they are disjoint.
pub fn update_potential(p: &BTreeSet<BigInt>, t: &BTreeSet<BigInt>) -> BTreeSet<BigInt> {
    match p.intersection(t).next() {
        Some(cut) => p.range(..cut).cloned().collect(),
        None => p.clone(),
    }
}

fn truncate_at(potential: &mut Vec<usize>, blocked: impl Fn(usize) -> bool) {
    if let Some(cut) = potential.iter().position(|&i| blocked(i)) {
        potential.truncate(cut);
    }
}

/// Candidate differences for a slot whose two known elements are `lo < hi`.
///
/// For every tuple `b` over `{0, .., 2^k + 1}` (one coordinate per slot),
/// `g = gcd(hi - lo, b_1 d_1, .., b_k d_k)` with zero terms ignored, and every
/// integral `g / m` for `m = 1..=k(k+1)` is a candidate. Coordinates with an
/// unknown difference contribute nothing, so only known differences are
/// enumerated; the reachable gcd values are propagated one coordinate at a
/// time instead of materializing the tuples. Returned largest first.
pub fn candidate_differences(
    lo: &BigInt,
    hi: &BigInt,
    diffs: &[BigInt],
    k: usize,
) -> Result<Vec<BigInt>> {
    if hi <= lo {
        return Err(Error::Ordering {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let b_max = 1u64
        .checked_shl(k as u32)
        .and_then(|p| p.checked_add(1))
        .unwrap_or(u64::MAX);
    let mut gcds: BTreeSet<BigInt> = [hi - lo].into();
    for d in diffs.iter().filter(|d| !d.is_zero()) {
        let mut next = BTreeSet::new();
        for s in &gcds {
            // gcd(s, b d) is periodic in b with period s
            let top = s.to_u64().map_or(b_max, |s| s.min(b_max));
            next.insert(s.clone());
            for b in 1..=top {
                next.insert(s.gcd(&(d * BigInt::from(b))));
            }
        }
        gcds = next;
    }
    let m_max = (k * (k + 1)).max(1);
    let mut out = BTreeSet::new();
    for g in &gcds {
        for m in 1..=m_max {
            let (q, r) = g.div_rem(&BigInt::from(m));
            if q.is_zero() {
                break;
            }
            if r.is_zero() {
                out.insert(q);
            }
        }
    }
    Ok(out.into_iter().rev().collect())
}

struct Search<'a> {
    x: &'a Instance,
    k: usize,
    stats: XcapStats,
}

impl<'a> Search<'a> {
    fn partition(&mut self, state: PartitionState) -> Option<Vec<Ap>> {
        self.stats.nodes += 1;
        #[cfg(debug_assertions)]
        self.check_invariants(&state);

        if let Some((c, i, j)) = self.first_overlap(&state) {
            self.stats.overlap_splits += 1;
            for cut in [i, j] {
                let mut next = state.clone();
                truncate_at(&mut next.slots[cut].potential, |p| p >= c);
                if let Some(found) = self.partition(next) {
                    return Some(found);
                }
            }
            return None;
        }

        if let Some(i) = state
            .slots
            .iter()
            .position(|s| s.assigned.len() == 2 && s.diff.is_zero())
        {
            return self.branch_on_difference(state, i);
        }

        let n = self.x.len();
        let mut owned = vec![false; n];
        for s in &state.slots {
            for &p in s.assigned.iter().chain(&s.potential) {
                owned[p] = true;
            }
        }
        let Some(next_free) = owned.iter().position(|&o| !o) else {
            return Some(self.collect(&state));
        };

        // interchangeable empty slots: only the first one is tried
        let mut tried_empty = false;
        for i in 0..state.slots.len() {
            let len = state.slots[i].assigned.len();
            if len >= 2 || (len == 0 && tried_empty) {
                continue;
            }
            tried_empty |= len == 0;
            self.stats.assignment_branches += 1;
            let mut next = state.clone();
            let t = &mut next.slots[i].assigned;
            t.push(next_free);
            t.sort_unstable();
            if let Some(found) = self.partition(next) {
                return Some(found);
            }
        }
        self.stats.aborts += 1;
        None
    }

    /// Smallest element shared by two potential sets, with the first two
    /// slots holding it.
    fn first_overlap(&self, state: &PartitionState) -> Option<(usize, usize, usize)> {
        let mut holder = vec![usize::MAX; self.x.len()];
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, s) in state.slots.iter().enumerate() {
            for &p in &s.potential {
                if holder[p] == usize::MAX {
                    holder[p] = j;
                } else if best.is_none_or(|(c, _, _)| p < c) {
                    best = Some((p, holder[p], j));
                }
            }
        }
        best
    }

    fn branch_on_difference(&mut self, state: PartitionState, i: usize) -> Option<Vec<Ap>> {
        let (lo_pos, hi_pos) = (state.slots[i].assigned[0], state.slots[i].assigned[1]);
        let (lo, hi) = (self.x.get(lo_pos), self.x.get(hi_pos));
        let diffs: Vec<BigInt> = state.slots.iter().map(|s| s.diff.clone()).collect();
        let candidates =
            candidate_differences(lo, hi, &diffs, self.k).expect("assigned pair is ascending");

        let mut taken = vec![usize::MAX; self.x.len()];
        for (j, s) in state.slots.iter().enumerate() {
            if j != i {
                for &p in &s.assigned {
                    taken[p] = j;
                }
            }
        }

        for d in candidates {
            let Some(run) = self.run_between(lo_pos, hi, &d) else {
                continue;
            };
            if run.iter().any(|&p| taken[p] != usize::MAX) {
                continue;
            }
            self.stats.difference_branches += 1;
            let mut next = state.clone();
            let continuation = self
                .x
                .prefix_positions(&(hi + &d), &d, |p| taken[p] != usize::MAX);
            let in_run: HashSet<usize> = run.iter().copied().collect();
            for (j, s) in next.slots.iter_mut().enumerate() {
                if j != i {
                    truncate_at(&mut s.potential, |p| in_run.contains(&p));
                }
            }
            let slot = &mut next.slots[i];
            slot.assigned = run;
            slot.potential = continuation;
            slot.diff = d;
            if let Some(found) = self.partition(next) {
                return Some(found);
            }
        }
        self.stats.aborts += 1;
        None
    }

    /// Positions of `x[lo_pos], x[lo_pos] + d, .., hi`, if all are present.
    fn run_between(&self, lo_pos: usize, hi: &BigInt, d: &BigInt) -> Option<Vec<usize>> {
        let xs = self.x.elements();
        let mut run = vec![lo_pos];
        let mut cur = lo_pos;
        let mut v = &xs[lo_pos] + d;
        while &v <= hi {
            let off = xs[cur + 1..].binary_search(&v).ok()?;
            cur += off + 1;
            run.push(cur);
            v += d;
        }
        Some(run)
    }

    fn collect(&self, state: &PartitionState) -> Vec<Ap> {
        let mut aps = Vec::new();
        for s in &state.slots {
            let mut pos: Vec<usize> = s.assigned.iter().chain(&s.potential).copied().collect();
            if pos.is_empty() {
                continue;
            }
            pos.sort_unstable();
            let first = self.x.get(pos[0]).clone();
            if pos.len() == 1 {
                aps.push(Ap::singleton(first));
                continue;
            }
            let d = self.x.get(pos[1]) - &first;
            assert!(
                pos.windows(2).all(|w| self.x.get(w[1]) - self.x.get(w[0]) == d),
                "slot does not form a contiguous progression"
            );
            aps.push(Ap::new(first, d, pos.len()).expect("positive difference"));
        }
        aps
    }

    #[cfg(debug_assertions)]
    fn check_invariants(&self, state: &PartitionState) {
        let mut t_owner = vec![usize::MAX; self.x.len()];
        for (i, s) in state.slots.iter().enumerate() {
            for &p in &s.assigned {
                assert_eq!(t_owner[p], usize::MAX, "assigned sets overlap");
                t_owner[p] = i;
            }
            if !s.diff.is_zero() {
                assert!(s.assigned.len() >= 2);
            }
        }
        for s in &state.slots {
            for &p in &s.potential {
                assert_eq!(t_owner[p], usize::MAX, "potential element is assigned");
            }
        }
    }
}

fn initial_state(k: usize) -> PartitionState {
    let mut slots = vec![Slot::empty(); k];
    slots[0].assigned.push(0);
    PartitionState { slots }
}

/// Decides whether `x` splits into at most `k` pairwise-disjoint progressions
/// contained in `x`.
pub fn exact_cover_decide(x: &Instance, k: usize) -> XcapOutcome {
    if x.is_empty() {
        return XcapOutcome {
            solution: Some(Solution::new(Vec::new(), CoverKind::ExactCover)),
            stats: XcapStats::default(),
        };
    }
    if k == 0 {
        return XcapOutcome {
            solution: None,
            stats: XcapStats::default(),
        };
    }
    let mut search = Search {
        x,
        k,
        stats: XcapStats::default(),
    };
    let found = search.partition(initial_state(k));
    let solution = found.map(|aps| {
        let s = Solution::new(aps, CoverKind::ExactCover);
        assert_eq!(verify_solution(x, &s), Ok(()), "search produced an invalid partition");
        s
    });
    XcapOutcome {
        solution,
        stats: search.stats,
    }
}

pub fn exact_cover_minimize(x: &Instance) -> (usize, Solution) {
    for k in 0..=x.len().div_ceil(2) {
        if let Some(s) = exact_cover_decide(x, k).solution {
            return (k, s);
        }
    }
    unreachable!("pairs and a singleton always partition the set")
}
