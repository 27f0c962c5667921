//! Minimum set cover and minimum exact cover over small universes.
//!
//! Both engines are subset dynamic programs over bitmasks of the covered
//! universe. The recursion always branches on the lowest uncovered element,
//! so only sets containing it are tried; the memo table has `2^u` entries.

use crate::error::{Error, Result};

pub const DEFAULT_UNIVERSE_CAP: usize = 25;

/// Masks are `u64`, so no universe may exceed this even with a raised cap.
const HARD_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    universe_size: usize,
    sets: Vec<(u64, usize)>,
    cap: usize,
}

/// A minimum-cardinality selection, identified by source ids (ascending).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverChoice {
    pub size: usize,
    pub ids: Vec<usize>,
}

impl SetCoverInstance {
    /// `sets` are `(bitmask, source id)` pairs; bit `i` stands for element `i`.
    pub fn new(universe_size: usize, sets: Vec<(u64, usize)>) -> Result<Self> {
        if universe_size > HARD_LIMIT {
            return Err(Error::capacity("set cover universe", HARD_LIMIT, universe_size));
        }
        let full = full_mask(universe_size);
        if let Some(&(m, id)) = sets.iter().find(|(m, _)| m & !full != 0) {
            return Err(Error::InvalidParameter(format!(
                "set {id} (mask {m:#b}) is not inside a universe of {universe_size} elements"
            )));
        }
        Ok(SetCoverInstance {
            universe_size,
            sets,
            cap: DEFAULT_UNIVERSE_CAP,
        })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.min(HARD_LIMIT);
        self
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[(u64, usize)] {
        &self.sets
    }
}

fn full_mask(u: usize) -> u64 {
    if u == 64 {
        u64::MAX
    } else {
        (1u64 << u) - 1
    }
}

const UNKNOWN: u8 = 0;
const INFEASIBLE: u8 = u8::MAX;

struct Engine {
    full: u64,
    exact: bool,
    /// distinct non-empty masks, smallest id kept, sorted by id
    sets: Vec<(u64, usize)>,
    by_bit: Vec<Vec<u64>>,
    /// value + 1, or `UNKNOWN` / `INFEASIBLE`
    memo: Vec<u8>,
}

impl Engine {
    fn new(inst: &SetCoverInstance, exact: bool) -> Result<Self> {
        let u = inst.universe_size;
        if u > inst.cap {
            return Err(Error::capacity("set cover universe", inst.cap, u));
        }
        let mut sets: Vec<(u64, usize)> = inst.sets.iter().copied().filter(|(m, _)| *m != 0).collect();
        sets.sort_by_key(|&(m, id)| (id, m));
        let mut seen = std::collections::HashSet::new();
        sets.retain(|&(m, _)| seen.insert(m));
        let mut by_bit = vec![Vec::new(); u];
        for &(m, _) in &sets {
            for (b, list) in by_bit.iter_mut().enumerate() {
                if m >> b & 1 == 1 {
                    list.push(m);
                }
            }
        }
        Ok(Engine {
            full: full_mask(u),
            exact,
            sets,
            by_bit,
            memo: vec![UNKNOWN; 1usize << u],
        })
    }

    /// Minimum number of sets completing `mask` to the full universe.
    fn value(&mut self, mask: u64) -> Option<u8> {
        if mask == self.full {
            return Some(0);
        }
        match self.memo[mask as usize] {
            UNKNOWN => {}
            INFEASIBLE => return None,
            v => return Some(v - 1),
        }
        let low = (!mask & self.full).trailing_zeros() as usize;
        let mut best: Option<u8> = None;
        for k in 0..self.by_bit[low].len() {
            let s = self.by_bit[low][k];
            if self.exact && s & mask != 0 {
                continue;
            }
            if let Some(v) = self.value(mask | s) {
                best = Some(best.map_or(v + 1, |b| b.min(v + 1)));
            }
        }
        self.memo[mask as usize] = best.map_or(INFEASIBLE, |b| b + 1);
        best
    }

    fn usable(&self, mask: u64, s: u64) -> bool {
        if self.exact {
            s & mask == 0
        } else {
            s & !mask != 0
        }
    }

    /// Lexicographically smallest id sequence among minimum selections.
    fn solve(mut self) -> Option<CoverChoice> {
        let total = self.value(0)?;
        let mut mask = 0u64;
        let mut ids = Vec::with_capacity(total as usize);
        let mut remaining = total;
        while mask != self.full {
            let mut next = None;
            for k in 0..self.sets.len() {
                let (s, id) = self.sets[k];
                if !self.usable(mask, s) {
                    continue;
                }
                if self.value(mask | s) == Some(remaining - 1) {
                    next = Some((s, id));
                    break;
                }
            }
            let (s, id) = next.expect("optimal continuation exists");
            ids.push(id);
            mask |= s;
            remaining -= 1;
        }
        ids.sort_unstable();
        Some(CoverChoice {
            size: total as usize,
            ids,
        })
    }
}

/// Minimum-cardinality subfamily whose union is the whole universe, or
/// `None` when the union of all sets falls short.
pub fn min_set_cover(inst: &SetCoverInstance) -> Result<Option<CoverChoice>> {
    Ok(Engine::new(inst, false)?.solve())
}

/// Minimum number of pairwise-disjoint sets partitioning the universe.
pub fn min_exact_cover(inst: &SetCoverInstance) -> Result<Option<CoverChoice>> {
    Ok(Engine::new(inst, true)?.solve())
}
