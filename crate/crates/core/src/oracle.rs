//! Brute-force reference solvers.
//!
//! These share nothing with the branching solvers beyond the progression
//! primitives and the set-cover engines, so agreement between the two is
//! meaningful evidence.

use crate::ap::Ap;
use crate::below::TuscInstance;
use crate::error::{Error, Result};
use crate::instance::{enumerate_all_aps, enumerate_maximal_aps, Instance};
use crate::setcover::{min_exact_cover, min_set_cover, SetCoverInstance};
use crate::solution::{CoverKind, Solution};

pub const BRUTE_CAP_LIMIT: usize = 14;
pub const BRUTE_XCAP_LIMIT: usize = 12;
pub const BRUTE_TUSC_LIMIT: usize = 20;

fn family(x: &Instance, aps: &[Ap]) -> Result<SetCoverInstance> {
    let sets = aps
        .iter()
        .enumerate()
        .map(|(id, ap)| {
            let idx = x.indices_of(ap).expect("enumerated progressions lie in the set");
            (idx.iter().fold(0u64, |m, &i| m | 1 << i), id)
        })
        .collect();
    SetCoverInstance::new(x.len(), sets)
}

/// Minimum number of progressions covering `x`, with a witness.
pub fn brute_cap(x: &Instance) -> Result<(usize, Solution)> {
    brute_cap_with(x, BRUTE_CAP_LIMIT)
}

pub fn brute_cap_with(x: &Instance, limit: usize) -> Result<(usize, Solution)> {
    if x.len() > limit {
        return Err(Error::capacity("brute-force cover instance", limit, x.len()));
    }
    let aps = enumerate_maximal_aps(x);
    let choice = min_set_cover(&family(x, &aps)?.with_cap(limit))?.expect("pairs cover everything");
    let picked = choice.ids.iter().map(|&i| aps[i].clone()).collect();
    Ok((choice.size, Solution::new(picked, CoverKind::Cover)))
}

/// Minimum number of pairwise disjoint progressions partitioning `x`, with a witness.
pub fn brute_xcap(x: &Instance) -> Result<(usize, Solution)> {
    brute_xcap_with(x, BRUTE_XCAP_LIMIT)
}

pub fn brute_xcap_with(x: &Instance, limit: usize) -> Result<(usize, Solution)> {
    if x.len() > limit {
        return Err(Error::capacity("brute-force exact cover instance", limit, x.len()));
    }
    let aps = enumerate_all_aps(x);
    let choice =
        min_exact_cover(&family(x, &aps)?.with_cap(limit))?.expect("singletons partition everything");
    let picked = choice.ids.iter().map(|&i| aps[i].clone()).collect();
    Ok((choice.size, Solution::new(picked, CoverKind::ExactCover)))
}

/// Every minimum exact cover of `x`, each sorted, in lexicographic order.
pub fn all_minimum_exact_covers(x: &Instance) -> Result<Vec<Solution>> {
    let (best, _) = brute_xcap(x)?;
    let aps = enumerate_all_aps(x);
    let masks: Vec<u64> = aps
        .iter()
        .map(|ap| x.indices_of(ap).unwrap().iter().fold(0u64, |m, &i| m | 1 << i))
        .collect();
    let full = if x.is_empty() { 0 } else { u64::MAX >> (64 - x.len()) };
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn go(
        covered: u64,
        full: u64,
        left: usize,
        masks: &[u64],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if covered == full {
            out.push(stack.clone());
            return;
        }
        if left == 0 {
            return;
        }
        let low = (!covered & full).trailing_zeros();
        for (id, &m) in masks.iter().enumerate() {
            if m >> low & 1 == 1 && m & covered == 0 {
                stack.push(id);
                go(covered | m, full, left - 1, masks, stack, out);
                stack.pop();
            }
        }
    }
    let mut found = Vec::new();
    go(0, full, best, &masks, &mut stack, &mut found);
    for ids in found {
        out.push(Solution::new(
            ids.iter().map(|&i| aps[i].clone()).collect(),
            CoverKind::ExactCover,
        ));
    }
    out.sort_by(|a, b| a.aps.cmp(&b.aps));
    Ok(out)
}

/// Minimum cover size of a `t`-uniform instance, with every `t`-subset
/// materialized.
pub fn brute_tusc(inst: &TuscInstance) -> Result<usize> {
    let n = inst.n();
    if n > BRUTE_TUSC_LIMIT {
        return Err(Error::capacity("brute-force uniform instance", BRUTE_TUSC_LIMIT, n));
    }
    if n == 0 {
        return Ok(0);
    }
    let mut sets: Vec<(u64, usize)> = inst
        .explicit_sets()
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << e))
        .filter(|&m| m != 0)
        .map(|m| (m, 0))
        .collect();
    // subsets of exactly min(t, n) elements dominate all smaller ones
    let size = inst.t().min(n) as u32;
    for m in 1u64..1 << n {
        if m.count_ones() == size {
            sets.push((m, 0));
        }
    }
    for (i, s) in sets.iter_mut().enumerate() {
        s.1 = i;
    }
    let inst = SetCoverInstance::new(n, sets)?.with_cap(BRUTE_TUSC_LIMIT);
    Ok(min_set_cover(&inst)?.expect("t-subsets cover everything").size)
}
