//! `t`-uniform set cover below the `ceil(n/t)` guarantee.
//!
//! The family of a `t`-uniform instance implicitly holds every subset of at
//! most `t` elements (every `t`-subset, and for covering purposes anything
//! smaller). Any instance is covered by `ceil(n/t)` sets; the question is
//! whether `ceil(n/t) - k` suffice.
//!
//! A greedy phase picks explicit sets that each cover at least `t + 1` new
//! elements. Either it proves the answer directly, or it stops with a set
//! `G` of `O(k)` covered elements such that no set covers more than `t`
//! elements outside `G`. A cover of the required size then exists iff for
//! some `s <= |G|`, `s` sets cover `G` plus `h` further elements, and those
//! `h` elements are found by color coding onto a universe of size
//! `|G| + h`.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ap::Ap;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::setcover::DEFAULT_UNIVERSE_CAP;
use crate::solution::{CoverKind, Solution};

/// Colorings enumerated in exhaustive mode before giving up.
pub const EXHAUSTIVE_COLORING_CAP: u64 = 20_000_000;
pub const DEFAULT_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuscInstance {
    n: usize,
    t: usize,
    sets: Vec<Vec<usize>>,
}

impl TuscInstance {
    pub fn new(n: usize, t: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        let mut clean = Vec::with_capacity(sets.len());
        for (id, mut s) in sets.into_iter().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.iter().find(|&&e| e >= n) {
                return Err(Error::InvalidParameter(format!(
                    "set {id} has element {e} outside a universe of {n}"
                )));
            }
            clean.push(s);
        }
        Ok(TuscInstance { n, t, sets: clean })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn explicit_sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// The guaranteed cover size `ceil(n/t)`.
    pub fn guarantee(&self) -> usize {
        self.n.div_ceil(self.t)
    }

    /// `t * ceil(n/t) - n`: how far the padding by `t`-subsets overshoots.
    fn slack(&self) -> usize {
        self.t * self.guarantee() - self.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyOutcome {
    pub picked: Vec<usize>,
    pub covered: Vec<usize>,
    pub early_yes: bool,
}

/// Picks the explicit set with the most uncovered elements (lowest index on
/// ties) while that number is at least `t + 1`.
///
/// Stops early once `s` picks cover at least `s t + t k - r` elements, where
/// `r = t ceil(n/t) - n`; padding the rest with `t`-subsets then stays within
/// `ceil(n/t) - k` sets.
pub fn greedy_phase(inst: &TuscInstance, k: usize) -> GreedyOutcome {
    let t = inst.t;
    let mut covered = FixedBitSet::with_capacity(inst.n);
    let mut picked = Vec::new();
    let reached = |picks: usize, covered: usize| covered + inst.slack() >= picks * t + t * k;
    let mut early_yes = reached(0, 0);
    while !early_yes {
        let best = inst
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.iter().filter(|&&e| !covered.contains(e)).count(), i))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((gain, i)) if gain > t => {
                picked.push(i);
                for &e in &inst.sets[i] {
                    covered.insert(e);
                }
                early_yes = reached(picked.len(), covered.count_ones(..));
            }
            _ => break,
        }
    }
    GreedyOutcome {
        picked,
        covered: covered.ones().collect(),
        early_yes,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ColoringMode {
    /// Every surjective coloring, up to renaming colors.
    Exhaustive,
    /// One coloring per `h`-subset of the uncovered elements: the subset gets
    /// distinct colors, everything else color 0.
    Splitter,
    /// Uniformly random colorings; `trials = None` uses
    /// `ceil(e^h ln(1/delta))`.
    Randomized {
        trials: Option<u64>,
        delta: f64,
        seed: u64,
    },
}

/// Trials needed for failure probability at most `delta` when a fixed
/// `h`-set must receive distinct colors.
pub fn randomized_trials(h: usize, delta: f64) -> u64 {
    ((h as f64).exp() * (1.0 / delta).ln()).ceil().max(1.0) as u64
}

/// One set of a cover: an explicit set by index, or a set of at most `t`
/// elements from the implicit family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverPart {
    Explicit(usize),
    Small(Vec<usize>),
}

impl CoverPart {
    pub fn elements<'a>(&'a self, inst: &'a TuscInstance) -> &'a [usize] {
        match self {
            CoverPart::Explicit(i) => &inst.sets[*i],
            CoverPart::Small(v) => v,
        }
    }
}

/// The number of colors for one search, or `None` when too few elements lie
/// outside `g`. Fails when the search would exceed a capacity limit.
fn color_target(
    inst: &TuscInstance,
    g_len: usize,
    s2: usize,
    k: usize,
    mode: ColoringMode,
) -> Result<Option<usize>> {
    let need = (s2 * inst.t + inst.t * k) as i64 - g_len as i64 - inst.slack() as i64;
    let h = need.max(0) as usize;
    let m = inst.n - g_len;
    if h > m {
        return Ok(None);
    }
    let universe = g_len + h;
    if universe > DEFAULT_UNIVERSE_CAP {
        return Err(Error::capacity("reduced universe", DEFAULT_UNIVERSE_CAP, universe));
    }
    if mode == ColoringMode::Exhaustive && h > 0 {
        let count = stirling2(m, h);
        if count > EXHAUSTIVE_COLORING_CAP as u128 {
            return Err(Error::capacity(
                "exhaustive colorings",
                EXHAUSTIVE_COLORING_CAP as usize,
                count.min(usize::MAX as u128) as usize,
            ));
        }
    }
    Ok(Some(h))
}

/// Looks for `s2` sets covering `g` and `h = s2 t + t k - |g| - r` further
/// elements, found by color coding. Returns those sets on success.
pub fn color_coding_search(
    inst: &TuscInstance,
    g: &[usize],
    s2: usize,
    k: usize,
    mode: ColoringMode,
) -> Result<Option<Vec<CoverPart>>> {
    let Some(h) = color_target(inst, g.len(), s2, k, mode)? else {
        return Ok(None);
    };
    let in_g = {
        let mut b = FixedBitSet::with_capacity(inst.n);
        for &e in g {
            b.insert(e);
        }
        b
    };
    let outside: Vec<usize> = (0..inst.n).filter(|&e| !in_g.contains(e)).collect();
    let universe = g.len() + h;
    let mut g_bit = vec![usize::MAX; inst.n];
    for (b, &e) in g.iter().enumerate() {
        g_bit[e] = b;
    }
    let reduced = Reduced {
        inst,
        g_bit: &g_bit,
        g_len: g.len(),
        universe,
        budget: s2,
    };
    let attempt = |color: &[usize]| {
        let full = if h == 0 { Vec::new() } else { colored(&outside, color, inst.n) };
        reduced.cover(&full).map(|ids| reduced.lift(&ids, &full, h))
    };
    if h == 0 {
        return Ok(attempt(&[]));
    }

    let m = outside.len();
    let mut color = vec![0usize; m];
    match mode {
        ColoringMode::Exhaustive => {
            let mut found = None;
            for_each_partition(&mut color, 0, 0, h, &mut |c| {
                found = attempt(c);
                found.is_some()
            });
            Ok(found)
        }
        ColoringMode::Splitter => {
            let mut pick: Vec<usize> = (0..h).collect();
            loop {
                color.iter_mut().for_each(|c| *c = 0);
                for (c, &i) in pick.iter().enumerate() {
                    color[i] = c;
                }
                if let Some(found) = attempt(&color) {
                    return Ok(Some(found));
                }
                if !next_combination(&mut pick, m) {
                    return Ok(None);
                }
            }
        }
        ColoringMode::Randomized {
            trials,
            delta,
            seed,
        } => {
            let trials = trials.unwrap_or_else(|| randomized_trials(h, delta));
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed ^ (s2 as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            for _ in 0..trials {
                color.iter_mut().for_each(|c| *c = rng.random_range(0..h));
                if let Some(found) = attempt(&color) {
                    return Ok(Some(found));
                }
            }
            Ok(None)
        }
    }
}

/// Color per universe element (`usize::MAX` for elements of `G`).
fn colored(outside: &[usize], color: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; n];
    for (&e, &c) in outside.iter().zip(color) {
        out[e] = c;
    }
    out
}

/// The color-coded instance: bits `0..|G|` for `G`, then one bit per color.
struct Reduced<'a> {
    inst: &'a TuscInstance,
    g_bit: &'a [usize],
    g_len: usize,
    universe: usize,
    budget: usize,
}

impl Reduced<'_> {
    fn image(&self, set: &[usize], color: &[usize]) -> u64 {
        set.iter().fold(0u64, |m, &e| {
            if self.g_bit[e] != usize::MAX {
                m | 1 << self.g_bit[e]
            } else if !color.is_empty() {
                m | 1 << (self.g_len + color[e])
            } else {
                m
            }
        })
    }

    /// Explicit sets that, padded with `ceil(rest / t)` implicit sets, cover
    /// the reduced universe within `budget`. `color` is empty when there are
    /// no colors.
    ///
    /// The implicit family contributes every subset of at most `t` realizable
    /// elements, so only the explicit part needs searching; distinct unions
    /// of explicit images are explored breadth-first.
    fn cover(&self, color: &[usize]) -> Option<Vec<usize>> {
        let t = self.inst.t;
        let full = if self.universe == 64 {
            u64::MAX
        } else {
            (1u64 << self.universe) - 1
        };
        if !color.is_empty() {
            // every color must have a preimage to be coverable at all
            let mut seen = 0u64;
            for &c in color.iter().filter(|&&c| c != usize::MAX) {
                seen |= 1 << (self.g_len + c);
            }
            if seen | ((1u64 << self.g_len) - 1) != full {
                return None;
            }
        }
        let mut uniq = HashSet::new();
        let images: Vec<(u64, usize)> = self
            .inst
            .sets
            .iter()
            .enumerate()
            .map(|(id, s)| (self.image(s, color), id))
            .filter(|&(m, _)| m != 0 && uniq.insert(m))
            .collect();
        let cost = |used: usize, mask: u64| {
            used + (self.universe - mask.count_ones() as usize).div_ceil(t)
        };
        if cost(0, 0) <= self.budget {
            return Some(Vec::new());
        }
        let mut parent: HashMap<u64, (u64, usize)> = HashMap::new();
        let path = |parent: &HashMap<u64, (u64, usize)>, mut m: u64| {
            let mut ids = Vec::new();
            while m != 0 {
                let (prev, id) = parent[&m];
                ids.push(id);
                m = prev;
            }
            ids.reverse();
            ids
        };
        let mut layer = vec![0u64];
        for used in 1..=self.budget {
            let mut next = Vec::new();
            for &m in &layer {
                for &(s, id) in &images {
                    let u = m | s;
                    if u != m && u != 0 && !parent.contains_key(&u) {
                        parent.insert(u, (m, id));
                        if cost(used, u) <= self.budget {
                            return Some(path(&parent, u));
                        }
                        next.push(u);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        None
    }

    /// Real sets for a reduced cover: the explicit sets, then implicit sets
    /// over one preimage of every reduced element they miss.
    fn lift(&self, ids: &[usize], color: &[usize], h: usize) -> Vec<CoverPart> {
        let mut hit = 0u64;
        for &id in ids {
            hit |= self.image(&self.inst.sets[id], color);
        }
        let mut missing = Vec::new();
        for (e, &b) in self.g_bit.iter().enumerate() {
            if b != usize::MAX && hit >> b & 1 == 0 {
                missing.push(e);
            }
        }
        for c in 0..h {
            if hit >> (self.g_len + c) & 1 == 0 {
                let e = color.iter().position(|&x| x == c).expect("colors are realized");
                missing.push(e);
            }
        }
        missing.sort_unstable();
        let mut parts: Vec<CoverPart> = ids.iter().map(|&i| CoverPart::Explicit(i)).collect();
        parts.extend(missing.chunks(self.inst.t).map(|c| CoverPart::Small(c.to_vec())));
        parts
    }
}

/// Restricted-growth strings with exactly `h` blocks; stops at the first
/// coloring `f` accepts.
fn for_each_partition(
    color: &mut [usize],
    pos: usize,
    used: usize,
    h: usize,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let m = color.len();
    if pos == m {
        return used == h && f(color);
    }
    if h - used > m - pos {
        return false;
    }
    for c in 0..=used.min(h - 1) {
        color[pos] = c;
        if for_each_partition(color, pos + 1, used.max(c + 1), h, f) {
            return true;
        }
    }
    false
}

fn next_combination(pick: &mut [usize], m: usize) -> bool {
    let h = pick.len();
    for i in (0..h).rev() {
        if pick[i] < m - h + i {
            pick[i] += 1;
            for j in i + 1..h {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Stirling numbers of the second kind, saturating.
fn stirling2(m: usize, h: usize) -> u128 {
    let mut row = vec![0u128; h + 1];
    row[0] = 1;
    for i in 1..=m {
        for j in (1..=h.min(i)).rev() {
            row[j] = row[j - 1].saturating_add((j as u128).saturating_mul(row[j]));
        }
        row[0] = 0;
    }
    row[h]
}

/// Adds implicit sets of `t` uncovered elements until everything is covered.
fn pad(inst: &TuscInstance, mut parts: Vec<CoverPart>) -> Vec<CoverPart> {
    let mut covered = FixedBitSet::with_capacity(inst.n);
    for p in &parts {
        for &e in p.elements(inst) {
            covered.insert(e);
        }
    }
    let rest: Vec<usize> = covered.zeroes().collect();
    parts.extend(rest.chunks(inst.t).map(|c| CoverPart::Small(c.to_vec())));
    parts
}

/// A cover with at most `ceil(n/t) - k` sets, if one exists.
///
/// Exhaustive and splitter colorings make this exact; randomized colorings
/// may miss a cover but never report a wrong one.
pub fn tusc_below_solve(
    inst: &TuscInstance,
    k: usize,
    mode: ColoringMode,
) -> Result<Option<Vec<CoverPart>>> {
    if k > inst.guarantee() {
        return Ok(None);
    }
    let target = inst.guarantee() - k;
    let greedy = greedy_phase(inst, k);
    let found = if greedy.early_yes {
        Some(greedy.picked.iter().map(|&i| CoverPart::Explicit(i)).collect())
    } else {
        debug_assert!(greedy.covered.len() <= inst.t * inst.t * k + inst.t * k);
        debug_assert!(greedy.picked.len() <= inst.t * k);
        // fail before searching rather than part way through
        for s2 in 1..=greedy.covered.len() {
            color_target(inst, greedy.covered.len(), s2, k, mode)?;
        }
        let mut found = None;
        for s2 in 1..=greedy.covered.len() {
            found = color_coding_search(inst, &greedy.covered, s2, k, mode)?;
            if found.is_some() {
                break;
            }
        }
        found
    };
    Ok(found.map(|parts| {
        let cover = pad(inst, parts);
        debug_assert!(cover.len() <= target, "{} sets above {target}", cover.len());
        cover
    }))
}

/// Is there a cover with at most `ceil(n/t) - k` sets?
pub fn tusc_below_decide(inst: &TuscInstance, k: usize, mode: ColoringMode) -> Result<bool> {
    Ok(tusc_below_solve(inst, k, mode)?.is_some())
}

fn cap_family(x: &Instance) -> (TuscInstance, Vec<Ap>) {
    let aps: Vec<Ap> = crate::instance::enumerate_maximal_aps(x)
        .into_iter()
        .filter(|ap| ap.len() > 2)
        .collect();
    let sets = aps
        .iter()
        .map(|ap| x.indices_of(ap).expect("maximal progressions lie in the set"))
        .collect();
    let inst = TuscInstance::new(x.len(), 2, sets).expect("positions are in range");
    (inst, aps)
}

/// The progression family of `x` as a 2-uniform instance over positions:
/// explicit sets are the maximal progressions, pairs are implicit.
pub fn cap_as_tusc(x: &Instance) -> TuscInstance {
    cap_family(x).0
}

/// A cover of `x` by at most `ceil(|x|/2) - k` progressions, if one exists.
pub fn cap_below_solve(x: &Instance, k: usize, mode: ColoringMode) -> Result<Option<Solution>> {
    let (inst, aps) = cap_family(x);
    Ok(tusc_below_solve(&inst, k, mode)?.map(|parts| {
        let mut picked: Vec<Ap> = parts
            .iter()
            .map(|p| match p {
                CoverPart::Explicit(i) => aps[*i].clone(),
                CoverPart::Small(v) => match v[..] {
                    [a] => Ap::singleton(x.get(a).clone()),
                    [a, b] => Ap::new(x.get(a).clone(), x.get(b) - x.get(a), 2)
                        .expect("positions ascend"),
                    _ => unreachable!("implicit sets hold at most two positions"),
                },
            })
            .collect();
        picked.sort();
        picked.dedup();
        Solution::new(picked, CoverKind::Cover)
    }))
}

/// Can `x` be covered by at most `ceil(|x|/2) - k` progressions?
pub fn cap_below_decide(x: &Instance, k: usize, mode: ColoringMode) -> Result<bool> {
    Ok(cap_below_solve(x, k, mode)?.is_some())
}
