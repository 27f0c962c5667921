//! Falsification harnesses for the structural facts the solvers rely on.
//!
//! None of these prove anything. They enumerate or sample small
//! configurations and report the first one contradicting the statement, which
//! would point at a misreading of the statement (or of its use in a solver).

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ap::intersect;
use crate::instance::{enumerate_all_aps, Instance};
use crate::solution::Solution;

/// A residue class `residue mod modulus`; modulus 0 is the constant `{residue}`.
pub type InfiniteAp = (i64, u64);

fn class_contains(&(r, m): &InfiniteAp, x: i64) -> bool {
    if m == 0 {
        x == r
    } else {
        (x - r).rem_euclid(m as i64) == 0
    }
}

/// If `family` covers `1..=2^k`, checks that it also covers `1..=horizon`.
/// Vacuously true when the premise fails.
pub fn check_cve_property(k: usize, family: &[InfiniteAp], horizon: u64) -> bool {
    let covers = |x: i64| family.iter().any(|c| class_contains(c, x));
    let head = 1i64 << k;
    if !(1..=head).all(covers) {
        return true;
    }
    (1..=horizon as i64).all(covers)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CveReport {
    pub samples: u64,
    pub premise_held: u64,
    pub violations: Vec<(usize, Vec<InfiniteAp>)>,
}

/// Samples families of at most 4 classes with moduli up to `max_modulus`.
/// Half are built greedily to cover `1..=2^k` when possible, so the premise
/// holds often enough to matter.
pub fn sample_cve(samples: u64, max_modulus: u64, horizon: u64, seed: u64) -> CveReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CveReport {
        samples,
        ..CveReport::default()
    };
    for _ in 0..samples {
        let k = rng.random_range(1..=4usize);
        let head = 1i64 << k;
        let mut family: Vec<InfiniteAp> = Vec::with_capacity(k);
        let greedy = rng.random_bool(0.5);
        while family.len() < k {
            let m = rng.random_range(0..=max_modulus);
            let r = if greedy {
                let hole = (1..=head).find(|&x| !family.iter().any(|c| class_contains(c, x)));
                match hole {
                    Some(x) if m == 0 => x,
                    Some(x) => x.rem_euclid(m as i64),
                    None => rng.random_range(1..=head),
                }
            } else if m == 0 {
                rng.random_range(1..=head)
            } else {
                rng.random_range(0..m as i64)
            };
            family.push((r, m));
        }
        if (1..=head).all(|x| family.iter().any(|c| class_contains(c, x))) {
            report.premise_held += 1;
        }
        if !check_cve_property(k, &family, horizon) {
            report.violations.push((k, family));
        }
    }
    report
}

/// A finite progression over machine integers: `(first, diff, len)`.
type SmallAp = (i64, i64, usize);

fn small_contains(&(a, d, len): &SmallAp, x: i64) -> bool {
    if d == 0 || len == 1 {
        return x == a;
    }
    x >= a && (x - a) % d == 0 && (x - a) / d < len as i64
}

fn small_last(&(a, d, len): &SmallAp) -> i64 {
    a + d * (len as i64 - 1)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DifferenceBoundReport {
    /// Configurations satisfying the hypothesis.
    pub configurations: u64,
    /// Largest uncovered index seen; the bound says it stays below `2^k`.
    pub max_t: usize,
    pub violation: Option<String>,
}

impl DifferenceBoundReport {
    fn record(&mut self, k: usize, s0: &SmallAp, covering: &[SmallAp]) {
        // t: first index of s0 not covered
        let Some(t) = (0..s0.2).find(|&j| {
            let x = s0.0 + s0.1 * j as i64;
            !covering.iter().any(|s| small_contains(s, x))
        }) else {
            return;
        };
        let pivot = s0.0 + s0.1 * t as i64;
        if !covering.iter().all(|s| small_last(s) > pivot) {
            return;
        }
        self.configurations += 1;
        self.max_t = self.max_t.max(t);
        if t >= 1 << k && self.violation.is_none() {
            self.violation = Some(format!("s0={s0:?} covering={covering:?} t={t}"));
        }
    }
}

/// Every choice of `k` progressions inside `0..=window` against
/// `s0 = 0, d0, 2 d0, ..` for `d0` in `1..=3`.
pub fn difference_bound_exhaustive(k: usize, window: i64) -> DifferenceBoundReport {
    let mut aps: Vec<SmallAp> = (0..=window).map(|a| (a, 0, 1)).collect();
    for a in 0..=window {
        for d in 1..=window {
            for len in 2..=((window - a) / d + 1) as usize {
                aps.push((a, d, len));
            }
        }
    }
    let mut report = DifferenceBoundReport::default();
    for d0 in 1..=3 {
        let s0 = (0, d0, (window / d0 + 1) as usize);
        let mut pick = vec![0usize; k];
        // multisets of k progressions
        loop {
            let covering: Vec<SmallAp> = pick.iter().map(|&i| aps[i]).collect();
            report.record(k, &s0, &covering);
            let Some(i) = (0..k).rev().find(|&i| pick[i] + 1 < aps.len()) else {
                break;
            };
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[i];
            }
        }
    }
    report
}

/// Random configurations built to cover a prefix of `s0` greedily.
pub fn difference_bound_sampled(k: usize, samples: u64, seed: u64) -> DifferenceBoundReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DifferenceBoundReport::default();
    for _ in 0..samples {
        let d0 = rng.random_range(1..=3i64);
        let s0: SmallAp = (0, d0, (1 << k) + 2);
        let mut covering: Vec<SmallAp> = Vec::with_capacity(k);
        for _ in 0..k {
            let hole = (0..s0.2)
                .map(|j| d0 * j as i64)
                .find(|&x| !covering.iter().any(|s| small_contains(s, x)))
                .unwrap_or(0);
            let a = if rng.random_bool(0.8) {
                hole
            } else {
                rng.random_range(0..=small_last(&s0))
            };
            let d = rng.random_range(1..=4 * d0);
            let len = rng.random_range(2..=2 + small_last(&s0) as usize / d as usize + 2);
            covering.push((a, d, len));
        }
        report.record(k, &s0, &covering);
    }
    report
}

/// `k <= 2`: exhaustive over a window of 16; larger `k`: `samples` random
/// configurations.
pub fn check_difference_bound_property(samples: u64, k: usize, seed: u64) -> bool {
    let report = if k <= 2 {
        difference_bound_exhaustive(k, 16)
    } else {
        difference_bound_sampled(k, samples, seed)
    };
    report.violation.is_none()
}

/// For an exact cover `s_1..s_k` of `x` and every progression `s` inside
/// `x`: whenever `s` meets some `s_i` in at least `k + 1` elements, at most
/// `2^(k-1) - 1` elements of `s` lie strictly between consecutive elements of
/// the meet. Returns the first violation.
pub fn check_gap_bound(x: &Instance, solution: &Solution) -> Option<String> {
    let k = solution.len();
    if k == 0 {
        return None;
    }
    let bound = BigInt::from((1u64 << (k - 1)) - 1);
    for s in enumerate_all_aps(x).iter().filter(|s| s.len() > k) {
        for si in &solution.aps {
            let Some(t) = intersect(s, si) else { continue };
            if t.len() <= k {
                continue;
            }
            let between = t.diff().div_floor(s.diff()) - 1;
            if between > bound {
                return Some(format!("s={s} meets {si} in {t}: {between} elements between"));
            }
        }
    }
    None
}
