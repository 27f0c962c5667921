//! Randomized property suites with counterexample minimization.
//!
//! Each suite draws `budget` seeded instances, checks a property against the
//! brute-force oracles, and on failure shrinks the first failing instance by
//! deleting elements while the property keeps failing.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ap::intersect;
use crate::below::{cap_below_decide, ColoringMode};
use crate::cap::cover_decide;
use crate::generate::{no3ap, random_set, union_of_aps};
use crate::instance::{enumerate_all_aps, enumerate_maximal_aps, make_ap, Instance};
use crate::oracle::{brute_cap, brute_xcap};
use crate::solution::verify_solution;
use crate::theorems::{check_gap_bound, difference_bound_sampled, sample_cve};
use crate::xcap::exact_cover_decide;
use crate::zp::{check_suitability, reduce_mod_p, zp_min_cover, zp_min_exact_cover};
use crate::BigInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ApCore,
    Cap,
    Xcap,
    Zp,
    Tusc,
    Theorems,
    /// Checks a deliberately wrong claim; exists to show failures are caught
    /// and shrunk.
    SelfTest,
}

impl Suite {
    /// The suites `all` runs (the self-test is excluded).
    pub const ALL: [Suite; 6] = [
        Suite::ApCore,
        Suite::Cap,
        Suite::Xcap,
        Suite::Zp,
        Suite::Tusc,
        Suite::Theorems,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ApCore => "ap-core",
            Suite::Cap => "cap",
            Suite::Xcap => "xcap",
            Suite::Zp => "zp",
            Suite::Tusc => "tusc",
            Suite::Theorems => "theorems",
            Suite::SelfTest => "self-test",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL
            .iter()
            .chain([Suite::SelfTest].iter())
            .find(|x| x.name() == s)
            .map(|&x| vec![x])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub case: u64,
    pub instance: Instance,
    pub message: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}: {}: {}", self.case, self.instance, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: u64,
    pub failure: Option<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Property = fn(&Instance) -> Result<(), String>;

fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ case)
}

/// A mix of random, planted and three-term-free instances.
fn draw(rng: &mut ChaCha8Rng, max_n: usize, max_value: u64) -> Instance {
    match rng.random_range(0..4) {
        0 | 1 => {
            let n = rng.random_range(0..=max_n);
            random_set(rng, n, max_value).expect("range fits")
        }
        2 => {
            let k = rng.random_range(1..=3);
            let len = rng.random_range(1..=(max_n / k).max(1));
            let x = union_of_aps(rng, k, len, max_value, false).expect("range fits").0;
            shrink_to(x, max_n)
        }
        _ => {
            let n = rng.random_range(1..=max_n);
            no3ap(rng, n, 0.3)
        }
    }
}

fn shrink_to(x: Instance, n: usize) -> Instance {
    Instance::new(x.elements().iter().take(n).cloned().collect()).expect("subset of a set")
}

fn without(x: &Instance, i: usize) -> Instance {
    let mut v = x.elements().to_vec();
    v.remove(i);
    Instance::new(v).expect("subset of a set")
}

/// Deletes elements while the property still fails.
fn minimize(mut x: Instance, mut message: String, prop: Property) -> (Instance, String) {
    'outer: loop {
        for i in 0..x.len() {
            let y = without(&x, i);
            if let Err(m) = prop(&y) {
                x = y;
                message = m;
                continue 'outer;
            }
        }
        return (x, message);
    }
}

fn run_instances(
    suite: Suite,
    seed: u64,
    budget: u64,
    max_n: usize,
    max_value: u64,
    prop: Property,
) -> SuiteReport {
    let first = (0..budget)
        .into_par_iter()
        .filter_map(|case| {
            let x = draw(&mut case_rng(seed, case), max_n, max_value);
            prop(&x).err().map(|m| (case, x, m))
        })
        .min_by_key(|(case, _, _)| *case);
    let failure = first.map(|(case, x, m)| {
        let (instance, message) = minimize(x, m, prop);
        Counterexample {
            case,
            instance,
            message,
        }
    });
    SuiteReport {
        suite,
        cases: budget,
        failure,
    }
}

fn ap_core_property(x: &Instance) -> Result<(), String> {
    let maximal = enumerate_maximal_aps(x);
    for ap in &maximal {
        if x.indices_of(ap).is_none() {
            return Err(format!("{ap} is not contained"));
        }
        if ap.len() < 2 {
            continue;
        }
        let grown = make_ap(x, ap.first(), ap.diff()).map_err(|e| e.to_string())?;
        if &grown != ap {
            return Err(format!("{ap} is not maximal, {grown} extends it"));
        }
    }
    if x.len() <= 10 {
        let all = enumerate_all_aps(x);
        let n = x.len();
        let mut expected = 0usize;
        for m in 1u32..1 << n {
            let v: Vec<BigInt> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| x.get(i).clone()).collect();
            if crate::ap::is_ap(&v) {
                expected += 1;
            }
        }
        if all.len() != expected {
            return Err(format!("{} progressions enumerated, {expected} exist", all.len()));
        }
    }
    for a in &maximal {
        for b in &maximal {
            let brute: Vec<BigInt> = a.elements().filter(|e| b.contains(e)).collect();
            let got: Vec<BigInt> = intersect(a, b).map(|c| c.elements().collect()).unwrap_or_default();
            if brute != got {
                return Err(format!("{a} meet {b}: got {got:?}, expected {brute:?}"));
            }
        }
    }
    Ok(())
}

fn cap_property(x: &Instance) -> Result<(), String> {
    let (best, _) = brute_cap(x).map_err(|e| e.to_string())?;
    for k in 0..=x.len().div_ceil(2) {
        let out = cover_decide(x, k).map_err(|e| e.to_string())?;
        if out.is_yes() != (best <= k) {
            return Err(format!("k={k}: solver {}, oracle minimum {best}", out.is_yes()));
        }
        if let Some(s) = &out.solution {
            verify_solution(x, s).map_err(|v| format!("k={k}: {v}"))?;
        }
    }
    Ok(())
}

fn xcap_property(x: &Instance) -> Result<(), String> {
    let (best, witness) = brute_xcap(x).map_err(|e| e.to_string())?;
    let (cap, _) = brute_cap(x).map_err(|e| e.to_string())?;
    if cap > best {
        return Err(format!("cover minimum {cap} exceeds exact minimum {best}"));
    }
    verify_solution(x, &witness).map_err(|v| format!("oracle witness: {v}"))?;
    for k in 0..=x.len().div_ceil(2) {
        let out = exact_cover_decide(x, k);
        if out.is_yes() != (best <= k) {
            return Err(format!("k={k}: solver {}, oracle minimum {best}", out.is_yes()));
        }
        if let Some(s) = &out.solution {
            verify_solution(x, s).map_err(|v| format!("k={k}: {v}"))?;
        }
    }
    Ok(())
}

fn zp_property(x: &Instance) -> Result<(), String> {
    let (zp, cert) = reduce_mod_p(x);
    if !cert.suitable || !check_suitability(zp.p(), x).suitable {
        return Err(format!("p={} not suitable", zp.p()));
    }
    let pairs = [
        (brute_cap(x).map_err(|e| e.to_string())?.0, zp_min_cover(&zp).map_err(|e| e.to_string())?),
        (
            brute_xcap(x).map_err(|e| e.to_string())?.0,
            zp_min_exact_cover(&zp).map_err(|e| e.to_string())?,
        ),
    ];
    for (integer, modular) in pairs {
        if integer != modular {
            return Err(format!("p={}: integer minimum {integer}, modular {modular}", zp.p()));
        }
    }
    Ok(())
}

fn tusc_property(x: &Instance) -> Result<(), String> {
    let (best, _) = brute_cap(x).map_err(|e| e.to_string())?;
    for k in 0..=3 {
        let truth = best + k <= x.len().div_ceil(2);
        let got = cap_below_decide(x, k, ColoringMode::Exhaustive).map_err(|e| e.to_string())?;
        if got != truth {
            return Err(format!("k={k}: below-guarantee {got}, oracle minimum {best}"));
        }
    }
    Ok(())
}

fn gap_bound_property(x: &Instance) -> Result<(), String> {
    let (_, witness) = brute_xcap(x).map_err(|e| e.to_string())?;
    match check_gap_bound(x, &witness) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Claims every set is covered by one fewer progression than it needs.
fn broken_property(x: &Instance) -> Result<(), String> {
    let (best, _) = brute_cap(x).map_err(|e| e.to_string())?;
    let claimed = cover_decide(x, best.saturating_sub(1)).map_err(|e| e.to_string())?;
    if best > 0 && !claimed.is_yes() {
        return Err(format!("no cover with {} progressions", best - 1));
    }
    Ok(())
}

/// Runs one suite with `budget` cases.
pub fn run_suite(suite: Suite, seed: u64, budget: u64) -> SuiteReport {
    match suite {
        Suite::ApCore => run_instances(suite, seed, budget, 10, 40, ap_core_property),
        Suite::Cap => run_instances(suite, seed, budget, 12, 40, cap_property),
        Suite::Xcap => run_instances(suite, seed, budget, 10, 30, xcap_property),
        Suite::Zp => run_instances(suite, seed, budget, 9, 1 << 20, zp_property),
        Suite::Tusc => run_instances(suite, seed, budget, 12, 40, tusc_property),
        Suite::SelfTest => run_instances(suite, seed, budget, 8, 30, broken_property),
        Suite::Theorems => {
            let mut report = run_instances(suite, seed, budget, 10, 30, gap_bound_property);
            if report.failure.is_none() {
                let bound = difference_bound_sampled(3, budget, seed);
                let cve = sample_cve(budget, 8, 10_000, seed);
                let message = bound.violation.or_else(|| {
                    cve.violations
                        .first()
                        .map(|(k, f)| format!("k={k} family {f:?} covers 1..2^k but not the horizon"))
                });
                report.failure = message.map(|message| Counterexample {
                    case: 0,
                    instance: Instance::empty(),
                    message,
                });
            }
            report.cases = budget * 3;
            report
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_budgets() {
        for suite in Suite::ALL {
            let r = run_suite(suite, 1, 60);
            assert!(r.passed(), "{}: {}", suite.name(), r.failure.unwrap());
        }
    }

    #[test]
    fn self_test_fails_with_a_minimal_counterexample() {
        let r = run_suite(Suite::SelfTest, 0, 50);
        let f = r.failure.expect("the broken claim must be caught");
        // one element already needs one progression
        assert_eq!(f.instance.len(), 1, "{f}");
    }

    #[test]
    fn suite_names_round_trip() {
        assert_eq!(Suite::parse("all").unwrap().len(), 6);
        assert_eq!(Suite::parse("self-test"), Some(vec![Suite::SelfTest]));
        assert_eq!(Suite::parse("zp"), Some(vec![Suite::Zp]));
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(run_suite(Suite::SelfTest, 4, 20), run_suite(Suite::SelfTest, 4, 20));
    }
}
