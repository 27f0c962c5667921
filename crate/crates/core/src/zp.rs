//! Progressions modulo a prime, the suitable-prime reduction, and
//! preservation of three-term progressions.
//!
//! A prime `p` is suitable for a set `X` when it divides no nonzero `x - y`
//! and no nonzero `2x - y - z` over elements of `X`. Projecting `X` modulo a
//! suitable prime is injective, keeps progressions progressions, and creates
//! no new ones, so the covering problems keep their answers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::setcover::{min_exact_cover, min_set_cover, SetCoverInstance};

/// Largest residue set the modular solvers enumerate progressions for.
pub const ZP_ELEMENT_CAP: usize = 25;
/// Feasibility bounds of the exhaustive preserver search.
pub const PRESERVER_MAX_TERMS: usize = 6;
pub const PRESERVER_MAX_BOUND: u64 = 64;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A set of residues modulo a prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpInstance {
    p: u64,
    elements: Vec<u64>,
}

impl ZpInstance {
    pub fn new(p: u64, residues: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= p) {
            return Err(Error::InvalidParameter(format!("residue {r} is not below {p}")));
        }
        let mut elements = residues;
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].into()));
        }
        Ok(ZpInstance { p, elements })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A progression `start, start + diff, ..` modulo `p`; equality is by element set.
#[derive(Debug, Clone)]
pub struct ZpAp {
    pub start: u64,
    pub diff: u64,
    pub len: usize,
    elements: Vec<u64>,
}

impl ZpAp {
    pub fn new(start: u64, diff: u64, len: usize, p: u64) -> Result<Self> {
        if start >= p || diff >= p || len == 0 || len as u64 > p || (len > 1 && diff == 0) {
            return Err(Error::InvalidProgression(format!(
                "({start}, {diff}, {len}) modulo {p}"
            )));
        }
        let mut elements: Vec<u64> = (0..len as u64)
            .map(|i| (start + mul_mod(i, diff, p)) % p)
            .collect();
        elements.sort_unstable();
        Ok(ZpAp {
            start,
            diff: if len == 1 { 0 } else { diff },
            len,
            elements,
        })
    }

    /// Sorted residues.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }
}

impl PartialEq for ZpAp {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for ZpAp {}

/// Residues of `x` modulo `p`, duplicates kept, in the order of `x`.
pub fn mod_project(x: &Instance, p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    x.elements()
        .iter()
        .map(|v| v.mod_floor(&m).to_u64().expect("residue below p"))
        .collect()
}

/// Work done while testing a prime, for diagnostics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Suitability {
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub suitable: bool,
}

/// Checks both divisibility conditions exhaustively over all pairs and all
/// (not necessarily distinct) triples.
pub fn check_suitability(p: u64, x: &Instance) -> Suitability {
    let r = mod_project(x, p);
    let xs = x.elements();
    let n = xs.len();
    let mut out = Suitability::default();
    for i in 0..n {
        for j in i + 1..n {
            out.pairs_checked += 1;
            if r[i] == r[j] {
                return out;
            }
        }
    }
    let two = BigInt::from(2);
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                out.triples_checked += 1;
                let lhs = mul_mod(2, r[a], p);
                let rhs = (r[b] + r[c]) % p;
                if lhs == rhs && &two * &xs[a] != &xs[b] + &xs[c] {
                    return out;
                }
            }
        }
    }
    out.suitable = true;
    out
}

pub fn is_suitable_prime(p: u64, x: &Instance) -> bool {
    check_suitability(p, x).suitable
}

/// The smallest suitable prime and the projected residue set.
pub fn reduce_mod_p(x: &Instance) -> (ZpInstance, Suitability) {
    let mut p = 2u64;
    loop {
        if is_prime(p) {
            let cert = check_suitability(p, x);
            if cert.suitable {
                let inst = ZpInstance::new(p, mod_project(x, p)).expect("projection is injective");
                return (inst, cert);
            }
        }
        p += 1;
    }
}

/// Every progression modulo `p` contained in the residue set, one per
/// distinct element set (wrap-around runs and full cycles included).
pub fn zp_enumerate_aps(inst: &ZpInstance) -> Result<Vec<ZpAp>> {
    let n = inst.len();
    if n > ZP_ELEMENT_CAP {
        return Err(Error::capacity("residue set", ZP_ELEMENT_CAP, n));
    }
    let p = inst.p;
    let member: BTreeSet<u64> = inst.elements.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut record = |ap: ZpAp| {
        if seen.insert(ap.elements.clone()) {
            out.push(ap);
        }
    };
    for &s in &inst.elements {
        record(ZpAp::new(s, 0, 1, p)?);
    }
    for &s in &inst.elements {
        for &t in &inst.elements {
            if s == t {
                continue;
            }
            let d = (t + p - s) % p;
            let mut len = 1;
            let mut next = t;
            while next != s && member.contains(&next) {
                len += 1;
                record(ZpAp::new(s, d, len, p)?);
                next = (next + d) % p;
            }
        }
    }
    Ok(out)
}

fn zp_family(inst: &ZpInstance) -> Result<(Vec<ZpAp>, SetCoverInstance)> {
    let pos = |r: u64| inst.elements.binary_search(&r).expect("residue in set");
    let aps = zp_enumerate_aps(inst)?;
    let sets = aps
        .iter()
        .enumerate()
        .map(|(id, ap)| (ap.elements().iter().fold(0u64, |m, &r| m | 1 << pos(r)), id))
        .collect();
    Ok((aps, SetCoverInstance::new(inst.len(), sets)?))
}

/// A minimum cover by modular progressions.
pub fn zp_cover_witness(inst: &ZpInstance) -> Result<Vec<ZpAp>> {
    let (aps, family) = zp_family(inst)?;
    let choice = min_set_cover(&family)?.expect("singletons cover every residue");
    Ok(choice.ids.iter().map(|&i| aps[i].clone()).collect())
}

/// A minimum partition into modular progressions.
pub fn zp_exact_cover_witness(inst: &ZpInstance) -> Result<Vec<ZpAp>> {
    let (aps, family) = zp_family(inst)?;
    let choice = min_exact_cover(&family)?.expect("singletons partition every residue set");
    Ok(choice.ids.iter().map(|&i| aps[i].clone()).collect())
}

/// Minimum number of modular progressions covering the set.
pub fn zp_min_cover(inst: &ZpInstance) -> Result<usize> {
    Ok(zp_cover_witness(inst)?.len())
}

/// Minimum number of disjoint modular progressions partitioning the set.
pub fn zp_min_exact_cover(inst: &ZpInstance) -> Result<usize> {
    Ok(zp_exact_cover_witness(inst)?.len())
}

pub fn zp_cover_decide(inst: &ZpInstance, k: usize) -> Result<bool> {
    Ok(zp_min_cover(inst)? <= k)
}

pub fn zp_exact_cover_decide(inst: &ZpInstance, k: usize) -> Result<bool> {
    Ok(zp_min_exact_cover(inst)? <= k)
}

/// Whether three values, in some order, satisfy `2 * mid = lo + hi`.
pub fn is_three_term<T>(a: &T, b: &T, c: &T) -> bool
where
    for<'x> &'x T: std::ops::Add<&'x T, Output = T>,
    T: PartialEq + Clone + std::ops::Add<T, Output = T>,
{
    let twice = |v: &T| v.clone() + v.clone();
    twice(a) == b + c || twice(b) == a + c || twice(c) == a + b
}

/// True iff, index triple by index triple, `x` and `a` agree on which
/// triples form a three-term progression.
pub fn is_three_ap_preserving(x: &[BigInt], a: &[BigInt]) -> Result<bool> {
    if x.len() != a.len() {
        return Err(Error::SizeMismatch {
            left: x.len(),
            right: a.len(),
        });
    }
    let n = x.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if is_three_term(&x[i], &x[j], &x[k]) != is_three_term(&a[i], &a[j], &a[k]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `0, 1, 2, 4, .., 2^(m-2)`: the first `m` terms of the doubling family.
pub fn powers_family(m: usize) -> Vec<BigInt> {
    (0..m)
        .map(|i| if i == 0 { BigInt::zero() } else { BigInt::from(1) << (i - 1) })
        .collect()
}

/// Exhaustive search for distinct values in `[0, bound]`, matched index by
/// index to the `n + 2` terms of the doubling family, that preserve every
/// three-term progression and non-progression. Returns the lexicographically
/// smallest such tuple.
pub fn search_small_preserver(n: usize, bound: u64) -> Result<Option<Vec<u64>>> {
    let m = n + 2;
    if m > PRESERVER_MAX_TERMS {
        return Err(Error::capacity("preserver terms", PRESERVER_MAX_TERMS, m));
    }
    if bound > PRESERVER_MAX_BOUND {
        return Err(Error::capacity(
            "preserver bound",
            PRESERVER_MAX_BOUND as usize,
            bound as usize,
        ));
    }
    let x: Vec<i64> = powers_family(m)
        .iter()
        .map(|v| v.to_i64().expect("small"))
        .collect();
    let mut a = Vec::with_capacity(m);
    Ok(extend_preserver(&x, bound as i64, &mut a).then(|| a.iter().map(|&v| v as u64).collect()))
}

fn extend_preserver(x: &[i64], bound: i64, a: &mut Vec<i64>) -> bool {
    let j = a.len();
    if j == x.len() {
        return true;
    }
    for v in 0..=bound {
        if a.contains(&v) {
            continue;
        }
        let consistent = (0..j).all(|i1| {
            (i1 + 1..j).all(|i2| {
                is_three_term(&x[i1], &x[i2], &x[j]) == is_three_term(&a[i1], &a[i2], &v)
            })
        });
        if consistent {
            a.push(v);
            if extend_preserver(x, bound, a) {
                return true;
            }
            a.pop();
        }
    }
    false
}
