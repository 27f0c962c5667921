//! Sorted integer sets and the progression primitives defined relative to them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::ap::Ap;
use crate::error::{Error, Result};

/// A finite set of distinct integers, kept sorted ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Instance {
    elements: Vec<BigInt>,
}

impl Instance {
    /// Sorts the input; duplicates are rejected.
    pub fn new(mut elements: Vec<BigInt>) -> Result<Self> {
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        Ok(Instance { elements })
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Instance::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn empty() -> Self {
        Instance::default()
    }

    pub fn elements(&self) -> &[BigInt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &BigInt) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        self.index_of(x).is_some()
    }

    /// Positions of every term of `ap`, or `None` if some term is missing.
    pub fn indices_of(&self, ap: &Ap) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(ap.len());
        let mut lo = 0;
        for x in ap.elements() {
            let off = self.elements[lo..].binary_search(&x).ok()?;
            out.push(lo + off);
            lo += off + 1;
        }
        Some(out)
    }

    /// Inclusion-maximal progression through position `i` with difference
    /// `d > 0`, together with the positions it occupies.
    pub(crate) fn maximal_run(&self, i: usize, d: &BigInt) -> (Ap, Vec<usize>) {
        let xs = &self.elements;
        let mut below = Vec::new();
        let mut cur = i;
        let mut v = &xs[i] - d;
        while let Ok(j) = xs[..cur].binary_search(&v) {
            below.push(j);
            cur = j;
            v -= d;
        }
        below.reverse();
        let mut idx = below;
        idx.push(i);
        let mut cur = i;
        let mut v = &xs[i] + d;
        while let Ok(off) = xs[cur + 1..].binary_search(&v) {
            cur += off + 1;
            idx.push(cur);
            v += d;
        }
        let first = xs[idx[0]].clone();
        let ap = if idx.len() == 1 {
            Ap::singleton(first)
        } else {
            Ap::new(first, d.clone(), idx.len()).expect("positive difference")
        };
        (ap, idx)
    }

    /// Longest prefix `start, start + d, ..` inside the set, stopping before the
    /// first missing or blocked element. Returns positions.
    pub(crate) fn prefix_positions(
        &self,
        start: &BigInt,
        d: &BigInt,
        mut blocked: impl FnMut(usize) -> bool,
    ) -> Vec<usize> {
        let mut out = Vec::new();
        let Some(mut cur) = self.index_of(start) else {
            return out;
        };
        if blocked(cur) {
            return out;
        }
        out.push(cur);
        if d.is_zero() {
            return out;
        }
        let mut v = start + d;
        while let Ok(off) = self.elements[cur + 1..].binary_search(&v) {
            cur += off + 1;
            if blocked(cur) {
                break;
            }
            out.push(cur);
            v += d;
        }
        out
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// The maximal progression through `a` with difference `d` whose terms all lie in `x`.
pub fn make_ap(x: &Instance, a: &BigInt, d: &BigInt) -> Result<Ap> {
    if !d.is_positive() {
        return Err(Error::InvalidDifference(d.clone()));
    }
    let i = x.index_of(a).ok_or_else(|| Error::NotInInstance(a.clone()))?;
    Ok(x.maximal_run(i, d).0)
}

/// Longest prefix of `start, start + d, start + 2d, ..` contained in `x` and
/// avoiding `blocked`. A zero difference yields at most the singleton `{start}`.
pub fn prefix_meet(
    start: &BigInt,
    d: &BigInt,
    x: &Instance,
    blocked: &BTreeSet<BigInt>,
) -> Option<Ap> {
    if d.is_negative() {
        return None;
    }
    let pos = x.prefix_positions(start, d, |i| blocked.contains(x.get(i)));
    match pos.len() {
        0 => None,
        1 => Some(Ap::singleton(start.clone())),
        n => Some(Ap::new(start.clone(), d.clone(), n).expect("positive difference")),
    }
}

/// All inclusion-maximal progressions contained in `x`, sorted and deduplicated.
///
/// Singletons appear only for elements that lie in no longer progression,
/// which happens only when `x` has a single element.
pub fn enumerate_maximal_aps(x: &Instance) -> Vec<Ap> {
    let n = x.len();
    if n == 1 {
        return vec![Ap::singleton(x.get(0).clone())];
    }
    let mut found = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = x.get(j) - x.get(i);
            found.insert(x.maximal_run(i, &d).0);
        }
    }
    found.into_iter().collect()
}

/// Every progression contained in `x`: all contiguous runs of every maximal
/// progression, plus all singletons.
pub fn enumerate_all_aps(x: &Instance) -> Vec<Ap> {
    let mut found: BTreeSet<Ap> = x.elements().iter().cloned().map(Ap::singleton).collect();
    for m in enumerate_maximal_aps(x) {
        for start in 0..m.len() {
            for len in 2..=m.len() - start {
                found.insert(m.sub_progression(start, len));
            }
        }
    }
    found.into_iter().collect()
}

/// True iff some `a < b < c` in `x` satisfy `a + c = 2b`.
pub fn has_three_term_ap(x: &Instance) -> bool {
    let xs = x.elements();
    for i in 0..xs.len() {
        for k in i + 2..xs.len() {
            let (half, rem) = (&xs[i] + &xs[k]).div_rem(&BigInt::from(2));
            if rem.is_zero() && xs[i + 1..k].binary_search(&half).is_ok() {
                return true;
            }
        }
    }
    false
}
