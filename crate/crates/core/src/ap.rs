//! Finite arithmetic progressions over arbitrary-precision integers.
//!
//! An [`Ap`] is stored in canonical form: ascending, `diff > 0` whenever it
//! has two or more terms, and `diff == 0` for a singleton. Two progressions
//! with the same element set therefore compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ap {
    first: BigInt,
    diff: BigInt,
    len: usize,
}

impl Ap {
    /// Builds a progression, canonicalizing orientation.
    ///
    /// A negative difference is flipped so the result is ascending. A zero
    /// difference is only accepted for a single term, since the elements of a
    /// progression are distinct.
    pub fn new(first: BigInt, diff: BigInt, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidProgression("length must be at least 1".into()));
        }
        if len == 1 {
            return Ok(Ap::singleton(first));
        }
        if diff.is_zero() {
            return Err(Error::InvalidProgression(
                "difference 0 with more than one term".into(),
            ));
        }
        if diff.is_negative() {
            let last = &first + &diff * BigInt::from(len - 1);
            return Ok(Ap {
                first: last,
                diff: -diff,
                len,
            });
        }
        Ok(Ap { first, diff, len })
    }

    pub fn singleton(x: BigInt) -> Self {
        Ap {
            first: x,
            diff: BigInt::zero(),
            len: 1,
        }
    }

    /// Ascending progression from `first` to `last` inclusive with step `diff`.
    pub(crate) fn from_range(first: BigInt, last: &BigInt, diff: &BigInt) -> Self {
        if diff.is_zero() || &first == last {
            return Ap::singleton(first);
        }
        let steps = (last - &first) / diff;
        let len = usize::try_from(steps).expect("progression length fits in usize") + 1;
        Ap {
            first,
            diff: diff.clone(),
            len,
        }
    }

    pub fn first(&self) -> &BigInt {
        &self.first
    }

    pub fn diff(&self) -> &BigInt {
        &self.diff
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; a progression has at least one term.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> BigInt {
        self.element(self.len - 1)
    }

    pub fn element(&self, i: usize) -> BigInt {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        &self.first + &self.diff * BigInt::from(i)
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        if self.len == 1 {
            return x == &self.first;
        }
        if x < &self.first {
            return false;
        }
        let (q, r) = (x - &self.first).div_rem(&self.diff);
        r.is_zero() && q < BigInt::from(self.len)
    }

    pub fn elements(&self) -> impl Iterator<Item = BigInt> + '_ {
        let mut cur = self.first.clone();
        (0..self.len).map(move |_| {
            let out = cur.clone();
            cur += &self.diff;
            out
        })
    }

    /// Contiguous run of terms `start..start + len`.
    pub fn sub_progression(&self, start: usize, len: usize) -> Ap {
        assert!(len >= 1 && start + len <= self.len);
        if len == 1 {
            return Ap::singleton(self.element(start));
        }
        Ap {
            first: self.element(start),
            diff: self.diff.clone(),
            len,
        }
    }
}

impl fmt::Display for Ap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.len {
            1 => write!(f, "{{{}}}", self.first),
            2 => write!(f, "{{{}, {}}}", self.first, self.last()),
            3 => write!(
                f,
                "{{{}, {}, {}}}",
                self.first,
                self.element(1),
                self.last()
            ),
            _ => write!(
                f,
                "{{{}, {}, .., {}}} (diff {}, len {})",
                self.first,
                self.element(1),
                self.last(),
                self.diff,
                self.len
            ),
        }
    }
}

/// True iff the (sorted, distinct) sequence has a constant consecutive gap.
pub fn is_ap(seq: &[BigInt]) -> bool {
    if seq.len() <= 2 {
        return true;
    }
    let d = &seq[1] - &seq[0];
    seq.windows(2).all(|w| &w[1] - &w[0] == d)
}

/// Element-set intersection of two progressions; `None` when disjoint.
///
/// Solves `x = a.first (mod a.diff)`, `x = b.first (mod b.diff)` with the
/// extended Euclidean algorithm and clips the resulting residue class to the
/// overlap of the two ranges.
pub fn intersect(a: &Ap, b: &Ap) -> Option<Ap> {
    if a.len == 1 {
        return b.contains(&a.first).then(|| a.clone());
    }
    if b.len == 1 {
        return a.contains(&b.first).then(|| b.clone());
    }

    let gcd_ext = a.diff.extended_gcd(&b.diff);
    let g = gcd_ext.gcd;
    let delta = &b.first - &a.first;
    if !delta.is_multiple_of(&g) {
        return None;
    }
    let lcm = &a.diff / &g * &b.diff;
    // a.first + a.diff * t = b.first (mod b.diff)  <=>  (a.diff/g) t = delta/g (mod b.diff/g)
    let modulus = &b.diff / &g;
    let t = if modulus.is_one() {
        BigInt::zero()
    } else {
        (&delta / &g * &gcd_ext.x).mod_floor(&modulus)
    };
    let base = &a.first + &a.diff * t;

    let lo = (&a.first).max(&b.first).clone();
    let hi = a.last().min(b.last());
    if lo > hi {
        return None;
    }
    // smallest x >= lo with x = base (mod lcm)
    let shift = (&lo - &base).div_ceil(&lcm);
    let start = &base + &lcm * shift;
    if start > hi {
        return None;
    }
    Some(Ap::from_range(start.clone(), &(&start + (&hi - &start) / &lcm * &lcm), &lcm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn ap(first: i64, diff: i64, len: usize) -> Ap {
        Ap::new(first.into(), diff.into(), len).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn is_ap_examples() {
        assert!(is_ap(&big(&[3, 5, 7])));
        assert!(!is_ap(&big(&[1, 2, 4])));
        assert!(is_ap(&[]));
        assert!(is_ap(&big(&[42])));
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(ap(5, 7, 1), Ap::singleton(5.into()));
        assert_eq!(ap(8, -4, 3), ap(0, 4, 3));
        assert!(Ap::new(1.into(), 0.into(), 2).is_err());
        assert!(Ap::new(1.into(), 1.into(), 0).is_err());
    }

    #[test]
    fn contains_and_elements() {
        let a = ap(-3, 4, 4);
        assert_eq!(a.elements().collect::<Vec<_>>(), big(&[-3, 1, 5, 9]));
        assert!(a.contains(&BigInt::from(5)));
        assert!(!a.contains(&BigInt::from(13)));
        assert!(!a.contains(&BigInt::from(3)));
        assert_eq!(a.last(), BigInt::from(9));
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(intersect(&ap(0, 2, 10), &ap(0, 3, 7)), Some(ap(0, 6, 4)));
        assert_eq!(intersect(&ap(0, 2, 3), &ap(1, 2, 3)), None);
        let a = ap(3, 5, 6);
        assert_eq!(intersect(&a, &a), Some(a.clone()));
        assert_eq!(
            intersect(&ap(1, 3, 5), &Ap::singleton(7.into())),
            Some(Ap::singleton(7.into()))
        );
    }

    fn brute(a: &Ap, b: &Ap) -> BTreeSet<BigInt> {
        let sa: BTreeSet<_> = a.elements().collect();
        b.elements().filter(|x| sa.contains(x)).collect()
    }

    proptest::proptest! {
        #[test]
        fn intersect_matches_brute_force(
            f1 in -50i64..=50, d1 in 0i64..=12, l1 in 1usize..=12,
            f2 in -50i64..=50, d2 in 0i64..=12, l2 in 1usize..=12,
        ) {
            let a = ap(f1, if l1 == 1 { 0 } else { d1.max(1) }, l1);
            let b = ap(f2, if l2 == 1 { 0 } else { d2.max(1) }, l2);
            let expect = brute(&a, &b);
            let got: BTreeSet<BigInt> = intersect(&a, &b)
                .map(|c| c.elements().collect())
                .unwrap_or_default();
            proptest::prop_assert_eq!(got, expect);
        }
    }
}
