//! Seeded instance generators.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::Rng;

use crate::ap::Ap;
use crate::error::{Error, Result};
use crate::instance::{has_three_term_ap, Instance};

/// A planted instance: the union of `k` random progressions of `len` terms
/// with values in `[0, max_value]`. With `disjoint`, the progressions share no
/// element, so the plant is also an exact cover.
pub fn union_of_aps<R: Rng>(
    rng: &mut R,
    k: usize,
    len: usize,
    max_value: u64,
    disjoint: bool,
) -> Result<(Instance, Vec<Ap>)> {
    if len == 0 || (len > 1 && max_value < (len - 1) as u64) {
        return Err(Error::InvalidParameter(format!(
            "cannot fit {len} terms below {max_value}"
        )));
    }
    'attempt: for _ in 0..10_000 {
        let mut seen = BTreeSet::new();
        let mut plant = Vec::with_capacity(k);
        for _ in 0..k {
            let ap = if len == 1 {
                Ap::singleton(rng.random_range(0..=max_value).into())
            } else {
                let span = max_value / (len as u64 - 1);
                let d = rng.random_range(1..=span);
                let a = rng.random_range(0..=max_value - d * (len as u64 - 1));
                Ap::new(a.into(), d.into(), len)?
            };
            for e in ap.elements() {
                if !seen.insert(e) && disjoint {
                    continue 'attempt;
                }
            }
            plant.push(ap);
        }
        let x = Instance::new(seen.into_iter().collect())?;
        plant.sort();
        return Ok((x, plant));
    }
    Err(Error::InvalidParameter(
        "no disjoint plant found; raise the value range".into(),
    ))
}

/// A three-term-progression-free set of `n` non-negative integers, built
/// greedily from 0 upward. Each admissible candidate is skipped with
/// probability `skip`, so different seeds give different sets.
pub fn no3ap<R: Rng>(rng: &mut R, n: usize, skip: f64) -> Instance {
    let mut picked: Vec<i64> = Vec::with_capacity(n);
    let mut forbidden = BTreeSet::new();
    let mut c = 0i64;
    while picked.len() < n {
        if !forbidden.contains(&c) && !(skip > 0.0 && rng.random_bool(skip)) {
            for &a in &picked {
                forbidden.insert(2 * c - a);
            }
            picked.push(c);
        }
        c += 1;
    }
    let x = Instance::from_i64s(&picked).expect("distinct by construction");
    debug_assert!(!has_three_term_ap(&x));
    x
}

/// `n` distinct values drawn uniformly from `[0, max_value]`.
pub fn random_set<R: Rng>(rng: &mut R, n: usize, max_value: u64) -> Result<Instance> {
    if max_value < u64::MAX && (n as u64) > max_value + 1 {
        return Err(Error::InvalidParameter(format!(
            "{n} distinct values do not fit in [0, {max_value}]"
        )));
    }
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        seen.insert(rng.random_range(0..=max_value));
    }
    Instance::new(seen.into_iter().map(BigInt::from).collect())
}

/// `0, 1, 2, 4, .., 2^(n-1)`.
pub fn powers(n: usize) -> Instance {
    Instance::new(crate::zp::powers_family(n + 1)).expect("distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_union() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (x, plant) = union_of_aps(&mut rng, 2, 5, 100, false).unwrap();
        assert_eq!(plant.len(), 2);
        for ap in &plant {
            assert!(x.indices_of(ap).is_some());
        }
        let (x, plant) = union_of_aps(&mut rng, 4, 6, 1000, true).unwrap();
        assert_eq!(x.len(), 24);
        assert_eq!(plant.iter().map(Ap::len).sum::<usize>(), 24);
        assert!(union_of_aps(&mut rng, 1, 5, 3, false).is_err());
    }

    #[test]
    fn three_term_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let x = no3ap(&mut rng, 8, 0.0);
        assert_eq!(x, Instance::from_i64s(&[0, 1, 3, 4, 9, 10, 12, 13]).unwrap());
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = no3ap(&mut rng, 6, 0.3);
            assert_eq!(x.len(), 6);
            assert!(!has_three_term_ap(&x));
        }
    }

    #[test]
    fn random_and_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_set(&mut rng, 10, 9).unwrap().len(), 10);
        assert!(random_set(&mut rng, 11, 9).is_err());
        assert_eq!(powers(3), Instance::from_i64s(&[0, 1, 2, 4]).unwrap());
    }
}
