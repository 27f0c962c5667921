use std::fmt;

use num_bigint::BigInt;

use crate::ap::Ap;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverKind {
    Cover,
    ExactCover,
}

/// A list of progressions claimed to (exactly) cover an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub aps: Vec<Ap>,
    pub kind: CoverKind,
}

impl Solution {
    pub fn new(mut aps: Vec<Ap>, kind: CoverKind) -> Self {
        aps.sort();
        Solution { aps, kind }
    }

    pub fn len(&self) -> usize {
        self.aps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aps.is_empty()
    }
}

/// The first condition a claimed solution fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotContained { ap: Ap, element: BigInt },
    Overlap { element: BigInt },
    Uncovered { element: BigInt },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotContained { ap, element } => {
                write!(f, "not contained: {element} of {ap} is outside the instance")
            }
            Violation::Overlap { element } => write!(f, "overlap: {element} is covered twice"),
            Violation::Uncovered { element } => write!(f, "uncovered: {element} is in no progression"),
        }
    }
}

/// Checks containment, coverage and (for exact covers) disjointness.
pub fn verify_solution(x: &Instance, s: &Solution) -> Result<(), Violation> {
    let mut count = vec![0u32; x.len()];
    for ap in &s.aps {
        for e in ap.elements() {
            match x.index_of(&e) {
                Some(i) => count[i] += 1,
                None => {
                    return Err(Violation::NotContained {
                        ap: ap.clone(),
                        element: e,
                    })
                }
            }
        }
    }
    if s.kind == CoverKind::ExactCover {
        if let Some(i) = count.iter().position(|&c| c > 1) {
            return Err(Violation::Overlap {
                element: x.get(i).clone(),
            });
        }
    }
    if let Some(i) = count.iter().position(|&c| c == 0) {
        return Err(Violation::Uncovered {
            element: x.get(i).clone(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ap(first: i64, diff: i64, len: usize) -> Ap {
        Ap::new(first.into(), diff.into(), len).unwrap()
    }

    #[test]
    fn verify_examples() {
        let x = Instance::from_i64s(&[0, 4, 6, 7, 8, 9]).unwrap();
        let exact = Solution::new(vec![ap(0, 4, 2), ap(6, 1, 4)], CoverKind::ExactCover);
        assert_eq!(verify_solution(&x, &exact), Ok(()));

        let overlapping = Solution::new(vec![ap(0, 4, 3), ap(6, 1, 4)], CoverKind::ExactCover);
        assert_eq!(
            verify_solution(&x, &overlapping),
            Err(Violation::Overlap { element: 8.into() })
        );
        let as_cover = Solution {
            kind: CoverKind::Cover,
            ..overlapping
        };
        assert_eq!(verify_solution(&x, &as_cover), Ok(()));
    }

    #[test]
    fn reports_first_violation() {
        let x = Instance::from_i64s(&[0, 4, 6, 7, 8, 9]).unwrap();
        let outside = Solution::new(vec![ap(0, 2, 3)], CoverKind::Cover);
        let err = verify_solution(&x, &outside).unwrap_err();
        assert!(err.to_string().starts_with("not contained"));
        let partial = Solution::new(vec![ap(6, 1, 4)], CoverKind::Cover);
        assert_eq!(
            verify_solution(&x, &partial),
            Err(Violation::Uncovered { element: 0.into() })
        );
        assert_eq!(
            verify_solution(&Instance::empty(), &Solution::new(vec![], CoverKind::ExactCover)),
            Ok(())
        );
    }
}
