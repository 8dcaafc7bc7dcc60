//! Integer weights of general linear groups and the Bott regularization step.

use std::fmt;

use crate::error::{invalid, Result};

/// An integer vector labeling a Schur functor or an irreducible `GL`-module.
///
/// Ordering is lexicographic on the entries, which is the peeling order used
/// throughout the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn new(entries: Vec<i32>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// The weight `(c, ..., c)` of length `n`.
    pub fn constant(n: usize, c: i32) -> Self {
        Weight(vec![c; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    /// Non-increasing entries.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn size(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    /// Adds `c` to every entry.
    pub fn shifted(&self, c: i32) -> Weight {
        Weight(self.0.iter().map(|&x| x + c).collect())
    }

    /// Pads with zeros on the right up to length `n`.
    pub fn padded(&self, n: usize) -> Weight {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        Weight(v)
    }

    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }

    pub fn min_entry(&self) -> i32 {
        self.0.iter().copied().min().unwrap_or(0)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i32>> for Weight {
    fn from(v: Vec<i32>) -> Self {
        Weight(v)
    }
}

impl From<&[i32]> for Weight {
    fn from(v: &[i32]) -> Self {
        Weight(v.to_vec())
    }
}

/// Outcome of Bott's algorithm on a weight `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BottResult {
    /// `α + ρ` has a repeated entry; all cohomology vanishes.
    Singular,
    /// Cohomology is `Σ^dominant` placed in degree `degree`.
    Regular { degree: u32, dominant: Weight },
}

/// `ρ = (n, n-1, ..., 1)`.
pub fn rho(n: usize) -> Result<Weight> {
    if n == 0 {
        return invalid("rho(0) is undefined");
    }
    Ok(Weight((1..=n as i32).rev().collect()))
}

/// Sorts `α + ρ` into strictly decreasing order, counting inversions.
pub fn bott_regularize(alpha: &Weight) -> Result<BottResult> {
    let n = alpha.len();
    let r = rho(n)?;
    let v: Vec<i32> = alpha.0.iter().zip(&r.0).map(|(a, b)| a + b).collect();
    let mut inversions = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            if v[i] == v[j] {
                return Ok(BottResult::Singular);
            }
            if v[i] < v[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = v;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let dominant = Weight(sorted.iter().zip(&r.0).map(|(a, b)| a - b).collect());
    Ok(BottResult::Regular {
        degree: inversions,
        dominant,
    })
}

/// Weight of the dual module: reversed negation.
pub fn dual_weight(w: &Weight) -> Result<Weight> {
    if !w.is_dominant() {
        return invalid(format!("dual_weight of non-dominant {w}"));
    }
    Ok(Weight(w.0.iter().rev().map(|x| -x).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(1).unwrap(), w(&[1]));
        assert_eq!(rho(5).unwrap(), w(&[5, 4, 3, 2, 1]));
        assert_eq!(rho(6).unwrap(), w(&[6, 5, 4, 3, 2, 1]));
        assert!(rho(0).is_err());
    }

    #[test]
    fn bott_frozen_examples() {
        assert_eq!(
            bott_regularize(&w(&[1, 0, 0, 0, 0])).unwrap(),
            BottResult::Regular { degree: 0, dominant: w(&[1, 0, 0, 0, 0]) }
        );
        assert_eq!(
            bott_regularize(&w(&[0, 0, 0])).unwrap(),
            BottResult::Regular { degree: 0, dominant: w(&[0, 0, 0]) }
        );
        assert_eq!(bott_regularize(&w(&[2, -1, 0, 0, 0])).unwrap(), BottResult::Singular);
        assert_eq!(
            bott_regularize(&w(&[-5, 0, 0, 0, 0])).unwrap(),
            BottResult::Regular { degree: 4, dominant: w(&[-1, -1, -1, -1, -1]) }
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_weight(&w(&[1, 0])).unwrap(), w(&[0, -1]));
        assert_eq!(dual_weight(&w(&[0, 0, 0])).unwrap(), w(&[0, 0, 0]));
        assert_eq!(dual_weight(&w(&[2, -1])).unwrap(), w(&[1, -2]));
        assert!(dual_weight(&w(&[0, 1])).is_err());
    }

    /// Brute-force oracle: search all permutations for the one making
    /// `α + ρ` strictly decreasing.
    fn bott_by_permutations(alpha: &[i32]) -> Option<(u32, Vec<i32>)> {
        let n = alpha.len();
        let v: Vec<i32> = alpha.iter().enumerate().map(|(i, a)| a + (n - i) as i32).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let image: Vec<i32> = perm.iter().map(|&i| v[i]).collect();
            if image.windows(2).all(|p| p[0] > p[1]) {
                let mut inv = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            inv += 1;
                        }
                    }
                }
                let dom = image.iter().enumerate().map(|(i, x)| x - (n - i) as i32).collect();
                return Some((inv, dom));
            }
            // next lexicographic permutation
            let i = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1])?;
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    proptest! {
        #[test]
        fn bott_matches_permutation_search(alpha in prop::collection::vec(-6i32..6, 1..6)) {
            let got = bott_regularize(&Weight(alpha.clone())).unwrap();
            match bott_by_permutations(&alpha) {
                None => prop_assert_eq!(got, BottResult::Singular),
                Some((deg, dom)) => prop_assert_eq!(got, BottResult::Regular { degree: deg, dominant: Weight(dom) }),
            }
        }

        #[test]
        fn bott_degree_bounded_and_idempotent(alpha in prop::collection::vec(-8i32..8, 1..7)) {
            let n = alpha.len() as u32;
            if let BottResult::Regular { degree, dominant } = bott_regularize(&Weight(alpha)).unwrap() {
                prop_assert!(degree <= n * (n - 1) / 2);
                prop_assert!(dominant.is_dominant());
                prop_assert_eq!(
                    bott_regularize(&dominant).unwrap(),
                    BottResult::Regular { degree: 0, dominant: dominant.clone() }
                );
            }
        }

        #[test]
        fn bott_commutes_with_det_shift(alpha in prop::collection::vec(-8i32..8, 1..7), c in -5i32..5) {
            let a = Weight(alpha);
            let base = bott_regularize(&a).unwrap();
            let moved = bott_regularize(&a.shifted(c)).unwrap();
            match base {
                BottResult::Singular => prop_assert_eq!(moved, BottResult::Singular),
                BottResult::Regular { degree, dominant } => prop_assert_eq!(
                    moved,
                    BottResult::Regular { degree, dominant: dominant.shifted(c) }
                ),
            }
        }

        #[test]
        fn dual_is_involution(mut v in prop::collection::vec(-8i32..8, 1..7)) {
            v.sort_unstable_by(|a, b| b.cmp(a));
            let x = Weight(v);
            prop_assert_eq!(dual_weight(&dual_weight(&x).unwrap()).unwrap(), x);
        }
    }
}
