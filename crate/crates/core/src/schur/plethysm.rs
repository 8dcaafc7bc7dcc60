//! Plethysm `Σ^outer(Σ^inner E)` by monomial substitution.

use super::{decompose, schur_character, weyl_dim, IrrepSum};
use crate::error::{invalid, Error, Result};
use crate::weights::Weight;
use crate::Limits;

/// Decomposes `Σ^outer(Σ^inner E)` for `E` of rank `inner_rank`.
pub fn plethysm(outer: &Weight, inner: &Weight, inner_rank: usize, limits: &Limits) -> Result<IrrepSum> {
    if !outer.is_dominant() || !inner.is_dominant() {
        return invalid("plethysm needs dominant weights");
    }
    if outer.is_empty() {
        return invalid("plethysm with an empty outer weight");
    }
    let inner = if inner.len() < inner_rank && inner.min_entry() >= 0 {
        inner.padded(inner_rank)
    } else {
        inner.clone()
    };
    let dim = weyl_dim(&inner)?;
    if dim > limits.max_inner_dim as i128 {
        return Err(Error::ResourceLimit(format!(
            "plethysm S{outer}(S{inner}): inner dimension {dim} exceeds {}",
            limits.max_inner_dim
        )));
    }
    let outer_size = (outer.size() - outer.min_entry().min(0) as i64 * outer.len() as i64) as usize;
    if outer_size > limits.max_outer_size {
        return Err(Error::ResourceLimit(format!(
            "plethysm S{outer}(S{inner}): |outer| = {outer_size} exceeds {}",
            limits.max_outer_size
        )));
    }
    let base = schur_character(&inner, inner_rank)?;
    let composite = base.schur_functor(outer, limits.max_terms)?;
    decompose(&composite, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{lr_product, Coeff};

    fn w(v: &[i32]) -> Weight {
        Weight(v.to_vec())
    }

    fn s(rank: usize, pairs: &[(&[i32], Coeff)]) -> IrrepSum {
        IrrepSum::from_pairs(rank, pairs).unwrap()
    }

    #[test]
    fn frozen_plethysms() {
        let l = Limits::default();
        assert_eq!(
            plethysm(&w(&[1, 1, 1]), &w(&[1, 1]), 4, &l).unwrap(),
            s(4, &[(&[3, 1, 1, 1], 1), (&[2, 2, 2, 0], 1)])
        );
        assert_eq!(
            plethysm(&w(&[2, 1]), &w(&[1, 1]), 4, &l).unwrap(),
            s(4, &[(&[2, 2, 1, 1], 1), (&[3, 2, 1, 0], 1)])
        );
        assert_eq!(
            plethysm(&w(&[2, 0]), &w(&[2, 0]), 2, &l).unwrap(),
            s(2, &[(&[4, 0], 1), (&[2, 2], 1)])
        );
        let inner = w(&[2, 1, -1]);
        assert_eq!(plethysm(&w(&[1]), &inner, 3, &l).unwrap(), IrrepSum::single(inner).unwrap());
    }

    #[test]
    fn limits_are_enforced() {
        let l = Limits { max_inner_dim: 5, ..Limits::default() };
        assert!(matches!(plethysm(&w(&[2]), &w(&[1, 1]), 4, &l), Err(Error::ResourceLimit(_))));
        let l = Limits::default();
        assert!(matches!(plethysm(&w(&[7]), &w(&[1]), 2, &l), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn square_splits_into_symmetric_and_alternating() {
        let l = Limits { max_inner_dim: 1000, ..Limits::default() };
        for rank in 1..=6 {
            for inner in [w(&[1]), w(&[2]), w(&[1, 1]), w(&[2, 1])] {
                if inner.len() > rank {
                    continue;
                }
                let e = IrrepSum::single(inner.padded(rank)).unwrap();
                let sym = plethysm(&w(&[2]), &inner, rank, &l).unwrap();
                let alt = plethysm(&w(&[1, 1]), &inner, rank, &l).unwrap();
                assert_eq!(sym.plus(&alt).unwrap(), lr_product(&e, &e).unwrap(), "rank {rank} inner {inner}");
            }
        }
    }
}
