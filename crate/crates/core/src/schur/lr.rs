//! Littlewood-Richardson products, by skew tableaux and by characters.

use std::collections::BTreeMap;

use super::{checked_mul, decompose, Coeff, IrrepSum};
use crate::error::{invalid, Result};
use crate::weights::Weight;

/// LR coefficients `c^ν_{λμ}` for partitions, restricted to `ℓ(ν) ≤ rows`.
///
/// Counts fillings of `ν/λ` with `μ_j` copies of label `j` that are
/// semistandard and whose reverse reading word is a lattice word.
pub fn lr_coefficients(lambda: &[u32], mu: &[u32], rows: usize) -> BTreeMap<Vec<u32>, Coeff> {
    let mut out = BTreeMap::new();
    if lambda.iter().filter(|&&x| x > 0).count() > rows || mu.iter().filter(|&&x| x > 0).count() > rows {
        return out;
    }
    let mut lam = lambda.to_vec();
    lam.resize(rows, 0);
    let mu: Vec<u32> = mu.iter().copied().filter(|&x| x > 0).collect();
    let mut state = Search {
        lam,
        mu: mu.clone(),
        placed: vec![0; mu.len()],
        nu: Vec::with_capacity(rows),
        prev_ends: Vec::new(),
    };
    state.row(0, &mut out);
    out
}

struct Search {
    lam: Vec<u32>,
    mu: Vec<u32>,
    /// labels of each kind placed in earlier rows
    placed: Vec<u32>,
    nu: Vec<u32>,
    /// for the previous row: column of the last box with label ≤ j, per j
    prev_ends: Vec<u32>,
}

impl Search {
    fn row(&mut self, k: usize, out: &mut BTreeMap<Vec<u32>, Coeff>) {
        if k == self.lam.len() {
            if self.placed == self.mu {
                *out.entry(self.nu.clone()).or_insert(0) += 1;
            }
            return;
        }
        let labels = self.mu.len().min(k + 1);
        let mut counts = vec![0u32; self.mu.len()];
        self.fill(k, 0, labels, &mut counts, out);
    }

    fn fill(&mut self, k: usize, j: usize, labels: usize, counts: &mut Vec<u32>, out: &mut BTreeMap<Vec<u32>, Coeff>) {
        if j == labels {
            let width = self.lam[k] + counts.iter().sum::<u32>();
            if k > 0 && width > self.nu[k - 1] {
                return;
            }
            let mut ends = Vec::with_capacity(self.mu.len());
            let mut acc = self.lam[k];
            for c in counts.iter() {
                acc += c;
                ends.push(acc);
            }
            let saved_ends = std::mem::replace(&mut self.prev_ends, ends);
            for (p, c) in self.placed.iter_mut().zip(counts.iter()) {
                *p += c;
            }
            self.nu.push(width);
            self.row(k + 1, out);
            self.nu.pop();
            for (p, c) in self.placed.iter_mut().zip(counts.iter()) {
                *p -= c;
            }
            self.prev_ends = saved_ends;
            return;
        }
        let remaining = self.mu[j] - self.placed[j];
        // lattice condition: label j never outnumbers label j-1 in the reading word
        let lattice_cap = if j == 0 { remaining } else { (self.placed[j - 1] - self.placed[j]).min(remaining) };
        let before: u32 = self.lam[k] + counts[..j].iter().sum::<u32>();
        // column strictness: the box above the last j must be in λ or carry a smaller label
        let column_cap = if k == 0 {
            u32::MAX
        } else {
            let above = if j == 0 { self.lam[k - 1] } else { self.prev_ends[j - 1] };
            above.saturating_sub(before)
        };
        let cap = lattice_cap.min(column_cap);
        for c in 0..=cap {
            counts[j] = c;
            self.fill(k, j + 1, labels, counts, out);
        }
        counts[j] = 0;
    }
}

fn check_ranks(a: &IrrepSum, b: &IrrepSum) -> Result<()> {
    if a.rank() != b.rank() {
        return invalid(format!("lr_product of ranks {} and {}", a.rank(), b.rank()));
    }
    Ok(())
}

/// Tensor product decomposition by the combinatorial LR rule, after moving
/// each weight to a partition by a determinant shift.
pub fn lr_product(a: &IrrepSum, b: &IrrepSum) -> Result<IrrepSum> {
    check_ranks(a, b)?;
    let r = a.rank();
    let mut out = IrrepSum::new(r);
    for (la, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let (sa, sb) = (la.min_entry(), mb.min_entry());
            let pa: Vec<u32> = la.entries().iter().map(|&x| (x - sa) as u32).collect();
            let pb: Vec<u32> = mb.entries().iter().map(|&x| (x - sb) as u32).collect();
            let k = checked_mul(*ca, *cb)?;
            for (nu, c) in lr_coefficients(&pa, &pb, r) {
                let w = Weight(nu.iter().map(|&x| x as i32 + sa + sb).collect());
                out.add_term(w, checked_mul(k, c)?)?;
            }
        }
    }
    Ok(out)
}

/// Tensor product decomposition by multiplying characters and peeling.
pub fn lr_product_via_characters(a: &IrrepSum, b: &IrrepSum) -> Result<IrrepSum> {
    check_ranks(a, b)?;
    let prod = a.character()?.mul(&b.character()?)?;
    decompose(&prod, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::weyl_dim;

    fn s(rank: usize, pairs: &[(&[i32], Coeff)]) -> IrrepSum {
        IrrepSum::from_pairs(rank, pairs).unwrap()
    }

    #[test]
    fn frozen_products() {
        let p = lr_product(&s(2, &[(&[2, 0], 1)]), &s(2, &[(&[1, 0], 1)])).unwrap();
        assert_eq!(p, s(2, &[(&[3, 0], 1), (&[2, 1], 1)]));
        let p = lr_product(&s(2, &[(&[2, 0], 1)]), &s(2, &[(&[2, 0], 1)])).unwrap();
        assert_eq!(p, s(2, &[(&[4, 0], 1), (&[3, 1], 1), (&[2, 2], 1)]));
        let x = s(3, &[(&[2, 1, -1], 2), (&[0, 0, -3], 1)]);
        assert_eq!(lr_product(&IrrepSum::trivial(3), &x).unwrap(), x);
        assert!(lr_product(&IrrepSum::trivial(2), &IrrepSum::trivial(3)).is_err());
    }

    #[test]
    fn classic_coefficient() {
        let c = lr_coefficients(&[2, 1], &[2, 1], 3);
        assert_eq!(c.get(&vec![4, 2, 0]).copied(), Some(1));
        assert_eq!(c.get(&vec![3, 2, 1]).copied(), Some(2));
        let c6 = lr_coefficients(&[2, 1], &[2, 1], 6);
        assert_eq!(c6.get(&vec![3, 2, 1, 0, 0, 0]).copied(), Some(2));
        let total: Coeff = c6
            .iter()
            .map(|(nu, m)| m * weyl_dim(&Weight(nu.iter().map(|&x| x as i32).collect())).unwrap())
            .sum();
        let d = weyl_dim(&Weight(vec![2, 1, 0, 0, 0, 0])).unwrap();
        assert_eq!(total, d * d);
    }
}
