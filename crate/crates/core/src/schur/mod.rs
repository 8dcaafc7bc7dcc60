//! Exact symmetric-function engine: Schur characters, decomposition into the
//! Schur basis, Littlewood-Richardson products, plethysm and dimensions.

mod character;
mod lr;
mod plethysm;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

pub use character::{Character, Layout, VarGroup};
pub use lr::{lr_coefficients, lr_product, lr_product_via_characters};
pub use plethysm::plethysm;

use crate::error::{invalid, Error, Result};
use crate::weights::{dual_weight, Weight};

/// Exact coefficient type. Every operation is overflow-checked.
pub type Coeff = i128;

pub(crate) fn checked_add(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_add(b).ok_or(Error::Overflow("coefficient addition"))
}

pub(crate) fn checked_mul(a: Coeff, b: Coeff) -> Result<Coeff> {
    a.checked_mul(b).ok_or(Error::Overflow("coefficient multiplication"))
}

/// Formal integer combination of irreducible modules of `GL_rank`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IrrepSum {
    rank: usize,
    terms: BTreeMap<Weight, Coeff>,
}

impl IrrepSum {
    pub fn new(rank: usize) -> Self {
        IrrepSum { rank, terms: BTreeMap::new() }
    }

    pub fn single(w: Weight) -> Result<Self> {
        let mut s = IrrepSum::new(w.len());
        s.add_term(w, 1)?;
        Ok(s)
    }

    pub fn trivial(rank: usize) -> Self {
        let mut s = IrrepSum::new(rank);
        s.terms.insert(Weight::zero(rank), 1);
        s
    }

    /// Builds a sum from `(weight, multiplicity)` pairs.
    pub fn from_pairs(rank: usize, pairs: &[(&[i32], Coeff)]) -> Result<Self> {
        let mut s = IrrepSum::new(rank);
        for (w, c) in pairs {
            s.add_term(Weight::from(*w), *c)?;
        }
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in lexicographic weight order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Coeff)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, w: &Weight) -> Coeff {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Weight, c: Coeff) -> Result<()> {
        if w.len() != self.rank {
            return invalid(format!("weight {w} in a sum of rank {}", self.rank));
        }
        if !w.is_dominant() {
            return invalid(format!("non-dominant weight {w} in an irrep sum"));
        }
        if c == 0 {
            return Ok(());
        }
        let s = checked_add(self.multiplicity(&w), c)?;
        if s == 0 {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, s);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &IrrepSum, k: Coeff) -> Result<()> {
        if other.rank != self.rank {
            return invalid("irrep sums of different ranks");
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), checked_mul(*c, k)?)?;
        }
        Ok(())
    }

    pub fn plus(&self, other: &IrrepSum) -> Result<IrrepSum> {
        let mut s = self.clone();
        s.add_scaled(other, 1)?;
        Ok(s)
    }

    pub fn minus(&self, other: &IrrepSum) -> Result<IrrepSum> {
        let mut s = self.clone();
        s.add_scaled(other, -1)?;
        Ok(s)
    }

    /// Tensor with `det^c`.
    pub fn det_twist(&self, c: i32) -> IrrepSum {
        IrrepSum {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, m)| (w.shifted(c), *m)).collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// `Σ mult · dim`.
    pub fn total_dim(&self) -> Result<Coeff> {
        self.terms.iter().try_fold(0, |acc, (w, c)| checked_add(acc, checked_mul(*c, weyl_dim(w)?)?))
    }

    /// Character in a single group of `rank` variables.
    pub fn character(&self) -> Result<Character> {
        let layout = Layout::single(self.rank);
        let mut out = Character::zero(layout);
        for (w, c) in &self.terms {
            out.add_scaled(&schur_character(w, self.rank)?, *c)?;
        }
        Ok(out)
    }
}

impl fmt::Debug for IrrepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IrrepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "S{w}")?;
        }
        Ok(())
    }
}

/// Applies [`dual_weight`] termwise.
pub fn dual_sum(s: &IrrepSum) -> IrrepSum {
    IrrepSum {
        rank: s.rank,
        terms: s
            .terms
            .iter()
            .map(|(w, c)| (dual_weight(w).expect("irrep sums hold dominant weights"), *c))
            .collect(),
    }
}

/// Dimension of `Σ^λ C^n` with `n = len(λ)` by the Weyl product formula.
pub fn weyl_dim(lambda: &Weight) -> Result<Coeff> {
    if !lambda.is_dominant() {
        return invalid(format!("weyl_dim of non-dominant weight {lambda}"));
    }
    let l = lambda.entries();
    let (mut num, mut den): (Coeff, Coeff) = (1, 1);
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            num = checked_mul(num, (l[i] - l[j]) as Coeff + (j - i) as Coeff)?;
            den = checked_mul(den, (j - i) as Coeff)?;
        }
    }
    debug_assert_eq!(num % den, 0);
    Ok(num / den)
}

/// Monomial expansion of `s_λ(x_1..x_n)` for a partition `λ` with at most
/// `n` parts, as `(content, coefficient)` pairs sorted by content.
///
/// Uses the branching rule `s_λ(x_1..x_n) = Σ_μ s_μ(x_1..x_{n-1}) x_n^{|λ/μ|}`
/// over partitions `μ` interlacing `λ`.
pub fn schur_expansion(part: &Weight, n: usize, max_terms: usize) -> Result<Vec<(Vec<u32>, Coeff)>> {
    if part.min_entry() < 0 || !part.is_dominant() {
        return invalid(format!("schur_expansion needs a partition, got {part}"));
    }
    let trimmed: Vec<u32> = part.entries().iter().map(|&x| x as u32).filter(|&x| x > 0).collect();
    if trimmed.len() > n {
        return Ok(Vec::new());
    }
    let mut lam = trimmed;
    lam.resize(n, 0);
    let mut memo: HashMap<Vec<u32>, HashMap<Vec<u32>, Coeff>> = HashMap::new();
    let map = branch(&lam, &mut memo, max_terms)?;
    let mut out: Vec<_> = map.into_iter().collect();
    out.sort();
    Ok(out)
}

fn branch(
    lam: &[u32],
    memo: &mut HashMap<Vec<u32>, HashMap<Vec<u32>, Coeff>>,
    max_terms: usize,
) -> Result<HashMap<Vec<u32>, Coeff>> {
    let k = lam.len();
    if k <= 1 {
        let mut m = HashMap::new();
        m.insert(lam.to_vec(), 1);
        return Ok(m);
    }
    if let Some(m) = memo.get(lam) {
        return Ok(m.clone());
    }
    let total: u32 = lam.iter().sum();
    let mut out: HashMap<Vec<u32>, Coeff> = HashMap::new();
    // enumerate μ_i ∈ [λ_{i+1}, λ_i] for i < k-1
    let mut mu: Vec<u32> = (0..k - 1).map(|i| lam[i + 1]).collect();
    loop {
        let sub = branch(&mu, memo, max_terms)?;
        let last = total - mu.iter().sum::<u32>();
        for (content, c) in sub {
            let mut key = content;
            key.push(last);
            let e = out.entry(key).or_insert(0);
            *e = checked_add(*e, c)?;
        }
        if out.len() > max_terms {
            return Err(Error::ResourceLimit(format!("Schur expansion exceeds {max_terms} monomials")));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == k - 1 {
                memo.insert(lam.to_vec(), out.clone());
                return Ok(out);
            }
            if mu[i] < lam[i] {
                mu[i] += 1;
                break;
            }
            mu[i] = lam[i + 1];
            i += 1;
        }
    }
}

/// Coefficients `K_{λμ}` of the monomials `x^μ` in `s_λ` with `μ` dominant.
pub fn dominant_expansion(lambda: &Weight, n: usize, max_terms: usize) -> Result<Vec<(Weight, Coeff)>> {
    let shift = lambda.min_entry().min(0);
    let part = lambda.shifted(-shift);
    Ok(schur_expansion(&part, n, max_terms)?
        .into_iter()
        .filter(|(c, _)| c.windows(2).all(|p| p[0] >= p[1]))
        .map(|(c, k)| (Weight(c.iter().map(|&x| x as i32 + shift).collect()), k))
        .collect())
}

/// `s_λ(x_1, ..., x_m)` as a single-group character.
pub fn schur_character(lambda: &Weight, m: usize) -> Result<Character> {
    if lambda.len() > m {
        return invalid(format!("weight {lambda} longer than {m} variables"));
    }
    if lambda.min_entry() < 0 && lambda.len() != m {
        return invalid(format!("Laurent weight {lambda} must have exactly {m} entries"));
    }
    let layout = Layout::single(m);
    let units: Vec<Vec<i32>> = (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            e
        })
        .collect();
    character::substitute_schur(layout, &units, lambda, usize::MAX)
}

/// Writes a character symmetric in `group` as a combination of Schur
/// polynomials by repeatedly peeling the lexicographically greatest monomial.
///
/// All variables outside `group` must have exponent zero.
pub fn decompose(c: &Character, group: usize) -> Result<IrrepSum> {
    let layout = c.layout();
    if group >= layout.groups().len() {
        return invalid(format!("no variable group {group}"));
    }
    let range = layout.range(group);
    let m = range.len();
    let mut rest: BTreeMap<Vec<i32>, Coeff> = BTreeMap::new();
    for (e, k) in c.terms() {
        if e.iter().enumerate().any(|(i, &x)| x != 0 && !range.contains(&i)) {
            return invalid("decompose: variables outside the chosen group occur");
        }
        rest.insert(e[range.clone()].to_vec(), *k);
    }
    let mut out = IrrepSum::new(m);
    let mut steps = 0usize;
    while let Some((lead, k)) = rest.pop_last() {
        let w = Weight(lead);
        if !w.is_dominant() {
            return Err(Error::NotSymmetric(format!("leading exponent {w} is not dominant")));
        }
        steps += 1;
        if steps > 1_000_000 {
            return Err(Error::NotSymmetric("peeling did not terminate".into()));
        }
        let s = schur_character(&w, m)?;
        for (e, kk) in s.terms() {
            if *e == w.0 {
                continue;
            }
            let v = checked_add(rest.get(e).copied().unwrap_or(0), -checked_mul(k, *kk)?)?;
            if v == 0 {
                rest.remove(e);
            } else {
                rest.insert(e.clone(), v);
            }
        }
        out.add_term(w, k)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i32]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn frozen_characters() {
        let c = schur_character(&w(&[1, 0]), 2).unwrap();
        assert_eq!(c.sorted_terms(), vec![(vec![0, 1], 1), (vec![1, 0], 1)]);
        let c = schur_character(&w(&[2, -1]), 2).unwrap();
        assert_eq!(
            c.sorted_terms(),
            vec![(vec![-1, 2], 1), (vec![0, 1], 1), (vec![1, 0], 1), (vec![2, -1], 1)]
        );
        let c = schur_character(&w(&[1, 1, 1]), 3).unwrap();
        assert_eq!(c.sorted_terms(), vec![(vec![1, 1, 1], 1)]);
        assert!(schur_character(&w(&[1, 0, 0]), 2).is_err());
    }

    #[test]
    fn frozen_decompositions() {
        let c = schur_character(&w(&[1, 0]), 2).unwrap();
        assert_eq!(decompose(&c, 0).unwrap(), IrrepSum::single(w(&[1, 0])).unwrap());
        // F* ⊗ S^2 F on a rank two bundle, written in the roots of F*.
        let fd = schur_character(&w(&[1, 0]), 2).unwrap();
        let s2f = schur_character(&w(&[0, -2]), 2).unwrap();
        let det = schur_character(&w(&[1, 1]), 2).unwrap();
        let prod = fd.mul(&s2f).unwrap().mul(&det).unwrap();
        assert_eq!(
            decompose(&prod, 0).unwrap(),
            IrrepSum::from_pairs(2, &[(&[2, -1], 1), (&[1, 0], 1)]).unwrap()
        );
        assert!(decompose(&Character::zero(Layout::single(3)), 0).unwrap().is_empty());
    }

    #[test]
    fn non_symmetric_input_is_rejected() {
        let c = Character::monomial(Layout::single(2), vec![0, 1], 1);
        assert!(matches!(decompose(&c, 0), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim(&w(&[1, 0, 0, 0])).unwrap(), 4);
        assert_eq!(weyl_dim(&w(&[3, 1, 1, 1])).unwrap(), 10);
        assert_eq!(weyl_dim(&w(&[2, 2, 2, 0])).unwrap(), 10);
        assert_eq!(weyl_dim(&w(&[0, 0, 0, 0, 0])).unwrap(), 1);
        assert!(weyl_dim(&w(&[0, 1])).is_err());
    }

    #[test]
    fn dual_sums() {
        let s = IrrepSum::from_pairs(2, &[(&[1, 0], 1)]).unwrap();
        assert_eq!(dual_sum(&s), IrrepSum::from_pairs(2, &[(&[0, -1], 1)]).unwrap());
        assert!(dual_sum(&IrrepSum::new(3)).is_empty());
        let s = IrrepSum::from_pairs(2, &[(&[2, -1], 3)]).unwrap();
        assert_eq!(dual_sum(&s), IrrepSum::from_pairs(2, &[(&[1, -2], 3)]).unwrap());
    }

    /// Counts semistandard tableaux directly: an oracle for Weyl dimensions.
    fn count_ssyt(shape: &[u32], n: u32) -> u64 {
        fn fill(shape: &[u32], n: u32, grid: &mut Vec<Vec<u32>>, row: usize, col: usize) -> u64 {
            if row == shape.len() {
                return 1;
            }
            if col == shape[row] as usize {
                return fill(shape, n, grid, row + 1, 0);
            }
            let mut lo = 1;
            if col > 0 {
                lo = lo.max(grid[row][col - 1]);
            }
            if row > 0 {
                lo = lo.max(grid[row - 1][col] + 1);
            }
            let mut total = 0;
            for v in lo..=n {
                grid[row][col] = v;
                total += fill(shape, n, grid, row, col + 1);
            }
            total
        }
        let mut grid: Vec<Vec<u32>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
        fill(shape, n, &mut grid, 0, 0)
    }

    fn dominant(max_len: usize, lo: i32, hi: i32) -> impl Strategy<Value = Weight> {
        prop::collection::vec(lo..hi, 1..=max_len).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Weight(v)
        })
    }

    proptest! {
        #[test]
        fn weyl_dim_counts_tableaux(lam in dominant(5, 0, 5)) {
            let shape: Vec<u32> = lam.entries().iter().map(|&x| x as u32).filter(|&x| x > 0).collect();
            prop_assert_eq!(weyl_dim(&lam).unwrap(), count_ssyt(&shape, lam.len() as u32) as Coeff);
        }

        #[test]
        fn character_dimension_is_weyl_dim(lam in dominant(5, -3, 4)) {
            let c = schur_character(&lam, lam.len()).unwrap();
            prop_assert_eq!(c.eval_at_ones().unwrap(), weyl_dim(&lam).unwrap());
            prop_assert!(c.is_symmetric());
        }

        #[test]
        fn decompose_inverts_schur_character(lam in dominant(5, -3, 4)) {
            let c = schur_character(&lam, lam.len()).unwrap();
            prop_assert_eq!(decompose(&c, 0).unwrap(), IrrepSum::single(lam).unwrap());
        }

        #[test]
        fn dual_character_matches_dual_weight(lam in dominant(4, -3, 4)) {
            let c = schur_character(&lam, lam.len()).unwrap().dual();
            let d = dual_weight(&lam).unwrap();
            prop_assert_eq!(c, schur_character(&d, lam.len()).unwrap());
        }
    }
}
