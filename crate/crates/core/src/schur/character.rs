//! Sparse Laurent polynomials with exact integer coefficients over named
//! groups of variables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};
use crate::schur::{checked_add, checked_mul, schur_expansion, Coeff};
use crate::weights::Weight;

/// A named block of variables inside a [`Layout`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarGroup {
    pub id: String,
    pub count: usize,
}

/// Ordered variable groups; exponent vectors are laid out group by group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    groups: Vec<VarGroup>,
    offsets: Vec<usize>,
    nvars: usize,
}

impl Layout {
    pub fn new(groups: Vec<VarGroup>) -> Arc<Layout> {
        let mut offsets = Vec::with_capacity(groups.len());
        let mut nvars = 0;
        for g in &groups {
            offsets.push(nvars);
            nvars += g.count;
        }
        Arc::new(Layout { groups, offsets, nvars })
    }

    /// A single group `x` of `m` variables.
    pub fn single(m: usize) -> Arc<Layout> {
        Layout::new(vec![VarGroup { id: "x".into(), count: m }])
    }

    pub fn groups(&self) -> &[VarGroup] {
        &self.groups
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn range(&self, group: usize) -> std::ops::Range<usize> {
        let start = self.offsets[group];
        start..start + self.groups[group].count
    }

    pub fn group_index(&self, id: &str) -> Option<usize> {
        self.groups.iter().position(|g| g.id == id)
    }
}

/// Exact Laurent polynomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Character {
    layout: Arc<Layout>,
    terms: HashMap<Vec<i32>, Coeff>,
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort();
        f.debug_map().entries(terms).finish()
    }
}

impl Character {
    pub fn zero(layout: Arc<Layout>) -> Self {
        Character { layout, terms: HashMap::new() }
    }

    pub fn one(layout: Arc<Layout>) -> Self {
        let n = layout.nvars();
        Self::monomial(layout, vec![0; n], 1)
    }

    pub fn monomial(layout: Arc<Layout>, exponent: Vec<i32>, coeff: Coeff) -> Self {
        let mut c = Self::zero(layout);
        if coeff != 0 {
            c.terms.insert(exponent, coeff);
        }
        c
    }

    /// Builds a character from raw terms, summing duplicates.
    pub fn from_terms(
        layout: Arc<Layout>,
        terms: impl IntoIterator<Item = (Vec<i32>, Coeff)>,
    ) -> Result<Self> {
        let mut c = Self::zero(layout);
        for (e, k) in terms {
            c.add_term(e, k)?;
        }
        Ok(c)
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponent: &[i32]) -> Coeff {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    /// Terms in lexicographic exponent order.
    pub fn sorted_terms(&self) -> Vec<(Vec<i32>, Coeff)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.clone(), *c)).collect();
        v.sort();
        v
    }

    pub fn add_term(&mut self, exponent: Vec<i32>, coeff: Coeff) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        debug_assert_eq!(exponent.len(), self.layout.nvars());
        match self.terms.entry(exponent) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                let s = checked_add(*o.get(), coeff)?;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
        Ok(())
    }

    fn check_layout(&self, other: &Character) -> Result<()> {
        if self.layout != other.layout {
            return invalid("characters over different variable layouts");
        }
        Ok(())
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &Character, k: Coeff) -> Result<()> {
        self.check_layout(other)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), checked_mul(*c, k)?)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Character) -> Result<Character> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }

    pub fn mul(&self, other: &Character) -> Result<Character> {
        self.check_layout(other)?;
        let mut out = Character::zero(self.layout.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, checked_mul(*c1, *c2)?)?;
            }
        }
        Ok(out)
    }

    /// Inverts every variable: the character of the dual module.
    pub fn dual(&self) -> Character {
        Character {
            layout: self.layout.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), *c)).collect(),
        }
    }

    /// Value at all variables equal to one.
    pub fn eval_at_ones(&self) -> Result<Coeff> {
        self.terms.values().try_fold(0, |acc, &c| checked_add(acc, c))
    }

    /// Invariance under each adjacent transposition inside every group.
    pub fn is_symmetric(&self) -> bool {
        for g in 0..self.layout.groups.len() {
            let r = self.layout.range(g);
            for i in r.start..r.end.saturating_sub(1) {
                for (e, c) in &self.terms {
                    let mut s = e.clone();
                    s.swap(i, i + 1);
                    if self.coeff(&s) != *c {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The monomials of an honest module, repeated by multiplicity.
    pub fn monomial_multiset(&self) -> Result<Vec<Vec<i32>>> {
        let mut out = Vec::new();
        for (e, c) in self.sorted_terms() {
            if c < 0 {
                return invalid("virtual character has no monomial multiset");
            }
            let n = usize::try_from(c).map_err(|_| Error::Overflow("monomial multiset"))?;
            out.extend(std::iter::repeat_n(e, n));
        }
        Ok(out)
    }

    /// Character of `Σ^λ(E)` where `self` is the character of `E`.
    ///
    /// `λ` may have fewer entries than `rank(E)` only when it is non-negative.
    pub fn schur_functor(&self, lambda: &Weight, max_terms: usize) -> Result<Character> {
        let mons = self.monomial_multiset()?;
        substitute_schur(self.layout.clone(), &mons, lambda, max_terms)
    }

    /// Character of `det(E)^p`.
    pub fn det_power(&self, p: i32) -> Result<Character> {
        let mons = self.monomial_multiset()?;
        let mut e = vec![0i32; self.layout.nvars()];
        for m in &mons {
            for (a, b) in e.iter_mut().zip(m) {
                *a += b * p;
            }
        }
        Ok(Character::monomial(self.layout.clone(), e, 1))
    }

    /// Re-expresses the polynomial over `layout` through an exponent map.
    pub fn map_exponents(
        &self,
        layout: Arc<Layout>,
        f: impl Fn(&[i32]) -> Vec<i32>,
    ) -> Result<Character> {
        let mut out = Character::zero(layout);
        for (e, c) in &self.terms {
            out.add_term(f(e), *c)?;
        }
        Ok(out)
    }
}

/// Evaluates `s_λ` at the given Laurent monomials.
pub(crate) fn substitute_schur(
    layout: Arc<Layout>,
    monomials: &[Vec<i32>],
    lambda: &Weight,
    max_terms: usize,
) -> Result<Character> {
    let n = monomials.len();
    let nvars = layout.nvars();
    let shift = if lambda.min_entry() < 0 {
        if lambda.len() != n {
            return invalid(format!("Laurent weight {lambda} needs length {n}"));
        }
        lambda.min_entry()
    } else {
        if lambda.len() > n {
            // Σ^λ of a module of smaller rank is zero.
            return Ok(Character::zero(layout));
        }
        0
    };
    if !lambda.is_dominant() {
        return invalid(format!("Schur functor of non-dominant weight {lambda}"));
    }
    let part = lambda.shifted(-shift).padded(n);
    let mut base = vec![0i32; nvars];
    if shift != 0 {
        for m in monomials {
            for (a, b) in base.iter_mut().zip(m) {
                *a += b * shift;
            }
        }
    }
    if n == 0 {
        return Ok(Character::monomial(layout, base, 1));
    }
    let expansion = schur_expansion(&part, n, max_terms)?;
    let mut out = Character::zero(layout);
    for (content, k) in expansion {
        let mut e = base.clone();
        for (i, &mult) in content.iter().enumerate() {
            if mult != 0 {
                for (a, b) in e.iter_mut().zip(&monomials[i]) {
                    *a += b * mult as i32;
                }
            }
        }
        out.add_term(e, k)?;
        if out.len() > max_terms {
            return Err(Error::ResourceLimit(format!(
                "character of Σ^{lambda} on {n} monomials exceeds {max_terms} terms"
            )));
        }
    }
    Ok(out)
}
