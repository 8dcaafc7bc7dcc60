//! Canonical layered Schur form of bundles on a tower.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{BundleExpr, TowerSpace};
use crate::error::{invalid, Error, Result};
use crate::schur::{checked_add, checked_mul, decompose, dominant_expansion, Character, Coeff, IrrepSum, Layout};
use crate::weights::{dual_weight, Weight};
use crate::Limits;

/// Decoration of one layered term: `Σ^λ V ⊗ ⊗_l (Σ^{β_l} S_l* ⊗ Σ^{γ_l} Q_l*)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LayerKey {
    pub ambient: Weight,
    /// `(β_l, γ_l)` for levels `1..=L`.
    pub layers: Vec<(Weight, Weight)>,
}

/// Integer combination of layered terms; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredForm {
    terms: BTreeMap<LayerKey, Coeff>,
}

type Peeled = Vec<((Weight, Weight), Character)>;

/// Splits a character symmetric in the level-`l` groups as
/// `Σ s_β(S_l*) s_γ(Q_l*) · C_{β,γ}` with `C` free of level-`l` variables.
///
/// Only monomials dominant in both groups are tracked; the peeling order is
/// lexicographic on `(β, γ)`. Variables above level `l` must be absent.
/// Terms come out in decreasing `(β, γ)` order.
pub fn peel_level(tower: &TowerSpace, c: &Character, l: usize, limits: &Limits) -> Result<Peeled> {
    let layout = tower.layout();
    let ga = TowerSpace::sub_group(l);
    let (ra, rb) = (layout.range(ga), layout.range(ga + 1));
    let r = ra.len();
    let above = rb.end;
    let mut work: BTreeMap<Vec<i32>, Character> = BTreeMap::new();
    for (e, k) in c.terms() {
        if e[above..].iter().any(|&x| x != 0) {
            return invalid(format!("character involves levels above {l}"));
        }
        let (a, b) = (&e[ra.clone()], &e[rb.clone()]);
        if !is_dominant(a) || !is_dominant(b) {
            continue;
        }
        let mut key = a.to_vec();
        key.extend_from_slice(b);
        let mut lower = e.clone();
        lower[ra.start..rb.end].iter_mut().for_each(|x| *x = 0);
        work.entry(key).or_insert_with(|| Character::zero(layout.clone())).add_term(lower, *k)?;
    }
    let mut kostka: HashMap<(Weight, usize), Vec<(Weight, Coeff)>> = HashMap::new();
    let mut expansion = |w: &Weight, n: usize| -> Result<Vec<(Weight, Coeff)>> {
        if let Some(v) = kostka.get(&(w.clone(), n)) {
            return Ok(v.clone());
        }
        let v = dominant_expansion(w, n, limits.max_terms)?;
        kostka.insert((w.clone(), n), v.clone());
        Ok(v)
    };
    let mut out = Vec::new();
    while let Some((key, coeff)) = work.pop_last() {
        if coeff.is_zero() {
            continue;
        }
        let beta = Weight(key[..r].to_vec());
        let gamma = Weight(key[r..].to_vec());
        let eb = expansion(&beta, r)?;
        let eg = expansion(&gamma, rb.len())?;
        for (mu, k1) in &eb {
            for (nu, k2) in &eg {
                if *mu == beta && *nu == gamma {
                    continue;
                }
                let mut k = mu.0.clone();
                k.extend_from_slice(&nu.0);
                let entry = work.entry(k).or_insert_with(|| Character::zero(layout.clone()));
                entry.add_scaled(&coeff, -checked_mul(*k1, *k2)?)?;
            }
        }
        if out.len() > limits.max_terms {
            return Err(Error::ResourceLimit("layered decomposition too large".into()));
        }
        out.push(((beta, gamma), coeff));
    }
    Ok(out)
}

fn is_dominant(v: &[i32]) -> bool {
    v.windows(2).all(|p| p[0] >= p[1])
}

impl LayeredForm {
    pub fn zero() -> Self {
        LayeredForm { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LayerKey, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: LayerKey, c: Coeff) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let s = checked_add(self.terms.get(&key).copied().unwrap_or(0), c)?;
        if s == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
        Ok(())
    }

    /// Decomposes a character of `tower`, peeling levels from the top down
    /// and finally the ambient group.
    pub fn from_character(tower: &TowerSpace, c: &Character, limits: &Limits) -> Result<Self> {
        let mut out = LayeredForm::zero();
        let mut layers = Vec::new();
        collect(tower, c, tower.levels(), &mut layers, 1, &mut out, limits)?;
        Ok(out)
    }

    /// The character described by this form.
    pub fn character(&self, tower: &TowerSpace, limits: &Limits) -> Result<Character> {
        let layout = tower.layout();
        let mut out = Character::zero(layout.clone());
        for (key, c) in &self.terms {
            let mut term = group_schur(layout, 0, &key.ambient, limits)?;
            for (i, (b, g)) in key.layers.iter().enumerate() {
                let ga = TowerSpace::sub_group(i + 1);
                term = term.mul(&group_schur(layout, ga, b, limits)?)?;
                term = term.mul(&group_schur(layout, ga + 1, g, limits)?)?;
            }
            out.add_scaled(&term, *c)?;
        }
        Ok(out)
    }

    /// Termwise dual.
    pub fn dual(&self) -> Result<LayeredForm> {
        let mut out = LayeredForm::zero();
        for (k, c) in &self.terms {
            let key = LayerKey {
                ambient: dual_weight(&k.ambient)?,
                layers: k
                    .layers
                    .iter()
                    .map(|(b, g)| Ok((dual_weight(b)?, dual_weight(g)?)))
                    .collect::<Result<_>>()?,
            };
            out.add_term(key, *c)?;
        }
        Ok(out)
    }

    /// Rank: sum of coefficient times dimension of each term.
    pub fn rank(&self) -> Result<Coeff> {
        let mut total: Coeff = 0;
        for (k, c) in &self.terms {
            let mut d = crate::schur::weyl_dim(&k.ambient)?;
            for (b, g) in &k.layers {
                d = checked_mul(d, checked_mul(crate::schur::weyl_dim(b)?, crate::schur::weyl_dim(g)?)?)?;
            }
            total = checked_add(total, checked_mul(d, *c)?)?;
        }
        Ok(total)
    }

    /// Ambient-level sum, for forms on a point.
    pub fn ambient_sum(&self, rank: usize) -> Result<IrrepSum> {
        let mut s = IrrepSum::new(rank);
        for (k, c) in &self.terms {
            if !k.layers.is_empty() {
                return invalid("ambient_sum of a form with Grassmann layers");
            }
            s.add_term(k.ambient.clone(), *c)?;
        }
        Ok(s)
    }
}

fn group_schur(layout: &std::sync::Arc<Layout>, group: usize, w: &Weight, limits: &Limits) -> Result<Character> {
    let units = layout.range(group).map(|i| {
        let mut e = vec![0; layout.nvars()];
        e[i] = 1;
        (e, 1)
    });
    Character::from_terms(layout.clone(), units)?.schur_functor(w, limits.max_terms)
}

fn collect(
    tower: &TowerSpace,
    c: &Character,
    level: usize,
    layers: &mut Vec<(Weight, Weight)>,
    coeff: Coeff,
    out: &mut LayeredForm,
    limits: &Limits,
) -> Result<()> {
    if level == 0 {
        let sum = decompose(&tower.project(c, 0)?, 0)?;
        for (w, k) in sum.terms() {
            let mut ls = layers.clone();
            ls.reverse();
            out.add_term(LayerKey { ambient: w.clone(), layers: ls }, checked_mul(coeff, *k)?)?;
        }
        return Ok(());
    }
    for ((b, g), lower) in peel_level(tower, c, level, limits)? {
        layers.push((b, g));
        collect(tower, &lower, level - 1, layers, coeff, out, limits)?;
        layers.pop();
    }
    Ok(())
}

impl TowerSpace {
    /// Canonical layered form of a valid expression.
    pub fn normalize(&self, e: &BundleExpr, limits: &Limits) -> Result<LayeredForm> {
        let c = self.character(e, limits)?;
        if !c.is_symmetric() {
            return Err(Error::NotSymmetric(format!("character of {e}")));
        }
        LayeredForm::from_character(self, &c, limits)
    }

    /// Layered form on the fiber `G(r_l, C^{n_l})` of level `l`, obtained by
    /// setting every variable below level `l` to one.
    pub fn restrict_to_fiber(&self, e: &BundleExpr, l: usize, limits: &Limits) -> Result<LayeredForm> {
        if l == 0 || l > self.levels() {
            return invalid(format!("no level {l} to restrict to"));
        }
        if e.max_level() > l {
            return invalid(format!("{e} involves levels above {l}"));
        }
        let c = self.character(e, limits)?;
        let fiber = self.fiber(l)?;
        let ga = TowerSpace::sub_group(l);
        let (ra, rb) = (self.layout().range(ga), self.layout().range(ga + 1));
        let nv = fiber.layout().nvars();
        let n = self.step(l).n;
        let fc = c.map_exponents(fiber.layout().clone(), |e| {
            let mut v = vec![0; nv];
            v[n..n + ra.len()].copy_from_slice(&e[ra.clone()]);
            v[n + ra.len()..].copy_from_slice(&e[rb.clone()]);
            v
        })?;
        LayeredForm::from_character(&fiber, &fc, limits)
    }
}

impl fmt::Display for LayeredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 {
                write!(f, "{c}*")?;
            }
            write!(f, "[V{}", k.ambient)?;
            for (l, (b, g)) in k.layers.iter().enumerate() {
                write!(f, " S{}*{} Q{}*{}", l + 1, b, l + 1, g)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
