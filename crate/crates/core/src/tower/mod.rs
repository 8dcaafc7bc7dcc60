//! Towers of Grassmann bundles over a point and bundles on them.
//!
//! Level 0 is a point carrying the ambient space `V`. Level `l ≥ 1` is the
//! Grassmann bundle `G(r_l, A_l)` of rank-`r_l` subbundles of a bundle `A_l`
//! from lower levels, with universal sequence `0 → S_l → A_l → Q_l → 0`.
//! A projective bundle `P(E)` is `G(1, E)`, so `O(-H) = S`.
//!
//! Characters use one variable group per universal bundle: the roots of `V`,
//! then for each level the roots of `S_l*` and of `Q_l*`.

mod expr;
mod layered;

use std::fmt;
use std::sync::Arc;

pub use expr::{parse_expr, BundleExpr};
pub use layered::{peel_level, LayerKey, LayeredForm};

use crate::error::{Error, Result};
use crate::schur::{weyl_dim, Character, Coeff, Layout, VarGroup};
use crate::Limits;

/// One Grassmann step `G(r, over)` with `rank(over) = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassStep {
    pub r: usize,
    pub n: usize,
    pub over: BundleExpr,
}

/// A validated tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpace {
    ambient_dim: usize,
    steps: Vec<GrassStep>,
    layout: Arc<Layout>,
}

impl TowerSpace {
    /// A point with ambient space of dimension `ambient_dim`.
    pub fn point(ambient_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::Validation("ambient space must be non-zero".into()));
        }
        Ok(TowerSpace {
            ambient_dim,
            steps: Vec::new(),
            layout: Layout::new(vec![VarGroup { id: "V".into(), count: ambient_dim }]),
        })
    }

    /// Appends `G(r, over)`.
    pub fn grass(&self, r: usize, over: BundleExpr) -> Result<Self> {
        let n = self.rank(&over)?;
        if r == 0 || r >= n {
            return Err(Error::Validation(format!("G({r}, {over}) needs 0 < r < rank = {n}")));
        }
        let mut steps = self.steps.clone();
        steps.push(GrassStep { r, n, over });
        Ok(Self::with_steps(self.ambient_dim, steps))
    }

    /// Appends `P(over) = G(1, over)`.
    pub fn proj(&self, over: BundleExpr) -> Result<Self> {
        self.grass(1, over)
    }

    fn with_steps(ambient_dim: usize, steps: Vec<GrassStep>) -> Self {
        let mut groups = vec![VarGroup { id: "V".into(), count: ambient_dim }];
        for (i, s) in steps.iter().enumerate() {
            groups.push(VarGroup { id: format!("S{}*", i + 1), count: s.r });
            groups.push(VarGroup { id: format!("Q{}*", i + 1), count: s.n - s.r });
        }
        TowerSpace { ambient_dim, steps, layout: Layout::new(groups) }
    }

    /// Parses `point(V=n); G(r, expr); P(expr); ...`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut offset = 0;
        let mut tower: Option<TowerSpace> = None;
        for piece in spec.split(';') {
            let base = offset;
            offset += piece.len() + 1;
            if piece.trim().is_empty() {
                continue;
            }
            let mut p = expr::Parser::new(piece, base);
            let step = if p.eat("point(") {
                if tower.is_some() {
                    return Err(p.err("point(...) must be the first step"));
                }
                p.expect("V")?;
                p.expect("=")?;
                let n = p.uint()?;
                p.expect(")")?;
                TowerSpace::point(n)
            } else {
                let Some(t) = tower.as_ref() else {
                    return Err(p.err("a tower starts with point(V=n)"));
                };
                if p.eat("G(") {
                    let r = p.uint()?;
                    p.expect(",")?;
                    let e = p.expr()?;
                    p.expect(")")?;
                    t.grass(r, e)
                } else if p.eat("P(") {
                    let e = p.expr()?;
                    p.expect(")")?;
                    t.proj(e)
                } else {
                    return Err(p.err("expected point(...), G(...) or P(...)"));
                }
            };
            p.ws();
            if !p.at_end() {
                return Err(p.err("unexpected trailing input in tower step"));
            }
            tower = Some(step.map_err(|e| match e {
                Error::Validation(m) => Error::Parse { offset: base, message: m },
                other => other,
            })?);
        }
        tower.ok_or(Error::Parse { offset: 0, message: "empty tower description".into() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Number of Grassmann levels above the point.
    pub fn levels(&self) -> usize {
        self.steps.len()
    }

    /// Step of level `l ≥ 1`.
    pub fn step(&self, l: usize) -> &GrassStep {
        &self.steps[l - 1]
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    /// Group index of the roots of `S_l*`; the roots of `Q_l*` follow it.
    pub fn sub_group(l: usize) -> usize {
        2 * l - 1
    }

    pub fn dim(&self) -> usize {
        self.steps.iter().map(|s| s.r * (s.n - s.r)).sum()
    }

    /// The tower made of the first `levels` steps; its variable layout is a
    /// prefix of this one.
    pub fn truncated(&self, levels: usize) -> TowerSpace {
        Self::with_steps(self.ambient_dim, self.steps[..levels].to_vec())
    }

    /// The fiber `G(r_l, C^{n_l})` of level `l`, as a tower over a point.
    pub fn fiber(&self, l: usize) -> Result<TowerSpace> {
        let s = self.step(l);
        TowerSpace::point(s.n)?.grass(s.r, BundleExpr::AmbientV)
    }

    /// Parses an expression and validates it on this tower.
    pub fn expr(&self, text: &str) -> Result<BundleExpr> {
        let e = parse_expr(text)?;
        self.rank(&e)?;
        Ok(e)
    }

    fn check_level(&self, l: usize, what: &str) -> Result<()> {
        if l == 0 || l > self.levels() {
            return Err(Error::Validation(format!(
                "{what}{l} refers to a level outside 1..={}",
                self.levels()
            )));
        }
        Ok(())
    }

    /// Rank of a valid expression; validates levels and Schur arities.
    pub fn rank(&self, e: &BundleExpr) -> Result<usize> {
        use BundleExpr::*;
        let r = match e {
            AmbientV => self.ambient_dim,
            Sub(l) => {
                self.check_level(*l, "S")?;
                self.step(*l).r
            }
            Quot(l) => {
                self.check_level(*l, "Q")?;
                let s = self.step(*l);
                s.n - s.r
            }
            RelTangent(l) | RelCotangent(l) => {
                self.check_level(*l, "T_rel/Om_rel level ")?;
                let s = self.step(*l);
                s.r * (s.n - s.r)
            }
            Dual(x) => self.rank(x)?,
            Tensor(a, b) => self.rank(a)? * self.rank(b)?,
            Sum(a, b) => self.rank(a)? + self.rank(b)?,
            Det(x, _) => {
                self.rank(x)?;
                1
            }
            Line(t) => {
                for (l, _) in t {
                    if *l > self.levels() {
                        return Err(Error::Validation(format!("H{l} refers to a missing level")));
                    }
                }
                1
            }
            Schur(lam, x) => {
                let n = self.rank(x)?;
                if lam.is_empty() || !lam.is_dominant() {
                    return Err(Error::Validation(format!("schur weight {lam} is not dominant")));
                }
                if lam.len() > n {
                    return Err(Error::Validation(format!("schur weight {lam} longer than rank {n} of {x}")));
                }
                if lam.min_entry() < 0 && lam.len() != n {
                    return Err(Error::Validation(format!(
                        "weight {lam} has negative entries and needs exactly rank {n} entries"
                    )));
                }
                let d = weyl_dim(&lam.padded(n))?;
                usize::try_from(d).map_err(|_| Error::Overflow("rank"))?
            }
        };
        Ok(r)
    }

    fn unit(&self, group: usize, i: usize, sign: i32) -> Vec<i32> {
        let mut e = vec![0; self.layout.nvars()];
        e[self.layout.range(group).start + i] = sign;
        e
    }

    fn roots(&self, group: usize, sign: i32) -> Result<Character> {
        let count = self.layout.groups()[group].count;
        Character::from_terms(self.layout.clone(), (0..count).map(|i| (self.unit(group, i, sign), 1)))
    }

    /// Character of a valid expression over this tower's variables.
    pub fn character(&self, e: &BundleExpr, limits: &Limits) -> Result<Character> {
        self.rank(e)?;
        self.character_unchecked(e, limits)
    }

    fn character_unchecked(&self, e: &BundleExpr, limits: &Limits) -> Result<Character> {
        use BundleExpr::*;
        Ok(match e {
            AmbientV => self.roots(0, 1)?,
            Sub(l) => self.roots(Self::sub_group(*l), -1)?,
            Quot(l) => self.roots(Self::sub_group(*l) + 1, -1)?,
            RelTangent(l) => self.roots(Self::sub_group(*l) + 1, -1)?.mul(&self.roots(Self::sub_group(*l), 1)?)?,
            RelCotangent(l) => self.roots(Self::sub_group(*l), -1)?.mul(&self.roots(Self::sub_group(*l) + 1, 1)?)?,
            Dual(x) => self.character_unchecked(x, limits)?.dual(),
            Tensor(a, b) => self.character_unchecked(a, limits)?.mul(&self.character_unchecked(b, limits)?)?,
            Sum(a, b) => self.character_unchecked(a, limits)?.add(&self.character_unchecked(b, limits)?)?,
            Det(x, p) => self.character_unchecked(x, limits)?.det_power(*p)?,
            Line(t) => {
                let mut exp = vec![0; self.layout.nvars()];
                for &(l, k) in t {
                    let g = if l == 0 { 0 } else { Self::sub_group(l) };
                    for i in self.layout.range(g) {
                        exp[i] += k;
                    }
                }
                Character::monomial(self.layout.clone(), exp, 1)
            }
            Schur(lam, x) => {
                let inner = self.character_unchecked(x, limits)?;
                let n = inner.eval_at_ones()?;
                if lam.len() > 1 && n > limits.max_inner_dim as Coeff {
                    return Err(Error::ResourceLimit(format!(
                        "schur({lam}, {x}) on a bundle of rank {n} exceeds VERIFY_MAX_DIM = {}",
                        limits.max_inner_dim
                    )));
                }
                inner.schur_functor(lam, limits.max_terms)?
            }
        })
    }

    /// `ω = ⊗_l det(Ω_rel(l))`; trivial on a point.
    pub fn canonical_bundle(&self) -> BundleExpr {
        (1..=self.levels())
            .map(|l| BundleExpr::det(BundleExpr::RelCotangent(l), 1))
            .reduce(|a, b| a.tensor(b))
            .unwrap_or_else(BundleExpr::trivial)
    }

    /// Embeds a character of a truncated tower into this tower's layout.
    pub fn lift(&self, c: &Character) -> Result<Character> {
        let n = self.layout.nvars();
        c.map_exponents(self.layout.clone(), |e| {
            let mut v = e.to_vec();
            v.resize(n, 0);
            v
        })
    }

    /// Restricts a character without top-level variables to the truncated tower.
    pub fn project(&self, c: &Character, levels: usize) -> Result<Character> {
        let t = self.truncated(levels);
        let n = t.layout.nvars();
        if c.terms().any(|(e, _)| e[n..].iter().any(|&x| x != 0)) {
            return Err(Error::InvalidArgument("character involves levels above the truncation".into()));
        }
        c.map_exponents(t.layout.clone(), |e| e[..n].to_vec())
    }
}

impl fmt::Display for TowerSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "point(V={})", self.ambient_dim)?;
        for s in &self.steps {
            if s.r == 1 {
                write!(f, "; P({})", s.over)?;
            } else {
                write!(f, "; G({}, {})", s.r, s.over)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for TowerSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TowerSpace::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_example_towers() {
        let x = TowerSpace::parse("point(V=5); G(2,V); P(S^2 S1)").unwrap();
        assert_eq!(x.dim(), 8);
        assert_eq!(x.levels(), 2);
        let y = TowerSpace::parse("point(V=4); G(3, wedge^2 V)").unwrap();
        assert_eq!(y.dim(), 9);
        assert_eq!(y.step(1).n, 6);
        let p = TowerSpace::parse("point(V=4)").unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(TowerSpace::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rejects_bad_towers() {
        assert!(matches!(TowerSpace::parse("point(V=4); G(4, V)"), Err(Error::Parse { .. })));
        assert!(matches!(TowerSpace::parse("G(1, V)"), Err(Error::Parse { .. })));
        match TowerSpace::parse("point(V=4); G(2, S2)") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 11),
            other => panic!("{other:?}"),
        }
        assert!(TowerSpace::parse("point(V=4); P(V); P(wedge^5 V)").is_err());
    }

    #[test]
    fn ranks() {
        let x = TowerSpace::parse("point(V=5); G(2,V); P(S^2 S1)").unwrap();
        assert_eq!(x.rank(&x.expr("S^2 S1").unwrap()).unwrap(), 3);
        assert_eq!(x.rank(&x.expr("T_rel(2) * O(H1 - H2)").unwrap()).unwrap(), 2);
        assert_eq!(x.rank(&x.expr("T_rel(1)").unwrap()).unwrap(), 6);
        assert!(x.expr("S3").is_err());
        assert!(x.expr("schur([1,-1], S1 + S1)").is_err());
    }

    #[test]
    fn character_rank_matches_structural_rank() {
        let x = TowerSpace::parse("point(V=5); G(2,V); P(S^2 S1)").unwrap();
        let l = Limits::default();
        for text in ["S^2 S1", "T_rel(2) * dual(S1)", "wedge^2 V * Q1", "det(Q2, -2) + Om_rel(1)"] {
            let e = x.expr(text).unwrap();
            let c = x.character(&e, &l).unwrap();
            assert_eq!(c.eval_at_ones().unwrap(), x.rank(&e).unwrap() as Coeff, "{text}");
            assert!(c.is_symmetric(), "{text}");
        }
    }
}
