//! Iterated Bott pushforward: exact equivariant cohomology tables, Ext
//! tables, Euler characteristics, Serre duality and collection checks.
//!
//! Pushing a term `Σ^β S_l* ⊗ Σ^γ Q_l* ⊗ π*C` down level `l` gives
//! `Σ^w(A_l*) ⊗ C` in the single degree found by Bott's algorithm on `(β, γ)`,
//! or nothing. Every summand is irreducible for the structure group of its
//! level, so degrees simply add up the tower.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::schur::{decompose, dual_sum, Character, Coeff, IrrepSum};
use crate::tower::{peel_level, BundleExpr, LayeredForm, TowerSpace};
use crate::weights::{bott_regularize, BottResult, Weight};
use crate::Limits;

/// Cohomology groups by degree, as `GL(V)`-modules. Empty degrees are omitted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CohomologyTable {
    dim: usize,
    rank: usize,
    groups: BTreeMap<u32, IrrepSum>,
}

impl CohomologyTable {
    /// The zero table on a space of dimension `dim` with `dim V = rank`.
    pub fn zero(dim: usize, rank: usize) -> Self {
        CohomologyTable { dim, rank, groups: BTreeMap::new() }
    }

    pub fn from_groups(dim: usize, rank: usize, groups: impl IntoIterator<Item = (u32, IrrepSum)>) -> Result<Self> {
        let mut t = CohomologyTable::zero(dim, rank);
        for (d, s) in groups {
            t.add(d, &s)?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// `H^d`, or `None` when it vanishes.
    pub fn get(&self, d: u32) -> Option<&IrrepSum> {
        self.groups.get(&d)
    }

    pub fn groups(&self) -> impl Iterator<Item = (u32, &IrrepSum)> {
        self.groups.iter().map(|(d, s)| (*d, s))
    }

    pub fn add(&mut self, d: u32, s: &IrrepSum) -> Result<()> {
        if d as usize > self.dim {
            return invalid(format!("degree {d} above dimension {}", self.dim));
        }
        if s.rank() != self.rank {
            return invalid("irrep sum of the wrong rank in a cohomology table");
        }
        let sum = match self.groups.get(&d) {
            Some(old) => old.plus(s)?,
            None => s.clone(),
        };
        if sum.is_empty() {
            self.groups.remove(&d);
        } else {
            self.groups.insert(d, sum);
        }
        Ok(())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.groups.values().all(IrrepSum::is_nonnegative)
    }

    /// `Σ_d (-1)^d H^d` as a virtual module.
    pub fn euler(&self) -> Result<IrrepSum> {
        let mut s = IrrepSum::new(self.rank);
        for (d, g) in &self.groups {
            s.add_scaled(g, if d % 2 == 0 { 1 } else { -1 })?;
        }
        Ok(s)
    }

    /// Dimension of each non-zero group.
    pub fn total_dims(&self) -> Result<BTreeMap<u32, Coeff>> {
        self.groups.iter().map(|(d, s)| Ok((*d, s.total_dim()?))).collect()
    }

    /// The table with `H^d` replaced by `(H^{dim-d})*`.
    pub fn serre_dual(&self) -> CohomologyTable {
        CohomologyTable {
            dim: self.dim,
            rank: self.rank,
            groups: self.groups.iter().map(|(d, s)| (self.dim as u32 - d, dual_sum(s))).collect(),
        }
    }

    /// Every group tensored with `det V^c`.
    pub fn det_twist(&self, c: i32) -> CohomologyTable {
        CohomologyTable {
            dim: self.dim,
            rank: self.rank,
            groups: self.groups.iter().map(|(d, s)| (*d, s.det_twist(c))).collect(),
        }
    }

    /// First degree where `self` and `other` differ.
    pub fn first_difference(&self, other: &CohomologyTable) -> Option<u32> {
        let degrees: std::collections::BTreeSet<u32> = self.groups.keys().chain(other.groups.keys()).copied().collect();
        degrees.into_iter().find(|d| self.groups.get(d) != other.groups.get(d))
    }
}

impl fmt::Debug for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "{{}}");
        }
        write!(f, "{{")?;
        for (i, (d, s)) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{d}: {s}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of comparing `H^•(E)` with the graded dual of a partner table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreReport {
    pub lhs: CohomologyTable,
    pub rhs: CohomologyTable,
    /// First degree `d` with `lhs(d) != rhs(dim - d)*`.
    pub first_mismatch: Option<u32>,
}

impl SerreReport {
    fn new(lhs: CohomologyTable, rhs: CohomologyTable) -> Self {
        let first_mismatch = lhs.first_difference(&rhs.serre_dual());
        SerreReport { lhs, rhs, first_mismatch }
    }

    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// How a collection's blocks are twisted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollectionMode {
    /// Objects in the listed order, no twists.
    Plain,
    /// Blocks shrink as the twist grows.
    Lefschetz,
    /// Blocks shrink as the twist decreases.
    DualLefschetz,
}

/// One object and the twists at which it appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionObject {
    pub expr: BundleExpr,
    pub twists: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionSpec {
    pub mode: CollectionMode,
    /// Line bundle whose powers twist the blocks.
    pub twist: BundleExpr,
    pub objects: Vec<CollectionObject>,
}

#[derive(Clone, Debug)]
pub struct ObjectVerdict {
    pub object: usize,
    pub table: Result<CohomologyTable>,
    pub exceptional: bool,
}

/// `Hom^•(items[later], items[earlier])`, required to vanish.
#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub later: usize,
    pub earlier: usize,
    pub table: Result<CohomologyTable>,
    pub vanishes: bool,
}

#[derive(Clone, Debug)]
pub struct CollectionReport {
    /// `(object index, twist)` in collection order.
    pub items: Vec<(usize, i32)>,
    pub labels: Vec<String>,
    pub objects: Vec<ObjectVerdict>,
    pub pairs: Vec<PairVerdict>,
}

impl CollectionReport {
    pub fn all_ok(&self) -> bool {
        self.objects.iter().all(|o| o.exceptional) && self.pairs.iter().all(|p| p.vanishes)
    }
}

impl CollectionSpec {
    /// Collection order: ascending twist, listed order inside a block.
    pub fn items(&self) -> Result<Vec<(usize, i32)>> {
        if self.mode == CollectionMode::Plain {
            return Ok((0..self.objects.len()).map(|i| (i, 0)).collect());
        }
        let mut twists: Vec<i32> = self.objects.iter().flat_map(|o| o.twists.iter().copied()).collect();
        twists.sort_unstable();
        twists.dedup();
        let block = |k: i32| -> Vec<usize> {
            (0..self.objects.len()).filter(|&i| self.objects[i].twists.contains(&k)).collect()
        };
        for w in twists.windows(2) {
            let (lo, hi) = (block(w[0]), block(w[1]));
            let (small, big) = match self.mode {
                CollectionMode::DualLefschetz => (&lo, &hi),
                _ => (&hi, &lo),
            };
            if !small.iter().all(|i| big.contains(i)) {
                return Err(Error::Validation(format!(
                    "blocks at twists {} and {} are not nested as the mode requires",
                    w[0], w[1]
                )));
            }
        }
        Ok(twists.iter().flat_map(|&k| block(k).into_iter().map(move |i| (i, k))).collect())
    }
}

/// The computation engine: size limits plus the pushforward machinery.
#[derive(Clone, Debug, Default)]
pub struct Engine {
    pub limits: Limits,
}

impl Engine {
    pub fn new(limits: Limits) -> Self {
        Engine { limits }
    }

    pub fn character(&self, e: &BundleExpr, x: &TowerSpace) -> Result<Character> {
        x.character(e, &self.limits)
    }

    pub fn normalize(&self, e: &BundleExpr, x: &TowerSpace) -> Result<LayeredForm> {
        x.normalize(e, &self.limits)
    }

    /// Pushes degree-graded characters down level `l`.
    fn push_level(&self, x: &TowerSpace, states: BTreeMap<u32, Character>, l: usize) -> Result<BTreeMap<u32, Character>> {
        let step = x.step(l);
        let a_dual = x.character(&step.over, &self.limits)?.dual();
        if step.n > self.limits.max_inner_dim && a_dual.len() > 1 {
            return Err(Error::ResourceLimit(format!(
                "Schur functors of {} (rank {}) exceed VERIFY_MAX_DIM = {}",
                step.over, step.n, self.limits.max_inner_dim
            )));
        }
        let mut cache: HashMap<Weight, Character> = HashMap::new();
        let mut out: BTreeMap<u32, Character> = BTreeMap::new();
        for (deg, ch) in states {
            for ((beta, gamma), lower) in peel_level(x, &ch, l, &self.limits)? {
                let BottResult::Regular { degree, dominant } = bott_regularize(&beta.concat(&gamma))? else {
                    continue;
                };
                if !cache.contains_key(&dominant) {
                    let s = a_dual.schur_functor(&dominant, self.limits.max_terms)?;
                    cache.insert(dominant.clone(), s);
                }
                let pushed = cache[&dominant].mul(&lower)?;
                if pushed.len() > self.limits.max_terms {
                    return Err(Error::ResourceLimit(format!("pushforward character exceeds {} terms", self.limits.max_terms)));
                }
                out.entry(deg + degree)
                    .or_insert_with(|| Character::zero(x.layout().clone()))
                    .add_scaled(&pushed, 1)?;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Derived pushforward of a layered form along the top level of `x`,
    /// as forms on the truncated tower, by degree.
    pub fn pushforward_once(&self, f: &LayeredForm, x: &TowerSpace) -> Result<Vec<(u32, LayeredForm)>> {
        let top = x.levels();
        if top == 0 {
            return invalid("pushforward from a point");
        }
        let mut states = BTreeMap::new();
        states.insert(0, f.character(x, &self.limits)?);
        let base = x.truncated(top - 1);
        self.push_level(x, states, top)?
            .into_iter()
            .map(|(d, c)| Ok((d, LayeredForm::from_character(&base, &x.project(&c, top - 1)?, &self.limits)?)))
            .collect()
    }

    /// Cohomology of a virtual or honest character on `x`.
    pub fn cohomology_of_character(&self, c: &Character, x: &TowerSpace) -> Result<CohomologyTable> {
        let mut states = BTreeMap::new();
        states.insert(0u32, c.clone());
        for l in (1..=x.levels()).rev() {
            states = self.push_level(x, states, l)?;
        }
        let mut table = CohomologyTable::zero(x.dim(), x.ambient_dim());
        for (d, ch) in states {
            let sum = decompose(&x.project(&ch, 0)?, 0)?;
            table.add(d, &sum)?;
        }
        Ok(table)
    }

    /// `H^•(x, e)`.
    pub fn cohomology(&self, e: &BundleExpr, x: &TowerSpace) -> Result<CohomologyTable> {
        let c = self.character(e, x)?;
        let table = self.cohomology_of_character(&c, x)?;
        if !table.is_nonnegative() {
            return Err(Error::Internal(format!("negative multiplicity in the cohomology of {e}")));
        }
        Ok(table)
    }

    /// `Ext^•(e1, e2) = H^•(e1* ⊗ e2)`.
    pub fn ext_table(&self, e1: &BundleExpr, e2: &BundleExpr, x: &TowerSpace) -> Result<CohomologyTable> {
        self.cohomology(&e1.clone().dual().tensor(e2.clone()), x)
    }

    /// `χ` as a virtual `GL(V)`-module and as an integer.
    pub fn euler_char(&self, e: &BundleExpr, x: &TowerSpace) -> Result<(IrrepSum, Coeff)> {
        let s = self.cohomology(e, x)?.euler()?;
        let n = s.total_dim()?;
        Ok((s, n))
    }

    /// Serre duality against `ω_x`: `H^d(e) ≅ H^{dim-d}(e* ⊗ ω)*`.
    pub fn serre_duality(&self, e: &BundleExpr, x: &TowerSpace) -> Result<SerreReport> {
        let lhs = self.cohomology(e, x)?;
        let rhs = self.cohomology(&e.clone().dual().tensor(x.canonical_bundle()), x)?;
        Ok(SerreReport::new(lhs, rhs))
    }

    /// Compares `H^d(C ⊗ T^{-t})` with `H^{dim-d}(C* ⊗ T^{t-k})*`.
    pub fn serre_dual_pair_check(&self, c: &BundleExpr, x: &TowerSpace, twist: &BundleExpr, t: i32, k: i32) -> Result<SerreReport> {
        let lhs = self.cohomology(&c.clone().tensor(power(twist, -t)), x)?;
        let rhs = self.cohomology(&c.clone().dual().tensor(power(twist, t - k)), x)?;
        Ok(SerreReport::new(lhs, rhs))
    }

    /// Exceptionality of every object and vanishing of `Hom^•(later, earlier)`
    /// for every ordered pair. Pairs are evaluated in parallel on the current
    /// rayon pool; results do not depend on scheduling.
    pub fn check_collection(&self, spec: &CollectionSpec, x: &TowerSpace) -> Result<CollectionReport> {
        for o in &spec.objects {
            x.rank(&o.expr)?;
        }
        x.rank(&spec.twist)?;
        let items = spec.items()?;
        let labels = items
            .iter()
            .map(|&(i, k)| if spec.mode == CollectionMode::Plain { spec.objects[i].expr.to_string() } else { format!("{} @ {k}", spec.objects[i].expr) })
            .collect();
        let used: Vec<usize> = {
            let mut v: Vec<usize> = items.iter().map(|&(i, _)| i).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let objects: Vec<ObjectVerdict> = used
            .par_iter()
            .map(|&i| {
                let e = &spec.objects[i].expr;
                let table = self.ext_table(e, e, x);
                let exceptional = matches!(&table, Ok(t) if *t == CohomologyTable::from_groups(x.dim(), x.ambient_dim(), [(0, IrrepSum::trivial(x.ambient_dim()))]).expect("valid table"));
                ObjectVerdict { object: i, table, exceptional }
            })
            .collect();
        let mut keys: Vec<(usize, usize, i32)> = Vec::new();
        for a in 0..items.len() {
            for b in 0..a {
                let (li, lk) = items[a];
                let (ei, ek) = items[b];
                keys.push((li, ei, ek - lk));
            }
        }
        keys.sort_unstable();
        keys.dedup();
        let computed: Vec<Result<CohomologyTable>> = keys
            .par_iter()
            .map(|&(li, ei, d)| {
                let later = &spec.objects[li].expr;
                let earlier = spec.objects[ei].expr.clone().tensor(power(&spec.twist, d));
                self.ext_table(later, &earlier, x)
            })
            .collect();
        let lookup: HashMap<(usize, usize, i32), &Result<CohomologyTable>> = keys.iter().copied().zip(computed.iter()).collect();
        let mut pairs = Vec::new();
        for a in 0..items.len() {
            for b in 0..a {
                let (li, lk) = items[a];
                let (ei, ek) = items[b];
                let table = lookup[&(li, ei, ek - lk)].clone();
                let vanishes = matches!(&table, Ok(t) if t.is_zero());
                pairs.push(PairVerdict { later: a, earlier: b, table, vanishes });
            }
        }
        Ok(CollectionReport { items, labels, objects, pairs })
    }
}

/// `L^k` for a line bundle expression `L`.
pub fn power(line: &BundleExpr, k: i32) -> BundleExpr {
    match line {
        BundleExpr::Line(t) => BundleExpr::line_combo(&t.iter().map(|&(l, c)| (l, c * k)).collect::<Vec<_>>()),
        other => BundleExpr::det(other.clone(), k),
    }
}

/// Sum of `χ` over a list of tables with alternating signs.
pub fn alternating_sum(tables: &[CohomologyTable]) -> Result<IrrepSum> {
    let rank = tables.first().map(|t| t.rank()).unwrap_or(0);
    let mut s = IrrepSum::new(rank);
    for (i, t) in tables.iter().enumerate() {
        s.add_scaled(&t.euler()?, if i % 2 == 0 { 1 } else { -1 })?;
    }
    Ok(s)
}
