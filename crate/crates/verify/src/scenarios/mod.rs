//! The scenario registry. Every scenario is a list of assertions whose
//! expected values are stored exactly.

mod sequences;
mod xtilde;
mod y3;

use towercoh::cohomology::{CohomologyTable, Engine};
use towercoh::schur::{Coeff, IrrepSum};
use towercoh::tower::TowerSpace;
use towercoh::{Error, Result};

use crate::report::{run_assertions, Assertion, Kind, Report, Value, Verdict};

pub struct Scenario {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> Vec<Assertion>,
}

pub static SCENARIOS: &[Scenario] = &[
    Scenario { name: "vanishing-n3", description: "A*⊗B(-tH) vanishing battery on X̃, dim V = 4", build: xtilde::vanishing_n3 },
    Scenario { name: "vanishing-n4", description: "A*⊗B(-tH) vanishing battery on X̃, dim V = 5", build: xtilde::vanishing_n4 },
    Scenario { name: "serre-n4", description: "H^•(C(-t)) against H^{8-•}(C*(t-5)) on X̃, dim V = 5", build: xtilde::serre_n4 },
    Scenario { name: "lefschetz-n3", description: "dual Lefschetz collection on X̃, dim V = 4", build: xtilde::lefschetz_n3 },
    Scenario { name: "lefschetz-n4", description: "dual Lefschetz collection on X̃, dim V = 5", build: xtilde::lefschetz_n4 },
    Scenario { name: "quiver-n3", description: "Hom quiver of the strong exceptional collection, dim V = 4", build: xtilde::quiver_n3 },
    Scenario { name: "quiver-n4", description: "Hom quiver of the strong exceptional collection, dim V = 5", build: xtilde::quiver_n4 },
    Scenario { name: "collection-n2", description: "nine-object collection on P(S²F) over G(2,3)", build: xtilde::collection_n2 },
    Scenario { name: "divisor-sequences", description: "χ-consistency of the divisor sequences at the twists they are used with", build: sequences::divisor_sequences },
    Scenario { name: "long-sequences", description: "χ-consistency of the long exact sequences and a forced LES computation", build: sequences::long_sequences },
    Scenario { name: "fiber-g36", description: "nine sheaf shapes on G(3, ∧²C⁴), 0 ≤ t ≤ 5", build: y3::fiber_g36 },
    Scenario { name: "y3-n3", description: "A*⊗B(-t det Q + tL) on Y₃ = G(3, ∧²V), dim V = 4", build: y3::y3_n3 },
    Scenario { name: "y3-n4", description: "A*⊗B(-t det Q + tL) on Y₃ = G(3, ∧²𝔔) over P⁴", build: y3::y3_n4 },
    Scenario { name: "projective-n3", description: "three sheaves on P(V), dim V = 4", build: y3::projective_n3 },
    Scenario { name: "projective-n4", description: "three sheaves on P(𝔔) over P⁴", build: y3::projective_n4 },
    Scenario { name: "plethysm", description: "plethysm and Schur identities on ∧²C⁴", build: y3::plethysm_identities },
    Scenario { name: "p2-ext1", description: "H^•(P², O ⊕ Ω¹)", build: y3::p2_ext1 },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

pub fn names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|s| s.name).collect()
}

/// Runs one scenario, or every scenario for `"all"` with ids prefixed by
/// the scenario name, on a pool of `jobs` threads. `None` for unknown names.
pub fn run(name: &str, engine: &Engine, jobs: usize) -> Option<std::result::Result<Report, Error>> {
    let selected: Vec<&Scenario> = if name == "all" { SCENARIOS.iter().collect() } else { vec![find(name)?] };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => return Some(Err(Error::InvalidArgument(format!("thread pool: {e}")))),
    };
    let mut assertions = Vec::new();
    for s in &selected {
        for mut a in (s.build)() {
            if name == "all" {
                a.id = format!("{}/{}", s.name, a.id);
            }
            assertions.push(a);
        }
    }
    Some(Ok(pool.install(|| run_assertions(name, &assertions, engine))))
}

/// Every `(space, expression)` the scenarios compute cohomology of.
pub fn corpus() -> Vec<(String, String)> {
    let mut out = Vec::new();
    out.extend(xtilde::corpus());
    out.extend(y3::corpus());
    out
}

/// Expected cohomology groups: degree, then `(weight, multiplicity)` pairs.
pub(crate) type Groups = Vec<(u32, Vec<(Vec<i32>, Coeff)>)>;

pub(crate) fn table_of(x: &TowerSpace, groups: &Groups) -> Result<CohomologyTable> {
    let rank = x.ambient_dim();
    let mut t = CohomologyTable::zero(x.dim(), rank);
    for (d, terms) in groups {
        let mut s = IrrepSum::new(rank);
        for (w, m) in terms {
            s.add_term(towercoh::weights::Weight::new(w.clone()), *m)?;
        }
        t.add(*d, &s)?;
    }
    Ok(t)
}

/// `H^•(space, expr)` equals `expected`.
pub(crate) fn cohomology_is(id: String, anchor: String, kind: Kind, space: &str, expr: String, expected: Groups) -> Assertion {
    let space = space.to_string();
    Assertion::new(id, anchor, kind, move |eng: &Engine| {
        let x = TowerSpace::parse(&space)?;
        let got = eng.cohomology(&x.expr(&expr)?, &x)?;
        Ok(Verdict::equal(Value::Table(table_of(&x, &expected)?), Value::Table(got)))
    })
}

pub(crate) fn vanishes(id: String, anchor: String, kind: Kind, space: &str, expr: String) -> Assertion {
    cohomology_is(id, anchor, kind, space, expr, Vec::new())
}

/// `Ext^•(a, b)` equals `expected`.
pub(crate) fn ext_is(id: String, anchor: String, space: &str, a: String, b: String, expected: Groups) -> Assertion {
    let space = space.to_string();
    Assertion::new(id, anchor, Kind::Claim, move |eng: &Engine| {
        let x = TowerSpace::parse(&space)?;
        let got = eng.ext_table(&x.expr(&a)?, &x.expr(&b)?, &x)?;
        Ok(Verdict::equal(Value::Table(table_of(&x, &expected)?), Value::Table(got)))
    })
}

/// Weight of `V*`, `S²V*`, `∧²V*`, the trivial module, `∧²V`.
pub(crate) fn dual_v(n: usize) -> Vec<i32> {
    let mut w = vec![0; n];
    w[n - 1] = -1;
    w
}

pub(crate) fn sym2_dual_v(n: usize) -> Vec<i32> {
    let mut w = vec![0; n];
    w[n - 1] = -2;
    w
}

pub(crate) fn wedge2_dual_v(n: usize) -> Vec<i32> {
    let mut w = vec![0; n];
    w[n - 1] = -1;
    w[n - 2] = -1;
    w
}

pub(crate) fn wedge2_v(n: usize) -> Vec<i32> {
    let mut w = vec![0; n];
    w[0] = 1;
    w[1] = 1;
    w
}

pub(crate) fn trivial(n: usize) -> Vec<i32> {
    vec![0; n]
}

/// A single group in degree `d`.
pub(crate) fn single(d: u32, w: Vec<i32>) -> Groups {
    vec![(d, vec![(w, 1)])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn names_and_ids_are_unique() {
        let names: BTreeSet<&str> = names().into_iter().collect();
        assert_eq!(names.len(), SCENARIOS.len());
        assert!(!names.contains("all"));
        for s in SCENARIOS {
            let list = (s.build)();
            assert!(!list.is_empty(), "{} is empty", s.name);
            let ids: BTreeSet<&str> = list.iter().map(|a| a.id.as_str()).collect();
            assert_eq!(ids.len(), list.len(), "duplicate id in {}", s.name);
            assert!(list.iter().all(|a| !a.anchor.is_empty()), "missing claim text in {}", s.name);
        }
    }

    #[test]
    fn corpus_parses() {
        for (space, expr) in corpus() {
            let x = TowerSpace::parse(&space).unwrap();
            x.rank(&x.expr(&expr).unwrap()).unwrap();
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(run("nope", &Engine::default(), 1).is_none());
    }
}
