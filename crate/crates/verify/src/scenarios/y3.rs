//! Scenarios on Y₃ = G(3, ∧²𝔔), its fiber G(3, ∧²C⁴), P(𝔔), and the
//! plethysm identities used there.

use towercoh::cohomology::Engine;
use towercoh::schur::{plethysm, weyl_dim, IrrepSum};
use towercoh::tower::TowerSpace;
use towercoh::weights::Weight;

use super::{cohomology_is, single, trivial, vanishes, wedge2_v, Groups};
use crate::report::{Assertion, Kind, Value, Verdict};

const Y3_N3: &str = "point(V=4); G(3, wedge^2 V)";
const Y3_N4: &str = "point(V=5); G(1,V); G(3, wedge^2 Q1)";

/// Names on Y₃: the space, 𝔔, the universal sub and quotient, and L.
struct Y3 {
    space: &'static str,
    frak_q: &'static str,
    sub: &'static str,
    quot: &'static str,
    l: &'static str,
}

const N3: Y3 = Y3 { space: Y3_N3, frak_q: "V", sub: "S1", quot: "Q1", l: "L0" };
const N4: Y3 = Y3 { space: Y3_N4, frak_q: "Q1", sub: "S2", quot: "Q2", l: "L1" };

impl Y3 {
    fn sheaves(&self) -> [(&'static str, String); 4] {
        [
            ("O", "O".to_string()),
            ("𝔔", self.frak_q.to_string()),
            ("S*(L)", format!("dual({}) * O({})", self.sub, self.l)),
            ("Q", self.quot.to_string()),
        ]
    }

    fn twisted(&self, a: &str, b: &str, t: i32) -> String {
        format!("dual({a}) * ({b}) * det({}, {}) * O({t}{})", self.quot, -t, self.l)
    }
}

fn y3(y: &Y3, label: &str) -> Vec<Assertion> {
    let sheaves = y.sheaves();
    let mut out = Vec::new();
    for t in 1..=5 {
        for (la, a) in &sheaves {
            for (lb, b) in &sheaves {
                out.push(vanishes(
                    format!("t{t}/A={la}/B={lb}"),
                    format!("H^•(Y₃, A*⊗B(-t det Q + tL)) = 0 for 1 ≤ t ≤ 5 ({label})"),
                    Kind::Claim,
                    y.space,
                    y.twisted(a, b, t),
                ));
            }
        }
    }
    let zero_pairs = [("𝔔", "O"), ("S*(L)", "O"), ("Q", "O"), ("S*(L)", "𝔔"), ("Q", "𝔔"), ("Q", "S*(L)")];
    let find = |l: &str| sheaves.iter().find(|(n, _)| *n == l).map(|(_, e)| e.clone()).expect("known sheaf");
    for (la, lb) in zero_pairs {
        out.push(vanishes(
            format!("t0/A={la}/B={lb}"),
            format!("H^•(Y₃, A*⊗B) = 0 for the six listed pairs at t = 0 ({label})"),
            Kind::Claim,
            y.space,
            y.twisted(&find(la), &find(lb), 0),
        ));
    }
    out
}

pub(super) fn y3_n3() -> Vec<Assertion> {
    y3(&N3, "dim V = 4")
}

pub(super) fn y3_n4() -> Vec<Assertion> {
    y3(&N4, "dim V = 5")
}

const FIBER_SHAPES: [(&str, &str); 9] = [
    ("O", "O"),
    ("S", "S1"),
    ("S*", "dual(S1)"),
    ("Q", "Q1"),
    ("Q*", "dual(Q1)"),
    ("S⊗Q", "S1 * Q1"),
    ("S*⊗Q*", "dual(S1) * dual(Q1)"),
    ("S*⊗S", "dual(S1) * S1"),
    ("Q*⊗Q", "dual(Q1) * Q1"),
];

pub(super) fn fiber_g36() -> Vec<Assertion> {
    let n = 4;
    let mut out = Vec::new();
    for t in 0..=5 {
        for (label, e) in FIBER_SHAPES {
            let expected: Groups = match (t, label) {
                (0, "S*") => single(0, vec![0, 0, -1, -1]),
                (0, "Q") => single(0, wedge2_v(n)),
                (0, "S*⊗S") | (0, "Q*⊗Q") => single(0, trivial(n)),
                _ => Vec::new(),
            };
            out.push(cohomology_is(
                format!("t{t}/{label}"),
                "on G(3,6) the nine shapes twisted by O(-t) vanish for 0 ≤ t ≤ 5 except S*, Q, S*⊗S, Q*⊗Q at t = 0, \
                 with H⁰(S*) = ∧²V*, H⁰(Q) = ∧²V and one-dimensional endomorphisms"
                    .to_string(),
                Kind::Claim,
                Y3_N3,
                format!("{e} * O(-{t}H1)"),
                expected,
            ));
        }
    }
    out
}

fn projective(space: &str, sheaves: [(&str, &str); 3], label: &str) -> Vec<Assertion> {
    sheaves
        .iter()
        .map(|(name, e)| {
            vanishes(
                name.to_string(),
                format!("all cohomology of O(-H-3L), (R_V/R)*(-2L) and 𝔔(-H-3L) on P(𝔔) vanishes ({label})"),
                Kind::Claim,
                space,
                e.to_string(),
            )
        })
        .collect()
}

pub(super) fn projective_n3() -> Vec<Assertion> {
    projective(
        "point(V=4); P(V)",
        [("O(-H-3L)", "O(-H1 - 3L0)"), ("(R_V/R)*(-2L)", "dual(Q1) * O(-2L0)"), ("𝔔(-H-3L)", "V * O(-H1 - 3L0)")],
        "dim V = 4",
    )
}

pub(super) fn projective_n4() -> Vec<Assertion> {
    projective(
        "point(V=5); G(1,V); P(Q1)",
        [("O(-H-3L)", "O(-H2 - 3L1)"), ("(R_V/R)*(-2L)", "dual(Q2) * O(-2L1)"), ("𝔔(-H-3L)", "Q1 * O(-H2 - 3L1)")],
        "dim V = 5",
    )
}

fn sum(rank: usize, terms: &[&[i32]]) -> IrrepSum {
    let pairs: Vec<(&[i32], i128)> = terms.iter().map(|w| (*w, 1)).collect();
    IrrepSum::from_pairs(rank, &pairs).expect("registry weights are dominant")
}

fn plethysm_is(id: &str, anchor: &str, outer: &[i32], inner: &[i32], rank: usize, expected: &[&[i32]]) -> Assertion {
    let (outer, inner) = (Weight::new(outer.to_vec()), Weight::new(inner.to_vec()));
    let expected = sum(rank, expected);
    Assertion::new(id, anchor, Kind::Claim, move |eng: &Engine| {
        let got = plethysm(&outer, &inner, rank, &eng.limits)?;
        Ok(Verdict::equal(Value::Sum(expected.clone()), Value::Sum(got)))
    })
}

const SCHUR1: [&[i32]; 4] = [&[2, 0, 0, 0], &[1, 1, 1, -1], &[1, 1, 0, 0], &[2, 1, 0, -1]];
const SCHUR2: [&[i32]; 2] = [&[1, 1, 1, -1], &[2, 1, 0, -1]];

/// `H⁰(Y₃, ∧²Q ⊗ Q) ⊗ ∧⁴V*` on the dim V = 4 space.
fn schur1_side(eng: &Engine) -> towercoh::Result<IrrepSum> {
    let x = TowerSpace::parse(Y3_N3)?;
    let t = eng.cohomology(&x.expr("schur([1,1],Q1) * Q1")?, &x)?;
    if t.groups().any(|(d, _)| d != 0) {
        return Err(towercoh::Error::Validation(format!("higher cohomology in {t}")));
    }
    Ok(t.get(0).cloned().unwrap_or_else(|| IrrepSum::new(4)).det_twist(-1))
}

/// `H⁰(P(V), Q ⊗ Q* ⊗ O(2)) ⊗ ∧⁴V` with `Q = (Ω¹(1))*`.
fn schur2_side(eng: &Engine) -> towercoh::Result<IrrepSum> {
    let x = TowerSpace::parse("point(V=4); P(V)")?;
    let t = eng.cohomology(&x.expr("Q1 * dual(Q1) * O(2H1)")?, &x)?;
    if t.groups().any(|(d, _)| d != 0) {
        return Err(towercoh::Error::Validation(format!("higher cohomology in {t}")));
    }
    Ok(t.get(0).cloned().unwrap_or_else(|| IrrepSum::new(4)).det_twist(1))
}

pub(super) fn plethysm_identities() -> Vec<Assertion> {
    let mut out = vec![
        plethysm_is("wedge3-wedge2", "∧³(∧²C⁴) = Σ^(3,1,1,1) ⊕ Σ^(2,2,2,0)", &[1, 1, 1], &[1, 1], 4, &[&[3, 1, 1, 1], &[2, 2, 2, 0]]),
        plethysm_is("schur21-wedge2", "Σ^(2,1)(∧²C⁴) = Σ^(2,2,1,1) ⊕ Σ^(3,2,1,0)", &[2, 1], &[1, 1], 4, &[&[2, 2, 1, 1], &[3, 2, 1, 0]]),
        plethysm_is("sym2-sym2", "S²(S²F) = S⁴F ⊕ (det F)² for rank F = 2", &[2], &[2], 2, &[&[4, 0], &[2, 2]]),
    ];
    out.push(Assertion::new("dims-10-10-20", "dim Σ^(3,1,1,1)C⁴ = dim Σ^(2,2,2,0)C⁴ = 10, total C(6,3) = 20", Kind::Identity, |_: &Engine| {
        let a = weyl_dim(&Weight::new(vec![3, 1, 1, 1]))?;
        let b = weyl_dim(&Weight::new(vec![2, 2, 2, 0]))?;
        Ok(Verdict::equal(Value::Text("10 + 10 = 20".into()), Value::Text(format!("{a} + {b} = {}", a + b))))
    }));
    out.push(Assertion::new(
        "schur1-plethysm-route",
        "H⁰(Y₃, ∧²Q⊗Q) = ∧³(∧²V) ⊕ Σ^(2,1)(∧²V)",
        Kind::CrossCheck,
        |eng: &Engine| {
            let x = TowerSpace::parse(Y3_N3)?;
            let got = eng.cohomology(&x.expr("schur([1,1],Q1) * Q1")?, &x)?;
            let a = plethysm(&Weight::new(vec![1, 1, 1]), &Weight::new(vec![1, 1]), 4, &eng.limits)?;
            let b = plethysm(&Weight::new(vec![2, 1]), &Weight::new(vec![1, 1]), 4, &eng.limits)?;
            let want = towercoh::cohomology::CohomologyTable::from_groups(9, 4, [(0, a.plus(&b)?)])?;
            Ok(Verdict::equal(Value::Table(want), Value::Table(got)))
        },
    ));
    out.push(Assertion::new(
        "schur1",
        "H⁰(Y₃, Q*⊗Q(det Q)) ⊗ ∧⁴V* = Σ^(2,0,0,0) ⊕ Σ^(1,1,1,-1) ⊕ Σ^(1,1,0,0) ⊕ Σ^(2,1,0,-1)",
        Kind::Claim,
        |eng: &Engine| Ok(Verdict::equal(Value::Sum(sum(4, &SCHUR1)), Value::Sum(schur1_side(eng)?))),
    ));
    out.push(Assertion::new(
        "schur2",
        "H⁰(P(V), (Ω¹(1))*⊗Ω¹(1)⊗O(2)) ⊗ ∧⁴V = Σ^(1,1,1,-1) ⊕ Σ^(2,1,0,-1)",
        Kind::Claim,
        |eng: &Engine| Ok(Verdict::equal(Value::Sum(sum(4, &SCHUR2)), Value::Sum(schur2_side(eng)?))),
    ));
    out.push(Assertion::new(
        "common-summands",
        "Σ^(1,1,1,-1)V and Σ^(2,1,0,-1)V occur in both Schur identities",
        Kind::Claim,
        |eng: &Engine| {
            let (a, b) = (schur1_side(eng)?, schur2_side(eng)?);
            let mut common = IrrepSum::new(4);
            for (w, m) in a.terms() {
                let k = (*m).min(b.multiplicity(w));
                if k > 0 {
                    common.add_term(w.clone(), k)?;
                }
            }
            Ok(Verdict::equal(Value::Sum(sum(4, &SCHUR2)), Value::Sum(common)))
        },
    ));
    out
}

pub(super) fn p2_ext1() -> Vec<Assertion> {
    vec![cohomology_is(
        "O+Omega1".into(),
        "H^•(P², O ⊕ Ω¹) = C in degree 1 only".into(),
        Kind::Claim,
        "point(V=3); P(V)",
        "O + Om_rel(1)".into(),
        single(1, trivial(3)),
    )]
}

pub(super) fn corpus() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for y in [&N3, &N4] {
        let sheaves = y.sheaves();
        for (_, a) in &sheaves {
            for (_, b) in &sheaves {
                for t in [0, 1, 3] {
                    out.push((y.space.to_string(), y.twisted(a, b, t)));
                }
            }
        }
    }
    for (_, e) in FIBER_SHAPES {
        out.push((Y3_N3.to_string(), format!("{e} * O(-1H1)")));
    }
    out.push(("point(V=3); P(V)".into(), "O + Om_rel(1)".into()));
    out.push(("point(V=5); G(1,V); P(Q1)".into(), "dual(Q2) * O(-2L1)".into()));
    out
}
