//! Scenarios on X̃ = P(S²F) over G(2, V), where F = S1, H = H2 is the
//! relative hyperplane class and L = L1 the Plücker class.

use towercoh::cohomology::{power, CollectionMode, CollectionObject, CollectionSpec, Engine};
use towercoh::tower::{parse_expr, BundleExpr, TowerSpace};

use super::{dual_v, ext_is, single, sym2_dual_v, trivial, vanishes, wedge2_dual_v, Groups};
use crate::report::{Assertion, Kind, Value, Verdict};

pub(super) fn xtilde(dim_v: usize) -> String {
    format!("point(V={dim_v}); G(2,V); P(S^2 S1)")
}

/// The four bundles of the vanishing battery: label and expression.
const BATTERY: [(&str, &str); 4] =
    [("O(-H)", "O(-H2)"), ("O(-L)", "O(-L1)"), ("F", "S1"), ("T(-H+L)", "T_rel(2) * O(L1 - H2)")];

fn product(a: &str, b: &str) -> String {
    format!("dual({a}) * ({b})")
}

fn battery(dim_v: usize, twists: &[(i32, bool)], anchor: &str) -> Vec<Assertion> {
    let space = xtilde(dim_v);
    let mut out = Vec::new();
    for &(t, allow_tangent_b) in twists {
        for (la, a) in BATTERY {
            for (lb, b) in BATTERY {
                if !allow_tangent_b && lb == "T(-H+L)" {
                    continue;
                }
                let expr = format!("{} * O(-{t}H2)", product(a, b));
                out.push(vanishes(format!("t{t}/A={la}/B={lb}"), anchor.to_string(), Kind::Claim, &space, expr));
            }
        }
    }
    out
}

pub(super) fn vanishing_n3() -> Vec<Assertion> {
    battery(
        4,
        &[(1, true), (2, false), (3, false)],
        "H^•(X̃, A*⊗B(-tH)) = 0 for dim V = 4: t = 1, and t = 2, 3 when B ≠ T(-H+L)",
    )
}

pub(super) fn vanishing_n4() -> Vec<Assertion> {
    battery(5, &[(1, true), (2, true), (3, true), (4, true)], "H^•(X̃, A*⊗B(-tH)) = 0 for dim V = 5 and 1 ≤ t ≤ 4")
}

/// Exponent `c` with `O(-5H) ≅ ω ⊗ det V^c` as GL(V)-bundles, read off from
/// `H^8(O(-5H)) = det V^c`. The duality below holds up to this character.
fn serre_character(eng: &Engine, x: &TowerSpace) -> towercoh::Result<i32> {
    let t = eng.cohomology(&power(&BundleExpr::line(2, 1), -5), x)?;
    let top = t.get(x.dim() as u32).filter(|_| t.groups().count() == 1);
    match top.map(|s| s.terms().map(|(w, m)| (w.entries().to_vec(), *m)).collect::<Vec<_>>()) {
        Some(terms) if terms.len() == 1 && terms[0].1 == 1 && terms[0].0.windows(2).all(|p| p[0] == p[1]) => Ok(terms[0].0[0]),
        _ => Err(towercoh::Error::Internal(format!("H^•(O(-5H)) = {t} is not a single character in top degree"))),
    }
}

pub(super) fn serre_n4() -> Vec<Assertion> {
    let mut out = Vec::new();
    for (la, a) in BATTERY {
        for (lb, b) in BATTERY {
            for t in -5..=10 {
                let c = product(a, b);
                out.push(Assertion::new(
                    format!("t{t}/A={la}/B={lb}"),
                    "H^d(X̃, C(-t)) ≅ H^{8-d}(X̃, C*(t-5))* ⊗ det V^c for C = A*⊗B, dim V = 5, where O(-5H) ≅ ω ⊗ det V^c",
                    Kind::Claim,
                    move |eng: &Engine| {
                        let x = TowerSpace::parse(&xtilde(5))?;
                        let k = serre_character(eng, &x)?;
                        let r = eng.serre_dual_pair_check(&x.expr(&c)?, &x, &BundleExpr::line(2, 1), t, 5)?;
                        let expected = r.rhs.serre_dual().det_twist(k);
                        Ok(Verdict { pass: expected == r.lhs, expected: Value::Table(expected), got: Value::Table(r.lhs) })
                    },
                ));
            }
        }
    }
    out
}

fn spec(mode: CollectionMode, objects: &[(&str, &[i32])]) -> CollectionSpec {
    CollectionSpec {
        mode,
        twist: BundleExpr::line(2, 1),
        objects: objects
            .iter()
            .map(|(e, ts)| CollectionObject { expr: parse_expr(e).expect("registry expression"), twists: ts.to_vec() })
            .collect(),
    }
}

/// Exceptionality of each object and `Hom^•(later, earlier) = 0` for all
/// ordered pairs, one assertion each.
fn collection(space: &str, spec: &CollectionSpec, anchor: &str) -> Vec<Assertion> {
    let items = spec.items().expect("registry collection is well nested");
    let twisted = |(i, k): (usize, i32)| -> String {
        let e = spec.objects[i].expr.to_string();
        if spec.mode == CollectionMode::Plain || k == 0 {
            e
        } else {
            format!("({e}) * O({k}H2)")
        }
    };
    let n = TowerSpace::parse(space).expect("registry space").ambient_dim();
    let mut out = Vec::new();
    for o in &spec.objects {
        let e = o.expr.to_string();
        out.push(ext_is(format!("exceptional/{e}"), format!("{anchor}: each object is exceptional"), space, e.clone(), e, single(0, trivial(n))));
    }
    for a in 0..items.len() {
        for b in 0..a {
            let (later, earlier) = (twisted(items[a]), twisted(items[b]));
            out.push(ext_is(
                format!("hom/{later} -> {earlier}"),
                format!("{anchor}: Hom^•(later, earlier) = 0"),
                space,
                later,
                earlier,
                Vec::new(),
            ));
        }
    }
    out
}

pub(super) fn lefschetz_n3_spec() -> CollectionSpec {
    let all: &[i32] = &[-3, -2, -1, 0];
    spec(
        CollectionMode::DualLefschetz,
        &[("O(-H2)", all), ("O(-L1)", all), ("S1", all), ("T_rel(2) * O(L1 - H2)", &[-1, 0])],
    )
}

pub(super) fn lefschetz_n4_spec() -> CollectionSpec {
    let all: &[i32] = &[-4, -3, -2, -1, 0];
    spec(CollectionMode::DualLefschetz, &[("O(-L1)", all), ("Om_rel(2) * O(H2 - 2L1)", all), ("S1", all), ("O", all)])
}

pub(super) fn collection_n2_spec() -> CollectionSpec {
    let objs = [
        "O(-3H2)",
        "O(-2H2 - L1)",
        "S1 * O(-2H2)",
        "O(-2H2)",
        "O(-H2 - L1)",
        "S1 * O(-H2)",
        "O(-H2)",
        "O(-L1)",
        "S1",
    ];
    spec(CollectionMode::Plain, &objs.iter().map(|e| (*e, &[0][..])).collect::<Vec<_>>())
}

pub(super) fn lefschetz_n3() -> Vec<Assertion> {
    collection(&xtilde(4), &lefschetz_n3_spec(), "D³(-3), D²(-2), D¹(-1), D⁰ is a dual Lefschetz collection on X̃, dim V = 4")
}

pub(super) fn lefschetz_n4() -> Vec<Assertion> {
    collection(&xtilde(5), &lefschetz_n4_spec(), "D(-4), …, D(-1), D is a dual Lefschetz collection on X̃, dim V = 5")
}

pub(super) fn collection_n2() -> Vec<Assertion> {
    collection(&xtilde(3), &collection_n2_spec(), "the nine-object collection on X̃, dim V = 3, is semiorthogonal")
}

/// Edges of a Hom quiver: source, target, expected `Hom^•`.
fn quiver(dim_v: usize, objects: [(&str, &str); 4], edges: [(usize, usize, Groups); 6], anchor: &str) -> Vec<Assertion> {
    let space = xtilde(dim_v);
    edges
        .into_iter()
        .map(|(s, t, g)| {
            let (ls, es) = objects[s];
            let (lt, et) = objects[t];
            ext_is(format!("hom/{ls} -> {lt}"), anchor.to_string(), &space, es.to_string(), et.to_string(), g)
        })
        .collect()
}

pub(super) fn quiver_n3() -> Vec<Assertion> {
    let n = 4;
    quiver(
        n,
        [("F3", "Om_rel(2) * O(H2 - L1)"), ("F2", "dual(S1)"), ("F1a", "O(L1)"), ("F1b", "O(H2)")],
        [
            (0, 1, single(0, dual_v(n))),
            (1, 2, single(0, dual_v(n))),
            (1, 3, single(0, dual_v(n))),
            (0, 2, single(0, sym2_dual_v(n))),
            (0, 3, single(0, sym2_dual_v(n))),
            (2, 3, Vec::new()),
        ],
        "Hom^• between the strong exceptional objects is V* on straight edges, S²V* on arcs, and zero between F1a and F1b (dim V = 4)",
    )
}

pub(super) fn quiver_n4() -> Vec<Assertion> {
    let n = 5;
    quiver(
        n,
        [("F3", "O"), ("F2", "dual(S1)"), ("F1a", "T_rel(2) * O(2L1 - H2)"), ("F1b", "O(L1)")],
        [
            (0, 1, single(0, dual_v(n))),
            (1, 2, single(0, dual_v(n))),
            (1, 3, single(0, dual_v(n))),
            (0, 2, single(0, sym2_dual_v(n))),
            (0, 3, single(0, wedge2_dual_v(n))),
            (2, 3, Vec::new()),
        ],
        "Hom^• between the strong exceptional objects is V* on straight edges, S²V* and ∧²V* on arcs, and zero between F1a and F1b (dim V = 5)",
    )
}

pub(super) fn corpus() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for dim_v in [4, 5] {
        for (_, a) in BATTERY {
            for (_, b) in BATTERY {
                for t in 0..=2 {
                    out.push((xtilde(dim_v), format!("{} * O(-{t}H2)", product(a, b))));
                }
            }
        }
    }
    for e in ["Om_rel(2) * O(H2 - L1)", "T_rel(2) * O(2L1 - H2)", "S^2 S1 * dual(S1) * O(L1)", "S^3 S1", "wedge^2 dual(V) * S1 * O(-2L1)"] {
        out.push((xtilde(5), e.to_string()));
    }
    out
}
