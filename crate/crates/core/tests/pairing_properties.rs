//! Randomized invariants of the theta pairing and of Euler characteristics.

use std::sync::Arc;

use proptest::prelude::*;

use theta_core::homology::{syzygy_of, ModulePresentation};
use theta_core::pairings::{chi_complex, ClassExpression, FreeComplex, PairingEngine};
use theta_core::ring::{FieldSpec, HypersurfaceRing, PolyRing};

fn hypersurface(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
    let s = PolyRing::standard(FieldSpec::rationals(), vars).unwrap();
    Arc::new(HypersurfaceRing::parse(s, f).unwrap())
}

fn cyclic(r: &Arc<HypersurfaceRing>, gens: &[String]) -> ModulePresentation {
    let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
    ModulePresentation::cyclic_from_strings(r.clone(), &gens).unwrap()
}

/// Ideal generators for the node `xy = 0`: powers of `x`, `y` and `x + y`.
fn node_ideal() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(
        prop_oneof![
            (1u32..4).prop_map(|a| format!("x^{a}")),
            (1u32..4).prop_map(|b| format!("y^{b}")),
            (1u32..3).prop_map(|c| format!("(x + y)^{c}")),
        ],
        1..3,
    )
}

/// Ideal generators for the quadric cone `xy = uv`, drawn from a few linear
/// and quadratic forms.
fn quadric_ideal() -> impl Strategy<Value = Vec<String>> {
    prop::sample::subsequence(vec!["x", "u", "v", "y", "x^2", "u*v", "x + u", "u^2"], 1..3)
        .prop_map(|v| v.into_iter().map(String::from).collect())
}

fn pairing_invariants(
    r: &Arc<HypersurfaceRing>,
    m: &ModulePresentation,
    m2: &ModulePresentation,
    n: &ModulePresentation,
) -> Result<(), TestCaseError> {
    let e = PairingEngine::new();
    let d = r.dimension();
    let t = e.theta(m, n).unwrap();
    prop_assert_eq!(e.theta(n, m).unwrap(), t, "symmetry");
    let omega = syzygy_of(m, 1).unwrap();
    prop_assert_eq!(e.theta(&omega, n).unwrap(), -t, "shift by one syzygy");
    let free = ModulePresentation::free(r.clone(), 2);
    prop_assert_eq!(e.theta(m, &free).unwrap(), 0, "free modules pair to zero");
    let sum = m.direct_sum(m2).unwrap();
    prop_assert_eq!(e.theta(&sum, n).unwrap(), t + e.theta(m2, n).unwrap(), "additivity");
    for i in d + 1..=d + 5 {
        prop_assert_eq!(
            e.tor_length(m, n, i).unwrap(),
            e.tor_length(m, n, i + 2).unwrap(),
            "periodicity at {}",
            i
        );
    }
    let class = ClassExpression::module("M", Arc::new(m.clone())).with_term("M2", Arc::new(m2.clone()), -2);
    let probe = ClassExpression::module("N", Arc::new(n.clone()));
    prop_assert_eq!(
        e.theta_class(&class, &probe).unwrap(),
        t - 2 * e.theta(m2, n).unwrap(),
        "bilinearity"
    );
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn theta_invariants_on_the_node(a in node_ideal(), b in node_ideal(), c in node_ideal()) {
        let r = hypersurface(&["x", "y"], "x*y");
        pairing_invariants(&r, &cyclic(&r, &a), &cyclic(&r, &b), &cyclic(&r, &c))?;
    }

    #[test]
    fn theta_invariants_on_the_quadric_cone(a in quadric_ideal(), b in quadric_ideal(), c in quadric_ideal()) {
        let r = hypersurface(&["x", "y", "u", "v"], "x*y - u*v");
        pairing_invariants(&r, &cyclic(&r, &a), &cyclic(&r, &b), &cyclic(&r, &c))?;
    }

    #[test]
    fn koszul_euler_characteristics(a in 1u32..4, b in 1u32..4, c in 1u32..4, shift in -3i64..4) {
        let s = Arc::new(HypersurfaceRing::regular(
            PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap(),
        ));
        let seq = [
            s.parse_element(&format!("x^{a}")).unwrap(),
            s.parse_element(&format!("y^{b}")).unwrap(),
        ];
        let k = FreeComplex::koszul(s.clone(), &seq).unwrap();
        let free = Arc::new(ModulePresentation::free(s.clone(), 1));
        let line = Arc::new(cyclic(&s, &[format!("x^{c}")]));
        let chi = |cx: &FreeComplex, cl: &ClassExpression| chi_complex(cx, cl).unwrap();
        let of_s = ClassExpression::module("S", free.clone());
        // the Koszul complex resolves S/(x^a, y^b), of length ab
        prop_assert_eq!(chi(&k, &of_s), i64::from(a * b));
        // dimensions 0 + 1 < 2, so the intersection multiplicity vanishes
        prop_assert_eq!(chi(&k, &ClassExpression::module("L", line.clone())), 0);
        let sign = if shift.rem_euclid(2) == 0 { 1 } else { -1 };
        prop_assert_eq!(chi(&k.shifted(shift), &of_s), sign * i64::from(a * b));
        let mixed = of_s.scale(3).add(&ClassExpression::module("L", line).scale(-2));
        prop_assert_eq!(chi(&k, &mixed), 3 * i64::from(a * b));
        let doubled = Arc::new(free.direct_sum(&free).unwrap());
        prop_assert_eq!(chi(&k, &ClassExpression::module("S2", doubled)), 2 * i64::from(a * b));
    }
}

#[test]
fn golden_theta_values_are_unchanged_in_characteristic_two() {
    let over = |p: u64, vars: &[&str], f: &str| {
        let s = PolyRing::standard(FieldSpec::new(p).unwrap(), vars).unwrap();
        Arc::new(HypersurfaceRing::parse(s, f).unwrap())
    };
    let gens = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    for p in [0, 2] {
        let e = PairingEngine::new();
        let node = over(p, &["x", "y"], "x*y");
        let (ax, ay) = (cyclic(&node, &gens(&["x"])), cyclic(&node, &gens(&["y"])));
        assert_eq!(
            (e.theta(&ax, &ay).unwrap(), e.theta(&ax, &ax).unwrap()),
            (1, -1),
            "node, p = {p}"
        );
        let a1 = over(p, &["x", "y", "z"], "x*y - z^2");
        let m = cyclic(&a1, &gens(&["x", "z"]));
        let n = cyclic(&a1, &gens(&["z", "y"]));
        let w = syzygy_of(&m, 1).unwrap();
        for (a, b) in [(&m, &n), (&m, &m), (&n, &w), (&w, &w)] {
            assert_eq!(e.theta(a, b).unwrap(), 0, "A1 surface, p = {p}");
        }
        let q = over(p, &["x", "y", "u", "v"], "x*y - u*v");
        let (ap, aq) = (cyclic(&q, &gens(&["x", "u"])), cyclic(&q, &gens(&["x", "v"])));
        assert_eq!(
            (e.theta(&ap, &ap).unwrap(), e.theta(&ap, &aq).unwrap()),
            (1, -1),
            "quadric, p = {p}"
        );
    }
}
