//! Randomized invariants of polynomial arithmetic, Gröbner bases, Hilbert
//! series and integer signatures.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use theta_core::groebner::{groebner_basis, hilbert_series, staircase_count, ModuleOrder, Staircase};
use theta_core::numeq::{signature, signature_i64};
use theta_core::ring::{FieldSpec, Monomial, PolyRing, Polynomial};

const NVARS: usize = 3;

type Terms = Vec<(i64, Vec<u32>)>;

fn terms(max_exp: u32, max_len: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=max_exp, NVARS)), 0..=max_len)
}

/// Terms of one weighted degree: exponent vectors are filtered to `degree`.
fn homogeneous_terms(weights: [u32; NVARS], degree: u32) -> impl Strategy<Value = Terms> {
    terms(degree, 5).prop_map(move |ts| {
        ts.into_iter()
            .filter(|(_, e)| e.iter().zip(weights).map(|(a, w)| a * w).sum::<u32>() == degree)
            .collect()
    })
}

fn build(ring: &PolyRing, ts: &Terms) -> Polynomial {
    let field = ring.field();
    Polynomial::from_terms(
        ts.iter()
            .map(|(c, e)| (Monomial::new(e.clone(), ring.weights()), field.from_i64(*c)))
            .collect(),
    )
}

fn rationals() -> PolyRing {
    PolyRing::standard(FieldSpec::rationals(), &["x", "y", "z"]).unwrap()
}

fn mod_p(p: u64) -> PolyRing {
    PolyRing::standard(FieldSpec::new(p).unwrap(), &["x", "y", "z"]).unwrap()
}

fn ring_axioms(ring: &PolyRing, a: &Terms, b: &Terms, c: &Terms) -> Result<(), TestCaseError> {
    let (a, b, c) = (build(ring, a), build(ring, b), build(ring, c));
    prop_assert_eq!(a.add(&b), b.add(&a));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    prop_assert!(a.sub(&a).is_zero());
    prop_assert_eq!(a.mul(&ring.one()), a.clone());
    prop_assert!(a.mul(&Polynomial::zero()).is_zero());
    Ok(())
}

/// `P G P^T` for a unimodular `P` built from elementary row operations.
fn congruent(g: &[Vec<i64>], ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            let source = p[j].clone();
            for (entry, s) in p[i].iter_mut().zip(source) {
                *entry += k * s;
            }
        }
    }
    let mul = |a: &[Vec<i64>], b: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    };
    let pt: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| p[j][i]).collect()).collect();
    mul(&mul(&p, g), &pt)
}

fn symmetric(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        (0..n)
            .map(|i| (0..n).map(|j| v[i.min(j) * n + i.max(j)]).collect())
            .collect()
    })
}

/// Brute-force count of standard monomials of each degree for a monomial ideal.
fn brute_force_hilbert(gens: &[Vec<u32>], degrees: usize) -> Vec<i64> {
    let mut counts = vec![0i64; degrees];
    for a in 0..degrees as u32 {
        for b in 0..degrees as u32 - a {
            for c in 0..degrees as u32 - a - b {
                let e = [a, b, c];
                if !gens.iter().any(|g| g.iter().zip(e).all(|(gi, ei)| *gi <= ei)) {
                    counts[(a + b + c) as usize] += 1;
                }
            }
        }
    }
    counts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn arithmetic_over_rationals_is_a_commutative_ring(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        ring_axioms(&rationals(), &a, &b, &c)?;
    }

    #[test]
    fn arithmetic_mod_p_is_a_commutative_ring(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        ring_axioms(&mod_p(7), &a, &b, &c)?;
        ring_axioms(&mod_p(2), &a, &b, &c)?;
    }

    #[test]
    fn printing_then_parsing_is_the_identity(a in terms(4, 6), p in prop::sample::select(vec![0u64, 2, 3, 32003])) {
        let ring = if p == 0 { rationals() } else { mod_p(p) };
        let poly = build(&ring, &a);
        prop_assert_eq!(ring.parse(&ring.format(&poly)).unwrap(), poly);
    }

    #[test]
    fn weighted_degrees_add_under_products(
        da in 1u32..6,
        db in 1u32..6,
        seed_a in prop::collection::vec(prop::collection::vec(0u32..6, NVARS), 1..4),
        seed_b in prop::collection::vec(prop::collection::vec(0u32..6, NVARS), 1..4),
    ) {
        let weights = [1u32, 2, 3];
        let ring = PolyRing::new(FieldSpec::rationals(), vec!["x".into(), "y".into(), "z".into()], weights.to_vec()).unwrap();
        // x^d plus each seed monomial padded to degree d by a power of x
        let lift = |seed: &[Vec<u32>], d: u32| -> Terms {
            std::iter::once((1, vec![d, 0, 0]))
                .chain(seed.iter().filter_map(|e| {
                    let rest = e[1] * 2 + e[2] * 3;
                    (rest <= d).then(|| (1, vec![d - rest, e[1], e[2]]))
                }))
                .collect()
        };
        let (a, b) = (build(&ring, &lift(&seed_a, da)), build(&ring, &lift(&seed_b, db)));
        prop_assert_eq!(ring.weighted_degree(&a).unwrap(), da);
        prop_assert_eq!(ring.weighted_degree(&b).unwrap(), db);
        prop_assert_eq!(ring.weighted_degree(&a.mul(&b)).unwrap(), da + db);
    }

    #[test]
    fn integer_arithmetic_commutes_with_reduction_mod_p(a in terms(3, 4), b in terms(3, 4), c in terms(3, 4)) {
        let q = rationals();
        let fp = mod_p(5);
        let over_q = build(&q, &a).mul(&build(&q, &b)).sub(&build(&q, &c));
        let over_p = build(&fp, &a).mul(&build(&fp, &b)).sub(&build(&fp, &c));
        prop_assert_eq!(fp.parse(&q.format(&over_q)).unwrap(), over_p);
    }

    #[test]
    fn groebner_bases_satisfy_the_buchberger_criterion_and_contain_the_ideal(
        gens in prop::collection::vec(homogeneous_terms([1, 1, 1], 2), 1..4),
        combo in prop::collection::vec(terms(2, 3), 3),
        probe in terms(3, 4),
        char_p in prop::sample::select(vec![0u64, 2, 101]),
    ) {
        let ring = if char_p == 0 { rationals() } else { mod_p(char_p) };
        let polys: Vec<Polynomial> = gens.iter().map(|g| build(&ring, g)).collect();
        let vectors: Vec<Vec<Polynomial>> = polys.iter().map(|p| vec![p.clone()]).collect();
        let gb = groebner_basis(&ring, 1, &vectors, ModuleOrder::POT);
        prop_assert!(gb.satisfies_buchberger_criterion());
        prop_assert!(gb.is_reduced());
        for p in &polys {
            prop_assert!(gb.contains(std::slice::from_ref(p)));
        }
        let member = polys
            .iter()
            .zip(&combo)
            .fold(Polynomial::zero(), |acc, (g, h)| acc.add(&g.mul(&build(&ring, h))));
        prop_assert!(gb.contains(&[member]));
        let p = build(&ring, &probe);
        let nf = gb.normal_form(std::slice::from_ref(&p));
        prop_assert!(gb.contains(&[p.sub(&nf[0])]));
        prop_assert_eq!(gb.normal_form(&nf), nf);
    }

    #[test]
    fn hilbert_series_match_standard_monomial_counts(
        gens in prop::collection::vec(prop::collection::vec(0u32..4, NVARS), 1..5),
        make_finite in any::<bool>(),
    ) {
        let ring = rationals();
        let mut gens = gens;
        gens.retain(|e| e.iter().any(|&a| a > 0));
        if make_finite {
            for i in 0..NVARS {
                let mut e = vec![0; NVARS];
                e[i] = 3;
                gens.push(e);
            }
        }
        prop_assume!(!gens.is_empty());
        let vectors: Vec<Vec<Polynomial>> = gens
            .iter()
            .map(|e| vec![Polynomial::term(Monomial::new(e.clone(), ring.weights()), ring.field().one())])
            .collect();
        let gb = groebner_basis(&ring, 1, &vectors, ModuleOrder::POT);
        let degrees = 12;
        let expected = brute_force_hilbert(&gens, degrees);
        let (low, series) = hilbert_series(&gb).expand(degrees);
        prop_assert_eq!(low, 0);
        prop_assert_eq!(&series, &expected);
        match staircase_count(&gb) {
            Staircase::Finite(n) => {
                prop_assert_eq!(n as i64, expected.iter().sum::<i64>());
                prop_assert_eq!(*expected.last().unwrap(), 0);
            }
            Staircase::Infinite => prop_assert!(!make_finite),
        }
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        (n, g) in (1usize..5).prop_flat_map(|n| (Just(n), symmetric(n))),
        ops in prop::collection::vec((0usize..5, 0usize..5, -2i64..=2), 0..6),
    ) {
        let h = congruent(&g, &ops);
        let before = signature_i64(&g).unwrap();
        prop_assert_eq!(signature_i64(&h).unwrap(), before);
        prop_assert_eq!(before.positive + before.negative + before.zero, n);
        let rational: Vec<Vec<BigRational>> = g
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
            .collect();
        prop_assert_eq!(signature(&rational).unwrap(), before);
        let negated: Vec<Vec<i64>> = g.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        let flipped = signature_i64(&negated).unwrap();
        prop_assert_eq!((flipped.positive, flipped.negative, flipped.zero), (before.negative, before.positive, before.zero));
    }
}
