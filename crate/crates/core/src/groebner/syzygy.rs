use super::{groebner_basis_graded, is_zero_vector, unit_vector, vector_degree, GroebnerBasis, ModuleOrder, Vector};
use crate::ring::{PolyRing, Polynomial};

/// Schreyer syzygies of a Gröbner basis `G = (g_1, ..., g_m)`: one vector in
/// `S^m` per S-pair, built from the standard representation of the S-vector.
/// Pairs with coprime lead terms contribute their Koszul-type syzygy.
pub fn syzygy_basis(gb: &GroebnerBasis) -> Vec<Vector> {
    let m = gb.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let Some((ui, uj, s)) = gb.s_vector(i, j) else {
                continue;
            };
            let (quotients, rem) = gb.divide(&s);
            debug_assert!(is_zero_vector(&rem), "input is not a Gröbner basis");
            let one = gb.elements()[i]
                .iter()
                .find_map(|p| p.lead().map(|(_, c)| c.div(c)))
                .expect("nonzero basis element");
            let mut syz: Vector = quotients.iter().map(Polynomial::neg).collect();
            syz[i] = syz[i].add(&Polynomial::term(ui, one.clone()));
            syz[j] = syz[j].sub(&Polynomial::term(uj, one));
            out.push(syz);
        }
    }
    out
}

/// Generators of the module of syzygies of arbitrary vectors `gens` in a
/// free module with generator degrees `degrees`.
///
/// Computed by elimination: a position-over-term basis of the vectors
/// `(g_j, e_j)` in `S^(s+m)`; the elements vanishing on the first `s`
/// components project onto the syzygy module.
pub fn syzygies(ring: &PolyRing, degrees: &[i64], gens: &[Vector]) -> Vec<Vector> {
    let gen_degrees: Vec<i64> = gens.iter().map(|g| vector_degree(g, degrees).unwrap_or(0)).collect();
    syzygies_graded(ring, degrees, gens, &gen_degrees)
}

/// As [`syzygies`], with explicit degrees for the generators (needed when
/// some generators are zero).
pub fn syzygies_graded(ring: &PolyRing, degrees: &[i64], gens: &[Vector], gen_degrees: &[i64]) -> Vec<Vector> {
    let s = degrees.len();
    let m = gens.len();
    if m == 0 {
        return Vec::new();
    }
    let one = ring.one();
    let mut aug_degrees = degrees.to_vec();
    aug_degrees.extend_from_slice(gen_degrees);
    let aug: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut v = g.clone();
            v.extend(unit_vector(m, j, one.clone()));
            v
        })
        .collect();
    let gb = groebner_basis_graded(ring, &aug_degrees, &aug, ModuleOrder::POT);
    gb.elements()
        .iter()
        .filter(|v| is_zero_vector(&v[..s]))
        .map(|v| v[s..].to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::groebner_basis;
    use crate::ring::FieldSpec;

    fn apply(gens: &[Vector], syz: &[Polynomial]) -> Vector {
        let rank = gens[0].len();
        let mut acc = vec![Polynomial::zero(); rank];
        for (g, c) in gens.iter().zip(syz) {
            for (a, x) in acc.iter_mut().zip(g) {
                *a = a.add(&x.mul(c));
            }
        }
        acc
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap();
        let gens = vec![vec![r.parse("x").unwrap()], vec![r.parse("y").unwrap()]];
        let syz = syzygies(&r, &[0], &gens);
        assert_eq!(syz.len(), 1);
        let shown: Vec<String> = syz[0].iter().map(|p| r.format(p)).collect();
        assert_eq!(shown, vec!["y", "-x"]);

        let gb = groebner_basis(&r, 1, &gens, ModuleOrder::POT);
        let schreyer = syzygy_basis(&gb);
        assert_eq!(schreyer.len(), 1);
        assert!(is_zero_vector(&apply(gb.elements(), &schreyer[0])));
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap();
        assert!(syzygies(&r, &[0], &[vec![r.parse("x").unwrap()]]).is_empty());
    }

    #[test]
    fn schreyer_syzygies_are_sound() {
        let r = PolyRing::standard(FieldSpec::rationals(), &["x", "y", "z"]).unwrap();
        let gens: Vec<Vector> = ["x*y - z^2", "x^2 - y*z", "y^2 - x*z"]
            .iter()
            .map(|g| vec![r.parse(g).unwrap()])
            .collect();
        let gb = groebner_basis(&r, 1, &gens, ModuleOrder::POT);
        for s in syzygy_basis(&gb) {
            assert!(is_zero_vector(&apply(gb.elements(), &s)));
        }
        for s in syzygies(&r, &[0], &gens) {
            assert!(is_zero_vector(&apply(&gens, &s)));
        }
    }
}
