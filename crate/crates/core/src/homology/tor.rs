use std::sync::Arc;

use super::linear::{minimal_generators, preimage, quotient_relations};
use super::matrix::Matrix;
use super::presentation::{column_degrees, ModulePresentation};
use super::resolution::Resolution;
use crate::error::{Error, Result};
use crate::groebner::{zero_vector, Staircase, Vector};
use crate::ring::HypersurfaceRing;

fn tensor_degrees(free: &[i64], module: &[i64]) -> Vec<i64> {
    free.iter().flat_map(|a| module.iter().map(move |b| a + b)).collect()
}

/// The relations of `N` repeated in each of `copies` blocks of `N^copies`.
fn block_relations(n: &ModulePresentation, copies: usize) -> Vec<Vector> {
    let s = n.rank();
    let mut out = Vec::with_capacity(copies * n.relations().cols());
    for b in 0..copies {
        for c in n.relations().columns() {
            let mut v = zero_vector(copies * s);
            for (q, p) in c.iter().enumerate() {
                v[b * s + q] = p.clone();
            }
            out.push(v);
        }
    }
    out
}

/// Homology at the middle of `F'' <-a- F <-b- F'` after tensoring with `N`:
/// `ker(a ⊗ N) / im(b ⊗ N)`, where `F ⊗ N = N^rank(F)`.
///
/// `target_degrees` and `mid_degrees` are the generator degrees of `F''` and
/// `F`. The kernel is a preimage of the relation module of `N^rank(F'')`.
pub fn complex_homology(
    ring: &Arc<HypersurfaceRing>,
    a: &Matrix,
    b: &Matrix,
    target_degrees: &[i64],
    mid_degrees: &[i64],
    n: &ModulePresentation,
) -> Result<ModulePresentation> {
    if a.cols() != mid_degrees.len() || a.rows() != target_degrees.len() || b.rows() != mid_degrees.len() {
        return Err(Error::Shape("differentials do not match the free modules".into()));
    }
    let s = n.rank();
    if s == 0 || mid_degrees.is_empty() {
        return Ok(ModulePresentation::zero(ring.clone()));
    }
    let mid = tensor_degrees(mid_degrees, n.degrees());
    let target = tensor_degrees(target_degrees, n.degrees());
    let a_t = a.tensor_identity(s);
    let kernel = preimage(ring, a_t.columns(), &mid, &block_relations(n, a.rows()), &target);
    let mut base: Vec<Vector> = b.tensor_identity(s).into_columns();
    base.extend(block_relations(n, b.rows()));
    let gens = minimal_generators(ring, kernel, &mid, &base);
    let gen_degrees = column_degrees(&gens, &mid);
    let rels = quotient_relations(ring, &gens, &gen_degrees, &base, &mid);
    ModulePresentation::new(
        ring.clone(),
        gen_degrees.clone(),
        Matrix::from_columns(gen_degrees.len(), rels),
    )
}

/// `H_i(F ⊗ N)` for a resolution `F`; `H_0 = M ⊗ N`.
pub fn homology_of_tensored(res: &Resolution, n: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    if i + 1 > res.known_through() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: res.known_through().saturating_sub(1),
        });
    }
    if res.betti(i) == 0 {
        return Ok(ModulePresentation::zero(res.ring().clone()));
    }
    let a = res.differential(i)?;
    let b = res.differential(i + 1)?;
    let target: Vec<i64> = if i == 0 {
        Vec::new()
    } else {
        res.degrees(i - 1).to_vec()
    };
    complex_homology(res.ring(), &a, &b, &target, res.degrees(i), n)
}

/// Length of `Tor_i(M, N)` read off a resolution of `M`.
pub fn tor_length_from(res: &Resolution, n: &ModulePresentation, i: usize) -> Result<u64> {
    match homology_of_tensored(res, n, i)?.length() {
        Staircase::Finite(l) => Ok(l),
        Staircase::Infinite => Err(Error::InfiniteLength(format!(" (Tor_{i})"))),
    }
}

/// `ℓ(Tor_i^A(M, N))` for `i >= 1`.
pub fn tor_length(m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<u64> {
    if i == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let res = Resolution::compute(m, i + 1);
    tor_length_from(&res, n, i)
}

/// `Ext^i_A(M, A)` as homology of the dualized minimal resolution.
pub fn ext_module_from(res: &Resolution, i: usize) -> Result<ModulePresentation> {
    if i + 1 > res.known_through() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: res.known_through().saturating_sub(1),
        });
    }
    let ring = res.ring();
    let neg = |d: &[i64]| d.iter().map(|x| -x).collect::<Vec<_>>();
    let a = res.differential(i + 1)?.transpose();
    let b = res.differential(i)?.transpose();
    let unit = ModulePresentation::free(ring.clone(), 1);
    complex_homology(ring, &a, &b, &neg(res.degrees(i + 1)), &neg(res.degrees(i)), &unit)
}

pub fn ext_module(m: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    ext_module_from(&Resolution::compute(m, i + 1), i)
}

/// `M* = Hom_A(M, A)`, the kernel of the transposed presentation.
pub fn dual_module(m: &ModulePresentation) -> Result<ModulePresentation> {
    ext_module(m, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing};

    fn ring(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
        let s = PolyRing::standard(FieldSpec::rationals(), vars).unwrap();
        Arc::new(HypersurfaceRing::parse(s, f).unwrap())
    }

    fn cyclic(r: &Arc<HypersurfaceRing>, gens: &[&str]) -> ModulePresentation {
        ModulePresentation::cyclic_from_strings(r.clone(), gens).unwrap()
    }

    #[test]
    fn tensored_homology_over_the_node() {
        let r = ring(&["x", "y"], "x*y");
        let (ax, ay) = (cyclic(&r, &["x"]), cyclic(&r, &["y"]));
        let res = Resolution::compute(&ax, 4);
        let h0 = homology_of_tensored(&res, &ax, 0).unwrap();
        assert_eq!(h0.relations().format(&r), ax.relations().format(&r));
        let h2 = homology_of_tensored(&res, &ay, 2).unwrap();
        assert_eq!(h2.length(), Staircase::Finite(1));
        assert_eq!(tor_length(&ax, &ay, 2), Ok(1));
        assert_eq!(tor_length(&ax, &ay, 1), Ok(0));
        assert_eq!(tor_length(&ax, &ax, 1), Ok(1));
        assert!(homology_of_tensored(&res, &ay, 4).is_err());
    }

    #[test]
    fn koszul_complex_is_exact() {
        let s = PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap();
        let r = Arc::new(HypersurfaceRing::regular(s));
        let k = cyclic(&r, &["x", "y"]);
        let res = Resolution::compute(&k, 3);
        assert_eq!(res.betti_numbers(), vec![1, 2, 1]);
        let unit = ModulePresentation::free(r.clone(), 1);
        assert!(homology_of_tensored(&res, &unit, 1).unwrap().is_zero());
        assert!(homology_of_tensored(&res, &unit, 2).unwrap().is_zero());
    }

    #[test]
    fn quadric_tor_five() {
        let r = ring(&["x", "y", "u", "v"], "x*y - u*v");
        let p = cyclic(&r, &["x", "u"]);
        let q = cyclic(&r, &["x", "v"]);
        assert_eq!(tor_length(&p, &q, 5), Ok(1));
    }

    #[test]
    fn tor_against_free_vanishes() {
        let r = ring(&["x", "y"], "x*y");
        let a = ModulePresentation::free(r.clone(), 1);
        let k = cyclic(&r, &["x", "y"]);
        for i in 1..4 {
            assert_eq!(tor_length(&a, &k, i), Ok(0));
            assert_eq!(tor_length(&k, &a, i), Ok(0));
        }
    }

    #[test]
    fn duals_and_ext() {
        let node = ring(&["x", "y"], "x*y");
        let a = ModulePresentation::free(node.clone(), 1);
        let d = dual_module(&a).unwrap();
        assert_eq!((d.rank(), d.relations().cols()), (1, 0));

        let ax = cyclic(&node, &["x"]);
        let dual = dual_module(&ax).unwrap();
        assert_eq!(dual.relations().format(&node), vec![vec!["x".to_string()]]);
        assert!(ext_module(&ax, 1).unwrap().is_zero());

        let k = cyclic(&node, &["x", "y"]);
        let e1 = ext_module(&k, 1).unwrap();
        assert_eq!(e1.length(), Staircase::Finite(1));

        let quadric = ring(&["x", "y", "u", "v"], "x*y - u*v");
        assert!(dual_module(&cyclic(&quadric, &["x", "u"])).unwrap().is_zero());
    }
}
