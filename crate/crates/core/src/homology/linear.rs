//! Submodule computations over `R = S/(f)` performed on lifts to `S`:
//! every submodule of `R^m` is represented by generators in `S^m` together
//! with the implicit generators `f * e_k`.

use crate::groebner::{is_zero_vector, syzygies_graded, unit_vector, vector_degree, Buchberger, ModuleOrder, Vector};
use crate::ring::HypersurfaceRing;

pub(crate) fn f_columns(ring: &HypersurfaceRing, rank: usize) -> Vec<Vector> {
    if ring.is_regular() {
        return Vec::new();
    }
    (0..rank).map(|k| unit_vector(rank, k, ring.f().clone())).collect()
}

pub(crate) fn reduce_vector(ring: &HypersurfaceRing, v: &[crate::ring::Polynomial]) -> Vector {
    v.iter().map(|p| ring.reduce(p)).collect()
}

/// Generators of `{v in R^n : sum_j v_j * images_j in U}` where `U` is
/// generated by `target_relations` in `R^m`. Reduced modulo `f`, not minimal.
pub(crate) fn preimage(
    ring: &HypersurfaceRing,
    images: &[Vector],
    source_degrees: &[i64],
    target_relations: &[Vector],
    target_degrees: &[i64],
) -> Vec<Vector> {
    let n = images.len();
    let m = target_degrees.len();
    let one = ring.ambient().one();
    if m == 0 {
        return (0..n).map(|j| unit_vector(n, j, one.clone())).collect();
    }
    let mut gens: Vec<Vector> = images.to_vec();
    let mut gen_degrees = source_degrees.to_vec();
    for r in target_relations {
        gens.push(r.clone());
        gen_degrees.push(vector_degree(r, target_degrees).unwrap_or(0));
    }
    let fdeg = ring.f_degree() as i64;
    for (k, v) in f_columns(ring, m).into_iter().enumerate() {
        gens.push(v);
        gen_degrees.push(fdeg + target_degrees[k]);
    }
    syzygies_graded(ring.ambient(), target_degrees, &gens, &gen_degrees)
        .into_iter()
        .map(|s| reduce_vector(ring, &s[..n]))
        .filter(|v| !is_zero_vector(v))
        .collect()
}

/// A subset of `candidates` minimally generating `<candidates> + <base>`
/// modulo `<base>` (and `f`). Candidates are visited by increasing degree,
/// which makes the greedy choice minimal for graded modules.
pub(crate) fn minimal_generators(
    ring: &HypersurfaceRing,
    candidates: Vec<Vector>,
    degrees: &[i64],
    base: &[Vector],
) -> Vec<Vector> {
    let mut cands: Vec<(i64, Vector)> = candidates
        .into_iter()
        .map(|v| reduce_vector(ring, &v))
        .filter(|v| !is_zero_vector(v))
        .map(|v| (vector_degree(&v, degrees).unwrap_or(0), v))
        .collect();
    cands.sort_by_key(|(d, _)| *d);
    let mut engine = Buchberger::new(ring.ambient().weights(), degrees, ModuleOrder::POT);
    for b in base.iter().cloned().chain(f_columns(ring, degrees.len())) {
        engine.add(b);
    }
    engine.complete();
    let mut kept = Vec::new();
    for (_, v) in cands {
        if engine.contains(&v) {
            continue;
        }
        engine.add(v.clone());
        engine.complete();
        kept.push(v);
    }
    kept
}

/// Relations among `gens` modulo `base`: generators (in `S^gens.len()`) of
/// the syzygies of `[gens | base | f e_k]`, projected to the `gens` block.
pub(crate) fn quotient_relations(
    ring: &HypersurfaceRing,
    gens: &[Vector],
    gen_degrees: &[i64],
    base: &[Vector],
    degrees: &[i64],
) -> Vec<Vector> {
    let n = gens.len();
    if n == 0 {
        return Vec::new();
    }
    let mut all = gens.to_vec();
    let mut all_degrees = gen_degrees.to_vec();
    for b in base {
        all.push(b.clone());
        all_degrees.push(vector_degree(b, degrees).unwrap_or(0));
    }
    let fdeg = ring.f_degree() as i64;
    for (k, v) in f_columns(ring, degrees.len()).into_iter().enumerate() {
        all.push(v);
        all_degrees.push(fdeg + degrees[k]);
    }
    syzygies_graded(ring.ambient(), degrees, &all, &all_degrees)
        .into_iter()
        .map(|s| reduce_vector(ring, &s[..n]))
        .filter(|v| !is_zero_vector(v))
        .collect()
}
