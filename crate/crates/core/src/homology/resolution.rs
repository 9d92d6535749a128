use std::collections::BTreeSet;
use std::sync::Arc;

use super::linear::{f_columns, minimal_generators, preimage};
use super::matrix::Matrix;
use super::presentation::{column_degrees, ModulePresentation};
use crate::error::{Error, Result};
use crate::groebner::{groebner_basis_graded, ModuleOrder, Vector};
use crate::ring::HypersurfaceRing;

/// Minimal graded free resolution `... -> F_2 -> F_1 -> F_0 -> M -> 0`,
/// computed up to a requested length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    ring: Arc<HypersurfaceRing>,
    /// Generator degrees of `F_0, ..., F_L`.
    degrees: Vec<Vec<i64>>,
    /// `maps[i - 1]` is the differential `d_i: F_i -> F_{i-1}`.
    maps: Vec<Matrix>,
    /// True when the resolution is finite and every later module is zero.
    complete: bool,
    /// First index `k` from which `d_{k+2} = d_k` was observed exactly.
    periodic_from: Option<usize>,
}

/// Minimal generators of `ker(d: R^n -> R^m)` as columns, with their degrees.
pub(crate) fn kernel(
    ring: &HypersurfaceRing,
    d: &Matrix,
    source_degrees: &[i64],
    target_degrees: &[i64],
) -> (Vec<Vector>, Vec<i64>) {
    let gens = preimage(ring, d.columns(), source_degrees, &[], target_degrees);
    let cols = minimal_generators(ring, gens, source_degrees, &[]);
    let degs = column_degrees(&cols, source_degrees);
    (cols, degs)
}

impl Resolution {
    /// Resolves `m` through homological degree `length` (at least 1).
    pub fn compute(m: &ModulePresentation, length: usize) -> Resolution {
        let ring = m.ring().clone();
        let length = length.max(1);
        let d1 = m.relations().clone();
        let f1 = column_degrees(d1.columns(), m.degrees());
        let mut res = Resolution {
            ring: ring.clone(),
            degrees: vec![m.degrees().to_vec()],
            maps: Vec::new(),
            complete: false,
            periodic_from: None,
        };
        if d1.cols() == 0 {
            res.complete = true;
            return res;
        }
        res.degrees.push(f1);
        res.maps.push(d1);
        let fdeg = ring.f_degree() as i64;
        while res.maps.len() < length {
            let i = res.maps.len();
            if let Some(k) = res.periodic_from {
                // d_{i+1} = d_{i-1}, degrees shift by deg f
                let next = res.maps[i - 2].clone();
                let degs = res.degrees[i - 1].iter().map(|d| d + fdeg).collect();
                res.maps.push(next);
                res.degrees.push(degs);
                debug_assert!(k <= i);
                continue;
            }
            let (cols, degs) = kernel(&ring, &res.maps[i - 1], &res.degrees[i], &res.degrees[i - 1]);
            if cols.is_empty() {
                res.complete = true;
                break;
            }
            res.maps.push(Matrix::from_columns(res.degrees[i].len(), cols));
            res.degrees.push(degs);
            let n = res.maps.len();
            if n >= 3 && !ring.is_regular() && res.repeats_at(n - 2) {
                res.periodic_from = Some(n - 2);
            }
        }
        res
    }

    /// `d_{k+2} == d_k` with all degrees of the later pair shifted by `deg f`.
    fn repeats_at(&self, k: usize) -> bool {
        let fdeg = self.ring.f_degree() as i64;
        let shifted = |a: &[i64], b: &[i64]| a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x + fdeg == *y);
        self.maps[k + 1] == self.maps[k - 1]
            && shifted(&self.degrees[k - 1], &self.degrees[k + 1])
            && shifted(&self.degrees[k], &self.degrees[k + 2])
    }

    pub fn ring(&self) -> &Arc<HypersurfaceRing> {
        &self.ring
    }

    /// Number of computed differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn periodic_from(&self) -> Option<usize> {
        self.periodic_from
    }

    /// Largest homological index whose module and differential are known.
    pub fn known_through(&self) -> usize {
        if self.complete {
            usize::MAX
        } else {
            self.maps.len()
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn betti(&self, i: usize) -> usize {
        self.degrees.get(i).map_or(0, Vec::len)
    }

    /// Generator degrees of `F_i` (empty beyond a finite resolution).
    pub fn degrees(&self, i: usize) -> &[i64] {
        self.degrees.get(i).map_or(&[], Vec::as_slice)
    }

    /// `d_i: F_i -> F_{i-1}`; `d_0` is the zero map to the zero module.
    pub fn differential(&self, i: usize) -> Result<Matrix> {
        if i == 0 {
            return Ok(Matrix::zero(0, self.betti(0)));
        }
        if let Some(m) = self.maps.get(i - 1) {
            return Ok(m.clone());
        }
        if self.complete {
            return Ok(Matrix::zero(self.betti(i - 1), self.betti(i)));
        }
        Err(Error::IndexOutOfRange {
            index: i,
            max: self.maps.len(),
        })
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.maps
    }

    /// Projective dimension if the resolution has terminated.
    pub fn projective_dimension(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        Some(self.degrees.iter().rposition(|d| !d.is_empty()).unwrap_or(0))
    }

    /// Lead-term module of `im d_i + f F_{i-1}`.
    fn lead_module(&self, i: usize) -> BTreeSet<(usize, Vec<u32>)> {
        let mut gens = self.maps[i - 1].columns().to_vec();
        gens.extend(f_columns(&self.ring, self.betti(i - 1)));
        let gb = groebner_basis_graded(self.ring.ambient(), &self.degrees[i - 1], &gens, ModuleOrder::POT);
        gb.lead_terms()
            .into_iter()
            .map(|(c, m)| (c, m.exps().to_vec()))
            .collect()
    }

    /// Start of the stable (2-periodic) range: the least `i >= d + 1` with
    /// `b_i = b_{i+1} = b_{i+2}` and equal lead-term modules for `d_i` and
    /// `d_{i+2}`, or the exactly observed recurrence if it comes first.
    pub fn stable_start(&self) -> Option<usize> {
        if self.complete {
            return None;
        }
        let d = self.ring.dimension();
        let first = d + 1;
        for i in 1..self.maps.len().saturating_sub(1) {
            if i + 2 > self.maps.len() {
                break;
            }
            if self.periodic_from.is_some_and(|k| k <= i) {
                return Some(i);
            }
            if i < first {
                continue;
            }
            let (b0, b1, b2) = (self.betti(i), self.betti(i + 1), self.betti(i + 2));
            if b0 == b1 && b1 == b2 && self.lead_module(i) == self.lead_module(i + 2) {
                return Some(i);
            }
        }
        None
    }

    /// `Omega^l(M)`: the image of `d_l`, presented by `d_{l+1}`.
    pub fn syzygy_module(&self, l: usize) -> Result<ModulePresentation> {
        if self.betti(l) == 0 {
            if l > self.maps.len() && !self.complete {
                return Err(Error::IndexOutOfRange {
                    index: l,
                    max: self.maps.len(),
                });
            }
            return Ok(ModulePresentation::zero(self.ring.clone()));
        }
        let d = self.differential(l + 1)?;
        ModulePresentation::new(self.ring.clone(), self.degrees[l].clone(), d)
    }
}

/// Minimal free resolution of `m` through homological degree `length`.
pub fn minimal_resolution(m: &ModulePresentation, length: usize) -> Resolution {
    Resolution::compute(m, length)
}

/// `Omega^l(M)`; `Omega^0(M) = M`.
pub fn syzygy_of(m: &ModulePresentation, l: usize) -> Result<ModulePresentation> {
    if l == 0 {
        return Ok(m.clone());
    }
    Resolution::compute(m, l + 1).syzygy_module(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing};

    fn ring(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
        let s = PolyRing::standard(FieldSpec::rationals(), vars).unwrap();
        Arc::new(HypersurfaceRing::parse(s, f).unwrap())
    }

    fn composites_vanish(res: &Resolution) -> bool {
        let r = res.ring();
        res.differentials()
            .windows(2)
            .all(|w| w[0].mul(&w[1]).reduce(r).is_zero())
    }

    fn is_minimal(res: &Resolution) -> bool {
        res.differentials().iter().all(|d| {
            d.columns()
                .iter()
                .all(|c| c.iter().all(|p| p.terms().iter().all(|(m, _)| !m.is_one())))
        })
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let r = ring(&["x"], "x^2");
        let k = ModulePresentation::cyclic_from_strings(r.clone(), &["x"]).unwrap();
        let res = minimal_resolution(&k, 6);
        assert_eq!(res.betti_numbers(), vec![1; 7]);
        for d in res.differentials() {
            assert_eq!(d.format(&r), vec![vec!["x".to_string()]]);
        }
        assert!(composites_vanish(&res));
    }

    #[test]
    fn quadric_codimension_two_plane() {
        let r = ring(&["x", "y", "u", "v"], "x*y - u*v");
        let m = ModulePresentation::cyclic_from_strings(r.clone(), &["x", "u"]).unwrap();
        let res = minimal_resolution(&m, 7);
        assert_eq!(res.betti_numbers(), vec![1, 2, 2, 2, 2, 2, 2, 2]);
        assert!(composites_vanish(&res));
        assert!(is_minimal(&res));
        assert!(res.stable_start().is_some());
    }

    #[test]
    fn free_module_resolution() {
        let r = ring(&["x", "y"], "x*y");
        let f = ModulePresentation::free(r, 3);
        let res = minimal_resolution(&f, 4);
        assert_eq!(res.betti_numbers(), vec![3]);
        assert_eq!(res.length(), 0);
        assert_eq!(res.projective_dimension(), Some(0));
    }

    #[test]
    fn syzygies_over_the_node() {
        let r = ring(&["x", "y"], "x*y");
        let ax = ModulePresentation::cyclic_from_strings(r.clone(), &["x"]).unwrap();
        let ay = ModulePresentation::cyclic_from_strings(r.clone(), &["y"]).unwrap();
        assert_eq!(syzygy_of(&ax, 0).unwrap(), ax);
        let omega = syzygy_of(&ax, 1).unwrap();
        assert_eq!(omega.relations().format(&r), ay.relations().format(&r));
        let free = ModulePresentation::free(r, 2);
        assert!(syzygy_of(&free, 1).unwrap().is_zero());
        assert!(syzygy_of(&free, 3).unwrap().is_zero());
    }
}
