use std::sync::Arc;

use super::theta::ClassExpression;
use crate::error::{Error, Result};
use crate::groebner::Staircase;
use crate::homology::{complex_homology, Matrix, ModulePresentation, Resolution};
use crate::ring::{HypersurfaceRing, Polynomial};

/// A bounded complex of graded free modules
/// `F_low <- F_{low+1} <- ... <- F_{low+L}` over `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Arc<HypersurfaceRing>,
    /// Generator degrees of each module, lowest homological index first.
    degrees: Vec<Vec<i64>>,
    /// `maps[i]: F_{low+i+1} -> F_{low+i}`.
    maps: Vec<Matrix>,
    low: i64,
}

impl FreeComplex {
    /// Builds a complex from its differentials, inferring generator degrees
    /// (the first generator of each connected block sits in degree 0).
    pub fn new(ring: Arc<HypersurfaceRing>, maps: Vec<Matrix>, low: i64) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Shape("a complex needs at least one differential".into()));
        }
        let maps: Vec<Matrix> = maps.iter().map(|m| m.reduce(&ring)).collect();
        let degrees = infer_complex_degrees(&ring, &maps)?;
        Self::with_degrees(ring, degrees, maps, low)
    }

    /// Builds a complex with explicit generator degrees; checks shapes,
    /// homogeneity and `d_i d_{i+1} = 0` over `R`.
    pub fn with_degrees(
        ring: Arc<HypersurfaceRing>,
        degrees: Vec<Vec<i64>>,
        maps: Vec<Matrix>,
        low: i64,
    ) -> Result<Self> {
        if degrees.len() != maps.len() + 1 {
            return Err(Error::Shape("need one degree list per free module".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != degrees[i].len() || m.cols() != degrees[i + 1].len() {
                return Err(Error::Shape(format!("differential {} has the wrong size", i + 1)));
            }
            for (j, col) in m.columns().iter().enumerate() {
                for (r, p) in col.iter().enumerate() {
                    let p = ring.reduce(p);
                    if p.is_zero() {
                        continue;
                    }
                    let e = ring.ambient().weighted_degree(&p)? as i64;
                    if degrees[i][r] + e != degrees[i + 1][j] {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({r}, {j}) of differential {} does not respect the grading",
                            i + 1
                        )));
                    }
                }
            }
        }
        for (i, w) in maps.windows(2).enumerate() {
            if !w[0].mul(&w[1]).reduce(&ring).is_zero() {
                return Err(Error::Shape(format!(
                    "differentials {} and {} do not compose to zero",
                    i + 1,
                    i + 2
                )));
            }
        }
        let maps = maps.iter().map(|m| m.reduce(&ring)).collect();
        Ok(FreeComplex {
            ring,
            degrees,
            maps,
            low,
        })
    }

    /// The Koszul complex on `elements`, with `F_0 = R` and
    /// `F_k = Λ^k R^r`, basis ordered by lexicographic subsets.
    pub fn koszul(ring: Arc<HypersurfaceRing>, elements: &[Polynomial]) -> Result<Self> {
        let r = elements.len();
        if r == 0 || r > 20 {
            return Err(Error::Shape("Koszul complexes need between 1 and 20 elements".into()));
        }
        let mut elt_degrees = Vec::with_capacity(r);
        for e in elements {
            if e.is_zero() {
                elt_degrees.push(0);
            } else {
                elt_degrees.push(ring.ambient().weighted_degree(e)? as i64);
            }
        }
        let subsets: Vec<Vec<u32>> = (0..=r)
            .map(|k| {
                let mut s: Vec<u32> = (0u32..(1 << r)).filter(|m| m.count_ones() as usize == k).collect();
                s.sort_by_key(|m| (0..r).map(|b| std::cmp::Reverse((m >> b) & 1)).collect::<Vec<_>>());
                s
            })
            .collect();
        let degrees: Vec<Vec<i64>> = subsets
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|m| (0..r).filter(|b| m & (1 << b) != 0).map(|b| elt_degrees[b]).sum())
                    .collect()
            })
            .collect();
        let mut maps = Vec::with_capacity(r);
        for k in 1..=r {
            let target = &subsets[k - 1];
            let columns = subsets[k]
                .iter()
                .map(|&m| {
                    let mut col = vec![Polynomial::zero(); target.len()];
                    let mut sign = true;
                    for (b, e) in elements.iter().enumerate() {
                        if m & (1 << b) == 0 {
                            continue;
                        }
                        let row = target.iter().position(|&t| t == m & !(1 << b)).expect("face exists");
                        col[row] = if sign { e.clone() } else { e.neg() };
                        sign = !sign;
                    }
                    col
                })
                .collect();
            maps.push(Matrix::from_columns(target.len(), columns));
        }
        Self::with_degrees(ring, degrees, maps, 0)
    }

    /// The finite minimal free resolution of `m`; fails unless it has
    /// finite projective dimension.
    pub fn resolving(m: &ModulePresentation) -> Result<Self> {
        let pd = super::finite_pd(m).ok_or(Error::NotFinitePd)?;
        let res = Resolution::compute(m, m.ring().dimension() + 2);
        let (degrees, maps) = if pd == 0 {
            let b0 = res.betti(0);
            (vec![res.degrees(0).to_vec(), Vec::new()], vec![Matrix::zero(b0, 0)])
        } else {
            (
                (0..=pd).map(|i| res.degrees(i).to_vec()).collect(),
                res.differentials()[..pd].to_vec(),
            )
        };
        Self::with_degrees(m.ring().clone(), degrees, maps, 0)
    }

    /// The same complex with homological indices raised by `k`.
    pub fn shifted(&self, k: i64) -> Self {
        FreeComplex {
            low: self.low + k,
            ..self.clone()
        }
    }

    pub fn ring(&self) -> &Arc<HypersurfaceRing> {
        &self.ring
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.maps.len() as i64
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.maps
    }

    /// `H_index(F ⊗ N)`.
    pub fn homology(&self, index: i64, n: &ModulePresentation) -> Result<ModulePresentation> {
        if index < self.low || index > self.high() {
            return Ok(ModulePresentation::zero(self.ring.clone()));
        }
        let p = (index - self.low) as usize;
        let rank = self.degrees[p].len();
        let (a, target) = if p == 0 {
            (Matrix::zero(0, rank), Vec::new())
        } else {
            (self.maps[p - 1].clone(), self.degrees[p - 1].clone())
        };
        let b = self.maps.get(p).cloned().unwrap_or_else(|| Matrix::zero(rank, 0));
        complex_homology(&self.ring, &a, &b, &target, &self.degrees[p], n)
    }
}

/// Row/column degree propagation across all differentials.
fn infer_complex_degrees(ring: &HypersurfaceRing, maps: &[Matrix]) -> Result<Vec<Vec<i64>>> {
    let mut sizes = vec![maps[0].rows()];
    for (i, m) in maps.iter().enumerate() {
        if m.rows() != sizes[i] {
            return Err(Error::Shape(format!(
                "differential {} has the wrong number of rows",
                i + 1
            )));
        }
        sizes.push(m.cols());
    }
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().sum();
    // edges (row node, column node, degree): deg(column) = deg(row) + e
    let mut edges = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        for (j, col) in m.columns().iter().enumerate() {
            for (r, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let e = ring.ambient().weighted_degree(p)? as i64;
                edges.push((offsets[i] + r, offsets[i + 1] + j, e));
            }
        }
    }
    let mut degree: Vec<Option<i64>> = vec![None; total];
    for seed in 0..total {
        if degree[seed].is_some() {
            continue;
        }
        degree[seed] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b, e) in &edges {
                match (degree[a], degree[b]) {
                    (Some(x), None) => {
                        degree[b] = Some(x + e);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        degree[a] = Some(y - e);
                        changed = true;
                    }
                    (Some(x), Some(y)) if x + e != y => {
                        return Err(Error::Inhomogeneous("complex admits no consistent grading".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(sizes
        .iter()
        .zip(&offsets)
        .map(|(&s, &o)| (o..o + s).map(|k| degree[k].unwrap_or(0)).collect())
        .collect())
}

/// `χ_F(α) = Σ_i (-1)^i ℓ(H_i(F ⊗ M))`, extended linearly over `α`.
pub fn chi_complex(complex: &FreeComplex, class: &ClassExpression) -> Result<i64> {
    let mut total = 0i64;
    for term in class.terms() {
        let mut chi = 0i64;
        for index in complex.low()..=complex.high() {
            let h = complex.homology(index, &term.module)?;
            let l = match h.length() {
                Staircase::Finite(l) => l as i64,
                Staircase::Infinite => {
                    return Err(Error::InfiniteLength(format!(
                        " (H_{index} of the complex tensored with {})",
                        term.name
                    )))
                }
            };
            chi += if index.rem_euclid(2) == 0 { l } else { -l };
        }
        total += term.coefficient * chi;
    }
    Ok(total)
}

/// `χ(N0, M)` for `N0` of finite length and finite projective dimension.
pub fn chi_modules(n0: &ModulePresentation, m: &ModulePresentation) -> Result<i64> {
    if n0.length().finite().is_none() {
        return Err(Error::NotFiniteLength);
    }
    let complex = FreeComplex::resolving(n0)?;
    chi_complex(&complex, &ClassExpression::module("M", Arc::new(m.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing};

    fn regular(vars: &[&str]) -> Arc<HypersurfaceRing> {
        Arc::new(HypersurfaceRing::regular(
            PolyRing::standard(FieldSpec::rationals(), vars).unwrap(),
        ))
    }

    fn ring(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
        let s = PolyRing::standard(FieldSpec::rationals(), vars).unwrap();
        Arc::new(HypersurfaceRing::parse(s, f).unwrap())
    }

    fn class(r: &Arc<HypersurfaceRing>, name: &str, gens: &[&str]) -> ClassExpression {
        ClassExpression::module(
            name,
            Arc::new(ModulePresentation::cyclic_from_strings(r.clone(), gens).unwrap()),
        )
    }

    fn koszul_xy(r: &Arc<HypersurfaceRing>) -> FreeComplex {
        let x = r.parse_element("x").unwrap();
        let y = r.parse_element("y").unwrap();
        FreeComplex::koszul(r.clone(), &[x, y]).unwrap()
    }

    #[test]
    fn koszul_euler_characteristics() {
        let s = regular(&["x", "y"]);
        let k = koszul_xy(&s);
        assert_eq!(k.ranks(), vec![1, 2, 1]);
        let free = ClassExpression::module("S", Arc::new(ModulePresentation::free(s.clone(), 1)));
        assert_eq!(chi_complex(&k, &free), Ok(1));
        assert_eq!(chi_complex(&k, &class(&s, "Sx", &["x"])), Ok(0));
        assert_eq!(chi_complex(&k, &ClassExpression::zero()), Ok(0));
        assert_eq!(chi_complex(&k.shifted(1), &free), Ok(-1));
    }

    #[test]
    fn inferred_degrees_match_koszul() {
        let s = regular(&["x", "y"]);
        let k = koszul_xy(&s);
        let rebuilt = FreeComplex::new(s.clone(), k.differentials().to_vec(), 0).unwrap();
        assert_eq!(chi_complex(&rebuilt, &class(&s, "Sx", &["x"])), Ok(0));
    }

    #[test]
    fn non_complexes_are_rejected() {
        let s = regular(&["x", "y"]);
        let x = s.parse_element("x").unwrap();
        let d = Matrix::from_rows(vec![vec![x.clone()]], 1);
        assert!(matches!(
            FreeComplex::new(s.clone(), vec![d.clone(), d], 0),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn infinite_homology_is_named() {
        let s = regular(&["x", "y"]);
        let x = s.parse_element("x").unwrap();
        let k = FreeComplex::koszul(s.clone(), &[x]).unwrap();
        assert_eq!(chi_complex(&k, &class(&s, "Sy", &["y"])), Ok(1));
        let err = chi_complex(&k, &class(&s, "Sx", &["x"])).unwrap_err();
        assert!(err.to_string().contains("H_0"), "{err}");
    }

    #[test]
    fn modules_of_finite_projective_dimension() {
        let s = regular(&["x", "y"]);
        let k = ModulePresentation::cyclic_from_strings(s.clone(), &["x", "y"]).unwrap();
        assert_eq!(chi_modules(&k, &ModulePresentation::free(s.clone(), 1)), Ok(1));

        let node = ring(&["x", "y"], "x*y");
        let n0 = ModulePresentation::cyclic_from_strings(node.clone(), &["x + y"]).unwrap();
        let ax = ModulePresentation::cyclic_from_strings(node.clone(), &["x"]).unwrap();
        assert_eq!(chi_modules(&n0, &ax), Ok(1));
        assert_eq!(chi_modules(&n0, &ModulePresentation::free(node.clone(), 1)), Ok(2));
        let residue = ModulePresentation::cyclic_from_strings(node.clone(), &["x", "y"]).unwrap();
        assert_eq!(chi_modules(&residue, &ax), Err(Error::NotFinitePd));
        assert_eq!(chi_modules(&ax, &ax), Err(Error::NotFiniteLength));
    }
}
