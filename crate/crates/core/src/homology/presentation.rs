use std::sync::{Arc, OnceLock};

use super::linear::{f_columns, minimal_generators, reduce_vector};
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::groebner::{
    groebner_basis_graded, hilbert_series, is_homogeneous_vector, is_zero_vector, staircase_count, vector_degree,
    GroebnerBasis, HilbertSeries, ModuleOrder, Staircase, Vector,
};
use crate::ring::{HypersurfaceRing, Polynomial};

/// A finitely generated graded module `coker(Q: R^t -> R^s)`.
///
/// Constructors always return a minimal presentation: no relation entry is a
/// nonzero constant and no relation is redundant. The zero module is the
/// empty `0 x 0` presentation.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<HypersurfaceRing>,
    degrees: Vec<i64>,
    relations: Matrix,
    gb: OnceLock<GroebnerBasis>,
}

impl PartialEq for ModulePresentation {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.degrees == other.degrees && self.relations == other.relations
    }
}

impl Eq for ModulePresentation {}

impl ModulePresentation {
    /// Builds and minimalizes a presentation with known generator degrees.
    pub fn new(ring: Arc<HypersurfaceRing>, degrees: Vec<i64>, relations: Matrix) -> Result<Self> {
        if relations.rows() != degrees.len() {
            return Err(Error::Shape(format!(
                "{} generator degrees for a matrix with {} rows",
                degrees.len(),
                relations.rows()
            )));
        }
        let relations = relations.reduce(&ring);
        for (j, col) in relations.columns().iter().enumerate() {
            if !is_homogeneous_vector(col, &degrees) {
                return Err(Error::Inhomogeneous(format!(
                    "relation column {j} is not homogeneous for generator degrees {degrees:?}"
                )));
            }
        }
        let (degrees, columns) = minimalize(&ring, degrees, relations.into_columns());
        let relations = Matrix::from_columns(degrees.len(), columns);
        Ok(ModulePresentation {
            ring,
            degrees,
            relations,
            gb: OnceLock::new(),
        })
    }

    /// Generator degrees inferred from the entries: within each column the
    /// first nonzero entry fixes the column degree relative to its row, and
    /// the constraints are propagated across columns.
    pub fn from_matrix(ring: Arc<HypersurfaceRing>, relations: Matrix) -> Result<Self> {
        let degrees = infer_degrees(&ring, &relations)?;
        ModulePresentation::new(ring, degrees, relations)
    }

    /// Parses a row-major matrix of polynomial strings.
    pub fn parse(ring: Arc<HypersurfaceRing>, rows: &[Vec<String>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("presentation rows have different lengths".into()));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| ring.parse_element(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::from_matrix(ring, Matrix::from_rows(parsed, cols))
    }

    /// `A/I` for the ideal generated by `gens`.
    pub fn cyclic(ring: Arc<HypersurfaceRing>, gens: &[Polynomial]) -> Result<Self> {
        let row: Vec<Polynomial> = gens.iter().map(|g| ring.reduce(g)).collect();
        let cols = row.len();
        ModulePresentation::new(ring, vec![0], Matrix::from_rows(vec![row], cols))
    }

    pub fn cyclic_from_strings(ring: Arc<HypersurfaceRing>, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| ring.ambient().parse(g))
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::cyclic(ring, &gens)
    }

    pub fn free(ring: Arc<HypersurfaceRing>, rank: usize) -> Self {
        ModulePresentation {
            ring,
            degrees: vec![0; rank],
            relations: Matrix::zero(rank, 0),
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: Arc<HypersurfaceRing>) -> Self {
        ModulePresentation::free(ring, 0)
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::Shape("direct sum of modules over different rings".into()));
        }
        let (s1, s2) = (self.rank(), other.rank());
        let mut columns = Vec::with_capacity(self.relations.cols() + other.relations.cols());
        for c in self.relations.columns() {
            let mut v = c.clone();
            v.extend(std::iter::repeat_n(Polynomial::zero(), s2));
            columns.push(v);
        }
        for c in other.relations.columns() {
            let mut v = vec![Polynomial::zero(); s1];
            v.extend(c.iter().cloned());
            columns.push(v);
        }
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        ModulePresentation::new(self.ring.clone(), degrees, Matrix::from_columns(s1 + s2, columns))
    }

    pub fn ring(&self) -> &Arc<HypersurfaceRing> {
        &self.ring
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.relations.cols() == 0
    }

    /// Reduced Gröbner basis of the relation columns together with `f * e_k`.
    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let mut gens = self.relations.columns().to_vec();
            gens.extend(f_columns(&self.ring, self.rank()));
            groebner_basis_graded(self.ring.ambient(), &self.degrees, &gens, ModuleOrder::POT)
        })
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        hilbert_series(self.groebner())
    }

    /// Krull dimension of the support; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        self.hilbert_series().dimension()
    }

    /// `dim_k` of the module, or [`Staircase::Infinite`].
    pub fn length(&self) -> Staircase {
        staircase_count(self.groebner())
    }

    /// Membership of `v` (a vector on the generators) in the relation module.
    pub fn is_zero_element(&self, v: &[Polynomial]) -> bool {
        self.groebner().contains(v)
    }

    /// Stable text form used as a cache key and in reports.
    pub fn fingerprint(&self) -> String {
        format!(
            "{}|{:?}|{:?}",
            self.ring.describe(),
            self.degrees,
            self.relations.format(&self.ring)
        )
    }
}

fn infer_degrees(ring: &HypersurfaceRing, relations: &Matrix) -> Result<Vec<i64>> {
    let s = relations.rows();
    let mut entry_degree = vec![vec![None; relations.cols()]; s];
    for (j, col) in relations.columns().iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            entry_degree[i][j] = Some(ring.ambient().weighted_degree(p)? as i64);
        }
    }
    let mut degrees: Vec<Option<i64>> = vec![None; s];
    let mut col_degree: Vec<Option<i64>> = vec![None; relations.cols()];
    for seed in 0..relations.cols() {
        if col_degree[seed].is_some() {
            continue;
        }
        let Some(first) = (0..s).find(|&i| entry_degree[i][seed].is_some()) else {
            continue;
        };
        if degrees[first].is_none() {
            degrees[first] = Some(0);
        }
        // propagate to a fixpoint through the row/column incidence graph
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..relations.cols() {
                for i in 0..s {
                    let Some(e) = entry_degree[i][j] else { continue };
                    match (degrees[i], col_degree[j]) {
                        (Some(d), None) => {
                            col_degree[j] = Some(d + e);
                            changed = true;
                        }
                        (None, Some(c)) => {
                            degrees[i] = Some(c - e);
                            changed = true;
                        }
                        (Some(d), Some(c)) if d + e != c => {
                            return Err(Error::Inhomogeneous(format!(
                                "entry ({i}, {j}) has degree {e} but the column has degree {c} and the row {d}"
                            )));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(degrees.into_iter().map(|d| d.unwrap_or(0)).collect())
}

/// Splits off unit entries, then drops relations that are zero or redundant.
fn minimalize(ring: &HypersurfaceRing, mut degrees: Vec<i64>, mut columns: Vec<Vector>) -> (Vec<i64>, Vec<Vector>) {
    columns.retain(|c| !is_zero_vector(c));
    loop {
        let pivot = columns
            .iter()
            .enumerate()
            .find_map(|(j, c)| c.iter().position(|p| p.as_constant().is_some()).map(|i| (i, j)));
        let Some((r, c)) = pivot else { break };
        let pivot_col = columns.remove(c);
        let inv = pivot_col[r].as_constant().unwrap().inv().unwrap();
        for col in columns.iter_mut() {
            if col[r].is_zero() {
                continue;
            }
            let factor = col[r].scale(&inv);
            for (x, y) in col.iter_mut().zip(&pivot_col) {
                if !y.is_zero() {
                    *x = ring.reduce(&x.sub(&y.mul(&factor)));
                }
            }
            debug_assert!(col[r].is_zero());
        }
        for col in columns.iter_mut() {
            col.remove(r);
        }
        degrees.remove(r);
        columns.retain(|c| !is_zero_vector(c));
    }
    let columns = minimal_generators(ring, columns, &degrees, &[]);
    (degrees, columns.into_iter().map(|c| reduce_vector(ring, &c)).collect())
}

/// Degree of each relation column (for columns that are nonzero).
pub(crate) fn column_degrees(columns: &[Vector], degrees: &[i64]) -> Vec<i64> {
    columns.iter().map(|c| vector_degree(c, degrees).unwrap_or(0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, PolyRing};

    fn quadric() -> Arc<HypersurfaceRing> {
        let s = PolyRing::standard(FieldSpec::rationals(), &["x", "y", "u", "v"]).unwrap();
        Arc::new(HypersurfaceRing::parse(s, "x*y - u*v").unwrap())
    }

    #[test]
    fn cyclic_presentations() {
        let r = quadric();
        let m = ModulePresentation::cyclic_from_strings(r.clone(), &["x", "u"]).unwrap();
        assert_eq!(m.relations().format(&r), vec![vec!["x".to_string(), "u".to_string()]]);
        let a = ModulePresentation::cyclic_from_strings(r.clone(), &[]).unwrap();
        assert_eq!((a.rank(), a.relations().cols()), (1, 0));
        let z = ModulePresentation::cyclic_from_strings(r.clone(), &["1"]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z, ModulePresentation::zero(r));
    }

    #[test]
    fn redundant_relations_are_dropped() {
        let r = quadric();
        let m = ModulePresentation::cyclic_from_strings(r.clone(), &["x", "x^2", "x*y", "u"]).unwrap();
        // x*y = u*v is redundant as well
        assert_eq!(m.relations().cols(), 2);
    }

    #[test]
    fn unit_entries_are_split_off() {
        let r = quadric();
        let rows = vec![
            vec!["1".to_string(), "0".to_string()],
            vec!["x".to_string(), "u".to_string()],
        ];
        // second generator degree inferred relative to the first
        let m = ModulePresentation::parse(r.clone(), &rows);
        let m = m.unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.relations().format(&r), vec![vec!["u".to_string()]]);
    }

    #[test]
    fn degree_inference_detects_conflicts() {
        let r = quadric();
        let rows = vec![
            vec!["x".to_string(), "y".to_string()],
            vec!["u".to_string(), "v^2".to_string()],
        ];
        assert!(matches!(
            ModulePresentation::parse(r, &rows),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn lengths() {
        let s = PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap();
        let node = Arc::new(HypersurfaceRing::parse(s.clone(), "x*y").unwrap());
        let k = ModulePresentation::cyclic_from_strings(node.clone(), &["x", "y"]).unwrap();
        assert_eq!(k.length(), Staircase::Finite(1));
        let ax = ModulePresentation::cyclic_from_strings(node, &["x"]).unwrap();
        assert_eq!(ax.length(), Staircase::Infinite);
        let plane = Arc::new(HypersurfaceRing::regular(s));
        let m = ModulePresentation::cyclic_from_strings(plane, &["x^2", "x*y", "y^3"]).unwrap();
        assert_eq!(m.length(), Staircase::Finite(4));
    }
}
