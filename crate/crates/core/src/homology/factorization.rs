use std::collections::HashMap;
use std::sync::Arc;

use super::matrix::Matrix;
use super::presentation::ModulePresentation;
use super::resolution::Resolution;
use crate::error::{Error, Result};
use crate::ring::{HypersurfaceRing, Polynomial};

/// Square matrices `alpha`, `beta` over `S` with `alpha * beta = beta * alpha = f * I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    ring: Arc<HypersurfaceRing>,
    alpha: Matrix,
    beta: Matrix,
    /// Homological index `k` of the differential `d_k` that `alpha` lifts.
    source_index: usize,
    /// Generator degrees of the target of `alpha` (`F_{k-1}`).
    degrees: Vec<i64>,
}

impl MatrixFactorization {
    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn size(&self) -> usize {
        self.alpha.rows()
    }

    pub fn source_index(&self) -> usize {
        self.source_index
    }

    /// `coker(alpha mod f)` is `Omega^shift(M)`.
    pub fn syzygy_shift(&self) -> usize {
        self.source_index.saturating_sub(1)
    }

    /// Checks `alpha * beta = beta * alpha = f * I` over `S`.
    pub fn verify(&self) -> bool {
        let target = Matrix::identity(self.size(), self.ring.f());
        self.alpha.mul(&self.beta) == target && self.beta.mul(&self.alpha) == target
    }

    /// The maximal Cohen-Macaulay module `coker(alpha mod f)`.
    pub fn cokernel(&self) -> Result<ModulePresentation> {
        ModulePresentation::new(self.ring.clone(), self.degrees.clone(), self.alpha.reduce(&self.ring))
    }
}

/// Exact quotient `p / f` over `S`.
fn divide_by(p: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let (lm, lc) = f.lead()?;
    let mut q = Polynomial::zero();
    let mut work = p.clone();
    while let Some((m, c)) = work.lead().cloned() {
        if !lm.divides(&m) {
            return None;
        }
        let t = Polynomial::term(m.div(lm), c.div(lc));
        work = work.sub(&t.mul(f));
        q = q.add(&t);
    }
    Some(q)
}

/// Determinant by cofactor expansion along columns, memoized over row
/// subsets; fine for the small sizes of stable tails.
fn determinant(m: &Matrix, one: &Polynomial) -> Polynomial {
    fn rec(m: &Matrix, col: usize, used: u64, one: &Polynomial, memo: &mut HashMap<u64, Polynomial>) -> Polynomial {
        if col == m.cols() {
            return one.clone();
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = Polynomial::zero();
        let mut positive = true;
        for r in 0..m.rows() {
            if used & (1 << r) != 0 {
                continue;
            }
            let e = m.get(r, col);
            if !e.is_zero() {
                let term = e.mul(&rec(m, col + 1, used | (1 << r), one, memo));
                acc = if positive { acc.add(&term) } else { acc.sub(&term) };
            }
            positive = !positive;
        }
        memo.insert(used, acc.clone());
        acc
    }
    rec(m, 0, 0, one, &mut HashMap::new())
}

fn minor_matrix(m: &Matrix, skip_row: usize, skip_col: usize) -> Matrix {
    let cols = (0..m.cols())
        .filter(|&j| j != skip_col)
        .map(|j| {
            m.column(j)
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip_row)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect();
    Matrix::from_columns(m.rows() - 1, cols)
}

/// Inverse over `S` when the determinant is a nonzero constant.
fn invert(m: &Matrix, ring: &HypersurfaceRing) -> Option<Matrix> {
    let n = m.rows();
    let one = ring.ambient().one();
    let det = determinant(m, &one);
    let inv_det = det.as_constant()?.inv()?;
    if n == 1 {
        return Some(Matrix::from_rows(vec![vec![ring.ambient().constant(inv_det)]], 1));
    }
    let mut rows = vec![vec![Polynomial::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // adj(m)[i][j] = (-1)^(i+j) det(minor without row j, column i)
            let minor = determinant(&minor_matrix(m, j, i), &one);
            let c = if (i + j) % 2 == 0 { minor } else { minor.neg() };
            *entry = c.scale(&inv_det);
        }
    }
    Some(Matrix::from_rows(rows, n))
}

/// Lifts two consecutive stable differentials `d_k`, `d_{k+1}` to `S` and
/// normalizes the second so that the product is exactly `f * I`.
pub fn extract_matrix_factorization(res: &Resolution) -> Result<MatrixFactorization> {
    let ring = res.ring().clone();
    let d = ring.dimension();
    if ring.is_regular() {
        return Err(Error::InvalidRing("matrix factorizations need a hypersurface".into()));
    }
    if res.is_complete() {
        // finite projective dimension: the stable tail is zero
        return Ok(MatrixFactorization {
            ring,
            alpha: Matrix::zero(0, 0),
            beta: Matrix::zero(0, 0),
            source_index: res.length() + 1,
            degrees: Vec::new(),
        });
    }
    if res.length() < d + 3 {
        return Err(Error::NotStabilized(res.length()));
    }
    let k = res.stable_start().ok_or(Error::NotStabilized(res.length()))?;
    let alpha = res.differential(k)?;
    let beta = res.differential(k + 1)?;
    if alpha.rows() != alpha.cols() || beta.rows() != beta.cols() {
        return Err(Error::NotStabilized(res.length()));
    }
    let f = ring.f();
    let product = alpha.mul(&beta);
    let mut quotient = Vec::with_capacity(product.cols());
    for c in product.columns() {
        let q: Option<Vec<Polynomial>> = c.iter().map(|p| divide_by(p, f)).collect();
        quotient.push(q.ok_or_else(|| Error::FactorizationCheck("d_k * d_(k+1) is not divisible by f".into()))?);
    }
    let quotient = Matrix::from_columns(product.rows(), quotient);
    let inverse = invert(&quotient, &ring)
        .ok_or_else(|| Error::FactorizationCheck("normalizing matrix is not invertible over S".into()))?;
    let beta = beta.mul(&inverse);
    let mf = MatrixFactorization {
        ring,
        alpha,
        beta,
        source_index: k,
        degrees: res.degrees(k - 1).to_vec(),
    };
    if !mf.verify() {
        return Err(Error::FactorizationCheck("alpha * beta != f * I".into()));
    }
    Ok(mf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::tor_length;
    use crate::ring::{FieldSpec, PolyRing};

    fn ring(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
        let s = PolyRing::standard(FieldSpec::rationals(), vars).unwrap();
        Arc::new(HypersurfaceRing::parse(s, f).unwrap())
    }

    fn mf_of(r: &Arc<HypersurfaceRing>, gens: &[&str]) -> MatrixFactorization {
        let m = ModulePresentation::cyclic_from_strings(r.clone(), gens).unwrap();
        let res = Resolution::compute(&m, r.dimension() + 4);
        extract_matrix_factorization(&res).unwrap()
    }

    #[test]
    fn quadric_plane() {
        let r = ring(&["x", "y", "u", "v"], "x*y - u*v");
        let mf = mf_of(&r, &["x", "u"]);
        assert_eq!(mf.size(), 2);
        assert!(mf.verify());
        // cokernel of alpha is a high syzygy of A/(x,u)
        let m = ModulePresentation::cyclic_from_strings(r.clone(), &["x", "u"]).unwrap();
        let probe = ModulePresentation::cyclic_from_strings(r.clone(), &["x", "v"]).unwrap();
        let coker = mf.cokernel().unwrap();
        for i in 1..3 {
            assert_eq!(
                tor_length(&coker, &probe, i).unwrap(),
                tor_length(&m, &probe, i + mf.syzygy_shift()).unwrap()
            );
        }
    }

    #[test]
    fn dual_numbers_and_node() {
        let r = ring(&["x"], "x^2");
        let mf = mf_of(&r, &["x"]);
        assert_eq!(mf.alpha().format(&r), vec![vec!["x".to_string()]]);
        assert_eq!(mf.beta().format(&r), vec![vec!["x".to_string()]]);

        let node = ring(&["x", "y"], "x*y");
        let mf = mf_of(&node, &["x"]);
        let mut pair = vec![
            mf.alpha().format(&node)[0][0].clone(),
            mf.beta().format(&node)[0][0].clone(),
        ];
        pair.sort();
        assert_eq!(pair, vec!["x".to_string(), "y".to_string()]);
        assert!(mf.verify());
    }

    #[test]
    fn too_short_resolution_is_rejected() {
        let r = ring(&["x", "y", "u", "v"], "x*y - u*v");
        let m = ModulePresentation::cyclic_from_strings(r.clone(), &["x", "u"]).unwrap();
        let res = Resolution::compute(&m, 3);
        assert_eq!(extract_matrix_factorization(&res), Err(Error::NotStabilized(3)));
    }
}
