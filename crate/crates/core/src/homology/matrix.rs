use crate::groebner::{zero_vector, Vector};
use crate::ring::{HypersurfaceRing, Polynomial};

/// Polynomial matrix stored by columns; column `j` is the image of the
/// `j`-th basis vector of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    columns: Vec<Vector>,
}

impl Matrix {
    pub fn from_columns(rows: usize, columns: Vec<Vector>) -> Self {
        debug_assert!(columns.iter().all(|c| c.len() == rows));
        Matrix { rows, columns }
    }

    /// From row-major entries.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut columns = vec![zero_vector(nrows); cols];
        for (i, row) in rows.into_iter().enumerate() {
            debug_assert_eq!(row.len(), cols);
            for (j, p) in row.into_iter().enumerate() {
                columns[j][i] = p;
            }
        }
        Matrix { rows: nrows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            columns: vec![zero_vector(rows); cols],
        }
    }

    pub fn identity(n: usize, one: &Polynomial) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.columns[i][i] = one.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vector> {
        self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(Polynomial::is_zero))
    }

    pub fn transpose(&self) -> Matrix {
        let mut columns = vec![zero_vector(self.cols()); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, p) in col.iter().enumerate() {
                columns[i][j] = p.clone();
            }
        }
        Matrix {
            rows: self.cols(),
            columns,
        }
    }

    /// Product over the ambient polynomial ring.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols(), other.rows, "matrix shapes do not compose");
        let columns = other.columns.iter().map(|col| self.apply(col)).collect();
        Matrix {
            rows: self.rows,
            columns,
        }
    }

    /// `self * v`.
    pub fn apply(&self, v: &[Polynomial]) -> Vector {
        let mut out = zero_vector(self.rows);
        for (c, x) in self.columns.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(c) {
                if !e.is_zero() {
                    *o = o.add(&e.mul(x));
                }
            }
        }
        out
    }

    pub fn map(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> Matrix {
        Matrix {
            rows: self.rows,
            columns: self.columns.iter().map(|c| c.iter().map(&mut f).collect()).collect(),
        }
    }

    /// Entries replaced by their canonical representatives modulo `f`.
    pub fn reduce(&self, ring: &HypersurfaceRing) -> Matrix {
        self.map(|p| ring.reduce(p))
    }

    /// Kronecker product `self ⊗ I_s`: block `(a, b)` is `self[a][b] * I_s`.
    pub fn tensor_identity(&self, s: usize) -> Matrix {
        let mut columns = Vec::with_capacity(self.cols() * s);
        for col in &self.columns {
            for q in 0..s {
                let mut v = zero_vector(self.rows * s);
                for (a, e) in col.iter().enumerate() {
                    v[a * s + q] = e.clone();
                }
                columns.push(v);
            }
        }
        Matrix {
            rows: self.rows * s,
            columns,
        }
    }

    /// Row-major strings, as serialized in reports.
    pub fn format(&self, ring: &HypersurfaceRing) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols()).map(|j| ring.format(self.get(i, j))).collect())
            .collect()
    }
}
