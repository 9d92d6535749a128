//! Gram matrices of theta on lists of classes, exact inertia and kernels,
//! and the semidefiniteness / vanishing report built from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::ModulePresentation;
use crate::pairings::{window_start, ClassExpression, PairingEngine};

/// Inertia `(n_+, n_-, n_0)` of a real symmetric matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// `Θ_ij = θ(α_i, α_j)`. Pairings of the underlying modules are evaluated
/// in parallel on the current rayon pool; the result does not depend on
/// the number of threads.
pub fn gram_matrix(engine: &PairingEngine, classes: &[ClassExpression]) -> Result<Vec<Vec<i64>>> {
    let mut modules: BTreeMap<&str, &Arc<ModulePresentation>> = BTreeMap::new();
    for c in classes {
        for t in c.terms() {
            modules.entry(t.name.as_str()).or_insert(&t.module);
        }
    }
    let names: Vec<&str> = modules.keys().copied().collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let k = names.len();
    // resolve every module once before the pairings fan out
    let window = classes
        .first()
        .and_then(|c| c.terms().first())
        .map_or(0, |t| window_start(t.module.ring().dimension()) + 4);
    names.par_iter().for_each(|n| {
        engine.resolution(modules[n], window);
    });
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let values: Vec<Result<i64>> = pairs
        .par_iter()
        .map(|&(i, j)| engine.theta(modules[names[i]], modules[names[j]]))
        .collect();
    let mut theta = vec![vec![0i64; k]; k];
    for (&(i, j), v) in pairs.iter().zip(values) {
        theta[i][j] = v?;
    }
    if !is_symmetric(&theta) {
        return Err(Error::NotSymmetric);
    }
    let coeffs: Vec<Vec<(usize, i64)>> = classes
        .iter()
        .map(|c| {
            c.terms()
                .iter()
                .map(|t| (index[t.name.as_str()], t.coefficient))
                .collect()
        })
        .collect();
    let n = classes.len();
    let mut gram = vec![vec![0i64; n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = 0i128;
            for &(i, ci) in &coeffs[a] {
                for &(j, cj) in &coeffs[b] {
                    acc += ci as i128 * cj as i128 * theta[i][j] as i128;
                }
            }
            gram[a][b] = i64::try_from(acc).map_err(|_| Error::Overflow("Gram matrix entry".into()))?;
        }
    }
    Ok(gram)
}

fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Inertia of a symmetric rational matrix by exact congruence
/// diagonalization: a nonzero diagonal pivot when one exists, otherwise a
/// `2x2` hyperbolic block `[[0, b], [b, 0]]` contributing `(1, 1, 0)`.
pub fn signature(matrix: &[Vec<BigRational>]) -> Result<Inertia> {
    if !is_symmetric(matrix) {
        return Err(Error::NotSymmetric);
    }
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !a.is_empty() {
        let n = a.len();
        if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                inertia.positive += 1;
            } else {
                inertia.negative += 1;
            }
            let row = a[p].clone();
            let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
            a = rest
                .iter()
                .map(|&i| rest.iter().map(|&j| &a[i][j] - &row[i] * &row[j] / &pivot).collect())
                .collect();
            continue;
        }
        // zero diagonal: pair a row with any nonzero off-diagonal entry
        let Some((p, q)) = (0..n).find_map(|i| (0..n).find(|&j| !a[i][j].is_zero()).map(|j| (i, j))) else {
            inertia.zero += n;
            break;
        };
        inertia.positive += 1;
        inertia.negative += 1;
        let b = a[p][q].clone();
        let (rp, rq) = (a[p].clone(), a[q].clone());
        let rest: Vec<usize> = (0..n).filter(|&i| i != p && i != q).collect();
        // Schur complement of the block [[0, b], [b, 0]], whose inverse is
        // [[0, 1/b], [1/b, 0]]
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - (&rp[i] * &rq[j] + &rq[i] * &rp[j]) / &b)
                    .collect()
            })
            .collect();
    }
    Ok(inertia)
}

/// [`signature`] of an integer matrix.
pub fn signature_i64(matrix: &[Vec<i64>]) -> Result<Inertia> {
    signature(&to_rational(matrix))
}

fn to_rational(matrix: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

/// Integer basis of the rational null space: one vector per free column
/// of the reduced row echelon form, scaled to coprime entries with the
/// first nonzero entry positive.
pub fn kernel_basis(matrix: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if !is_symmetric(matrix) {
        return Err(Error::NotSymmetric);
    }
    let mut a = to_rational(matrix);
    let n = a.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != row && !a[i][col].is_zero() {
                let factor = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &factor * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        basis.push(integer_vector(&v)?);
    }
    Ok(basis)
}

fn integer_vector(v: &[BigRational]) -> Result<Vec<i64>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.iter()
        .map(|x| {
            let y = if gcd.is_zero() { x.clone() } else { x / &gcd * &sign };
            y.to_i64().ok_or_else(|| Error::Overflow("kernel vector entry".into()))
        })
        .collect()
}

/// Outcome of the semidefiniteness / vanishing test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

/// Gram matrix of theta on a list of named classes, its inertia, kernel
/// and verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub names: Vec<String>,
    pub dimension: usize,
    pub matrix: Vec<Vec<i64>>,
    /// Inertia of the matrix itself.
    pub inertia: Inertia,
    /// `(-1)^((d+1)/2)` for odd `d`, `1` for even `d`.
    pub sign: i64,
    /// Inertia of `sign * matrix`.
    pub adjusted_inertia: Inertia,
    pub kernel: Vec<Vec<i64>>,
    pub verdict: Verdict,
    /// Human-readable statement of what the verdict checks.
    pub criterion: String,
}

/// For even `d`: PASS iff every entry vanishes. For odd `d`: PASS iff
/// `(-1)^((d+1)/2) Θ` is positive semidefinite.
pub fn conjecture_report(
    engine: &PairingEngine,
    dimension: usize,
    classes: &[(String, ClassExpression)],
) -> Result<GramReport> {
    let exprs: Vec<ClassExpression> = classes.iter().map(|(_, c)| c.clone()).collect();
    let matrix = gram_matrix(engine, &exprs)?;
    let inertia = signature_i64(&matrix)?;
    let kernel = kernel_basis(&matrix)?;
    let (sign, adjusted_inertia, verdict, criterion) = if dimension.is_multiple_of(2) {
        let pass = matrix.iter().flatten().all(|&x| x == 0);
        (
            1,
            inertia,
            pass,
            format!("d = {dimension} is even: every pairing vanishes"),
        )
    } else {
        let sign = if dimension.div_ceil(2).is_multiple_of(2) { 1 } else { -1 };
        let adjusted = Inertia {
            positive: if sign > 0 { inertia.positive } else { inertia.negative },
            negative: if sign > 0 { inertia.negative } else { inertia.positive },
            zero: inertia.zero,
        };
        let label = if sign > 0 { "Θ" } else { "-Θ" };
        (
            sign,
            adjusted,
            adjusted.negative == 0,
            format!("d = {dimension} is odd: {label} is positive semidefinite"),
        )
    };
    Ok(GramReport {
        names: classes.iter().map(|(n, _)| n.clone()).collect(),
        dimension,
        matrix,
        inertia,
        sign,
        adjusted_inertia,
        kernel,
        verdict: if verdict { Verdict::Pass } else { Verdict::Fail },
        criterion,
    })
}
