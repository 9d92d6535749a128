//! Lengths, the theta pairing, Euler characteristics of free complexes,
//! local lengths at height-one primes and the divisor class of torsion
//! modules.

mod complex;
mod divisor;
mod theta;

pub use complex::{chi_complex, chi_modules, FreeComplex};
pub use divisor::{c1_torsion, local_length_at_prime, C1Result, DivisorClass};
pub use theta::{length, theta, theta_class, window_start, ClassExpression, ClassTerm, PairingEngine, ThetaWindow};

use crate::homology::{ModulePresentation, Resolution};

/// Projective dimension of `m` if it is finite, read off a resolution of
/// length `d + 2`.
pub fn finite_pd(m: &ModulePresentation) -> Option<usize> {
    let res = Resolution::compute(m, m.ring().dimension() + 2);
    res.projective_dimension()
}
