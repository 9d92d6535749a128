//! Gröbner bases of submodules of free modules `S^s`, normal forms,
//! syzygies, standard-monomial counts and Hilbert series.
//!
//! Module elements are dense component vectors of polynomials. Every free
//! module carries integer generator degrees (shifts) so that homogeneous
//! vectors have a well-defined degree.

mod buchberger;
mod hilbert;
mod syzygy;

use std::cmp::Ordering;

pub(crate) use buchberger::Buchberger;
pub use buchberger::{groebner_basis, groebner_basis_graded, GroebnerBasis};
pub use hilbert::{hilbert_series, multiplicity, staircase_count, HilbertSeries, LaurentPoly, Staircase};
pub use syzygy::{syzygies, syzygies_graded, syzygy_basis};

use crate::ring::{Monomial, Polynomial, Scalar};

/// An element of a free module `S^s`, one polynomial per component.
pub type Vector = Vec<Polynomial>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PositionRule {
    /// Compare basis positions first (lower index is larger), then monomials.
    #[default]
    PositionOverTerm,
    /// Compare monomials first, positions break ties (lower index is larger).
    TermOverPosition,
}

/// Monomial order on `monomial * e_i` symbols: weighted graded reverse
/// lexicographic on monomials combined with a position rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleOrder {
    pub rule: PositionRule,
}

impl ModuleOrder {
    pub const POT: ModuleOrder = ModuleOrder {
        rule: PositionRule::PositionOverTerm,
    };
    pub const TOP: ModuleOrder = ModuleOrder {
        rule: PositionRule::TermOverPosition,
    };

    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match self.rule {
            PositionRule::PositionOverTerm => b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)),
            PositionRule::TermOverPosition => a.1.cmp(b.1).then_with(|| b.0.cmp(&a.0)),
        }
    }

    /// Lead term `(component, monomial, coefficient)` of a vector.
    pub fn lead<'a>(&self, v: &'a [Polynomial]) -> Option<(usize, &'a Monomial, &'a Scalar)> {
        match self.rule {
            PositionRule::PositionOverTerm => v.iter().enumerate().find_map(|(i, p)| p.lead().map(|(m, c)| (i, m, c))),
            PositionRule::TermOverPosition => {
                let mut best: Option<(usize, &Monomial, &Scalar)> = None;
                for (i, p) in v.iter().enumerate() {
                    if let Some((m, c)) = p.lead() {
                        match best {
                            Some((_, bm, _)) if m <= bm => {}
                            _ => best = Some((i, m, c)),
                        }
                    }
                }
                best
            }
        }
    }

    pub fn describe(&self) -> &'static str {
        match self.rule {
            PositionRule::PositionOverTerm => "position-over-term, wgrevlex",
            PositionRule::TermOverPosition => "term-over-position, wgrevlex",
        }
    }
}

pub fn zero_vector(rank: usize) -> Vector {
    vec![Polynomial::zero(); rank]
}

pub fn is_zero_vector(v: &[Polynomial]) -> bool {
    v.iter().all(Polynomial::is_zero)
}

/// Unit vector `e_i` with coefficient `one`.
pub fn unit_vector(rank: usize, i: usize, one: Polynomial) -> Vector {
    let mut v = zero_vector(rank);
    v[i] = one;
    v
}

pub fn add_vectors(a: &[Polynomial], b: &[Polynomial]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_vectors(a: &[Polynomial], b: &[Polynomial]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_vector(v: &[Polynomial], p: &Polynomial) -> Vector {
    v.iter().map(|x| x.mul(p)).collect()
}

/// `v - c * m * g`, componentwise.
pub(crate) fn sub_mul_term_vector(v: &mut [Polynomial], m: &Monomial, c: &Scalar, g: &[Polynomial]) {
    for (x, y) in v.iter_mut().zip(g) {
        if !y.is_zero() {
            *x = x.sub_mul_term(m, c, y);
        }
    }
}

/// Degree of a homogeneous vector given the generator degrees of its module.
pub fn vector_degree(v: &[Polynomial], degrees: &[i64]) -> Option<i64> {
    v.iter()
        .zip(degrees)
        .find_map(|(p, d)| p.lead().map(|(m, _)| m.degree() as i64 + d))
}

/// True when every entry is homogeneous and consistent with `degrees`.
pub fn is_homogeneous_vector(v: &[Polynomial], degrees: &[i64]) -> bool {
    let mut target = None;
    for (p, d) in v.iter().zip(degrees) {
        if p.is_zero() {
            continue;
        }
        let Some(pd) = p.homogeneous_degree() else {
            return false;
        };
        let deg = pd as i64 + d;
        match target {
            None => target = Some(deg),
            Some(t) if t != deg => return false,
            _ => {}
        }
    }
    true
}
