use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis_graded, hilbert_series, unit_vector, HilbertSeries, ModuleOrder, Vector};
use crate::homology::ModulePresentation;
use crate::ring::{HypersurfaceRing, Polynomial};

/// A formal sum `Σ m_p [p]` of named height-one primes, canonical: sorted
/// by name with no zero multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DivisorClass {
    terms: BTreeMap<String, i64>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn with_term(mut self, prime: impl Into<String>, multiplicity: i64) -> Self {
        let name = prime.into();
        let m = self.terms.get(&name).copied().unwrap_or(0) + multiplicity;
        if m == 0 {
            self.terms.remove(&name);
        } else {
            self.terms.insert(name, m);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, prime: &str) -> i64 {
        self.terms.get(prime).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, i64)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (name, &c)) in self.terms.iter().enumerate() {
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "[{name}]")?;
        }
        Ok(())
    }
}

/// Hilbert series of `S^s / (U + f S^s + I S^s)` where `U` is the relation
/// module of `m` and `I` is generated by `ideal`.
fn quotient_series(m: &ModulePresentation, ideal: &[Polynomial]) -> HilbertSeries {
    let ring = m.ring();
    let s = m.rank();
    let mut gens: Vec<Vector> = m.relations().columns().to_vec();
    if !ring.is_regular() {
        gens.extend((0..s).map(|k| unit_vector(s, k, ring.f().clone())));
    }
    for g in ideal {
        gens.extend((0..s).map(|k| unit_vector(s, k, g.clone())));
    }
    let gb = groebner_basis_graded(ring.ambient(), m.degrees(), &gens, ModuleOrder::POT);
    hilbert_series(&gb)
}

/// Generators of `p^i`: products of `i`-element multisets of generators.
fn power(p: &[Polynomial], i: usize, one: &Polynomial) -> Vec<Polynomial> {
    let mut level = vec![(0usize, one.clone())];
    for _ in 0..i {
        let mut next = Vec::new();
        for (start, g) in &level {
            for (k, q) in p.iter().enumerate().skip(*start) {
                next.push((k, g.mul(q)));
            }
        }
        level = next;
    }
    let mut out: Vec<Polynomial> = level.into_iter().map(|(_, g)| g).filter(|g| !g.is_zero()).collect();
    out.dedup();
    out
}

fn check_prime(ring: &Arc<HypersurfaceRing>, p: &[Polynomial]) -> Result<u64> {
    if !ring.ambient().has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    let cyclic = ModulePresentation::free(ring.clone(), 1);
    let series = quotient_series(&cyclic, p);
    let d = ring.dimension();
    if series.dimension() != Some(d.saturating_sub(1)) || d == 0 {
        return Err(Error::DimensionMismatch(format!(
            "the prime must have dimension {} but A/p has dimension {:?}",
            d.saturating_sub(1),
            series.dimension()
        )));
    }
    series.multiplicity()
}

/// `ℓ_{A_p}(M_p)` for a graded height-one prime `p`, computed as
/// `Σ_i rank_{A/p}(p^i M / p^{i+1} M)` with ranks read off multiplicities.
pub fn local_length_at_prime(m: &ModulePresentation, p: &[Polynomial]) -> Result<u64> {
    let ring = m.ring();
    let e_p = check_prime(ring, p)?;
    let d = ring.dimension();
    if m.dimension() != Some(d - 1) {
        return Err(Error::DimensionMismatch(format!(
            "the module must have dimension {} but has dimension {:?}",
            d - 1,
            m.dimension()
        )));
    }
    let one = ring.ambient().one();
    let mut previous = quotient_series(m, std::slice::from_ref(&one));
    let mut total = 0u64;
    for i in 0.. {
        let current = quotient_series(m, &power(p, i + 1, &one));
        let layer = current.sub(&previous);
        if layer.dimension() != Some(d - 1) {
            break;
        }
        let e = layer.multiplicity()?;
        if e % e_p != 0 {
            return Err(Error::DimensionMismatch(format!(
                "layer {i} has multiplicity {e}, not a multiple of e(A/p) = {e_p}"
            )));
        }
        total += e / e_p;
        previous = current;
    }
    Ok(total)
}

/// `c_1` of a torsion module together with audit warnings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C1Result {
    pub class: DivisorClass,
    pub warnings: Vec<String>,
}

/// `c_1([M]) = Σ_p ℓ_{A_p}(M_p) [p]` over the supplied candidate primes,
/// which must include every `(d-1)`-dimensional component of the support.
pub fn c1_torsion(m: &ModulePresentation, primes: &[(String, Vec<Polynomial>)]) -> Result<C1Result> {
    let ring = m.ring();
    if !ring.ambient().has_unit_weights() {
        return Err(Error::NonUnitWeights);
    }
    let d = ring.dimension();
    let dim = match m.dimension() {
        None => {
            return Ok(C1Result {
                class: DivisorClass::zero(),
                warnings: Vec::new(),
            })
        }
        Some(dim) => dim,
    };
    if dim >= d {
        return Err(Error::NotTorsion);
    }
    if dim + 2 <= d {
        return Ok(C1Result {
            class: DivisorClass::zero(),
            warnings: Vec::new(),
        });
    }
    let mut class = DivisorClass::zero();
    let mut accounted = 0u64;
    for (name, p) in primes {
        let e_p = check_prime(ring, p)?;
        let l = local_length_at_prime(m, p)?;
        accounted += l * e_p;
        class = class.with_term(name.clone(), l as i64);
    }
    let e_m = m.hilbert_series().multiplicity()?;
    let mut warnings = Vec::new();
    if accounted != e_m {
        warnings.push(format!(
            "multiplicity audit: the listed primes account for {accounted} of e(M) = {e_m}; a component may be missing"
        ));
    }
    Ok(C1Result { class, warnings })
}
