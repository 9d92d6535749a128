use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::Staircase;
use crate::homology::{homology_of_tensored, ModulePresentation, Resolution};

/// `ℓ(M)`: the `k`-dimension of `M`, or [`Staircase::Infinite`].
pub fn length(m: &ModulePresentation) -> Staircase {
    m.length()
}

/// The four Tor lengths `ℓ(Tor_i)`, `i = first..first+3`, from which theta
/// is read and whose 2-periodicity certifies the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaWindow {
    pub first_index: usize,
    pub lengths: [u64; 4],
}

impl ThetaWindow {
    /// `ℓ(Tor_{first+1}) - ℓ(Tor_first)`; `first` is odd, so this is
    /// "even minus odd".
    pub fn value(&self) -> i64 {
        self.lengths[1] as i64 - self.lengths[0] as i64
    }
}

/// Least `e` with `2e >= d`; the window starts at `2e + 1`.
pub fn window_start(dimension: usize) -> usize {
    2 * dimension.div_ceil(2) + 1
}

/// Computes theta pairings, caching one resolution per module.
///
/// The cache is keyed by [`ModulePresentation::fingerprint`] and safe to
/// share between threads; every value is independent of evaluation order.
#[derive(Default)]
pub struct PairingEngine {
    cache: Mutex<HashMap<String, Arc<Resolution>>>,
}

impl PairingEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// A resolution of `m` through at least `length`, reusing a cached one.
    pub fn resolution(&self, m: &ModulePresentation, length: usize) -> Arc<Resolution> {
        let key = m.fingerprint();
        if let Some(res) = self.cache.lock().expect("cache lock").get(&key) {
            if res.is_complete() || res.length() >= length {
                return res.clone();
            }
        }
        let res = Arc::new(Resolution::compute(m, length));
        let mut cache = self.cache.lock().expect("cache lock");
        let entry = cache.entry(key).or_insert_with(|| res.clone());
        if !entry.is_complete() && entry.length() < res.length() {
            *entry = res.clone();
        }
        res
    }

    pub fn tor_length(&self, m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<Staircase> {
        let res = self.resolution(m, i + 1);
        Ok(homology_of_tensored(&res, n, i)?.length())
    }

    /// Tor lengths over the theta window, failing on infinite lengths.
    pub fn theta_window(&self, m: &ModulePresentation, n: &ModulePresentation) -> Result<ThetaWindow> {
        let first = window_start(m.ring().dimension());
        let res = self.resolution(m, first + 4);
        let mut lengths = [0; 4];
        for (k, slot) in lengths.iter_mut().enumerate() {
            let index = first + k;
            *slot = homology_of_tensored(&res, n, index)?
                .length()
                .finite()
                .ok_or(Error::NonIsolatedSingularity { index })?;
        }
        Ok(ThetaWindow {
            first_index: first,
            lengths,
        })
    }

    /// `θ(M, N) = ℓ(Tor_{2e+2}) - ℓ(Tor_{2e+1})` for the least `e` with
    /// `2e >= d`, certified by `ℓ(Tor_{2e+1}) = ℓ(Tor_{2e+3})` and
    /// `ℓ(Tor_{2e+2}) = ℓ(Tor_{2e+4})`.
    pub fn theta(&self, m: &ModulePresentation, n: &ModulePresentation) -> Result<i64> {
        let w = self.theta_window(m, n)?;
        if w.lengths[0] != w.lengths[2] || w.lengths[1] != w.lengths[3] {
            return Err(Error::PeriodicityViolation {
                first: w.first_index,
                last: w.first_index + 3,
                lengths: w.lengths.to_vec(),
            });
        }
        Ok(w.value())
    }

    /// Bilinear extension of [`PairingEngine::theta`].
    pub fn theta_class(&self, a: &ClassExpression, b: &ClassExpression) -> Result<i64> {
        let mut total: i64 = 0;
        for s in a.terms() {
            for t in b.terms() {
                let v = self.theta(&s.module, &t.module)?;
                total = v
                    .checked_mul(s.coefficient * t.coefficient)
                    .and_then(|x| total.checked_add(x))
                    .ok_or_else(|| Error::Overflow("theta of class expressions".into()))?;
            }
        }
        Ok(total)
    }
}

/// `θ(M, N)` with a throwaway engine.
pub fn theta(m: &ModulePresentation, n: &ModulePresentation) -> Result<i64> {
    PairingEngine::new().theta(m, n)
}

/// `θ(α, β)` with a throwaway engine.
pub fn theta_class(a: &ClassExpression, b: &ClassExpression) -> Result<i64> {
    PairingEngine::new().theta_class(a, b)
}

/// One summand `c · [M]` of a class expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTerm {
    pub name: String,
    pub module: Arc<ModulePresentation>,
    pub coefficient: i64,
}

/// A formal integer combination `Σ c_j [M_j]` of named modules, kept in
/// canonical form: sorted by name, one term per name, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassExpression {
    terms: Vec<ClassTerm>,
}

impl ClassExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The class `[M]`.
    pub fn module(name: impl Into<String>, module: Arc<ModulePresentation>) -> Self {
        Self::zero().with_term(name, module, 1)
    }

    /// Adds `c · [M]`, merging with an existing term of the same name.
    pub fn with_term(mut self, name: impl Into<String>, module: Arc<ModulePresentation>, coefficient: i64) -> Self {
        let name = name.into();
        match self.terms.binary_search_by(|t| t.name.cmp(&name)) {
            Ok(i) => {
                self.terms[i].coefficient += coefficient;
                if self.terms[i].coefficient == 0 {
                    self.terms.remove(i);
                }
            }
            Err(i) if coefficient != 0 => self.terms.insert(
                i,
                ClassTerm {
                    name,
                    module,
                    coefficient,
                },
            ),
            Err(_) => {}
        }
        self
    }

    pub fn terms(&self) -> &[ClassTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &ClassExpression) -> ClassExpression {
        other.terms.iter().fold(self.clone(), |acc, t| {
            acc.with_term(t.name.clone(), t.module.clone(), t.coefficient)
        })
    }

    pub fn scale(&self, c: i64) -> ClassExpression {
        self.terms.iter().fold(Self::zero(), |acc, t| {
            acc.with_term(t.name.clone(), t.module.clone(), t.coefficient * c)
        })
    }
}

impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let c = t.coefficient;
            match (k, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "[{}]", t.name)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, HypersurfaceRing, PolyRing};

    fn ring(vars: &[&str], f: &str) -> Arc<HypersurfaceRing> {
        let s = PolyRing::standard(FieldSpec::rationals(), vars).unwrap();
        Arc::new(HypersurfaceRing::parse(s, f).unwrap())
    }

    fn cyclic(r: &Arc<HypersurfaceRing>, gens: &[&str]) -> Arc<ModulePresentation> {
        Arc::new(ModulePresentation::cyclic_from_strings(r.clone(), gens).unwrap())
    }

    #[test]
    fn window_starts() {
        assert_eq!(window_start(1), 3);
        assert_eq!(window_start(2), 3);
        assert_eq!(window_start(3), 5);
    }

    #[test]
    fn node_values() {
        let r = ring(&["x", "y"], "x*y");
        let (ax, ay) = (cyclic(&r, &["x"]), cyclic(&r, &["y"]));
        let engine = PairingEngine::new();
        assert_eq!(engine.theta(&ax, &ay), Ok(1));
        assert_eq!(engine.theta(&ax, &ax), Ok(-1));
        let k = cyclic(&r, &["x", "y"]);
        assert_eq!(length(&k), Staircase::Finite(1));
        assert_eq!(length(&ax), Staircase::Infinite);
        let sum = ClassExpression::module("Ax", ax.clone()).add(&ClassExpression::module("Ay", ay.clone()));
        assert_eq!(
            engine.theta_class(&sum, &ClassExpression::module("Ax", ax.clone())),
            Ok(0)
        );
        assert_eq!(engine.theta_class(&ClassExpression::zero(), &sum), Ok(0));
    }

    #[test]
    fn quadric_values() {
        let r = ring(&["x", "y", "u", "v"], "x*y - u*v");
        let (p, q) = (cyclic(&r, &["x", "u"]), cyclic(&r, &["x", "v"]));
        let engine = PairingEngine::new();
        assert_eq!(engine.theta(&p, &p), Ok(1));
        assert_eq!(engine.theta(&p, &q), Ok(-1));
        let diff = ClassExpression::module("Ap", p.clone()).with_term("Aq", q.clone(), -1);
        assert_eq!(engine.theta_class(&diff, &ClassExpression::module("Ap", p)), Ok(2));
    }

    #[test]
    fn non_isolated_singularity_is_reported() {
        // x^2 is singular along the whole line x = 0 in k[x,y]/(x^2)
        let r = ring(&["x", "y"], "x^2");
        let m = cyclic(&r, &["x"]);
        assert!(matches!(theta(&m, &m), Err(Error::NonIsolatedSingularity { .. })));
    }

    #[test]
    fn class_expressions_are_canonical() {
        let r = ring(&["x", "y"], "x*y");
        let ax = cyclic(&r, &["x"]);
        let ay = cyclic(&r, &["y"]);
        let e = ClassExpression::module("b", ay.clone())
            .with_term("a", ax.clone(), 2)
            .with_term("b", ay.clone(), -1);
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.to_string(), "2[a]");
        let f = ClassExpression::module("a", ax).with_term("b", ay, -3);
        assert_eq!(f.to_string(), "[a] - 3[b]");
        assert_eq!(f.scale(0), ClassExpression::zero());
        assert_eq!(ClassExpression::zero().to_string(), "0");
    }
}
