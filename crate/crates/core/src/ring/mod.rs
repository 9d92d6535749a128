//! Coefficients, weighted-graded polynomials and hypersurface ring contexts.

mod monomial;
mod parse;
mod polynomial;
mod scalar;

pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use scalar::{FieldSpec, Scalar};

use crate::error::{Error, Result};

/// The ambient weighted-graded polynomial ring `k[x_1, ..., x_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: FieldSpec,
    names: Vec<String>,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(field: FieldSpec, names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        for (i, name) in names.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidRing(format!("invalid variable name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{name}`")));
            }
        }
        Ok(PolyRing { field, names, weights })
    }

    /// Standard-graded ring over the given names.
    pub fn standard(field: FieldSpec, names: &[&str]) -> Result<Self> {
        PolyRing::new(
            field,
            names.iter().map(|s| s.to_string()).collect(),
            vec![1; names.len()],
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::term(Monomial::var(i, &self.weights), self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        Polynomial::term(Monomial::one(self.nvars()), c)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse::parse(self, text)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format(&self.names)
    }

    /// Common weighted degree of all terms of a nonzero polynomial.
    pub fn weighted_degree(&self, p: &Polynomial) -> Result<u32> {
        if p.is_zero() {
            return Err(Error::Inhomogeneous("the zero polynomial has no degree".into()));
        }
        p.homogeneous_degree().ok_or_else(|| {
            let degrees: Vec<u32> = p.terms().iter().map(|(m, _)| m.degree()).collect();
            Error::Inhomogeneous(format!(
                "`{}` has terms of weighted degrees {:?}",
                self.format(p),
                degrees
            ))
        })
    }
}

/// `A = S/(f)` for a weighted-homogeneous `f` in the square of the
/// irrelevant ideal, or the polynomial ring itself when `f = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceRing {
    ambient: PolyRing,
    f: Polynomial,
}

impl HypersurfaceRing {
    pub fn new(ambient: PolyRing, f: Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::InvalidRing(
                "defining polynomial is zero; use HypersurfaceRing::regular".into(),
            ));
        }
        let degree = ambient.weighted_degree(&f)?;
        let min_weight = *ambient
            .weights()
            .iter()
            .min()
            .ok_or_else(|| Error::InvalidRing("a hypersurface needs at least one variable".into()))?;
        if degree < 2 * min_weight {
            return Err(Error::InvalidRing(format!(
                "`{}` has weighted degree {degree} < {}: not in the square of the maximal ideal",
                ambient.format(&f),
                2 * min_weight
            )));
        }
        let f = f.monic();
        Ok(HypersurfaceRing { ambient, f })
    }

    pub fn parse(ambient: PolyRing, f: &str) -> Result<Self> {
        let f = ambient.parse(f)?;
        HypersurfaceRing::new(ambient, f)
    }

    /// The ambient polynomial ring viewed as a (regular) ring context.
    pub fn regular(ambient: PolyRing) -> Self {
        HypersurfaceRing {
            ambient,
            f: Polynomial::zero(),
        }
    }

    pub fn ambient(&self) -> &PolyRing {
        &self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.ambient.field()
    }

    /// Defining polynomial, normalized to be monic. Zero for a polynomial ring.
    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn is_regular(&self) -> bool {
        self.f.is_zero()
    }

    pub fn f_degree(&self) -> u32 {
        self.f.homogeneous_degree().unwrap_or(0)
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// Krull dimension: `n - 1`, or `n` for the polynomial ring itself.
    pub fn dimension(&self) -> usize {
        if self.is_regular() {
            self.nvars()
        } else {
            self.nvars() - 1
        }
    }

    /// Canonical representative of `p` modulo `f`: the remainder of division
    /// by `f`, which has no term divisible by the lead monomial of `f`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let Some((lm, lc)) = self.f.lead() else {
            return p.clone();
        };
        if !p.terms().iter().any(|(m, _)| lm.divides(m)) {
            return p.clone();
        }
        let mut rem = Vec::new();
        let mut work = p.clone();
        while let Some((m, c)) = work.lead().cloned() {
            if lm.divides(&m) {
                work = work.sub_mul_term(&m.div(lm), &c.div(lc), &self.f);
            } else {
                rem.push((m.clone(), c.clone()));
                work = work.sub(&Polynomial::term(m, c));
            }
        }
        Polynomial::from_terms(rem)
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&self.ambient.parse(text)?))
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.ambient.format(p)
    }

    pub fn describe(&self) -> String {
        let vars = self.ambient.names().join(",");
        let field = match self.field().characteristic() {
            0 => "QQ".to_string(),
            p => format!("GF({p})"),
        };
        let weights = if self.ambient.has_unit_weights() {
            String::new()
        } else {
            format!(" weights {:?}", self.ambient.weights())
        };
        if self.is_regular() {
            format!("{field}[{vars}]{weights}")
        } else {
            format!("{field}[{vars}]/({}){weights}", self.format(&self.f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric_ambient() -> PolyRing {
        PolyRing::standard(FieldSpec::rationals(), &["x", "y", "u", "v"]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let s = quadric_ambient();
        let p = s.parse("x*y - u*v").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(s.weighted_degree(&p).unwrap(), 2);
        assert_eq!(s.format(&s.parse("x^2 + x^2").unwrap()), "2*x^2");
        assert!(s.parse("0").unwrap().is_zero());
        assert_eq!(s.format(&s.parse("(x+y)^2 - 2*x*y").unwrap()), "x^2 + y^2");
        assert_eq!(s.format(&s.parse("-3/6*u + 1").unwrap()), "-1/2*u + 1");
    }

    #[test]
    fn parse_errors() {
        let s = quadric_ambient();
        assert_eq!(s.parse("x*z"), Err(Error::UnknownVariable("z".into())));
        assert!(matches!(s.parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(s.parse("(x"), Err(Error::Parse { .. })));
        assert!(matches!(s.parse("x/y"), Err(Error::Parse { .. })));
        let f5 = PolyRing::standard(FieldSpec::new(5).unwrap(), &["x"]).unwrap();
        assert!(matches!(f5.parse("x/5"), Err(Error::NotInvertible(_))));
        assert_eq!(f5.format(&f5.parse("x/2").unwrap()), "3*x");
    }

    #[test]
    fn weighted_degrees() {
        let w = PolyRing::new(FieldSpec::rationals(), vec!["x".into(), "y".into()], vec![3, 2]).unwrap();
        assert_eq!(w.weighted_degree(&w.parse("x^2 + y^3").unwrap()), Ok(6));
        let s = PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap();
        assert!(matches!(
            s.weighted_degree(&s.parse("x + y^2").unwrap()),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn ring_dimensions() {
        let q = FieldSpec::rationals();
        let node = HypersurfaceRing::parse(PolyRing::standard(q, &["x", "y"]).unwrap(), "x*y").unwrap();
        assert_eq!(node.dimension(), 1);
        let quadric = HypersurfaceRing::parse(quadric_ambient(), "x*y - u*v").unwrap();
        assert_eq!(quadric.dimension(), 3);
        let a1 = HypersurfaceRing::parse(PolyRing::standard(q, &["x", "y", "z"]).unwrap(), "x*y - z^2").unwrap();
        assert_eq!(a1.dimension(), 2);
    }

    #[test]
    fn rejects_degenerate_hypersurfaces() {
        let s = PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap();
        assert!(matches!(
            HypersurfaceRing::parse(s.clone(), "x"),
            Err(Error::InvalidRing(_))
        ));
        assert!(matches!(
            HypersurfaceRing::parse(s, "x + y^2"),
            Err(Error::Inhomogeneous(_))
        ));
    }

    #[test]
    fn reduction_modulo_f() {
        let quadric = HypersurfaceRing::parse(quadric_ambient(), "x*y - u*v").unwrap();
        let p = quadric.parse_element("x^2*y + x*y").unwrap();
        assert_eq!(quadric.format(&p), "x*u*v + u*v");
    }
}
