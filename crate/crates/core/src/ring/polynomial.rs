use std::cmp::Ordering;

use super::monomial::Monomial;
use super::scalar::Scalar;

/// Sparse polynomial, terms sorted strictly descending in the monomial order
/// with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(mut terms: Vec<(Monomial, Scalar)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// Everything but the lead term.
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// Appends a term smaller than every existing term.
    pub(crate) fn push_smallest(&mut self, m: Monomial, c: Scalar) {
        debug_assert!(self.terms.last().is_none_or(|(l, _)| *l > m));
        if !c.is_zero() {
            self.terms.push((m, c));
        }
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    /// Constant term as a scalar when the polynomial is a nonzero constant.
    pub fn as_constant(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    /// Weighted degree of every term, if they agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    /// `self - c * m * other` without materializing the product.
    pub fn sub_mul_term(&self, m: &Monomial, c: &Scalar, other: &Polynomial) -> Polynomial {
        let neg = c.neg();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let a = &self.terms;
        let mut i = 0;
        for (n, b) in &other.terms {
            let mono = n.mul(m);
            while i < a.len() && a[i].0 > mono {
                out.push(a[i].clone());
                i += 1;
            }
            let coeff = b.mul(&neg);
            if i < a.len() && a[i].0 == mono {
                let s = a[i].1.add(&coeff);
                if !s.is_zero() {
                    out.push((mono, s));
                }
                i += 1;
            } else {
                out.push((mono, coeff));
            }
        }
        out.extend_from_slice(&a[i..]);
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero();
        for (m, c) in &small.terms {
            acc = acc.add(&large.mul_term(m, c));
        }
        acc
    }

    /// Divides every coefficient so the lead coefficient becomes one.
    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead")),
        }
    }

    /// Renders with the given variable names, e.g. `2*x^2*y - 3/2*u + 1`.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldSpec;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec(), &vec![1; e.len()])
    }

    #[test]
    fn canonical_merging() {
        let q = FieldSpec::rationals();
        let p = Polynomial::from_terms(vec![
            (mono(&[2, 0]), q.one()),
            (mono(&[0, 1]), q.from_i64(3)),
            (mono(&[2, 0]), q.one()),
            (mono(&[0, 1]), q.from_i64(-3)),
        ]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.format(&["x".into(), "y".into()]), "2*x^2");
    }

    #[test]
    fn sub_mul_term_matches_naive() {
        let q = FieldSpec::rationals();
        let a = Polynomial::from_terms(vec![
            (mono(&[2, 1]), q.one()),
            (mono(&[1, 1]), q.from_i64(2)),
            (mono(&[0, 0]), q.from_i64(5)),
        ]);
        let b = Polynomial::from_terms(vec![(mono(&[1, 0]), q.one()), (mono(&[0, 0]), q.from_i64(-1))]);
        let m = mono(&[1, 1]);
        let c = q.from_i64(3);
        assert_eq!(a.sub_mul_term(&m, &c, &b), a.sub(&b.mul_term(&m, &c)));
    }
}
