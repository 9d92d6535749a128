use std::cmp::Ordering;

/// Exponent vector with its weighted degree cached.
///
/// Ordering is weighted graded reverse lexicographic over the variable
/// sequence: higher weighted degree first, ties broken by the last variable
/// where the exponents differ (smaller exponent is the larger monomial).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(e, w)| e * w).sum();
        Monomial {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    /// The `i`-th variable.
    pub fn var(i: usize, weights: &[u32]) -> Self {
        let mut exps = vec![0; weights.len()];
        exps[i] = 1;
        Monomial::new(exps, weights)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            degree: self.degree - other.degree,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps, weights)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_on_quadric_terms() {
        let w = [1, 1, 1, 1];
        let xy = Monomial::new(vec![1, 1, 0, 0], &w);
        let uv = Monomial::new(vec![0, 0, 1, 1], &w);
        assert!(xy > uv);
        let x2 = Monomial::new(vec![2, 0, 0, 0], &w);
        assert!(x2 > xy);
        // degree dominates
        let x = Monomial::var(0, &w);
        assert!(uv > x);
    }

    #[test]
    fn weighted_degree_and_lcm() {
        let w = [3, 2];
        let m = Monomial::new(vec![2, 0], &w);
        assert_eq!(m.degree(), 6);
        let l = m.lcm(&Monomial::new(vec![1, 3], &w), &w);
        assert_eq!(l.exps(), &[2, 3]);
        assert_eq!(l.degree(), 12);
        assert!(m.divides(&l));
        assert_eq!(l.div(&m).exps(), &[0, 3]);
    }
}
