use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::ring::Monomial;

/// Integer Laurent polynomial in `t`: `sum coeffs[k] * t^(low + k)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(c: i64, exp: i64) -> Self {
        LaurentPoly {
            low: exp,
            coeffs: vec![c],
        }
        .normalized()
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<i64>) -> Self {
        LaurentPoly { low, coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return LaurentPoly::zero();
        }
        self.coeffs.drain(..lead_zeros);
        self.low += lead_zeros as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent and coefficients from there upwards.
    pub fn parts(&self) -> (i64, &[i64]) {
        (self.low, &self.coeffs)
    }

    pub fn coefficient(&self, exp: i64) -> i64 {
        let k = exp - self.low;
        if k < 0 {
            return 0;
        }
        self.coeffs.get(k as usize).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let coeffs = (low..high)
            .map(|e| self.coefficient(e) + other.coefficient(e))
            .collect();
        LaurentPoly::from_coeffs(low, coeffs)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + other.low, coeffs)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact quotient by `1 - t`, or `None` if `1 - t` does not divide.
    pub fn div_one_minus_t(&self) -> Option<LaurentPoly> {
        if self.eval_at_one() != 0 {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // q(t) * (1 - t) = p(t): q_k = sum_{i <= k} p_i
        let mut acc = 0;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            acc += c;
            coeffs.push(acc);
        }
        Some(LaurentPoly::from_coeffs(self.low, coeffs))
    }

    /// Formats as `1 - t^2`.
    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.low + k as i64;
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let a = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            match (a, var.is_empty()) {
                (_, true) => out.push_str(&a.to_string()),
                (1, false) => out.push_str(&var),
                (_, false) => out.push_str(&format!("{a}*{var}")),
            }
        }
        out
    }
}

/// Hilbert series `numerator / prod_i (1 - t^(w_i))` of `S^s / U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: LaurentPoly,
    weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(numerator: LaurentPoly, weights: Vec<u32>) -> Self {
        HilbertSeries { numerator, weights }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        debug_assert_eq!(self.weights, other.weights);
        HilbertSeries {
            numerator: self.numerator.sub(&other.numerator),
            weights: self.weights.clone(),
        }
    }

    /// Cancels factors `1 - t` against the denominator: returns the reduced
    /// numerator and the Krull dimension, `None` for the zero module.
    fn reduced(&self) -> Option<(LaurentPoly, usize)> {
        if self.numerator.is_zero() {
            return None;
        }
        let n = self.weights.len();
        let mut num = self.numerator.clone();
        let mut cancelled = 0;
        while cancelled < n {
            match num.div_one_minus_t() {
                Some(q) => {
                    num = q;
                    cancelled += 1;
                }
                None => break,
            }
        }
        Some((num, n - cancelled))
    }

    /// Krull dimension of the module; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.reduced().map(|(_, d)| d)
    }

    /// `dim_k` of the module when it is finite.
    pub fn length(&self) -> Option<u64> {
        if self.numerator.is_zero() {
            return Some(0);
        }
        let (num, dim) = self.reduced()?;
        if dim != 0 {
            return None;
        }
        let product: i64 = self.weights.iter().map(|&w| w as i64).product();
        let value = num.eval_at_one();
        debug_assert_eq!(value % product, 0);
        Some((value / product) as u64)
    }

    /// Normalized leading coefficient of the Hilbert polynomial, standard
    /// grading only. Zero for the zero module.
    pub fn multiplicity(&self) -> Result<u64> {
        if self.weights.iter().any(|&w| w != 1) {
            return Err(Error::NonUnitWeights);
        }
        Ok(self.reduced().map_or(0, |(num, _)| num.eval_at_one() as u64))
    }

    /// First coefficients of the power series expansion, degrees
    /// `low..low+count` where `low` is the numerator's lowest exponent.
    pub fn expand(&self, count: usize) -> (i64, Vec<i64>) {
        let (low, coeffs) = self.numerator.parts();
        let mut series: Vec<i64> = (0..count).map(|k| coeffs.get(k).copied().unwrap_or(0)).collect();
        for &w in &self.weights {
            let w = w as usize;
            for k in w..count {
                series[k] += series[k - w];
            }
        }
        (low, series)
    }
}

/// Number of standard monomials of a lead-term module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Staircase {
    Finite(u64),
    Infinite,
}

impl Staircase {
    pub fn finite(self) -> Option<u64> {
        match self {
            Staircase::Finite(n) => Some(n),
            Staircase::Infinite => None,
        }
    }
}

fn leads_by_component(gb: &GroebnerBasis) -> Vec<Vec<Monomial>> {
    let mut out = vec![Vec::new(); gb.rank()];
    for (c, m) in gb.lead_terms() {
        out[c].push(m);
    }
    out
}

/// Counts monomial-times-basis symbols outside the lead-term module.
pub fn staircase_count(gb: &GroebnerBasis) -> Staircase {
    let n = gb.nvars();
    let mut total = 0u64;
    for leads in leads_by_component(gb) {
        let mut bounds = vec![0u32; n];
        for (i, bound) in bounds.iter_mut().enumerate() {
            let pure = leads
                .iter()
                .filter(|m| m.exps().iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m.exps()[i])
                .min();
            match pure {
                Some(e) => *bound = e,
                None => return Staircase::Infinite,
            }
        }
        if leads.iter().any(Monomial::is_one) {
            continue;
        }
        if n == 0 {
            total += 1;
            continue;
        }
        let mut exps = vec![0u32; n];
        total += count_standard(&leads, &bounds, 0, &mut exps);
    }
    Staircase::Finite(total)
}

fn divisible_by_any(leads: &[Monomial], exps: &[u32]) -> bool {
    leads.iter().any(|m| m.exps().iter().zip(exps).all(|(a, b)| a <= b))
}

fn count_standard(leads: &[Monomial], bounds: &[u32], idx: usize, exps: &mut Vec<u32>) -> u64 {
    if idx == bounds.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[idx] {
        exps[idx] = e;
        // later variables are still zero, and divisibility is monotone in e
        if divisible_by_any(leads, exps) {
            break;
        }
        total += count_standard(leads, bounds, idx + 1, exps);
    }
    exps[idx] = 0;
    total
}

/// Hilbert series of `S^s / LT(U)`, which equals that of `S^s / U`.
pub fn hilbert_series(gb: &GroebnerBasis) -> HilbertSeries {
    let weights = gb.weights().to_vec();
    let mut numerator = LaurentPoly::zero();
    for (leads, &shift) in leads_by_component(gb).iter().zip(gb.degrees()) {
        let exps: Vec<Vec<u32>> = leads.iter().map(|m| m.exps().to_vec()).collect();
        numerator = numerator.add(&ideal_numerator(exps, &weights).shift(shift));
    }
    HilbertSeries::new(numerator, weights)
}

/// Multiplicity of `S^s / U` from a Gröbner basis of `U`.
pub fn multiplicity(gb: &GroebnerBasis) -> Result<u64> {
    let hs = hilbert_series(gb);
    match hs.dimension() {
        Some(d) if d > 0 => hs.multiplicity(),
        _ => Err(Error::DimensionMismatch(
            "multiplicity of a zero-dimensional module; use the staircase count".into(),
        )),
    }
}

fn weighted_degree(exps: &[u32], weights: &[u32]) -> i64 {
    exps.iter().zip(weights).map(|(e, w)| (e * w) as i64).sum()
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    let divides = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
    let keep: Vec<bool> = (0..gens.len())
        .map(|i| !(0..gens.len()).any(|j| j != i && divides(&gens[j], &gens[i])))
        .collect();
    gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect()
}

/// Numerator of the Hilbert series of `S / I` for a monomial ideal `I`,
/// by the recursion `N(I + (m)) = N(I) - t^deg(m) N(I : m)`.
fn ideal_numerator(gens: Vec<Vec<u32>>, weights: &[u32]) -> LaurentPoly {
    let mut gens = minimalize(gens);
    if gens.is_empty() {
        return LaurentPoly::monomial(1, 0);
    }
    let pairwise_coprime = (0..gens.len())
        .all(|i| (i + 1..gens.len()).all(|j| gens[i].iter().zip(&gens[j]).all(|(a, b)| *a == 0 || *b == 0)));
    if pairwise_coprime {
        return gens.iter().fold(LaurentPoly::monomial(1, 0), |acc, g| {
            acc.mul(&LaurentPoly::from_coeffs(0, vec![1]).sub(&LaurentPoly::monomial(1, weighted_degree(g, weights))))
        });
    }
    let last = gens.pop().expect("nonempty");
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| g.iter().zip(&last).map(|(a, b)| a.saturating_sub(*b)).collect())
        .collect();
    let deg = weighted_degree(&last, weights);
    ideal_numerator(gens, weights).sub(&ideal_numerator(colon, weights).shift(deg))
}
