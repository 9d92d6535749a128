use std::collections::{BTreeMap, HashSet};

use super::{is_zero_vector, sub_mul_term_vector, zero_vector, ModuleOrder, Vector};
use crate::ring::{Monomial, PolyRing, Polynomial};

/// A Gröbner basis of a submodule of `S^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    weights: Vec<u32>,
    degrees: Vec<i64>,
    order: ModuleOrder,
    elements: Vec<Vector>,
    reduced: bool,
}

/// Reduced Gröbner basis of the submodule generated by `gens` in `S^rank`,
/// with all generators of the free module in degree 0.
pub fn groebner_basis(ring: &PolyRing, rank: usize, gens: &[Vector], order: ModuleOrder) -> GroebnerBasis {
    groebner_basis_graded(ring, &vec![0; rank], gens, order)
}

/// Reduced Gröbner basis in a free module with generator degrees `degrees`.
pub fn groebner_basis_graded(ring: &PolyRing, degrees: &[i64], gens: &[Vector], order: ModuleOrder) -> GroebnerBasis {
    let mut engine = Buchberger::new(ring.weights(), degrees, order);
    for g in gens {
        engine.add(g.clone());
    }
    engine.complete();
    engine.into_reduced()
}

impl GroebnerBasis {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Lead terms `(component, monomial)` in basis order.
    pub fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|g| {
                let (c, m, _) = self.order.lead(g).expect("basis elements are nonzero");
                (c, m.clone())
            })
            .collect()
    }

    /// Fully reduced remainder of `v`; zero iff `v` lies in the submodule.
    pub fn normal_form(&self, v: &[Polynomial]) -> Vector {
        full_reduce(&self.elements, &self.lead_terms(), self.order, v.to_vec())
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        let leads = self.lead_terms();
        is_zero_vector(&top_reduce(&self.elements, &leads, self.order, v.to_vec()))
    }

    /// Division with quotients: `v = sum q_k g_k + r`, where no term of `r`
    /// is divisible by a lead term.
    pub fn divide(&self, v: &[Polynomial]) -> (Vec<Polynomial>, Vector) {
        let leads = self.lead_terms();
        let mut quotients = vec![Polynomial::zero(); self.elements.len()];
        let mut work = v.to_vec();
        let mut rem = zero_vector(v.len());
        while let Some((c, m, coeff)) = self.order.lead(&work) {
            let (c, m, coeff) = (c, m.clone(), coeff.clone());
            match find_reducer(&leads, c, &m) {
                Some(k) => {
                    let q = m.div(&leads[k].1);
                    quotients[k] = quotients[k].add(&Polynomial::term(q.clone(), coeff.clone()));
                    sub_mul_term_vector(&mut work, &q, &coeff, &self.elements[k]);
                }
                None => {
                    work[c] = work[c].tail();
                    rem[c].push_smallest(m, coeff);
                }
            }
        }
        (quotients, rem)
    }

    /// S-vector of basis elements `i` and `j` (same lead component), together
    /// with the two monomial multipliers.
    pub(crate) fn s_vector(&self, i: usize, j: usize) -> Option<(Monomial, Monomial, Vector)> {
        let (ci, mi, _) = self.order.lead(&self.elements[i])?;
        let (cj, mj, _) = self.order.lead(&self.elements[j])?;
        if ci != cj {
            return None;
        }
        let lcm = mi.lcm(mj, &self.weights);
        let (ui, uj) = (lcm.div(mi), lcm.div(mj));
        let one = self.elements[i][ci].lead().unwrap().1.clone();
        let one = one.div(&one);
        let mut s: Vector = self.elements[i].iter().map(|p| p.mul_term(&ui, &one)).collect();
        sub_mul_term_vector(&mut s, &uj, &one, &self.elements[j]);
        Some((ui, uj, s))
    }

    /// Checks the Buchberger criterion: every S-vector reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| match self.s_vector(i, j) {
                Some((_, _, s)) => self.contains(&s),
                None => true,
            })
        })
    }
}

fn find_reducer(leads: &[(usize, Monomial)], comp: usize, m: &Monomial) -> Option<usize> {
    leads.iter().position(|(c, l)| *c == comp && l.divides(m))
}

/// Cancels lead terms until the lead is irreducible or the vector vanishes.
fn top_reduce(basis: &[Vector], leads: &[(usize, Monomial)], order: ModuleOrder, mut v: Vector) -> Vector {
    while let Some((c, m, coeff)) = order.lead(&v) {
        let Some(k) = find_reducer(leads, c, m) else {
            break;
        };
        let q = m.div(&leads[k].1);
        let coeff = coeff.clone();
        sub_mul_term_vector(&mut v, &q, &coeff, &basis[k]);
    }
    v
}

fn full_reduce(basis: &[Vector], leads: &[(usize, Monomial)], order: ModuleOrder, mut v: Vector) -> Vector {
    let mut rem = zero_vector(v.len());
    while let Some((c, m, coeff)) = order.lead(&v) {
        match find_reducer(leads, c, m) {
            Some(k) => {
                let q = m.div(&leads[k].1);
                let coeff = coeff.clone();
                sub_mul_term_vector(&mut v, &q, &coeff, &basis[k]);
            }
            None => {
                let (m, coeff) = (m.clone(), coeff.clone());
                v[c] = v[c].tail();
                rem[c].push_smallest(m, coeff);
            }
        }
    }
    rem
}

fn make_monic(v: Vector, order: ModuleOrder) -> Vector {
    let Some((_, _, c)) = order.lead(&v) else {
        return v;
    };
    let inv = c.inv().expect("nonzero lead coefficient");
    v.iter().map(|p| p.scale(&inv)).collect()
}

/// Incremental Buchberger completion.
///
/// Pairs are processed by the normal strategy: smallest S-pair degree first,
/// then creation order. The chain criterion is always applied; the coprime
/// lead-term criterion only in rank one, where it is valid.
pub(crate) struct Buchberger {
    weights: Vec<u32>,
    degrees: Vec<i64>,
    order: ModuleOrder,
    basis: Vec<Vector>,
    leads: Vec<(usize, Monomial)>,
    queue: BTreeMap<(i64, u64), (usize, usize)>,
    pending: HashSet<(usize, usize)>,
    seq: u64,
}

impl Buchberger {
    pub(crate) fn new(weights: &[u32], degrees: &[i64], order: ModuleOrder) -> Self {
        Buchberger {
            weights: weights.to_vec(),
            degrees: degrees.to_vec(),
            order,
            basis: Vec::new(),
            leads: Vec::new(),
            queue: BTreeMap::new(),
            pending: HashSet::new(),
            seq: 0,
        }
    }

    /// Adds a generator; returns false if it already reduces to zero.
    pub(crate) fn add(&mut self, v: Vector) -> bool {
        debug_assert_eq!(v.len(), self.degrees.len());
        let v = top_reduce(&self.basis, &self.leads, self.order, v);
        if is_zero_vector(&v) {
            return false;
        }
        self.insert(make_monic(v, self.order));
        true
    }

    fn insert(&mut self, v: Vector) {
        let (c, m, _) = self.order.lead(&v).expect("nonzero");
        let (c, m) = (c, m.clone());
        let new = self.basis.len();
        for (i, (ci, mi)) in self.leads.iter().enumerate() {
            if *ci != c {
                continue;
            }
            let lcm = mi.lcm(&m, &self.weights);
            let degree = lcm.degree() as i64 + self.degrees[c];
            self.queue.insert((degree, self.seq), (i, new));
            self.pending.insert((i, new));
            self.seq += 1;
        }
        self.basis.push(v);
        self.leads.push((c, m));
    }

    fn chain_criterion(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let comp = self.leads[i].0;
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        self.leads.iter().enumerate().any(|(k, (ck, mk))| {
            k != i
                && k != j
                && *ck == comp
                && mk.divides(lcm)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }

    pub(crate) fn complete(&mut self) {
        while let Some((_, (i, j))) = self.queue.pop_first() {
            self.pending.remove(&(i, j));
            let (mi, mj) = (&self.leads[i].1, &self.leads[j].1);
            if self.degrees.len() == 1 && mi.is_coprime(mj) {
                continue;
            }
            let lcm = mi.lcm(mj, &self.weights);
            if self.chain_criterion(i, j, &lcm) {
                continue;
            }
            let (ui, uj) = (lcm.div(mi), lcm.div(mj));
            let one = self.basis[i][self.leads[i].0].lead().unwrap().1.clone();
            let mut s: Vector = self.basis[i].iter().map(|p| p.mul_term(&ui, &one)).collect();
            sub_mul_term_vector(&mut s, &uj, &one, &self.basis[j]);
            self.add(s);
        }
    }

    /// Membership test; meaningful once [`Buchberger::complete`] has run.
    pub(crate) fn contains(&self, v: &[Polynomial]) -> bool {
        is_zero_vector(&top_reduce(&self.basis, &self.leads, self.order, v.to_vec()))
    }

    /// Minimalizes, tail-reduces and sorts by descending lead term.
    pub(crate) fn into_reduced(self) -> GroebnerBasis {
        let n = self.basis.len();
        let keep: Vec<usize> = (0..n)
            .filter(|&i| {
                let (ci, mi) = &self.leads[i];
                !(0..n).any(|j| {
                    let (cj, mj) = &self.leads[j];
                    j != i && cj == ci && mj.divides(mi) && (mj != mi || j < i)
                })
            })
            .collect();
        let basis: Vec<Vector> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let leads: Vec<(usize, Monomial)> = keep.iter().map(|&i| self.leads[i].clone()).collect();
        let mut elements: Vec<Vector> = (0..basis.len())
            .map(|i| {
                let others: Vec<Vector> = basis
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let other_leads: Vec<(usize, Monomial)> = leads
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, l)| l.clone())
                    .collect();
                make_monic(
                    full_reduce(&others, &other_leads, self.order, basis[i].clone()),
                    self.order,
                )
            })
            .collect();
        let order = self.order;
        elements.sort_by(|a, b| {
            let (ca, ma, _) = order.lead(a).unwrap();
            let (cb, mb, _) = order.lead(b).unwrap();
            order.cmp_terms((cb, mb), (ca, ma))
        });
        GroebnerBasis {
            weights: self.weights,
            degrees: self.degrees,
            order,
            elements,
            reduced: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FieldSpec;

    fn ring() -> PolyRing {
        PolyRing::standard(FieldSpec::rationals(), &["x", "y"]).unwrap()
    }

    fn ideal(r: &PolyRing, gens: &[&str]) -> GroebnerBasis {
        let gens: Vec<Vector> = gens.iter().map(|g| vec![r.parse(g).unwrap()]).collect();
        groebner_basis(r, 1, &gens, ModuleOrder::POT)
    }

    fn show(r: &PolyRing, gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|g| r.format(&g[0])).collect()
    }

    #[test]
    fn linear_row_reduction() {
        let r = ring();
        assert_eq!(show(&r, &ideal(&r, &["x + y", "x - y"])), vec!["x", "y"]);
    }

    #[test]
    fn principal_and_monomial_inputs() {
        let r = ring();
        assert_eq!(show(&r, &ideal(&r, &["x*y"])), vec!["x*y"]);
        let gb = ideal(&r, &["x^2", "x*y"]);
        assert_eq!(show(&r, &gb), vec!["x^2", "x*y"]);
        let (_, _, s) = gb.s_vector(0, 1).unwrap();
        assert!(gb.normal_form(&s)[0].is_zero());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring();
        let gb = ideal(&r, &["x*y"]);
        assert!(gb.normal_form(&[r.parse("x^2*y").unwrap()])[0].is_zero());
        let gb = ideal(&r, &["x"]);
        assert_eq!(r.format(&gb.normal_form(&[r.parse("x + y").unwrap()])[0]), "y");
        let s = PolyRing::standard(FieldSpec::rationals(), &["x", "y", "u", "v"]).unwrap();
        let gb = ideal(&s, &["x*y - u*v"]);
        assert_eq!(s.format(&gb.normal_form(&[s.parse("x*y").unwrap()])[0]), "u*v");
    }

    #[test]
    fn empty_input() {
        let r = ring();
        let gb = groebner_basis(&r, 2, &[], ModuleOrder::POT);
        assert!(gb.is_empty());
        assert_eq!(gb.rank(), 2);
    }

    #[test]
    fn cyclic_three_is_a_basis() {
        let r = PolyRing::standard(FieldSpec::rationals(), &["a", "b", "c"]).unwrap();
        let gb = ideal(&r, &["a + b + c", "a*b + b*c + c*a", "a*b*c"]);
        assert!(gb.satisfies_buchberger_criterion());
        assert_eq!(show(&r, &gb), vec!["c^3", "b^2 + b*c + c^2", "a + b + c"]);
    }
}
