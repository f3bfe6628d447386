use std::sync::Arc;

use crate::error::Result;
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

use super::engine::{self, Budget, Terms};

/// A reduced Gröbner basis: monic generators sorted by increasing leading
/// monomial. Unique for a given ideal and order.
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    order: MonomialOrder,
    polys: Vec<Polynomial<F>>,
    sorted: Vec<Terms<F>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    /// Runs Buchberger's algorithm with an explicit reduction-step budget.
    pub fn compute(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>], order: MonomialOrder, budget: u64) -> Result<Self> {
        let mut b = Budget::new(budget);
        let input: Vec<Terms<F>> = gens
            .iter()
            .map(|g| g.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
            .collect();
        let sorted = engine::buchberger(ring.field(), order, input, &mut b)?;
        Ok(Self::from_sorted(ring, order, sorted))
    }

    fn from_sorted(ring: &Arc<Ring<F>>, order: MonomialOrder, sorted: Vec<Terms<F>>) -> Self {
        let polys = sorted
            .iter()
            .map(|t| Polynomial::from_terms(ring, t.iter().cloned()).expect("same ring"))
            .collect();
        GroebnerBasis { ring: ring.clone(), order, polys, sorted, reduced: true }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.sorted.iter().map(|t| &t[0].0)
    }

    /// Remainder of multivariate division by the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !f.same_ring(&Polynomial::zero(&self.ring)) {
            return Err(crate::error::Error::ContextMismatch);
        }
        let terms: Terms<F> = engine::sort_terms::<F>(f.terms().map(|(m, c)| (m.clone(), c.clone())).collect(), self.order);
        let refs: Vec<&Terms<F>> = self.sorted.iter().collect();
        let r = engine::reduce(self.ring.field(), self.order, terms, &refs, &mut Budget::unlimited())?;
        Polynomial::from_terms(&self.ring, r)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks that every S-polynomial of basis pairs reduces to zero.
    pub fn verify_certificate(&self) -> bool {
        let field = self.ring.field();
        let refs: Vec<&Terms<F>> = self.sorted.iter().collect();
        for i in 0..self.sorted.len() {
            for j in i + 1..self.sorted.len() {
                let (f, g) = (&self.sorted[i], &self.sorted[j]);
                let lcm = f[0].0.lcm(&g[0].0);
                let a = Polynomial::from_terms(&self.ring, f.iter().cloned()).unwrap();
                let b = Polynomial::from_terms(&self.ring, g.iter().cloned()).unwrap();
                let one = num_traits::One::one();
                let s = &a.mul_term(&lcm.div(&f[0].0).unwrap(), &one) - &b.mul_term(&lcm.div(&g[0].0).unwrap(), &one);
                let terms = engine::sort_terms::<F>(s.terms().map(|(m, c)| (m.clone(), c.clone())).collect(), self.order);
                match engine::reduce(field, self.order, terms, &refs, &mut Budget::unlimited()) {
                    Ok(r) if r.is_empty() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("generators", &self.polys).finish()
    }
}
