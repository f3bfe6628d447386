//! Independent oracles shared by the integration tests. Nothing here calls
//! into the crate's Gröbner engine.

#![allow(dead_code)]

use std::sync::Arc;

use num_traits::{One, Zero};
use resint::field::Field;
use resint::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Plain multivariate division of `f` by `divisors` using only polynomial arithmetic.
pub fn naive_remainder<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>], order: MonomialOrder) -> Polynomial<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let mut divided = false;
        for g in divisors {
            let (gm, gc) = g.leading_term(order).unwrap();
            if let Some(q) = m.div(gm) {
                let coef = field.div(&c, gc).unwrap();
                p = &p - &g.mul_term(&q, &coef);
                divided = true;
                break;
            }
        }
        if !divided {
            let t = Polynomial::monomial(&ring, m.clone(), c.clone());
            rem = &rem + &t;
            p = &p - &t;
        }
    }
    rem
}

fn s_poly<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, order: MonomialOrder) -> Polynomial<F> {
    let field = f.field().clone();
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).unwrap(), &field.inv(fc).unwrap());
    let b = g.mul_term(&l.div(gm).unwrap(), &field.inv(gc).unwrap());
    &a - &b
}

/// Criterion-free Buchberger followed by minimalization and interreduction.
pub fn naive_reduced_gb<F: Field>(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>], order: MonomialOrder) -> Vec<Polynomial<F>> {
    let mut g: Vec<Polynomial<F>> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut i = 0;
    while i < g.len() {
        for j in 0..i {
            let s = s_poly(&g[j], &g[i], order);
            let r = naive_remainder(&s, &g, order);
            if !r.is_zero() {
                g.push(r);
            }
        }
        i += 1;
    }
    // minimal basis
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (k, p) in g.iter().enumerate() {
        let pm = p.leading_monomial(order).unwrap();
        let redundant = g.iter().enumerate().any(|(l, q)| {
            let qm = q.leading_monomial(order).unwrap();
            l != k && qm.divides(pm) && (qm != pm || l < k)
        });
        if !redundant {
            minimal.push(p.monic(order));
        }
    }
    let mut reduced = Vec::new();
    for k in 0..minimal.len() {
        let others: Vec<_> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q.clone()).collect();
        let p = &minimal[k];
        let (lm, lc) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let lead = Polynomial::monomial(ring, lm, lc);
        let tail = &p.clone() - &lead;
        reduced.push(&lead + &naive_remainder(&tail, &others, order));
    }
    reduced.sort_by(|a, b| order.cmp(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
    if reduced.iter().any(|p| p.is_constant()) {
        return vec![Polynomial::one(ring)];
    }
    reduced
}

/// Small deterministic generator of random polynomials (no dependence on the crate's sampler).
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    pub fn poly<F: Field>(&mut self, ring: &Arc<Ring<F>>, max_deg: u32, max_terms: usize) -> Polynomial<F> {
        let field = ring.field();
        let n = ring.nvars();
        let nterms = 1 + self.below(max_terms as u64) as usize;
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let mut exps = vec![0u32; n];
            let deg = self.below(max_deg as u64 + 1) as u32;
            for _ in 0..deg {
                exps[self.below(n as u64) as usize] += 1;
            }
            let c = self.below(7) as i64 - 3;
            terms.push((Monomial::new(exps), field.from_i64(if c == 0 { 1 } else { c })));
        }
        Polynomial::from_terms(ring, terms).unwrap()
    }
}

pub fn is_zero<F: Field>(e: &F::Elem) -> bool {
    e.is_zero()
}

pub fn one<F: Field>() -> F::Elem {
    F::Elem::one()
}
