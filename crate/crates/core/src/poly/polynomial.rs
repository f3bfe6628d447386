use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::ring::{same_ring, Ring};
use crate::error::{Error, Result};
use crate::field::{format_rational, Field};

/// Sparse polynomial with exact coefficients. Terms are kept in a map keyed
/// by exponent vector; no zero coefficient is ever stored.
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: BTreeMap<Monomial, F::Elem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// `f op g` with a context check.
pub fn ring_arith<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, op: ArithOp) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add => f.checked_add(g),
        ArithOp::Sub => f.checked_sub(g),
        ArithOp::Mul => f.checked_mul(g),
    }
}

impl<F: Field> Clone for Polynomial<F> {
    fn clone(&self) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.clone() }
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, F::Elem::one())
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn monomial(ring: &Arc<Ring<F>>, m: Monomial, c: F::Elem) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring<F>>, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::VariableOutOfRange { index, nvars: ring.nvars() });
        }
        Ok(Self::monomial(ring, Monomial::var(ring.nvars(), index), F::Elem::one()))
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Result<Self> {
        let field = ring.field();
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != ring.nvars() {
                return Err(Error::ContextMismatch);
            }
            match map.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial { ring: ring.clone(), terms: map })
    }

    /// Builds a polynomial from rational coefficients, mapping them into the field.
    pub fn from_rational_terms(ring: &Arc<Ring<F>>, terms: impl IntoIterator<Item = (BigRational, Monomial)>) -> Result<Self> {
        let field = ring.field();
        let mapped = terms
            .into_iter()
            .map(|(q, m)| {
                field
                    .from_rational(&q)
                    .map(|c| (m, c))
                    .ok_or_else(|| Error::Unrepresentable(format_rational(&q)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(ring, mapped)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(F::Elem::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// A nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    /// A single term `c * x^a`.
    pub fn as_term(&self) -> Option<(&Monomial, &F::Elem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let field = self.field();
        let mut map: BTreeMap<Monomial, F::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match map.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial { ring: self.ring.clone(), terms: map })
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let field = self.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if subtract { field.neg(c) } else { c.clone() };
            match terms.get_mut(m) {
                Some(e) => {
                    let s = field.add(e, &c);
                    if s.is_zero() {
                        terms.remove(m);
                    } else {
                        *e = s;
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let field = self.field();
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let field = self.field();
        let terms = self.terms.iter().map(|(a, b)| (a.mul(m), field.mul(b, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Result<Self> {
        let n = self.ring.nvars();
        if var >= n {
            return Err(Error::VariableOutOfRange { index: var, nvars: n });
        }
        let field = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exps()[var];
            if e == 0 {
                return None;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            Some((Monomial::new(exps), field.mul(c, &field.from_i64(e as i64))))
        });
        Self::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    /// Homogeneous components by increasing total degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Self)> {
        let mut parts: BTreeMap<u32, BTreeMap<Monomial, F::Elem>> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts.entry(m.degree()).or_default().insert(m.clone(), c.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, Polynomial { ring: self.ring.clone(), terms }))
            .collect()
    }

    /// Terms in decreasing order for `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &F::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &F::Elem)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Scales so the leading coefficient is one. Zero stays zero.
    pub fn monic(&self, order: MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let field = self.field();
        let mut acc = F::Elem::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, u)| **u).map(|(i, _)| i).collect()
    }

    /// Moves the polynomial into `target`, sending variable `i` to `var_map[i]`
    /// and coefficients through `coeff`.
    pub fn map_into<G: Field>(
        &self,
        target: &Arc<Ring<G>>,
        var_map: &[usize],
        coeff: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Result<Polynomial<G>> {
        assert_eq!(var_map.len(), self.ring.nvars());
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; n];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = var_map[i];
                    if j >= n {
                        return Err(Error::VariableOutOfRange { index: j, nvars: n });
                    }
                    exps[j] += e;
                }
            }
            let c = coeff(c).ok_or_else(|| Error::Unrepresentable(self.field().format(c)))?;
            terms.push((Monomial::new(exps), c));
        }
        Polynomial::from_terms(target, terms)
    }

    /// Same-field embedding along a variable map.
    pub fn embed(&self, target: &Arc<Ring<F>>, var_map: &[usize]) -> Result<Self> {
        self.map_into(target, var_map, |c| Some(c.clone()))
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        let order = MonomialOrder::Lex;
        let field = self.field();
        let (gm, gc) = g.leading_term(order)?;
        let gc_inv = field.inv(gc)?;
        let mut rem = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rem.leading_term(order) {
            let q = m.div(gm)?;
            let qc = field.mul(c, &gc_inv);
            rem = &rem - &g.mul_term(&q, &qc);
            quotient.insert(q, qc);
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quotient })
    }

    /// Text form in the input grammar: terms by decreasing grevlex order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let field = self.field();
        let mut out = String::new();
        for (k, (m, c)) in self.sorted_terms(MonomialOrder::GrevLex).into_iter().enumerate() {
            let q = field.to_rational(c);
            let neg = q.is_negative();
            let abs = q.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(self.ring.vars(), m);
            if mono.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub(crate) fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m.exps()) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_text())
    }
}

// Operator forms panic on a context mismatch; use the `checked_*` methods
// when operands come from unrelated sources.
impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.checked_add(rhs).expect("ring context mismatch")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.checked_sub(rhs).expect("ring context mismatch")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.checked_mul(rhs).expect("ring context mismatch")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}
