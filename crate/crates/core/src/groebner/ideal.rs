use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};

use super::basis::GroebnerBasis;
use super::engine::default_budget;

/// Krull dimension of `R/I`; the unit ideal has no points and reports `Empty`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Empty,
    Dim(usize),
}

impl Dimension {
    pub fn is_empty(&self) -> bool {
        matches!(self, Dimension::Empty)
    }

    pub fn value(&self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Dim(d) => Some(*d),
        }
    }

    /// Codimension in an ambient space of dimension `n`; `None` when empty.
    pub fn codim(&self, n: usize) -> Option<usize> {
        self.value().map(|d| n - d)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => f.write_str("empty"),
            Dimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// An ideal given by generators, with Gröbner bases cached per order.
pub struct IdealHandle<F: Field> {
    ring: Arc<Ring<F>>,
    gens: Vec<Polynomial<F>>,
    cache: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
    dim: OnceLock<Dimension>,
}

impl<F: Field> Clone for IdealHandle<F> {
    fn clone(&self) -> Self {
        let cache = self.cache.read().expect("cache lock").clone();
        let dim = OnceLock::new();
        if let Some(d) = self.dim.get() {
            let _ = dim.set(*d);
        }
        IdealHandle { ring: self.ring.clone(), gens: self.gens.clone(), cache: RwLock::new(cache), dim }
    }
}

impl<F: Field> fmt::Debug for IdealHandle<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl<F: Field> IdealHandle<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring<F>>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let mut kept = Vec::new();
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(Error::ContextMismatch);
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(IdealHandle { ring: ring.clone(), gens: kept, cache: RwLock::default(), dim: OnceLock::new() })
    }

    pub fn parse(ring: &Arc<Ring<F>>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Self::new(ring, []).expect("empty generator list")
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Self::new(ring, [Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Cached reduced Gröbner basis for `order`.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner_basis_with_budget(order, default_budget())
    }

    pub fn groebner_basis_with_budget(&self, order: MonomialOrder, budget: u64) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(&order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ring, &self.gens, order, budget)?);
        #[cfg(test)]
        debug_assert!(gb.verify_certificate());
        self.cache.write().expect("cache lock").entry(order).or_insert(gb.clone());
        Ok(gb)
    }

    /// Grevlex basis, the default for membership questions.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner_basis(MonomialOrder::GrevLex)
    }

    /// Reduced grevlex generators: a canonical generating set.
    pub fn reduced_generators(&self) -> Result<Vec<Polynomial<F>>> {
        Ok(self.gb()?.generators().to_vec())
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.gb()?.contains(f)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.gb()?.normal_form(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealHandle<F>) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        let gb = self.gb()?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality, by comparing reduced grevlex bases.
    pub fn equals(&self, other: &IdealHandle<F>) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.gb()?.generators() == other.gb()?.generators())
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.gb()?.is_unit())
    }

    /// Krull dimension of the quotient, from the leading-term ideal.
    pub fn dimension(&self) -> Result<Dimension> {
        self.dimension_for(MonomialOrder::GrevLex)
    }

    /// Dimension computed from the leading terms under `order`.
    pub fn dimension_for(&self, order: MonomialOrder) -> Result<Dimension> {
        if order == MonomialOrder::GrevLex {
            if let Some(d) = self.dim.get() {
                return Ok(*d);
            }
        }
        let gb = self.groebner_basis(order)?;
        let d = if gb.is_unit() {
            Dimension::Empty
        } else {
            let lms: Vec<&Monomial> = gb.leading_monomials().collect();
            Dimension::Dim(max_independent_set(self.nvars(), &lms))
        };
        if order == MonomialOrder::GrevLex {
            let _ = self.dim.set(d);
        }
        Ok(d)
    }

    /// Codimension in the ambient affine space; `None` for the unit ideal.
    pub fn codimension(&self) -> Result<Option<usize>> {
        Ok(self.dimension()?.codim(self.nvars()))
    }

    /// True iff every homogeneous component of every generator lies in the ideal.
    pub fn is_homogeneous(&self) -> Result<bool> {
        let gb = self.gb()?;
        for g in &self.gens {
            if g.is_homogeneous() {
                continue;
            }
            for (_, part) in g.homogeneous_parts() {
                if !gb.contains(&part)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + <1 - z f>` in a ring with an extra variable `z`.
    pub fn radical_contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        let n = self.nvars();
        let ext = self.ring.extended(&["z"]);
        let map: Vec<usize> = (0..n).collect();
        let mut gens = self.gens.iter().map(|g| g.embed(&ext, &map)).collect::<Result<Vec<_>>>()?;
        let z = Polynomial::var(&ext, n)?;
        let zf = &z * &f.embed(&ext, &map)?;
        gens.push(&Polynomial::one(&ext) - &zf);
        IdealHandle::new(&ext, gens)?.is_unit()
    }

    /// `√self ⊆ √other` fails iff some generator of `self` is outside `√other`;
    /// returns whether `self ⊆ √other`.
    pub fn radical_contained_in(&self, other: &IdealHandle<F>) -> Result<bool> {
        for g in &self.gens {
            if !other.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Same zero set: mutual radical membership of generators.
    pub fn same_radical(&self, other: &IdealHandle<F>) -> Result<bool> {
        Ok(self.radical_contained_in(other)? && other.radical_contained_in(self)?)
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.as_term().is_some())
    }

    /// Exponent vectors of a monomial ideal's generators.
    pub fn monomial_exponents(&self) -> Result<Vec<Monomial>> {
        self.gens
            .iter()
            .map(|g| {
                g.as_term()
                    .map(|(m, _)| m.clone())
                    .ok_or_else(|| Error::NonMonomial(g.to_string()))
            })
            .collect()
    }

    /// The ideal with each generator rescaled to be monic under grevlex.
    pub fn normalized(&self) -> Self {
        let gens: Vec<_> = self.gens.iter().map(|g| g.monic(MonomialOrder::GrevLex)).collect();
        IdealHandle::new(&self.ring, gens).expect("same ring")
    }

    /// Image of the generators in the same variables over `F_p`.
    pub fn to_prime_field(&self, p: u64) -> Result<IdealHandle<PrimeField>> {
        let field = PrimeField::new(p)?;
        let target = self.ring.with_field(field);
        let ids: Vec<usize> = (0..self.nvars()).collect();
        let gens = self
            .gens
            .iter()
            .map(|g| g.map_into(&target, &ids, |c| field.from_rational(&self.ring.field().to_rational(c))))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(&target, gens)
    }

    pub fn contains_one(&self) -> Result<bool> {
        self.contains(&Polynomial::constant(&self.ring, F::Elem::one()))
    }
}

/// Largest set of variables containing the support of no leading monomial.
pub(crate) fn max_independent_set(nvars: usize, lms: &[&Monomial]) -> usize {
    assert!(nvars <= 128, "independent-set search supports at most 128 variables");
    let mut supports: Vec<u128> = lms
        .iter()
        .map(|m| m.support().fold(0u128, |acc, i| acc | (1u128 << i)))
        .collect();
    supports.sort_unstable();
    supports.dedup();
    // keep minimal supports only
    let minimal: Vec<u128> = supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&t| t != s && t & s == t))
        .collect();
    if minimal.contains(&0) {
        return 0;
    }
    let mut best = 0;
    search(nvars, &minimal, 0, 0, 0, &mut best);
    best
}

fn search(nvars: usize, supports: &[u128], next: usize, chosen: u128, size: usize, best: &mut usize) {
    if size > *best {
        *best = size;
    }
    if size + (nvars - next) <= *best {
        return;
    }
    for v in next..nvars {
        if size + (nvars - v) <= *best {
            return;
        }
        let with = chosen | (1u128 << v);
        let ok = supports.iter().all(|&s| s & (1u128 << v) == 0 || s & !with != 0);
        if ok {
            search(nvars, supports, v + 1, with, size + 1, best);
        }
    }
}
