//! Buchberger's algorithm on order-sorted term vectors.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder};

/// Terms sorted by decreasing monomial order; the first entry is the leading term.
pub(crate) type Terms<F> = Vec<(Monomial, <F as Field>::Elem)>;

static DEFAULT_BUDGET: AtomicU64 = AtomicU64::new(10_000_000);

/// Reduction-step budget used by ideal operations that do not take one explicitly.
pub fn default_budget() -> u64 {
    DEFAULT_BUDGET.load(AtomicOrdering::Relaxed)
}

pub fn set_default_budget(steps: u64) {
    DEFAULT_BUDGET.store(steps, AtomicOrdering::Relaxed);
}

#[derive(Debug)]
pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub(crate) fn step(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

pub(crate) fn sort_terms<F: Field>(mut terms: Terms<F>, order: MonomialOrder) -> Terms<F> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

pub(crate) fn make_monic<F: Field>(field: &F, mut f: Terms<F>) -> Terms<F> {
    if let Some((_, lc)) = f.first() {
        if !lc.is_one() {
            let inv = field.inv(lc).expect("nonzero leading coefficient");
            for (_, c) in f.iter_mut() {
                *c = field.mul(c, &inv);
            }
        }
    }
    f
}

/// `f - c * m * g`, all operands sorted decreasingly.
pub(crate) fn sub_scaled<F: Field>(
    field: &F,
    order: MonomialOrder,
    f: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    g: &[(Monomial, F::Elem)],
) -> Terms<F> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(Monomial, F::Elem)> = None;
    let scaled = |k: usize| -> (Monomial, F::Elem) {
        let (gm, gc) = &g[k];
        (gm.mul(m), field.neg(&field.mul(gc, c)))
    };
    while i < f.len() || j < g.len() || pending.is_some() {
        if pending.is_none() && j < g.len() {
            pending = Some(scaled(j));
            j += 1;
        }
        match (&pending, f.get(i)) {
            (Some((pm, pc)), Some((fm, fc))) => match order.cmp(fm, pm) {
                std::cmp::Ordering::Greater => {
                    out.push((fm.clone(), fc.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(pending.take().unwrap());
                }
                std::cmp::Ordering::Equal => {
                    let s = field.add(fc, pc);
                    if !s.is_zero() {
                        out.push((fm.clone(), s));
                    }
                    pending = None;
                    i += 1;
                }
            },
            (Some(_), None) => out.push(pending.take().unwrap()),
            (None, Some((fm, fc))) => {
                out.push((fm.clone(), fc.clone()));
                i += 1;
            }
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `f` modulo monic `basis`.
pub(crate) fn reduce<F: Field>(
    field: &F,
    order: MonomialOrder,
    f: Terms<F>,
    basis: &[&Terms<F>],
    budget: &mut Budget,
) -> Result<Terms<F>> {
    let mut rem: Terms<F> = Vec::new();
    let mut p = f;
    let mut idx = 0;
    while idx < p.len() {
        match basis.iter().find(|g| g[0].0.divides(&p[idx].0)) {
            Some(g) => {
                budget.step()?;
                // terms before idx are irreducible and larger than what follows
                rem.extend(p.drain(..idx));
                let (m, c) = &p[0];
                let q = m.div(&g[0].0).expect("divisible");
                p = sub_scaled(field, order, &p[1..], c, &q, &g[1..]);
                idx = 0;
            }
            None => idx += 1,
        }
    }
    rem.extend(p);
    Ok(rem)
}

fn s_polynomial<F: Field>(field: &F, order: MonomialOrder, f: &Terms<F>, g: &Terms<F>) -> Terms<F> {
    let lcm = f[0].0.lcm(&g[0].0);
    let mf = lcm.div(&f[0].0).unwrap();
    let mg = lcm.div(&g[0].0).unwrap();
    let fs: Terms<F> = f[1..].iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    sub_scaled(field, order, &fs, &F::Elem::one(), &mg, &g[1..])
}

/// Computes the reduced Gröbner basis of `gens`; output sorted by increasing
/// leading monomial, each element monic.
pub(crate) fn buchberger<F: Field>(
    field: &F,
    order: MonomialOrder,
    gens: Vec<Terms<F>>,
    budget: &mut Budget,
) -> Result<Vec<Terms<F>>> {
    let mut inputs: Vec<Terms<F>> = gens
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|g| make_monic(field, sort_terms::<F>(g, order)))
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    inputs.dedup();

    let mut basis: Vec<Terms<F>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: BTreeSet<(u32, Monomial, usize, usize)> = BTreeSet::new();

    for g in inputs {
        let h = {
            let reducers: Vec<&Terms<F>> = active_refs::<F>(&basis, &active);
            reduce(field, order, g, &reducers, budget)?
        };
        if h.is_empty() {
            continue;
        }
        if insert(field, &mut basis, &mut active, &mut pairs, h) {
            return Ok(vec![unit_terms::<F>(order, &basis)]);
        }
    }

    while let Some(key) = pairs.pop_first() {
        let (_, _, i, j) = key;
        budget.step()?;
        let s = s_polynomial(field, order, &basis[i], &basis[j]);
        let h = {
            let reducers: Vec<&Terms<F>> = active_refs::<F>(&basis, &active);
            reduce(field, order, s, &reducers, budget)?
        };
        if h.is_empty() {
            continue;
        }
        if insert(field, &mut basis, &mut active, &mut pairs, h) {
            return Ok(vec![unit_terms::<F>(order, &basis)]);
        }
    }

    let minimal: Vec<Terms<F>> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(g, _)| g)
        .collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Terms<F>> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, h)| h).collect();
        let lead = g[0].clone();
        let tail = reduce(field, order, g[1..].to_vec(), &others, budget)?;
        let mut r = Vec::with_capacity(tail.len() + 1);
        r.push(lead);
        r.extend(tail);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(reduced)
}

fn unit_terms<F: Field>(_order: MonomialOrder, basis: &[Terms<F>]) -> Terms<F> {
    let n = basis[0][0].0.nvars();
    vec![(Monomial::one(n), F::Elem::one())]
}

fn active_refs<'a, F: Field>(basis: &'a [Terms<F>], active: &[bool]) -> Vec<&'a Terms<F>> {
    basis.iter().zip(active).filter(|(_, a)| **a).map(|(g, _)| g).collect()
}

/// Adds a reduced nonzero `h` with the Gebauer–Möller pair update. Returns
/// true when `h` is a constant (the ideal is the unit ideal).
fn insert<F: Field>(
    field: &F,
    basis: &mut Vec<Terms<F>>,
    active: &mut Vec<bool>,
    pairs: &mut BTreeSet<(u32, Monomial, usize, usize)>,
    h: Terms<F>,
) -> bool {
    let h = make_monic(field, h);
    let hm = h[0].0.clone();
    let k = basis.len();
    basis.push(h);
    active.push(true);
    if hm.is_one() {
        return true;
    }

    // candidate pairs (i, k), processed in a fixed order
    let mut cands: Vec<(usize, Monomial, bool)> = (0..k)
        .filter(|&i| active[i])
        .map(|i| {
            let gm = &basis[i][0].0;
            (i, gm.lcm(&hm), gm.is_coprime(&hm))
        })
        .collect();
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    while let Some(p) = cands.pop() {
        let dominated = cands.iter().chain(kept.iter()).any(|q| q.1.divides(&p.1));
        if p.2 || !dominated {
            kept.push(p);
        }
    }

    let old: Vec<_> = std::mem::take(pairs).into_iter().collect();
    for key in old {
        let (_, ref lcm, i, j) = key;
        let drop = hm.divides(lcm)
            && basis[i][0].0.lcm(&hm) != *lcm
            && basis[j][0].0.lcm(&hm) != *lcm;
        if !drop {
            pairs.insert(key);
        }
    }
    for (i, lcm, coprime) in kept {
        if !coprime {
            pairs.insert((lcm.degree(), lcm, i, k));
        }
    }
    for i in 0..k {
        if active[i] && hm.divides(&basis[i][0].0) {
            active[i] = false;
        }
    }
    false
}
