//! Ideal constructions: elimination, intersection, colon, saturation,
//! powers, Jacobian minors and implicitization.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Dimension, IdealHandle};
use crate::poly::{same_ring, MonomialOrder, Polynomial, Ring};

/// Iterated-colon saturation gives up after this many steps.
pub const MAX_SATURATION_STEPS: usize = 50;

fn check_same<F: Field>(a: &IdealHandle<F>, b: &IdealHandle<F>) -> Result<()> {
    if same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `I ∩ k[keep]`, computed with a block order in which the eliminated
/// variables come first.
pub fn eliminate<F: Field>(ideal: &IdealHandle<F>, keep: &[usize]) -> Result<IdealHandle<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if let Some(&bad) = keep.iter().find(|&&k| k >= n) {
        return Err(Error::VariableOutOfRange { index: bad, nvars: n });
    }
    let mut is_kept = vec![false; n];
    for &k in keep {
        is_kept[k] = true;
    }
    let elim: Vec<usize> = (0..n).filter(|&i| !is_kept[i]).collect();
    if elim.is_empty() {
        return Ok(ideal.clone());
    }
    let perm: Vec<usize> = elim.iter().copied().chain((0..n).filter(|&i| is_kept[i])).collect();
    let mut to_perm = vec![0; n];
    for (pos, &orig) in perm.iter().enumerate() {
        to_perm[orig] = pos;
    }
    let pring = ring.permuted(&perm);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.embed(&pring, &to_perm))
        .collect::<Result<Vec<_>>>()?;
    let pideal = IdealHandle::new(&pring, gens)?;
    let gb = pideal.groebner_basis(MonomialOrder::Block(elim.len()))?;
    let kept = gb
        .generators()
        .iter()
        .filter(|g| g.support().iter().all(|&v| v >= elim.len()))
        .map(|g| g.embed(ring, &perm))
        .collect::<Result<Vec<_>>>()?;
    IdealHandle::new(ring, kept)
}

/// Drops the trailing `extra` variables of `ext` (which must not occur).
fn restrict<F: Field>(ring: &Arc<Ring<F>>, ideal: &IdealHandle<F>) -> Result<IdealHandle<F>> {
    let map: Vec<usize> = (0..ideal.nvars()).map(|i| if i < ring.nvars() { i } else { usize::MAX }).collect();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| {
            debug_assert!(g.support().iter().all(|&v| v < ring.nvars()));
            g.map_into(ring, &map, |c| Some(c.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    IdealHandle::new(ring, gens)
}

/// `I ∩ J` via `t·I + (1 - t)·J` and elimination of `t`.
pub fn intersect<F: Field>(i: &IdealHandle<F>, j: &IdealHandle<F>) -> Result<IdealHandle<F>> {
    check_same(i, j)?;
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(IdealHandle::zero(ring));
    }
    let n = ring.nvars();
    let ext = ring.extended(&["t"]);
    let id: Vec<usize> = (0..n).collect();
    let t = Polynomial::var(&ext, n)?;
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(&t * &g.embed(&ext, &id)?);
    }
    for g in j.generators() {
        gens.push(&one_minus_t * &g.embed(&ext, &id)?);
    }
    let elim = eliminate(&IdealHandle::new(&ext, gens)?, &id)?;
    restrict(ring, &elim)
}

/// `(I : g)`: divide the generators of `I ∩ <g>` by `g`.
pub fn colon_poly<F: Field>(i: &IdealHandle<F>, g: &Polynomial<F>) -> Result<IdealHandle<F>> {
    let ring = i.ring();
    if g.is_zero() {
        return Err(Error::invalid("colon by the zero polynomial"));
    }
    if i.contains(g)? {
        return Ok(IdealHandle::unit(ring));
    }
    let meet = intersect(i, &IdealHandle::new(ring, [g.clone()])?)?;
    let quotients = meet
        .generators()
        .iter()
        .map(|h| h.div_exact(g).ok_or_else(|| Error::invalid("intersection generator not divisible")))
        .collect::<Result<Vec<_>>>()?;
    IdealHandle::new(ring, quotients)
}

/// `(I : J) = ∩_g (I : g)` over the generators `g` of `J`.
pub fn colon<F: Field>(i: &IdealHandle<F>, j: &IdealHandle<F>) -> Result<IdealHandle<F>> {
    check_same(i, j)?;
    if j.is_zero() {
        return Err(Error::invalid("colon by the zero ideal"));
    }
    // (I : J) only depends on the ideal J; divide by the shorter generating set
    let reduced = j.reduced_generators()?;
    let divisors = if reduced.len() <= j.generators().len() { &reduced[..] } else { j.generators() };
    let mut acc: Option<IdealHandle<F>> = None;
    for g in divisors {
        let q = colon_poly(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(prev) if prev.is_unit()? => q,
            Some(prev) if q.is_unit()? => prev,
            Some(prev) => intersect(&prev, &q)?,
        });
    }
    let out = acc.expect("nonzero ideal has a generator");
    IdealHandle::new(i.ring(), out.reduced_generators()?)
}

/// Saturation `(I : J^∞)` by iterated colons, with the first exponent `s`
/// such that `(I : J^s) = (I : J^(s+1))`.
pub fn saturate<F: Field>(i: &IdealHandle<F>, j: &IdealHandle<F>) -> Result<(IdealHandle<F>, usize)> {
    let (sat, s, _) = saturate_with_first_colon(i, j)?;
    Ok((sat, s))
}

/// Like [`saturate`], also returning `(I : J)`.
pub fn saturate_with_first_colon<F: Field>(
    i: &IdealHandle<F>,
    j: &IdealHandle<F>,
) -> Result<(IdealHandle<F>, usize, IdealHandle<F>)> {
    check_same(i, j)?;
    if j.is_zero() {
        return Err(Error::invalid("saturation by the zero ideal"));
    }
    let mut current = i.clone();
    let mut first = None;
    for s in 0..MAX_SATURATION_STEPS {
        let next = colon(&current, j)?;
        if first.is_none() {
            first = Some(next.clone());
        }
        if next.equals(&current)? {
            return Ok((current, s, first.unwrap()));
        }
        current = next;
    }
    Err(Error::BudgetExceeded { budget: MAX_SATURATION_STEPS as u64 })
}

/// `(I : g^∞) = (I + <1 - z g>) ∩ k[x]`.
pub fn saturate_poly_rabinowitsch<F: Field>(i: &IdealHandle<F>, g: &Polynomial<F>) -> Result<IdealHandle<F>> {
    let ring = i.ring();
    let n = ring.nvars();
    let ext = ring.extended(&["z"]);
    let id: Vec<usize> = (0..n).collect();
    let mut gens = i.generators().iter().map(|h| h.embed(&ext, &id)).collect::<Result<Vec<_>>>()?;
    let z = Polynomial::var(&ext, n)?;
    gens.push(&Polynomial::one(&ext) - &(&z * &g.embed(&ext, &id)?));
    let elim = eliminate(&IdealHandle::new(&ext, gens)?, &id)?;
    restrict(ring, &elim)
}

/// `(I : J^∞) = ∩_g (I : g^∞)` with each factor from the auxiliary-variable method.
pub fn saturate_rabinowitsch<F: Field>(i: &IdealHandle<F>, j: &IdealHandle<F>) -> Result<IdealHandle<F>> {
    check_same(i, j)?;
    if j.is_zero() {
        return Err(Error::invalid("saturation by the zero ideal"));
    }
    let mut acc: Option<IdealHandle<F>> = None;
    for g in j.generators() {
        let s = saturate_poly_rabinowitsch(i, g)?;
        acc = Some(match acc {
            None => s,
            Some(prev) => intersect(&prev, &s)?,
        });
    }
    let out = acc.unwrap();
    IdealHandle::new(i.ring(), out.reduced_generators()?)
}

/// All `k`-fold products of generators.
pub fn ideal_power<F: Field>(i: &IdealHandle<F>, k: u32) -> Result<IdealHandle<F>> {
    if k == 0 {
        return Err(Error::invalid("ideal power exponent must be positive"));
    }
    let gens = i.generators();
    let mut products: Vec<Polynomial<F>> = Vec::new();
    let mut idx = vec![0usize; k as usize];
    if gens.is_empty() {
        return Ok(IdealHandle::zero(i.ring()));
    }
    loop {
        let mut p = Polynomial::one(i.ring());
        for &g in &idx {
            p = &p * &gens[g];
        }
        if !products.contains(&p) {
            products.push(p);
        }
        // next non-decreasing index tuple
        let mut pos = idx.len();
        while pos > 0 && idx[pos - 1] == gens.len() - 1 {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        idx[pos - 1] += 1;
        let v = idx[pos - 1];
        for slot in idx.iter_mut().skip(pos) {
            *slot = v;
        }
    }
    IdealHandle::new(i.ring(), products)
}

fn determinant<F: Field>(m: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Polynomial::zero(&ring);
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial<F>>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][col] * &determinant(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Ideal of all `size × size` minors of the Jacobian matrix of the generators.
pub fn jacobian_minors<F: Field>(i: &IdealHandle<F>, size: usize) -> Result<IdealHandle<F>> {
    let gens = i.generators();
    let n = i.nvars();
    if size == 0 || size > gens.len().min(n) {
        return Err(Error::invalid(format!(
            "minor size {size} outside 1..={}",
            gens.len().min(n)
        )));
    }
    let jac: Vec<Vec<Polynomial<F>>> = gens
        .iter()
        .map(|g| (0..n).map(|v| g.differentiate(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut minors = Vec::new();
    for rows in subsets(gens.len(), size) {
        for cols in subsets(n, size) {
            let sub: Vec<Vec<Polynomial<F>>> =
                rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = determinant(&sub);
            if !d.is_zero() && !minors.contains(&d) {
                minors.push(d);
            }
        }
    }
    IdealHandle::new(i.ring(), minors)
}

/// Closure of the image of `x ↦ (f_1(x), …, f_r(x))`.
#[derive(Debug, Clone)]
pub struct ImplicitizationResult<F: Field> {
    /// Ring `k[u_1, …, u_r]` of the target space.
    pub image_ring: Arc<Ring<F>>,
    pub ideal: IdealHandle<F>,
    /// Dimension of the image closure, i.e. of `k[f_1, …, f_r]`.
    pub dimension: Dimension,
    /// The closure is stable under scaling.
    pub cone: bool,
}

pub fn implicitize<F: Field>(fs: &[Polynomial<F>]) -> Result<ImplicitizationResult<F>> {
    let Some(first) = fs.first() else {
        return Err(Error::invalid("implicitization needs at least one polynomial"));
    };
    let ring = first.ring().clone();
    if fs.iter().any(|f| !same_ring(f.ring(), &ring)) {
        return Err(Error::ContextMismatch);
    }
    let n = ring.nvars();
    let r = fs.len();
    let names: Vec<String> = (1..=r).map(|i| format!("u{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ext = ring.extended(&name_refs);
    let id: Vec<usize> = (0..n).collect();
    let mut gens = Vec::with_capacity(r);
    for (k, f) in fs.iter().enumerate() {
        gens.push(&Polynomial::var(&ext, n + k)? - &f.embed(&ext, &id)?);
    }
    let keep: Vec<usize> = (n..n + r).collect();
    let elim = eliminate(&IdealHandle::new(&ext, gens)?, &keep)?;

    let image_ring = Ring::new(ext.vars()[n..].iter().cloned(), ring.field().clone())?;
    let map: Vec<usize> = (0..n + r).map(|v| if v >= n { v - n } else { usize::MAX }).collect();
    let image_gens = elim
        .generators()
        .iter()
        .map(|g| g.map_into(&image_ring, &map, |c| Some(c.clone())))
        .collect::<Result<Vec<_>>>()?;
    let ideal = IdealHandle::new(&image_ring, image_gens)?;
    let dimension = ideal.dimension()?;
    let cone = ideal.is_homogeneous()?;
    Ok(ImplicitizationResult { image_ring, ideal, dimension, cone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn ring(vars: &[&str]) -> Arc<Ring<Rationals>> {
        Ring::new(vars.iter().copied(), Rationals).unwrap()
    }

    fn ideal(r: &Arc<Ring<Rationals>>, gens: &[&str]) -> IdealHandle<Rationals> {
        IdealHandle::parse(r, gens).unwrap()
    }

    fn assert_same(a: &IdealHandle<Rationals>, b: &IdealHandle<Rationals>) {
        assert!(a.equals(b).unwrap(), "{a:?} != {b:?}");
    }

    #[test]
    fn eliminate_examples() {
        let r = ring(&["x", "y"]);
        let e = eliminate(&ideal(&r, &["y - x^2"]), &[1]).unwrap();
        assert!(e.is_zero());
        let e = eliminate(&ideal(&r, &["x - 1", "y - x"]), &[1]).unwrap();
        assert_same(&e, &ideal(&r, &["y - 1"]));

        let r = ring(&["x", "y", "z", "w", "u1", "u2", "u3", "u4"]);
        let i = ideal(&r, &["u1 - x*z", "u2 - x*w", "u3 - y*z", "u4 - y*w"]);
        let e = eliminate(&i, &[4, 5, 6, 7]).unwrap();
        assert_same(&e, &ideal(&r, &["u1*u4 - u2*u3"]));
    }

    #[test]
    fn intersect_examples() {
        let r = ring(&["x", "y"]);
        assert_same(&intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap(), &ideal(&r, &["x*y"]));
        assert_same(&intersect(&ideal(&r, &["x"]), &ideal(&r, &["x"])).unwrap(), &ideal(&r, &["x"]));
        assert_same(
            &intersect(&ideal(&r, &["x^2", "y"]), &ideal(&r, &["x"])).unwrap(),
            &ideal(&r, &["x^2", "x*y"]),
        );
    }

    #[test]
    fn colon_examples() {
        let r = ring(&["x", "y"]);
        assert_same(&colon(&ideal(&r, &["x*y"]), &ideal(&r, &["x"])).unwrap(), &ideal(&r, &["y"]));
        assert!(colon(&ideal(&r, &["x"]), &ideal(&r, &["x"])).unwrap().is_unit().unwrap());
        assert_same(&colon(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["x"])).unwrap(), &ideal(&r, &["x", "y"]));
        assert!(colon(&ideal(&r, &["x"]), &IdealHandle::zero(&r)).is_err());
    }

    #[test]
    fn saturate_examples() {
        let r = ring(&["x", "y"]);
        let (s, e) = saturate(&ideal(&r, &["x^2*y"]), &ideal(&r, &["y"])).unwrap();
        assert_same(&s, &ideal(&r, &["x^2"]));
        assert_eq!(e, 1);
        let (s, e) = saturate(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
        assert_same(&s, &ideal(&r, &["x"]));
        assert_eq!(e, 0);
    }

    #[test]
    fn power_examples() {
        let r = ring(&["x", "y", "z", "w"]);
        assert_same(&ideal_power(&ideal(&r, &["x", "y"]), 2).unwrap(), &ideal(&r, &["x^2", "x*y", "y^2"]));
        assert_same(&ideal_power(&ideal(&r, &["x"]), 3).unwrap(), &ideal(&r, &["x^3"]));
        let p = ideal_power(&ideal(&r, &["x*z", "x*w"]), 2).unwrap();
        assert_eq!(p.generators().len(), 3);
        assert_same(&p, &ideal(&r, &["x^2*z^2", "x^2*z*w", "x^2*w^2"]));
        assert!(ideal_power(&ideal(&r, &["x"]), 0).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let r = ring(&["x", "y"]);
        let j = jacobian_minors(&ideal(&r, &["x^2+y^2-1"]), 1).unwrap();
        assert_eq!(j.generators(), ideal(&r, &["2*x", "2*y"]).generators());
        assert!(jacobian_minors(&ideal(&r, &["x", "y"]), 2).unwrap().is_unit().unwrap());
        assert_same(&jacobian_minors(&ideal(&r, &["x*y"]), 1).unwrap(), &ideal(&r, &["y", "x"]));
        assert!(jacobian_minors(&ideal(&r, &["x*y"]), 2).is_err());
        assert!(jacobian_minors(&ideal(&r, &["x*y"]), 0).is_err());
    }

    #[test]
    fn implicitize_examples() {
        let r = ring(&["x", "y", "z", "w"]);
        let fs: Vec<_> = ["x*z", "x*w", "y*z", "y*w"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
        let res = implicitize(&fs).unwrap();
        assert_same(&res.ideal, &IdealHandle::parse(&res.image_ring, &["u1*u4 - u2*u3"]).unwrap());
        assert_eq!(res.dimension, Dimension::Dim(3));
        assert!(res.cone);

        let r1 = ring(&["x"]);
        let res = implicitize(&[Polynomial::parse(&r1, "x").unwrap()]).unwrap();
        assert!(res.ideal.is_zero());
        assert_eq!(res.dimension, Dimension::Dim(1));
        assert!(res.cone);

        let gs: Vec<_> = ["x*z", "x*w", "y*z", "y*w", "x^2*z", "x*y*z", "x*z^2", "x*z*w"]
            .iter()
            .map(|s| Polynomial::parse(&r, s).unwrap())
            .collect();
        let res = implicitize(&gs).unwrap();
        assert_eq!(res.dimension, Dimension::Dim(4));
        assert!(!res.cone);
    }
}
