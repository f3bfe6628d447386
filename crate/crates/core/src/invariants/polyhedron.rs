use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Largest lattice box scanned by [`multiplier_ideal_monomial`].
pub const MULTIPLIER_BOX_CAP: u64 = 5_000_000;

/// `conv(points) + ℝⁿ_{≥0}` described by facets `⟨w, u⟩ >= 1` with `w >= 0`.
/// The coordinate facets `u_j >= 0` are implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    n: usize,
    points: Vec<Vec<BigRational>>,
    facets: Vec<Vec<BigRational>>,
}

impl NewtonPolyhedron {
    /// Polyhedron generated by arbitrary nonnegative rational points.
    pub fn from_points(n: usize, points: Vec<Vec<BigRational>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("a Newton polyhedron needs at least one point"));
        }
        if points.iter().any(|p| p.len() != n || p.iter().any(|c| c.is_negative())) {
            return Err(Error::invalid("points must be nonnegative vectors of the ambient dimension"));
        }
        if points.iter().any(|p| p.iter().all(|c| c.is_zero())) {
            return Err(Error::invalid("the polyhedron contains the origin (unit ideal)"));
        }
        let points = minimal_points(points);
        let facets = facets(n, &points);
        Ok(NewtonPolyhedron { n, points, facets })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Generating points not dominated by another generating point.
    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    /// Normals `w` of the non-coordinate facets `⟨w, u⟩ >= 1`, sorted.
    pub fn facets(&self) -> &[Vec<BigRational>] {
        &self.facets
    }

    pub fn contains(&self, u: &[BigRational]) -> bool {
        u.iter().all(|c| !c.is_negative()) && self.facets.iter().all(|w| dot(w, u) >= BigRational::one())
    }

    /// `u` lies in the interior of `c · P`.
    pub fn interior_of_scaled(&self, c: &BigRational, u: &[BigRational]) -> bool {
        u.iter().all(|x| x.is_positive()) && self.facets.iter().all(|w| &dot(w, u) > c)
    }

    /// `min_{u ∈ P} ⟨v, u⟩` for `v >= 0`.
    pub fn support_value(&self, v: &[BigRational]) -> BigRational {
        self.points.iter().map(|p| dot(v, p)).min().expect("nonempty")
    }
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

fn minimal_points(mut points: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    points.sort();
    points.dedup();
    let keep: Vec<bool> = points
        .iter()
        .map(|p| !points.iter().any(|q| q != p && q.iter().zip(p).all(|(a, b)| a <= b)))
        .collect();
    points.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

/// Candidate normals from `k` tight points and `n - k` vanishing coordinates,
/// kept when uniquely determined and valid for every point.
fn facets(n: usize, points: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut out: Vec<Vec<BigRational>> = Vec::new();
    for k in 1..=n.min(points.len()) {
        for chosen in (0..points.len()).combinations(k) {
            for zeros in (0..n).combinations(n - k) {
                let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
                let mut rhs = Vec::with_capacity(n);
                for &i in &chosen {
                    rows.push(points[i].clone());
                    rhs.push(BigRational::one());
                }
                for &j in &zeros {
                    let mut e = vec![BigRational::zero(); n];
                    e[j] = BigRational::one();
                    rows.push(e);
                    rhs.push(BigRational::zero());
                }
                let Some(w) = solve_unique(rows, rhs) else { continue };
                if w.iter().any(|c| c.is_negative()) {
                    continue;
                }
                if points.iter().all(|p| dot(&w, p) >= BigRational::one()) && !out.contains(&w) {
                    out.push(w);
                }
            }
        }
    }
    out.sort();
    out
}

/// Gaussian elimination; `None` unless the square system has a unique solution.
pub(crate) fn solve_unique(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
                let delta = &f * &b[col];
                b[r] -= delta;
            }
        }
    }
    Some(b)
}

/// Minimal monomial generators of a monomial ideal, read from its generators
/// or, failing that, from its reduced Gröbner basis.
pub fn monomial_generators<F: Field>(a: &IdealHandle<F>) -> Result<Vec<Monomial>> {
    if a.is_zero() {
        return Err(Error::invalid("the zero ideal has no Newton polyhedron"));
    }
    let exps = match a.monomial_exponents() {
        Ok(e) => e,
        Err(_) => {
            let gb = a.reduced_generators()?;
            gb.iter()
                .map(|g| g.as_term().map(|(m, _)| m.clone()).ok_or_else(|| Error::NonMonomial(g.to_string())))
                .collect::<Result<Vec<_>>>()?
        }
    };
    if exps.iter().any(Monomial::is_one) {
        return Err(Error::invalid("the unit ideal has no proper Newton polyhedron"));
    }
    let mut minimal: Vec<Monomial> = exps
        .iter()
        .filter(|m| !exps.iter().any(|d| d != *m && d.divides(m)))
        .cloned()
        .collect();
    minimal.sort_by(|x, y| MonomialOrder::GrevLex.cmp(x, y));
    minimal.dedup();
    Ok(minimal)
}

pub(crate) fn to_point(m: &Monomial) -> Vec<BigRational> {
    m.exps().iter().map(|&e| BigRational::from_integer(e.into())).collect()
}

/// Newton polyhedron of a proper nonzero monomial ideal.
pub fn newton_polyhedron<F: Field>(a: &IdealHandle<F>) -> Result<NewtonPolyhedron> {
    let gens = monomial_generators(a)?;
    NewtonPolyhedron::from_points(a.nvars(), gens.iter().map(to_point).collect())
}

/// `lct(a) = min_w Σ_j w_j` over the facet normals of the Newton polyhedron.
pub fn lct_monomial<F: Field>(a: &IdealHandle<F>) -> Result<BigRational> {
    let p = newton_polyhedron(a)?;
    Ok(p.facets().iter().map(|w| w.iter().sum::<BigRational>()).min().expect("at least one facet"))
}

/// Generalized threshold `min_v (Σ v_j + λ·v(a_Z)) / v(a_X)` over monomial valuations.
///
/// The ratio is scale invariant, so it suffices to minimize the concave numerator
/// over `{v >= 0 : v(a_X) >= 1}`; the minimum sits at a vertex of that region,
/// and its vertices are the facet normals of the Newton polyhedron of `a_X`.
pub fn glct_monomial<F: Field>(a_x: &IdealHandle<F>, a_z: &IdealHandle<F>, lambda: &BigRational) -> Result<BigRational> {
    if lambda.is_negative() {
        return Err(Error::invalid("λ must be nonnegative"));
    }
    let px = newton_polyhedron(a_x)?;
    let pz = newton_polyhedron(a_z)?;
    if pz.dim() != px.dim() {
        return Err(Error::ContextMismatch);
    }
    Ok(px
        .facets()
        .iter()
        .map(|w| w.iter().sum::<BigRational>() + lambda * pz.support_value(w))
        .min()
        .expect("at least one facet"))
}

/// Multiplier ideal `J(a^c)`: monomials `x^m` with `m + 𝟙` in the interior of `c · P(a)`.
pub fn multiplier_ideal_monomial<F: Field>(a: &IdealHandle<F>, c: &BigRational) -> Result<IdealHandle<F>> {
    if c.is_negative() {
        return Err(Error::invalid("the exponent c must be nonnegative"));
    }
    let p = newton_polyhedron(a)?;
    let n = p.dim();
    let ring = a.ring();
    // a minimal generator m has m_j <= c / w_j for some facet w with w_j > 0
    let bounds: Vec<u64> = (0..n)
        .map(|j| {
            p.facets()
                .iter()
                .filter(|w| w[j].is_positive())
                .map(|w| (c / &w[j]).floor().to_integer().to_u64().unwrap_or(u64::MAX))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let size = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(b.saturating_add(1)));
    if size.is_none_or(|s| s > MULTIPLIER_BOX_CAP) {
        return Err(Error::BudgetExceeded { budget: MULTIPLIER_BOX_CAP });
    }
    let inside = |m: &[u64]| {
        let u: Vec<BigRational> = m.iter().map(|&e| BigRational::from_integer((e + 1).into())).collect();
        p.interior_of_scaled(c, &u)
    };
    // lexicographic scan: no later point lies below an earlier one, so `found` stays minimal
    let mut found: Vec<Vec<u64>> = Vec::new();
    for m in bounds.iter().map(|&b| 0..=b).multi_cartesian_product() {
        if found.iter().any(|f| f.iter().zip(&m).all(|(a, b)| a <= b)) {
            continue;
        }
        if inside(&m) {
            found.push(m);
        }
    }
    let gens = found
        .iter()
        .map(|m| {
            let exps = m.iter().map(|&e| u32::try_from(e).map_err(|_| Error::invalid("exponent overflow"))).collect::<Result<Vec<_>>>()?;
            Ok(Polynomial::monomial(ring, Monomial::new(exps), ring.field().from_i64(1)))
        })
        .collect::<Result<Vec<_>>>()?;
    IdealHandle::new(ring, gens)
}
