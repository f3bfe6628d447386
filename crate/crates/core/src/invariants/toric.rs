use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::polyhedron::{monomial_generators, to_point, NewtonPolyhedron};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::poly::{same_ring, Monomial, Ring};

/// Points scanned by the mld search before it gives up on certification.
pub const MLD_SEARCH_CAP: u64 = 20_000_000;
/// Sums kept while forming the Minkowski sum of a formal product.
const MINKOWSKI_CAP: usize = 50_000;

/// A monomial valuation with strictly positive weights, centred at the origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ToricValuation(Vec<u64>);

impl ToricValuation {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return Err(Error::invalid("toric valuation weights must all be at least 1"));
        }
        Ok(ToricValuation(weights))
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    pub fn scaled(&self, k: u64) -> Self {
        ToricValuation(self.0.iter().map(|w| w * k).collect())
    }

    /// `v(x^u) = ⟨v, u⟩`.
    pub fn on_monomial(&self, m: &Monomial) -> u64 {
        self.0.iter().zip(m.exps()).map(|(w, &e)| w * u64::from(e)).sum()
    }

    /// `v(a)`: the minimum over the monomial generators of `a`.
    pub fn on_ideal<F: Field>(&self, a: &IdealHandle<F>) -> Result<u64> {
        if a.nvars() != self.0.len() {
            return Err(Error::ContextMismatch);
        }
        Ok(monomial_generators(a)?.iter().map(|m| self.on_monomial(m)).min().expect("nonempty"))
    }

    /// `Σ v_j`, the log discrepancy of the valuation plus one.
    pub fn log_discrepancy(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// `a_1^{m_1} ⋯ a_k^{m_k}` with monomial ideals and nonnegative rational exponents.
#[derive(Clone, Debug)]
pub struct FormalProduct<F: Field> {
    ring: Arc<Ring<F>>,
    factors: Vec<(IdealHandle<F>, BigRational)>,
}

impl<F: Field> FormalProduct<F> {
    pub fn new(ring: &Arc<Ring<F>>, factors: Vec<(IdealHandle<F>, BigRational)>) -> Result<Self> {
        for (a, m) in &factors {
            if m.is_negative() {
                return Err(Error::invalid("formal product exponents must be nonnegative"));
            }
            if !same_ring(a.ring(), ring) {
                return Err(Error::ContextMismatch);
            }
            monomial_generators(a)?;
        }
        Ok(FormalProduct { ring: ring.clone(), factors })
    }

    pub fn empty(ring: &Arc<Ring<F>>) -> Self {
        FormalProduct { ring: ring.clone(), factors: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn factors(&self) -> &[(IdealHandle<F>, BigRational)] {
        &self.factors
    }

    /// The same product with `a^m` in front.
    pub fn with_factor(&self, a: IdealHandle<F>, m: BigRational) -> Result<Self> {
        let mut factors = vec![(a, m)];
        factors.extend(self.factors.iter().cloned());
        FormalProduct::new(&self.ring, factors)
    }

    fn exponent_data(&self) -> Result<Vec<(Vec<Monomial>, BigRational)>> {
        self.factors
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(a, m)| Ok((monomial_generators(a)?, m.clone())))
            .collect()
    }
}

/// `Σ v_j − Σ m_i v(a_i)`; homogeneous of degree one in `v`.
pub fn mld_objective<F: Field>(p: &FormalProduct<F>, v: &ToricValuation) -> Result<BigRational> {
    let mut g = BigRational::from_integer(v.log_discrepancy().into());
    for (a, m) in p.factors() {
        g -= m * BigRational::from_integer(v.on_ideal(a)?.into());
    }
    Ok(g)
}

/// `(Σ v_j + λ v(a_Z)) / v(a_X)`; invariant under `v ↦ k v`.
pub fn glct_objective<F: Field>(
    a_x: &IdealHandle<F>,
    a_z: &IdealHandle<F>,
    lambda: &BigRational,
    v: &ToricValuation,
) -> Result<BigRational> {
    let num = BigRational::from_integer(v.log_discrepancy().into()) + lambda * BigRational::from_integer(v.on_ideal(a_z)?.into());
    Ok(num / BigRational::from_integer(v.on_ideal(a_x)?.into()))
}

/// A minimal log discrepancy: a rational or `−∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MldValue {
    NegInfinity,
    Finite(BigRational),
}

impl fmt::Display for MldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MldValue::NegInfinity => write!(f, "-inf"),
            MldValue::Finite(q) => write!(f, "{}", crate::field::format_rational(q)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldReport {
    pub value: MldValue,
    /// A valuation attaining the value (absent for `−∞` and the empty search).
    pub minimizer: Option<ToricValuation>,
    /// Side of the search box `[1, B]ⁿ`.
    pub box_bound: u64,
    /// The value is certified to be the global minimum, not just the box minimum.
    pub verified: bool,
}

/// Generating points of `Σ m_i P(a_i)`.
fn minkowski_points(data: &[(Vec<Monomial>, BigRational)], n: usize) -> Result<Vec<Vec<BigRational>>> {
    let mut sums: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]];
    for (gens, m) in data {
        let mut next = Vec::with_capacity(sums.len() * gens.len());
        for s in &sums {
            for g in gens {
                next.push(s.iter().zip(to_point(g)).map(|(a, b)| a + m * b).collect::<Vec<_>>());
            }
        }
        next.sort();
        next.dedup();
        let minimal: Vec<Vec<BigRational>> = next
            .iter()
            .filter(|p| !next.iter().any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b)))
            .cloned()
            .collect();
        if minimal.len() > MINKOWSKI_CAP {
            return Err(Error::BudgetExceeded { budget: MINKOWSKI_CAP as u64 });
        }
        sums = minimal;
    }
    Ok(sums)
}

/// Minimal log discrepancy at the origin over monomial valuations.
///
/// `−∞` is decided exactly: it happens iff `𝟙 ∉ Σ m_i P(a_i)`. Otherwise the
/// objective is scanned over `[1, B]ⁿ` with `B = 4(n + max degree)`. The value is
/// certified when it is zero, or when some convex combination `d` of the vectors
/// `𝟙 − q` is positive, since then `g(v) >= min_j d_j · Σ v_j` bounds the search.
pub fn mld_monomial_origin<F: Field>(p: &FormalProduct<F>) -> Result<MldReport> {
    let n = p.ring().nvars();
    let data = p.exponent_data()?;
    let max_deg = data
        .iter()
        .flat_map(|(g, _)| g.iter().map(Monomial::degree))
        .max()
        .unwrap_or(0);
    let box_bound = 4 * (n as u64 + u64::from(max_deg));
    let ones = vec![BigRational::one(); n];

    let points = minkowski_points(&data, n)?;
    if !data.is_empty() {
        let q = NewtonPolyhedron::from_points(n, points.clone())?;
        if !q.contains(&ones) {
            return Ok(MldReport { value: MldValue::NegInfinity, minimizer: None, box_bound, verified: true });
        }
    }

    // integer form: D·g(v) = D Σv − Σ M_i v(a_i) with M_i = D m_i
    let denom = data.iter().fold(BigInt::one(), |acc, (_, m)| acc.lcm(m.denom()));
    let big = |x: &BigRational| -> Result<i128> {
        (x * BigRational::from_integer(denom.clone()))
            .to_integer()
            .to_i128()
            .ok_or_else(|| Error::invalid("exponent too large"))
    };
    let d = denom.to_i128().ok_or_else(|| Error::invalid("exponent denominators too large"))?;
    let scaled: Vec<(Vec<Vec<i128>>, i128)> = data
        .iter()
        .map(|(gens, m)| {
            let exps = gens.iter().map(|g| g.exps().iter().map(|&e| i128::from(e)).collect()).collect();
            Ok((exps, big(m)?))
        })
        .collect::<Result<_>>()?;
    let eval = |v: &[i128]| -> i128 {
        let mut g = d * v.iter().sum::<i128>();
        for (exps, m) in &scaled {
            let val = exps.iter().map(|u: &Vec<i128>| u.iter().zip(v).map(|(a, b)| a * b).sum::<i128>()).min().unwrap();
            g -= m * val;
        }
        g
    };

    // δ: best positive lower slope among the candidate vectors 𝟙 − q and their average
    let mut candidates: Vec<Vec<BigRational>> = points.iter().map(|q| ones.iter().zip(q).map(|(a, b)| a - b).collect()).collect();
    if candidates.len() > 1 {
        let k = BigRational::from_integer(BigInt::from(candidates.len()));
        let avg = (0..n).map(|j| candidates.iter().map(|c| c[j].clone()).sum::<BigRational>() / &k).collect();
        candidates.push(avg);
    }
    let delta = candidates
        .iter()
        .map(|c| c.iter().min().cloned().unwrap_or_else(BigRational::one))
        .max()
        .unwrap_or_else(BigRational::one);

    // prune Σv·slope.0 > D·g·slope.1, i.e. Σv > g / δ
    let slope = if delta.is_positive() {
        delta.numer().to_i128().zip(delta.denom().to_i128()).and_then(|(a, b)| Some((a.checked_mul(d)?, b)))
    } else {
        None
    };
    let mut best_v: Vec<i128> = vec![1; n];
    let mut best = eval(&best_v);
    let mut visited = 0u64;
    let mut exhausted = true;
    let mut v = vec![1i128; n];
    search(&mut v, 0, n, box_bound as i128, slope, &eval, &mut best, &mut best_v, &mut visited, &mut exhausted);

    let value = BigRational::new(best.into(), denom.clone());
    if value.is_negative() {
        return Ok(MldReport { value: MldValue::NegInfinity, minimizer: None, box_bound, verified: true });
    }
    let verified = value.is_zero()
        || (exhausted && delta.is_positive() && {
            // every v with Σ v <= g_best / δ lies inside the box
            let reach = (&value / &delta).floor().to_integer();
            reach <= BigInt::from(box_bound) + BigInt::from(n as u64 - 1)
        });
    let minimizer = ToricValuation::new(best_v.iter().map(|&x| x as u64).collect())?;
    Ok(MldReport { value: MldValue::Finite(value), minimizer: Some(minimizer), box_bound, verified })
}

/// Depth-first scan of `[1, B]ⁿ`, pruned by `Σ v <= g_best / δ` when `δ > 0`.
#[allow(clippy::too_many_arguments)]
fn search(
    v: &mut Vec<i128>,
    pos: usize,
    n: usize,
    bound: i128,
    slope: Option<(i128, i128)>,
    eval: &impl Fn(&[i128]) -> i128,
    best: &mut i128,
    best_v: &mut Vec<i128>,
    visited: &mut u64,
    exhausted: &mut bool,
) {
    if !*exhausted {
        return;
    }
    if pos == n {
        *visited += 1;
        if *visited > MLD_SEARCH_CAP {
            *exhausted = false;
            return;
        }
        let g = eval(v);
        if g < *best {
            *best = g;
            best_v.clone_from(v);
        }
        return;
    }
    let prefix: i128 = v[..pos].iter().sum();
    let rest = (n - pos - 1) as i128;
    for x in 1..=bound {
        if let Some((num, den)) = slope {
            // g(v) >= δ Σ v, so a larger sum cannot beat the current best
            if (prefix + x + rest) * num > *best * den {
                break;
            }
        }
        v[pos] = x;
        search(v, pos + 1, n, bound, slope, eval, best, best_v, visited, exhausted);
        if !*exhausted {
            break;
        }
    }
    v[pos] = 1;
}

/// `mld_MJ(0; X)` through inversion of adjunction: `mld(0; 𝔸ⁿ, I_X^c · p)` with `c = codim X`.
pub fn mldmj_origin_monomial<F: Field>(i_x: &IdealHandle<F>, p: &FormalProduct<F>) -> Result<MldReport> {
    monomial_generators(i_x)?;
    let c = i_x
        .codimension()?
        .ok_or_else(|| Error::invalid("I_X is the unit ideal"))?;
    let product = p.with_factor(i_x.clone(), BigRational::from_integer(BigInt::from(c)))?;
    mld_monomial_origin(&product)
}
