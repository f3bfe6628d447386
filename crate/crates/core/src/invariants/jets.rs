use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::IdealHandle;
use crate::poly::{Polynomial, Ring};

/// Largest jet ring built by [`jet_ideal`].
pub const JET_VARIABLE_CAP: usize = 40;

/// Jet ring of level `m`: variables `x_j` for each ring variable `x` and
/// `0 <= j <= m`, ordered level by level.
pub fn jet_ring<F: Field>(ring: &Arc<Ring<F>>, m: usize) -> Result<Arc<Ring<F>>> {
    let n = ring.nvars();
    let needed = n * (m + 1);
    if needed > JET_VARIABLE_CAP {
        return Err(Error::TooManyVariables { needed, cap: JET_VARIABLE_CAP });
    }
    let mut sep = String::from("_");
    loop {
        let names: Vec<String> = (0..=m)
            .flat_map(|j| ring.vars().iter().map(move |v| (v.clone(), j)))
            .map(|(v, j)| format!("{v}{sep}{j}"))
            .collect();
        // jet names must not repeat a base variable name either
        if !names.iter().any(|n| ring.vars().contains(n)) {
            if let Ok(r) = Ring::new(names.iter().map(String::as_str), ring.field().clone()) {
                return Ok(r);
            }
        }
        sep.push('_');
    }
}

type Series<F> = Vec<Polynomial<F>>;

fn series_mul<F: Field>(a: &Series<F>, b: &Series<F>) -> Series<F> {
    let m = a.len();
    (0..m)
        .map(|k| {
            (0..=k).fold(Polynomial::zero(a[0].ring()), |acc, i| &acc + &(&a[i] * &b[k - i]))
        })
        .collect()
}

/// Equations of the level-`m` jet scheme: substitute `x(ε) = Σ_j x_j ε^j` into
/// every generator and keep the coefficients of `ε^0, …, ε^m`.
pub fn jet_ideal<F: Field>(ideal: &IdealHandle<F>, m: usize) -> Result<IdealHandle<F>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let target = jet_ring(ring, m)?;
    let var_series: Vec<Series<F>> = (0..n)
        .map(|i| (0..=m).map(|j| Polynomial::var(&target, j * n + i)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut powers: HashMap<(usize, u32), Series<F>> = HashMap::new();
    let mut one: Series<F> = vec![Polynomial::zero(&target); m + 1];
    one[0] = Polynomial::one(&target);

    let mut eqs = Vec::new();
    for g in ideal.generators() {
        let mut acc: Series<F> = vec![Polynomial::zero(&target); m + 1];
        for (mono, c) in g.terms() {
            let mut term = one.clone();
            for (i, &e) in mono.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = power(&mut powers, &var_series, &one, i, e);
                term = series_mul(&term, &p);
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a = &*a + &t.scale(c);
            }
        }
        eqs.extend(acc.into_iter().filter(|p| !p.is_zero()));
    }
    IdealHandle::new(&target, eqs)
}

fn power<F: Field>(
    cache: &mut HashMap<(usize, u32), Series<F>>,
    vars: &[Series<F>],
    one: &Series<F>,
    i: usize,
    e: u32,
) -> Series<F> {
    if let Some(s) = cache.get(&(i, e)) {
        return s.clone();
    }
    let s = if e == 0 {
        one.clone()
    } else {
        let prev = power(cache, vars, one, i, e - 1);
        series_mul(&prev, &vars[i])
    };
    cache.insert((i, e), s.clone());
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetLevelReport {
    pub level: usize,
    /// `n (m + 1)`.
    pub nvars: usize,
    /// Dimension of the level-`m` jet scheme.
    pub dim: usize,
    /// `codim / (m + 1)`.
    pub normalized_codim: BigRational,
}

/// A level that could not be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedLevel {
    pub level: usize,
    pub error: Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetEstimate {
    /// `min_m codim(J_m) / (m + 1)` over the completed levels; an upper bound on lct.
    pub estimate: Option<BigRational>,
    /// First level attaining the estimate.
    pub minimizing_level: Option<usize>,
    pub levels: Vec<JetLevelReport>,
    pub failed: Vec<FailedLevel>,
}

impl JetEstimate {
    pub fn is_complete(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn at_level(&self, m: usize) -> Option<&JetLevelReport> {
        self.levels.iter().find(|l| l.level == m)
    }
}

/// One level of [`lct_jet_estimate`].
pub fn jet_level<F: Field>(ideal: &IdealHandle<F>, m: usize) -> Result<JetLevelReport> {
    let jets = jet_ideal(ideal, m)?;
    let nvars = ideal.nvars() * (m + 1);
    let dim = jets
        .dimension()?
        .value()
        .ok_or_else(|| Error::invalid("the jet scheme of a proper ideal cannot be empty"))?;
    let codim = BigInt::from(nvars - dim);
    Ok(JetLevelReport {
        level: m,
        nvars,
        dim,
        normalized_codim: BigRational::new(codim, BigInt::from(m + 1)),
    })
}

/// Jet-scheme upper bound on the log canonical threshold over levels `0..=m_max`.
/// Levels run concurrently; a level that exceeds a budget is reported in `failed`
/// and the estimate covers the remaining levels.
pub fn lct_jet_estimate<F: Field>(ideal: &IdealHandle<F>, m_max: usize) -> Result<JetEstimate> {
    if ideal.is_zero() {
        return Err(Error::invalid("the zero ideal has no log canonical threshold"));
    }
    if ideal.is_unit()? {
        return Err(Error::invalid("the unit ideal has no log canonical threshold"));
    }
    let results: Vec<(usize, Result<JetLevelReport>)> =
        (0..=m_max).into_par_iter().map(|m| (m, jet_level(ideal, m))).collect();
    let mut levels = Vec::new();
    let mut failed = Vec::new();
    for (m, r) in results {
        match r {
            Ok(l) => levels.push(l),
            Err(e) if e.is_budget() => failed.push(FailedLevel { level: m, error: e }),
            Err(e) => return Err(e),
        }
    }
    let best = levels.iter().min_by(|a, b| a.normalized_codim.cmp(&b.normalized_codim).then(a.level.cmp(&b.level)));
    Ok(JetEstimate {
        estimate: best.map(|l| l.normalized_codim.clone()),
        minimizing_level: best.map(|l| l.level),
        levels,
        failed,
    })
}
