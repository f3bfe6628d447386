//! General residual intersections and links built from seeded random
//! coefficient matrices, with the subalgebra-dimension emptiness predictor.

use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::groebner::{Dimension, IdealHandle};
use crate::ideal_ops::{colon, implicitize, intersect, jacobian_minors, saturate, saturate_with_first_colon};
use crate::poly::{Polynomial, Ring};

/// Coefficients over the rationals are integers in `[-B, B]`.
pub const DEFAULT_COEFF_BOUND: u64 = 100;
/// Stability trials run on top of the primary seed when the caller has no preference.
pub const DEFAULT_TRIALS: usize = 3;

/// An ordered generating set `f_1, …, f_r` of `I_X` together with `codim X`.
#[derive(Clone, Debug)]
pub struct GeneratorSystem<F: Field> {
    gens: Vec<Polynomial<F>>,
    ideal: IdealHandle<F>,
    codim: usize,
}

impl<F: Field> GeneratorSystem<F> {
    pub fn new(ring: &Arc<Ring<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let ideal = IdealHandle::new(ring, gens.clone())?;
        if ideal.is_zero() {
            return Err(Error::invalid("the generator system spans the zero ideal"));
        }
        let codim = ideal
            .codimension()?
            .ok_or_else(|| Error::invalid("the generator system spans the unit ideal (X is empty)"))?;
        Ok(GeneratorSystem { gens, ideal, codim })
    }

    pub fn parse(ring: &Arc<Ring<F>>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.ideal.ring()
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `I_X`.
    pub fn ideal(&self) -> &IdealHandle<F> {
        &self.ideal
    }

    /// `codim X` in the ambient affine space.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }
}

/// A `t × r` coefficient matrix, either sampled from a seed or given explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientMatrix<F: Field> {
    rows: Vec<Vec<F::Elem>>,
    seed: Option<u64>,
    bound: u64,
}

impl<F: Field> CoefficientMatrix<F> {
    /// Entries drawn row by row from SplitMix64 seeded with `seed`.
    pub fn sample(field: &F, t: usize, r: usize, seed: u64, bound: u64) -> Self {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let rows = (0..t).map(|_| (0..r).map(|_| field.sample(&mut rng, bound)).collect()).collect();
        CoefficientMatrix { rows, seed: Some(seed), bound }
    }

    /// A fixed matrix, bypassing sampling (for deliberate degenerate choices).
    pub fn explicit(rows: Vec<Vec<F::Elem>>) -> Self {
        CoefficientMatrix { rows, seed: None, bound: 0 }
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }
}

/// The sections `a_i = Σ_j c_ij f_j`, `I_M = <a_1, …, a_t>` and `I_H = <a_1 ⋯ a_t>`.
#[derive(Clone, Debug)]
pub struct GeneralSections<F: Field> {
    pub matrix: CoefficientMatrix<F>,
    pub sections: Vec<Polynomial<F>>,
    pub i_m: IdealHandle<F>,
    pub i_h: IdealHandle<F>,
}

fn check_t<F: Field>(fs: &GeneratorSystem<F>, t: usize) -> Result<()> {
    if t < fs.codim() {
        return Err(Error::invalid(format!(
            "t = {t} is below codim X = {}; residual intersections need t >= codim X",
            fs.codim()
        )));
    }
    if t > fs.nvars() {
        return Err(Error::invalid(format!(
            "t = {t} exceeds the ambient dimension {}",
            fs.nvars()
        )));
    }
    Ok(())
}

pub fn build_general_sections<F: Field>(fs: &GeneratorSystem<F>, t: usize, seed: u64) -> Result<GeneralSections<F>> {
    check_t(fs, t)?;
    let m = CoefficientMatrix::sample(fs.ring().field(), t, fs.len(), seed, DEFAULT_COEFF_BOUND);
    sections_from_matrix(fs, m)
}

pub fn sections_from_matrix<F: Field>(fs: &GeneratorSystem<F>, matrix: CoefficientMatrix<F>) -> Result<GeneralSections<F>> {
    let t = matrix.nrows();
    check_t(fs, t)?;
    if matrix.rows().iter().any(|row| row.len() != fs.len()) {
        return Err(Error::invalid(format!("coefficient matrix must be {t} x {}", fs.len())));
    }
    let ring = fs.ring();
    let sections: Vec<Polynomial<F>> = matrix
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(fs.generators())
                .fold(Polynomial::zero(ring), |acc, (c, f)| &acc + &f.scale(c))
        })
        .collect();
    let product = sections.iter().fold(Polynomial::one(ring), |acc, a| &acc * a);
    let i_m = IdealHandle::new(ring, sections.clone())?;
    let i_h = IdealHandle::new(ring, [product])?;
    Ok(GeneralSections { matrix, sections, i_m, i_h })
}

/// `I_Y = (I_M : I_X^∞)`, the ideal of the closure of `M ∖ X`.
pub fn residual_closure<F: Field>(i_m: &IdealHandle<F>, i_x: &IdealHandle<F>) -> Result<IdealHandle<F>> {
    Ok(residual_closure_with_exponent(i_m, i_x)?.0)
}

fn residual_closure_with_exponent<F: Field>(
    i_m: &IdealHandle<F>,
    i_x: &IdealHandle<F>,
) -> Result<(IdealHandle<F>, usize, IdealHandle<F>)> {
    if !i_x.contains_ideal(i_m)? {
        return Err(Error::invalid("I_M is not contained in I_X"));
    }
    saturate_with_first_colon(i_m, i_x)
}

/// Outcome of one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub seed: u64,
    pub empty: bool,
    pub dim_y: Dimension,
    pub codim_y: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub trials: Vec<TrialOutcome>,
    /// Every trial agrees with the primary seed on emptiness, dimension and codimension.
    pub stable: bool,
}

/// The colon-ideal residual `J = (I_M : I_X)` compared with the saturation.
#[derive(Clone, Debug)]
pub struct HuComparison<F: Field> {
    pub j: IdealHandle<F>,
    pub codim_j: Option<usize>,
    /// `codim J >= t >= codim I_X`; an empty `V(J)` counts as infinite codimension.
    pub ht_ok: bool,
    /// `√J = √I_Y`.
    pub agrees_with_saturation: bool,
}

#[derive(Clone, Debug)]
pub struct ResidualRun<F: Field> {
    pub system: GeneratorSystem<F>,
    pub t: usize,
    pub sections: GeneralSections<F>,
    pub i_y: IdealHandle<F>,
    pub saturation_exponent: usize,
    pub dim_y: Dimension,
    pub codim_y: Option<usize>,
    pub empty: bool,
    /// Empty, or nonempty with `codim Y = t`.
    pub valid: bool,
    pub stability: StabilityReport,
    pub hu: HuComparison<F>,
}

impl<F: Field> ResidualRun<F> {
    pub fn i_m(&self) -> &IdealHandle<F> {
        &self.sections.i_m
    }

    pub fn i_h(&self) -> &IdealHandle<F> {
        &self.sections.i_h
    }

    pub fn seed(&self) -> Option<u64> {
        self.sections.matrix.seed()
    }
}

/// `trials` distinct seeds derived from `seed` with SplitMix64, none equal to `seed`.
pub fn derived_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = SplitMix64::seed_from_u64(seed ^ 0x7269_7472_6961_6c73);
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let s = rng.next_u64();
        if s != seed && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn outcome<F: Field>(seed: u64, i_y: &IdealHandle<F>) -> Result<TrialOutcome> {
    let dim_y = i_y.dimension()?;
    Ok(TrialOutcome { seed, empty: dim_y.is_empty(), dim_y, codim_y: dim_y.codim(i_y.nvars()) })
}

fn trial<F: Field>(fs: &GeneratorSystem<F>, t: usize, seed: u64) -> Result<TrialOutcome> {
    let s = build_general_sections(fs, t, seed)?;
    let (i_y, _, _) = residual_closure_with_exponent(&s.i_m, fs.ideal())?;
    outcome(seed, &i_y)
}

/// Builds the residual for `seed` and re-derives emptiness and dimensions for
/// `trials` further seeds.
pub fn general_residual<F: Field>(fs: &GeneratorSystem<F>, t: usize, seed: u64, trials: usize) -> Result<ResidualRun<F>> {
    if trials == 0 {
        return Err(Error::invalid("at least one stability trial is required"));
    }
    let sections = build_general_sections(fs, t, seed)?;
    run_with_sections(fs, sections, derived_seeds(seed, trials))
}

/// Residual for explicitly chosen sections; `trial_seeds` drive the stability check.
pub fn run_with_sections<F: Field>(
    fs: &GeneratorSystem<F>,
    sections: GeneralSections<F>,
    trial_seeds: Vec<u64>,
) -> Result<ResidualRun<F>> {
    let t = sections.sections.len();
    check_t(fs, t)?;
    let primary = || -> Result<_> {
        let (i_y, exponent, j) = residual_closure_with_exponent(&sections.i_m, fs.ideal())?;
        let hu = compare_with_colon(j, &i_y, t, fs.codim())?;
        Ok((i_y, exponent, hu))
    };
    let trials = || -> Result<Vec<TrialOutcome>> { trial_seeds.par_iter().map(|&s| trial(fs, t, s)).collect() };
    let (main, others) = rayon::join(primary, trials);
    let (i_y, saturation_exponent, hu) = main?;
    let others = others?;

    let base = outcome(sections.matrix.seed().unwrap_or(0), &i_y)?;
    let stable = others
        .iter()
        .all(|o| o.empty == base.empty && o.dim_y == base.dim_y && o.codim_y == base.codim_y);
    let valid = base.empty || base.codim_y == Some(t);
    Ok(ResidualRun {
        system: fs.clone(),
        t,
        sections,
        i_y,
        saturation_exponent,
        dim_y: base.dim_y,
        codim_y: base.codim_y,
        empty: base.empty,
        valid,
        stability: StabilityReport { trials: others, stable },
        hu,
    })
}

fn compare_with_colon<F: Field>(j: IdealHandle<F>, i_y: &IdealHandle<F>, t: usize, codim_x: usize) -> Result<HuComparison<F>> {
    let codim_j = j.codimension()?;
    let ht_ok = codim_j.is_none_or(|c| c >= t) && t >= codim_x;
    let agrees = match (j.is_unit()?, i_y.is_unit()?) {
        (true, true) => true,
        (false, false) => j.same_radical(i_y)?,
        _ => false,
    };
    Ok(HuComparison { j, codim_j, ht_ok, agrees_with_saturation: agrees })
}

/// `J = (I_M : I_X)` with the height condition for `t` and set-theoretic
/// agreement with `(I_M : I_X^∞)`.
pub fn hu_colon_residual<F: Field>(i_m: &IdealHandle<F>, i_x: &IdealHandle<F>, t: usize) -> Result<HuComparison<F>> {
    if !i_x.contains_ideal(i_m)? {
        return Err(Error::invalid("I_M is not contained in I_X"));
    }
    let j = colon(i_m, i_x)?;
    let (i_y, _) = saturate(i_m, i_x)?;
    let codim_x = i_x
        .codimension()?
        .ok_or_else(|| Error::invalid("I_X is the unit ideal"))?;
    compare_with_colon(j, &i_y, t, codim_x)
}

/// Emptiness prediction from the dimension of `k[f_1, …, f_r]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub nonempty: bool,
    pub dim_v: usize,
    pub cone: bool,
}

/// A general `t`-residual is nonempty iff `dim V >= t` (`> t` when `V` is a cone),
/// where `V` is the closure of the image of `(f_1, …, f_r)`.
pub fn predict_nonempty<F: Field>(fs: &GeneratorSystem<F>, t: usize) -> Result<Prediction> {
    if t == 0 {
        return Err(Error::invalid("t must be positive"));
    }
    let image = implicitize(fs.generators())?;
    let dim_v = image
        .dimension
        .value()
        .expect("the image closure of a polynomial map is nonempty");
    let nonempty = if image.cone { dim_v > t } else { dim_v >= t };
    Ok(Prediction { nonempty, dim_v, cone: image.cone })
}

/// Appends `x_i · f_1` for every variable `x_i`; the ideal is unchanged.
pub fn augment_generators<F: Field>(fs: &GeneratorSystem<F>) -> Result<GeneratorSystem<F>> {
    let ring = fs.ring();
    let f1 = &fs.generators()[0];
    let mut gens = fs.generators().to_vec();
    for v in 0..ring.nvars() {
        gens.push(&Polynomial::var(ring, v)? * f1);
    }
    let out = GeneratorSystem::new(ring, gens)?;
    debug_assert!(out.ideal().equals(fs.ideal()).unwrap_or(false));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocusReport {
    /// Dimension of `V(I_Y + minors)`.
    pub dim_sing: Dimension,
    /// Codimension of the singular locus inside `Y`; `None` when it is empty.
    pub codim_in_y: Option<usize>,
    /// `t - c + 4`.
    pub bound: usize,
    pub bound_ok: bool,
    /// The singular locus meets `Y ∖ X` nowhere.
    pub empty_off_x: bool,
    /// Prime the locus was computed modulo when the coefficient field is ℚ.
    pub modulus: Option<u64>,
    /// Equidimensionality of `Y` is assumed by the Jacobian criterion, not checked.
    pub equidimensional_assumed: bool,
}

/// Large primes used to compute the singular locus of a residual over ℚ,
/// where the minors' Gröbner bases suffer from coefficient growth.
pub const SING_CHECK_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Jacobian-criterion singular locus of `Y` and the bound `codim_Y Sing(Y) >= t - c + 4`.
///
/// Over ℚ the locus is computed after reducing `I_Y` and `I_X` modulo the
/// primes in [`SING_CHECK_PRIMES`]; two primes must agree.
pub fn singular_locus_check<F: Field>(run: &ResidualRun<F>) -> Result<SingularLocusReport> {
    if run.empty {
        return Err(Error::invalid("singular locus check needs a nonempty residual"));
    }
    if !run.valid {
        return Err(Error::invalid("singular locus check needs a valid residual (codim Y = t)"));
    }
    let codim_y = run.codim_y.expect("nonempty");
    let dim_y = run.dim_y.value().expect("nonempty");
    let y_gens = run.i_y.reduced_generators()?;
    let x_gens = run.system.ideal().reduced_generators()?;
    let (dim_sing, empty_off_x, modulus) = if run.i_y.ring().field().characteristic() != 0 {
        let (d, off) = sing_locus(run.i_y.ring(), &y_gens, &x_gens, codim_y)?;
        (d, off, None)
    } else {
        let mut seen: Vec<(u64, Dimension, bool)> = Vec::new();
        let mut agreed = None;
        for &p in &SING_CHECK_PRIMES {
            let Some((d, off)) = sing_locus_mod(run.i_y.ring(), &y_gens, &x_gens, codim_y, p)? else {
                continue;
            };
            if let Some(&(q, ..)) = seen.iter().find(|(_, d2, off2)| *d2 == d && *off2 == off) {
                agreed = Some((d, off, Some(q)));
                break;
            }
            seen.push((p, d, off));
        }
        agreed.ok_or_else(|| Error::Unrepresentable("singular locus differs between reduction primes".into()))?
    };
    let codim_in_y = dim_sing.value().map(|d| dim_y - d);
    let bound = run.t + 4 - run.system.codim();
    let bound_ok = codim_in_y.is_none_or(|c| c >= bound);
    Ok(SingularLocusReport { dim_sing, codim_in_y, bound, bound_ok, empty_off_x, modulus, equidimensional_assumed: true })
}

fn sing_locus<F: Field>(
    ring: &Arc<Ring<F>>,
    y_gens: &[Polynomial<F>],
    x_gens: &[Polynomial<F>],
    codim_y: usize,
) -> Result<(Dimension, bool)> {
    let y = IdealHandle::new(ring, y_gens.to_vec())?;
    let minors = jacobian_minors(&y, codim_y)?;
    let mut all = y_gens.to_vec();
    all.extend(minors.generators().iter().cloned());
    let sing = IdealHandle::new(ring, all)?;
    let dim_sing = sing.dimension()?;
    let empty_off_x = if dim_sing.is_empty() {
        true
    } else {
        saturate(&sing, &IdealHandle::new(ring, x_gens.to_vec())?)?.0.is_unit()?
    };
    Ok((dim_sing, empty_off_x))
}

/// [`sing_locus`] after reduction modulo `p`; `None` when a denominator vanishes mod `p`.
fn sing_locus_mod<F: Field>(
    ring: &Arc<Ring<F>>,
    y_gens: &[Polynomial<F>],
    x_gens: &[Polynomial<F>],
    codim_y: usize,
    p: u64,
) -> Result<Option<(Dimension, bool)>> {
    let field = PrimeField::new(p)?;
    let target = ring.with_field(field);
    let ids: Vec<usize> = (0..ring.nvars()).collect();
    let reduce = |gens: &[Polynomial<F>]| -> Result<Option<Vec<Polynomial<PrimeField>>>> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            // a leading coefficient that vanishes mod p breaks the basis property
            match g.map_into(&target, &ids, |c| field.from_rational(&ring.field().to_rational(c))) {
                Ok(h) if h.num_terms() == g.num_terms() => out.push(h),
                Ok(_) => return Ok(None),
                Err(Error::Unrepresentable(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Ok(Some(out))
    };
    let (Some(y), Some(x)) = (reduce(y_gens)?, reduce(x_gens)?) else {
        return Ok(None);
    };
    sing_locus(&target, &y, &x, codim_y).map(Some)
}

/// `√I_M = √(I_X ∩ I_Y)`.
pub fn check_decomposition<F: Field>(run: &ResidualRun<F>) -> Result<bool> {
    let union = intersect(run.system.ideal(), &run.i_y)?;
    run.i_m().same_radical(&union)
}
