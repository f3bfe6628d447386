use std::fs;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::Signed;
use resint::field::{Field, DEFAULT_PRIME};
use resint::groebner::{default_budget, set_default_budget};
use resint::ideal_ops::{colon, eliminate, implicitize, saturate};
use resint::invariants::{
    glct_monomial, jet_level, lct_jet_estimate, lct_monomial, mld_monomial_origin, mldmj_origin_monomial,
    multiplier_ideal_monomial, newton_polyhedron, FormalProduct, MldReport, MldValue,
};
use resint::residual::{
    augment_generators, build_general_sections, check_decomposition, general_residual, hu_colon_residual, predict_nonempty,
    singular_locus_check, ResidualRun, DEFAULT_TRIALS,
};
use resint::{GeneratorSystem, IdealHandle, MonomialOrder};
use serde_json::{json, Value};
use thiserror::Error;

use crate::args::{Command, ProblemArgs};
use crate::report::{self, dimension, ratio, sorted_generators, Report};
use crate::source::{parse_source, with_field, Kind, Named, Problem, ProblemSource, SourceError};

/// Seed used when neither the command line nor the file gives one.
pub const DEFAULT_SEED: u64 = 42;
/// Highest jet level for `lct-jets` without `--level`.
pub const DEFAULT_JET_LEVEL: usize = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("corpus mismatch: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Mismatch(_) => "mismatch",
            CliError::Input(_) => "input",
            CliError::Budget(_) => "budget",
        }
    }
}

impl From<resint::Error> for CliError {
    fn from(e: resint::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<SourceError> for CliError {
    fn from(e: SourceError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run_file(cmd: &Command, args: &ProblemArgs) -> Result<Report> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| input(format!("cannot read {}: {e}", args.input.display())))?;
    run_text(cmd, args, &text)
}

pub fn run_text(cmd: &Command, args: &ProblemArgs, text: &str) -> Result<Report> {
    let start = Instant::now();
    let source = parse_source(text)?;
    let seed = uses_seed(cmd).then(|| args.seed.or(source.seed).unwrap_or(DEFAULT_SEED));
    let previous = default_budget();
    if let Some(b) = args.budget {
        set_default_budget(b);
    }
    let outputs = with_field(&source, |p| execute(cmd, args, &p, seed), |p| execute(cmd, args, &p, seed));
    set_default_budget(previous);
    let outputs = outputs??;
    Ok(Report {
        command: cmd.name().to_string(),
        inputs_digest: report::digest(text, cmd.name(), &args.canonical()),
        seed,
        outputs,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn uses_seed(cmd: &Command) -> bool {
    matches!(cmd, Command::Residual(_) | Command::Link(_) | Command::HuCompare(_) | Command::SingCheck(_))
}

fn pick<'a>(src: &'a ProblemSource, name: Option<&str>, prefer: Kind, flag: &str) -> Result<&'a Named> {
    if let Some(n) = name {
        return src.get(n).ok_or_else(|| input(format!("unknown name `{n}`")));
    }
    let preferred: Vec<&Named> = src.of_kind(prefer).collect();
    let pool = if preferred.is_empty() { src.items.iter().collect() } else { preferred };
    match pool.as_slice() {
        [one] => Ok(one),
        [] => Err(input("the file defines no ideal or system")),
        _ => Err(input(format!("several candidates; choose one with --{flag}"))),
    }
}

fn required<'a>(src: &'a ProblemSource, name: Option<&str>, flag: &str) -> Result<&'a Named> {
    let n = name.ok_or_else(|| input(format!("missing --{flag}")))?;
    src.get(n).ok_or_else(|| input(format!("unknown name `{n}`")))
}

fn rational(text: Option<&str>, flag: &str) -> Result<Option<BigRational>> {
    let Some(s) = text else { return Ok(None) };
    let q: BigRational = s
        .trim()
        .parse()
        .map_err(|_| input(format!("--{flag}: `{s}` is not a rational number")))?;
    if q.is_negative() {
        return Err(input(format!("--{flag} must be nonnegative")));
    }
    Ok(Some(q))
}

fn main_ideal<F: Field>(p: &Problem<F>, args: &ProblemArgs) -> Result<IdealHandle<F>> {
    Ok(p.ideal(pick(&p.source, args.ideal.as_deref(), Kind::Ideal, "ideal")?)?)
}

fn second_ideal<F: Field>(p: &Problem<F>, args: &ProblemArgs) -> Result<IdealHandle<F>> {
    Ok(p.ideal(required(&p.source, args.by.as_deref(), "by")?)?)
}

fn system<F: Field>(p: &Problem<F>, args: &ProblemArgs) -> Result<GeneratorSystem<F>> {
    let fs = p.system(pick(&p.source, args.system.as_deref(), Kind::System, "system")?)?;
    Ok(if args.augment { augment_generators(&fs)? } else { fs })
}

fn need_t(args: &ProblemArgs) -> Result<usize> {
    args.t.ok_or_else(|| input("missing --t"))
}

fn execute<F: Field>(cmd: &Command, args: &ProblemArgs, p: &Problem<F>, seed: Option<u64>) -> Result<Value> {
    let seed = seed.unwrap_or(DEFAULT_SEED);
    let trials = args.trials.unwrap_or(DEFAULT_TRIALS);
    Ok(match cmd {
        Command::Gb(_) => {
            let i = main_ideal(p, args)?;
            let order = match args.order.as_deref().unwrap_or("grevlex") {
                "grevlex" => MonomialOrder::GrevLex,
                "lex" => MonomialOrder::Lex,
                other => return Err(input(format!("unknown order `{other}`; use grevlex or lex"))),
            };
            let gb = i.groebner_basis(order)?;
            json!({
                "order": args.order.as_deref().unwrap_or("grevlex"),
                "basis": sorted_generators(gb.generators()),
                "empty": gb.is_unit(),
            })
        }
        Command::Dim(_) => {
            let i = main_ideal(p, args)?;
            let d = i.dimension()?;
            json!({
                "nvars": i.nvars(),
                "dim": dimension(d),
                "codim": d.codim(i.nvars()),
                "empty": d.is_empty(),
            })
        }
        Command::Colon(_) => {
            let j = colon(&main_ideal(p, args)?, &second_ideal(p, args)?)?;
            json!({ "ideal": report::ideal(&j)? })
        }
        Command::Saturate(_) => {
            let (s, steps) = saturate(&main_ideal(p, args)?, &second_ideal(p, args)?)?;
            json!({ "ideal": report::ideal(&s)?, "steps": steps })
        }
        Command::Eliminate(_) => {
            let i = main_ideal(p, args)?;
            let keep_names: Vec<&str> = args
                .keep
                .as_deref()
                .ok_or_else(|| input("missing --keep"))?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let keep = keep_names
                .iter()
                .map(|n| p.ring.var_index(n).ok_or_else(|| input(format!("unknown variable `{n}` in --keep"))))
                .collect::<Result<Vec<_>>>()?;
            let e = eliminate(&i, &keep)?;
            json!({ "keep": keep_names, "ideal": report::ideal(&e)? })
        }
        Command::Implicitize(_) => {
            let fs = system(p, args)?;
            let r = implicitize(fs.generators())?;
            json!({
                "image_vars": r.image_ring.vars(),
                "ideal": report::ideal(&r.ideal)?,
                "dimV": dimension(r.dimension),
                "cone": r.cone,
            })
        }
        Command::Residual(_) => {
            let fs = system(p, args)?;
            residual_json(&general_residual(&fs, need_t(args)?, seed, trials)?)?
        }
        Command::Link(_) => {
            let fs = system(p, args)?;
            let t = fs.codim();
            residual_json(&general_residual(&fs, t, seed, trials)?)?
        }
        Command::Predict(_) => {
            let fs = system(p, args)?;
            let t = need_t(args)?;
            let pr = predict_nonempty(&fs, t)?;
            json!({ "t": t, "nonempty": pr.nonempty, "dimV": pr.dim_v, "cone": pr.cone })
        }
        Command::Augment(_) => {
            let fs = system(p, args)?;
            let aug = augment_generators(&fs)?;
            let gens: Vec<String> = aug.generators().iter().map(|g| g.to_text()).collect();
            json!({ "count": gens.len(), "generators": gens })
        }
        Command::HuCompare(_) => {
            let fs = system(p, args)?;
            let t = args.t.unwrap_or(fs.codim());
            let s = build_general_sections(&fs, t, seed)?;
            let hu = hu_colon_residual(&s.i_m, fs.ideal(), t)?;
            json!({
                "t": t,
                "ht_ok": hu.ht_ok,
                "agrees": hu.agrees_with_saturation,
                "codimJ": hu.codim_j,
                "J": report::ideal(&hu.j)?,
            })
        }
        Command::SingCheck(_) => {
            let fs = system(p, args)?;
            let t = need_t(args)?;
            let run = general_residual(&fs, t, seed, trials)?;
            let s = singular_locus_check(&run)?;
            json!({
                "t": t,
                "dimY": dimension(run.dim_y),
                "dimSing": dimension(s.dim_sing),
                "sing_empty": s.dim_sing.is_empty(),
                "codim_in_Y": s.codim_in_y,
                "bound": s.bound,
                "bound_ok": s.bound_ok,
                "empty_off_X": s.empty_off_x,
                "modulus": s.modulus,
                "equidimensional_assumed": s.equidimensional_assumed,
            })
        }
        Command::LctMonomial(_) => {
            let a = main_ideal(p, args)?;
            let poly = newton_polyhedron(&a)?;
            let facets: Vec<Vec<String>> = poly.facets().iter().map(|w| w.iter().map(ratio).collect()).collect();
            json!({ "lct": ratio(&lct_monomial(&a)?), "facets": facets })
        }
        Command::GlctMonomial(_) => {
            let lambda = rational(args.lambda.as_deref(), "lambda")?.ok_or_else(|| input("missing --lambda"))?;
            let g = glct_monomial(&main_ideal(p, args)?, &second_ideal(p, args)?, &lambda)?;
            json!({ "lambda": ratio(&lambda), "glct": ratio(&g) })
        }
        Command::MldMonomial(_) => mld_json(&mld(p, args)?),
        Command::MultIdeal(_) => {
            let c = rational(args.exponent.as_deref(), "exponent")?.ok_or_else(|| input("missing --exponent"))?;
            let j = multiplier_ideal_monomial(&main_ideal(p, args)?, &c)?;
            json!({ "c": ratio(&c), "ideal": report::ideal(&j)? })
        }
        Command::Jets(_) | Command::LctJets(_) => {
            let i = main_ideal(p, args)?;
            if p.ring.field().characteristic() == 0 && !args.exact {
                jets_json(cmd, args, &i.to_prime_field(DEFAULT_PRIME)?)?
            } else {
                jets_json(cmd, args, &i)?
            }
        }
        Command::Corpus(_) => return Err(input("corpus is not a problem command")),
    })
}

fn residual_json<F: Field>(run: &ResidualRun<F>) -> Result<Value> {
    let field = run.i_y.ring().field();
    let matrix: Vec<Vec<String>> = run
        .sections
        .matrix
        .rows()
        .iter()
        .map(|row| row.iter().map(|c| ratio(&field.to_rational(c))).collect())
        .collect();
    let trials: Vec<Value> = run
        .stability
        .trials
        .iter()
        .map(|o| json!({ "seed": o.seed, "empty": o.empty, "dimY": dimension(o.dim_y), "codimY": o.codim_y }))
        .collect();
    Ok(json!({
        "t": run.t,
        "codimX": run.system.codim(),
        "empty": run.empty,
        "valid": run.valid,
        "stable": run.stability.stable,
        "dimY": dimension(run.dim_y),
        "codimY": run.codim_y,
        "saturation_steps": run.saturation_exponent,
        "decomposition": check_decomposition(run)?,
        "matrix": matrix,
        "I_M": sorted_generators(&run.sections.sections),
        "I_Y": report::ideal(&run.i_y)?,
        "trials": trials,
        "hu": {
            "ht_ok": run.hu.ht_ok,
            "agrees": run.hu.agrees_with_saturation,
            "codimJ": run.hu.codim_j,
        },
    }))
}

fn factor<F: Field>(p: &Problem<F>, text: &str) -> Result<(IdealHandle<F>, BigRational)> {
    let (name, exp) = match text.rsplit_once('^') {
        Some((n, e)) => (n.trim(), rational(Some(e), "factor")?.expect("present")),
        None => (text.trim(), BigRational::from_integer(1.into())),
    };
    let named = p.source.get(name).ok_or_else(|| input(format!("unknown name `{name}` in --factor")))?;
    Ok((p.ideal(named)?, exp))
}

fn mld<F: Field>(p: &Problem<F>, args: &ProblemArgs) -> Result<MldReport> {
    let mut factors = args.factor.iter().map(|f| factor(p, f)).collect::<Result<Vec<_>>>()?;
    if args.mj {
        let product = FormalProduct::new(&p.ring, factors)?;
        return Ok(mldmj_origin_monomial(&main_ideal(p, args)?, &product)?);
    }
    if factors.is_empty() {
        let c = rational(args.exponent.as_deref(), "exponent")?.unwrap_or_else(|| BigRational::from_integer(1.into()));
        factors.push((main_ideal(p, args)?, c));
    }
    Ok(mld_monomial_origin(&FormalProduct::new(&p.ring, factors)?)?)
}

fn mld_json(r: &MldReport) -> Value {
    let value = match &r.value {
        MldValue::NegInfinity => "-inf".to_string(),
        MldValue::Finite(q) => ratio(q),
    };
    json!({
        "mld": value,
        "minimizer": r.minimizer.as_ref().map(|v| v.weights().to_vec()),
        "box_bound": r.box_bound,
        "verified": r.verified,
    })
}

fn jets_json<F: Field>(cmd: &Command, args: &ProblemArgs, i: &IdealHandle<F>) -> Result<Value> {
    let field = i.ring().field().name();
    if let Command::Jets(_) = cmd {
        let m = args.level.ok_or_else(|| input("missing --level"))?;
        let l = jet_level(i, m)?;
        return Ok(json!({
            "field": field,
            "level": l.level,
            "nvars": l.nvars,
            "dim": l.dim,
            "codim": l.nvars - l.dim,
            "normalized_codim": ratio(&l.normalized_codim),
        }));
    }
    let est = lct_jet_estimate(i, args.level.unwrap_or(DEFAULT_JET_LEVEL))?;
    let levels: Vec<Value> = est
        .levels
        .iter()
        .map(|l| json!({ "level": l.level, "nvars": l.nvars, "dim": l.dim, "normalized_codim": ratio(&l.normalized_codim) }))
        .collect();
    let failed: Vec<Value> = est
        .failed
        .iter()
        .map(|f| json!({ "level": f.level, "error": f.error.to_string() }))
        .collect();
    Ok(json!({
        "field": field,
        "estimate": est.estimate.as_ref().map(ratio),
        "minimizing_level": est.minimizing_level,
        "complete": est.is_complete(),
        "levels": levels,
        "failed": failed,
    }))
}
