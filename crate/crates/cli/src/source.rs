//! The `.ri` problem format.
//!
//! ```text
//! # two planes in 4-space meeting at the origin
//! ring x y z w over Q
//! ideal X = x*z, x*w, y*z, y*w
//! system F = x*z, x*w, y*z, y*w,
//!            x^2*z, x*y*z, x*z^2, x*z*w
//! seed 42
//! ```
//!
//! `ring` comes first and may end in `over Q` (the default) or `over Fp <p>`.
//! `#` starts a comment, and a line ending in `,` continues on the next one.
//! Ideals and systems share one namespace.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use resint::field::{is_prime, Field, PrimeField, Rationals};
use resint::poly::{parse_terms, Monomial, Polynomial, Ring};
use resint::{GeneratorSystem, IdealHandle};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SourceError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ideal,
    System,
}

impl Kind {
    fn keyword(self) -> &'static str {
        match self {
            Kind::Ideal => "ideal",
            Kind::System => "system",
        }
    }
}

pub type Terms = Vec<(BigRational, Monomial)>;

/// A named list of polynomials, kept as rational terms until a field is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub name: String,
    pub kind: Kind,
    pub polys: Vec<Terms>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSource {
    pub vars: Vec<String>,
    pub field: FieldChoice,
    pub items: Vec<Named>,
    pub seed: Option<u64>,
}

impl ProblemSource {
    pub fn get(&self, name: &str) -> Option<&Named> {
        self.items.iter().find(|n| n.name == name)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Named> {
        self.items.iter().filter(move |n| n.kind == kind)
    }
}

/// Character positions of a logical statement, possibly spanning lines.
struct Statement {
    text: Vec<char>,
    pos: Vec<(usize, usize)>,
    line: usize,
}

impl Statement {
    fn at(&self, i: usize) -> (usize, usize) {
        match self.pos.get(i) {
            Some(&p) => p,
            None => self.pos.last().map_or((self.line, 1), |&(l, c)| (l, c + 1)),
        }
    }

    fn error(&self, i: usize, message: impl Into<String>) -> SourceError {
        let (line, column) = self.at(i);
        SourceError { line, column, message: message.into() }
    }

    fn slice(&self, a: usize, b: usize) -> String {
        self.text[a..b].iter().collect()
    }

    /// Whitespace-separated words with their starting indices.
    fn words(&self, from: usize, to: usize) -> Vec<(usize, String)> {
        let mut out = Vec::new();
        let mut i = from;
        while i < to {
            if self.text[i].is_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < to && !self.text[i].is_whitespace() {
                i += 1;
            }
            out.push((start, self.slice(start, i)));
        }
        out
    }
}

fn statements(text: &str) -> Vec<Statement> {
    let mut out = Vec::new();
    let mut cur: Option<Statement> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let st = cur.get_or_insert_with(|| Statement { text: Vec::new(), pos: Vec::new(), line });
        if !st.text.is_empty() {
            st.text.push(' ');
            st.pos.push((line, 0));
        }
        for (col, ch) in content.chars().enumerate() {
            st.text.push(ch);
            st.pos.push((line, col + 1));
        }
        let trimmed = content.trim_end();
        if !trimmed.ends_with(',') {
            let st = cur.take().expect("statement in progress");
            if st.text.iter().any(|c| !c.is_whitespace()) {
                out.push(st);
            }
        }
    }
    if let Some(st) = cur {
        if st.text.iter().any(|c| !c.is_whitespace()) {
            out.push(st);
        }
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

pub fn parse_source(text: &str) -> Result<ProblemSource, SourceError> {
    let mut vars: Option<(Vec<String>, FieldChoice)> = None;
    let mut items: Vec<Named> = Vec::new();
    let mut seed = None;
    for st in statements(text) {
        let words = st.words(0, st.text.len());
        let (kw_at, keyword) = words.first().cloned().expect("nonblank statement");
        match keyword.as_str() {
            "ring" => {
                if vars.is_some() {
                    return Err(st.error(kw_at, "duplicate ring declaration"));
                }
                vars = Some(parse_ring(&st, &words[1..])?);
            }
            "ideal" | "system" => {
                let Some((names, field)) = &vars else {
                    return Err(st.error(kw_at, "the ring must be declared first"));
                };
                let kind = if keyword == "ideal" { Kind::Ideal } else { Kind::System };
                let named = parse_named(&st, kind, kw_at + keyword.chars().count(), names, *field)?;
                if items.iter().any(|n| n.name == named.name) {
                    return Err(st.error(kw_at, format!("duplicate name `{}`", named.name)));
                }
                items.push(named);
            }
            "seed" => {
                if seed.is_some() {
                    return Err(st.error(kw_at, "duplicate seed"));
                }
                match &words[1..] {
                    [(at, s)] => seed = Some(s.parse().map_err(|_| st.error(*at, format!("invalid seed `{s}`")))?),
                    _ => return Err(st.error(kw_at, "expected `seed <integer>`")),
                }
            }
            other => return Err(st.error(kw_at, format!("unknown statement `{other}`"))),
        }
    }
    let (vars, field) = vars.ok_or(SourceError { line: 1, column: 1, message: "missing ring declaration".into() })?;
    Ok(ProblemSource { vars, field, items, seed })
}

fn parse_ring(st: &Statement, words: &[(usize, String)]) -> Result<(Vec<String>, FieldChoice), SourceError> {
    let split = words.iter().position(|(_, w)| w == "over").unwrap_or(words.len());
    let mut vars: Vec<String> = Vec::new();
    for (at, w) in &words[..split] {
        if !is_identifier(w) || w == "over" {
            return Err(st.error(*at, format!("invalid variable name `{w}`")));
        }
        if vars.contains(w) {
            return Err(st.error(*at, format!("duplicate variable `{w}`")));
        }
        vars.push(w.clone());
    }
    if vars.is_empty() {
        return Err(st.error(0, "a ring needs at least one variable"));
    }
    let field = match &words[split..] {
        [] => FieldChoice::Rationals,
        [_, (_, q)] if q == "Q" || q == "QQ" => FieldChoice::Rationals,
        [_, (_, f), (at, p)] if f == "Fp" || f == "GF" => {
            let p: u64 = p.parse().map_err(|_| st.error(*at, format!("invalid characteristic `{p}`")))?;
            if !is_prime(p) || p == 2 || p >= 1 << 31 {
                return Err(st.error(*at, format!("characteristic must be an odd prime below 2^31, got {p}")));
            }
            FieldChoice::Prime(p)
        }
        [(at, _), ..] => return Err(st.error(*at, "expected `over Q` or `over Fp <p>`")),
    };
    Ok((vars, field))
}

fn parse_named(
    st: &Statement,
    kind: Kind,
    from: usize,
    vars: &[String],
    field: FieldChoice,
) -> Result<Named, SourceError> {
    let Some(eq) = (from..st.text.len()).find(|&i| st.text[i] == '=') else {
        return Err(st.error(st.text.len(), format!("expected `{} <name> = <poly>, ...`", kind.keyword())));
    };
    let name_words = st.words(from, eq);
    let name = match name_words.as_slice() {
        [(at, n)] if !is_identifier(n) => return Err(st.error(*at, format!("invalid name `{n}`"))),
        [(_, n)] => n.clone(),
        _ => return Err(st.error(from, format!("expected a single name after `{}`", kind.keyword()))),
    };
    let mut polys = Vec::new();
    let mut start = eq + 1;
    loop {
        let end = (start..st.text.len()).find(|&i| st.text[i] == ',').unwrap_or(st.text.len());
        let piece = st.slice(start, end);
        if piece.trim().is_empty() {
            return Err(st.error(start, "expected a polynomial"));
        }
        let terms = parse_terms(vars, &piece).map_err(|e| {
            // offsets are relative to the piece; an error at its end points past the last character
            let at = if e.offset >= piece.chars().count() {
                start + piece.trim_end().chars().count()
            } else {
                start + e.offset
            };
            st.error(at, e.message)
        })?;
        if let FieldChoice::Prime(p) = field {
            if terms.iter().any(|(c, _)| (c.denom() % p).is_zero()) {
                return Err(st.error(start, format!("a coefficient denominator vanishes modulo {p}")));
            }
        }
        polys.push(normalize(terms));
        if end == st.text.len() {
            break;
        }
        start = end + 1;
    }
    Ok(Named { name, kind, polys, line: st.line })
}

/// Like terms combined, zero terms dropped, sorted by monomial.
fn normalize(terms: Terms) -> Terms {
    let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    for (c, m) in terms {
        *acc.entry(m).or_insert_with(BigRational::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect()
}

impl fmt::Display for ProblemSource {
    /// Canonical text that parses back to an equal value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {}", self.vars.join(" "))?;
        match self.field {
            FieldChoice::Rationals => writeln!(f, " over Q")?,
            FieldChoice::Prime(p) => writeln!(f, " over Fp {p}")?,
        }
        let ring = Ring::new(self.vars.iter().cloned(), Rationals).map_err(|_| fmt::Error)?;
        for n in &self.items {
            let polys: Vec<String> = n
                .polys
                .iter()
                .map(|t| Polynomial::from_rational_terms(&ring, t.clone()).map(|p| p.to_text()))
                .collect::<Result<_, _>>()
                .map_err(|_| fmt::Error)?;
            writeln!(f, "{} {} = {}", n.kind.keyword(), n.name, polys.join(", "))?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed {s}")?;
        }
        Ok(())
    }
}

/// A problem instantiated over a concrete coefficient field.
pub struct Problem<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub source: ProblemSource,
}

impl<F: Field> Problem<F> {
    pub fn new(source: &ProblemSource, field: F) -> resint::Result<Self> {
        let ring = Ring::new(source.vars.iter().cloned(), field)?;
        Ok(Problem { ring, source: source.clone() })
    }

    pub fn polys(&self, named: &Named) -> resint::Result<Vec<Polynomial<F>>> {
        named.polys.iter().map(|t| Polynomial::from_rational_terms(&self.ring, t.clone())).collect()
    }

    pub fn ideal(&self, named: &Named) -> resint::Result<IdealHandle<F>> {
        IdealHandle::new(&self.ring, self.polys(named)?)
    }

    pub fn system(&self, named: &Named) -> resint::Result<GeneratorSystem<F>> {
        GeneratorSystem::new(&self.ring, self.polys(named)?)
    }
}

/// Builds the problem over the declared field.
pub fn with_field<R>(
    source: &ProblemSource,
    q: impl FnOnce(Problem<Rationals>) -> R,
    fp: impl FnOnce(Problem<PrimeField>) -> R,
) -> resint::Result<R> {
    Ok(match source.field {
        FieldChoice::Rationals => q(Problem::new(source, Rationals)?),
        FieldChoice::Prime(p) => fp(Problem::new(source, PrimeField::new(p)?)?),
    })
}
