//! JSON rendering. Keys are sorted (serde_json's default map), rationals are
//! `"p/q"` strings and generator lists are in a canonical order, so a report
//! is byte-identical across runs once `timing_ms` is removed.

use num_rational::BigRational;
use resint::field::Field;
use resint::{Dimension, IdealHandle, MonomialOrder, Polynomial};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn ratio(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn dimension(d: Dimension) -> Value {
    d.value().map_or(Value::Null, Value::from)
}

/// Sorted by total degree, then lexicographically, of the grevlex leading monomial.
pub fn sorted_generators<F: Field>(gens: &[Polynomial<F>]) -> Vec<String> {
    let mut keyed: Vec<_> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let lm = g.leading_monomial(MonomialOrder::GrevLex).cloned();
            let key = lm.map(|m| (m.degree(), m));
            (key, g.to_text())
        })
        .collect();
    keyed.sort_by(|(ka, ta), (kb, tb)| match (ka, kb) {
        (Some((da, ma)), Some((db, mb))) => da.cmp(db).then_with(|| MonomialOrder::Lex.cmp(ma, mb)).then_with(|| ta.cmp(tb)),
        _ => ta.cmp(tb),
    });
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// An ideal by its reduced grevlex basis; `empty` marks the unit ideal (no points).
pub fn ideal<F: Field>(i: &IdealHandle<F>) -> resint::Result<Value> {
    let gb = i.reduced_generators()?;
    let empty = i.is_unit()?;
    Ok(json!({ "generators": sorted_generators(&gb), "empty": empty }))
}

pub fn digest(source_text: &str, command: &str, flags: &str) -> String {
    let mut h = Sha256::new();
    h.update(source_text.as_bytes());
    h.update([0u8]);
    h.update(command.as_bytes());
    h.update([0u8]);
    h.update(flags.as_bytes());
    format!("{:x}", h.finalize())
}

pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub outputs: Value,
    pub timing_ms: u128,
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs_digest": self.inputs_digest,
            "seed": self.seed,
            "version": VERSION,
            "outputs": self.outputs,
            "timing_ms": self.timing_ms,
        })
    }
}

/// Drops `timing_ms` at any depth.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("timing_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
