use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial ring `k[x_1, ..., x_n]`: ordered variable names plus the
/// coefficient field. Shared behind an [`Arc`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring<F: Field> {
    vars: Vec<String>,
    field: F,
}

impl<F: Field> Ring<F> {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, field: F) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same variables over another field.
    pub fn with_field<G: Field>(&self, field: G) -> Arc<Ring<G>> {
        Arc::new(Ring { vars: self.vars.clone(), field })
    }

    /// A ring with `extra` variables appended after the existing ones.
    /// Names that clash get primes appended until unique.
    pub fn extended(&self, extra: &[&str]) -> Arc<Self> {
        let mut vars = self.vars.clone();
        for name in extra {
            let mut candidate = name.to_string();
            while vars.contains(&candidate) {
                candidate.push('_');
            }
            vars.push(candidate);
        }
        Arc::new(Ring { vars, field: self.field.clone() })
    }

    /// A ring whose `i`-th variable is `self.vars[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Arc<Self> {
        Arc::new(Ring {
            vars: perm.iter().map(|&i| self.vars[i].clone()).collect(),
            field: self.field.clone(),
        })
    }
}

pub(crate) fn same_ring<F: Field>(a: &Arc<Ring<F>>, b: &Arc<Ring<F>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
