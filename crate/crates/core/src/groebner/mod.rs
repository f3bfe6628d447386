//! Gröbner bases and the decision procedures built on them.

mod basis;
mod engine;
mod ideal;

pub use basis::GroebnerBasis;
pub use engine::{default_budget, set_default_budget};
pub use ideal::{Dimension, IdealHandle};

/// Reduced Gröbner basis of `ideal` for `order` (cached on the handle).
pub fn groebner_basis<F: crate::field::Field>(
    ideal: &IdealHandle<F>,
    order: crate::poly::MonomialOrder,
) -> crate::error::Result<std::sync::Arc<GroebnerBasis<F>>> {
    ideal.groebner_basis(order)
}

#[cfg(test)]
mod tests;
