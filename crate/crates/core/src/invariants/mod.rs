//! Singularity invariants: exact thresholds, discrepancies and multiplier ideals
//! of monomial ideals through Newton polyhedra and monomial valuations, and a
//! jet-scheme estimate of the log canonical threshold for arbitrary ideals.

mod jets;
mod polyhedron;
mod toric;

pub use jets::{
    jet_ideal, jet_level, jet_ring, lct_jet_estimate, FailedLevel, JetEstimate, JetLevelReport, JET_VARIABLE_CAP,
};
pub use polyhedron::{
    glct_monomial, lct_monomial, monomial_generators, multiplier_ideal_monomial, newton_polyhedron, NewtonPolyhedron,
    MULTIPLIER_BOX_CAP,
};
pub use toric::{
    glct_objective, mld_monomial_origin, mld_objective, mldmj_origin_monomial, FormalProduct, MldReport, MldValue,
    ToricValuation, MLD_SEARCH_CAP,
};

#[cfg(test)]
mod tests;
