//! Exact commutative algebra for residual intersections and linkage, with
//! monomial singularity invariants. Everything is generic over a coefficient
//! [`Field`]; the `Q*` and `Fp*` aliases fix it to the rationals or a prime field.

pub mod error;
pub mod field;
pub mod poly;
pub mod groebner;
pub mod ideal_ops;
pub mod residual;
pub mod invariants;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use groebner::{Dimension, IdealHandle};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};
pub use residual::GeneratorSystem;

pub type QRing = Ring<Rationals>;
pub type QPoly = Polynomial<Rationals>;
pub type QIdeal = IdealHandle<Rationals>;
pub type QSystem = GeneratorSystem<Rationals>;

pub type FpRing = Ring<PrimeField>;
pub type FpPoly = Polynomial<PrimeField>;
pub type FpIdeal = IdealHandle<PrimeField>;
pub type FpSystem = GeneratorSystem<PrimeField>;
