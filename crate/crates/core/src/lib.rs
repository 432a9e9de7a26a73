//! Exact-arithmetic workbench for fields of sets and rings of measurable
//! step functions.
//!
//! The crate models two representable families of Boolean algebras of sets:
//! finite fields of sets (stored by their atom partition) and the
//! finite–cofinite algebra over the natural numbers, optionally refined by
//! residue classes. On top of these it builds
//!
//! - order ideals, perpendicular ideals and quotient algebras ([`ideals`]),
//! - prime spectra with the Stone topology ([`stone`]),
//! - the ring `M(X, A)` of rational-valued measurable step functions and the
//!   correspondence between its ring ideals and the order ideals of `A`
//!   ([`mring`]),
//! - the orthogonal-separation engine that decides self-injectivity on
//!   representable instances ([`injectivity`]),
//! - minimal ideals and the socle ([`socle`]).
//!
//! Every value is immutable after construction and all arithmetic is exact.

pub mod boolalg;
mod error;
pub mod ideals;
pub mod injectivity;
pub mod json;
pub mod mring;
pub mod rational;
pub mod socle;
pub mod stone;

pub use boolalg::{FieldKind, FieldOfSets, SetElement};
pub use error::{Error, Result};
pub use ideals::{IdealSpec, OrderIdeal, QuotientAlgebra};
pub use mring::{MRing, MeasurableFn, QuotientRing, RingIdeal};
pub use rational::Rational;
