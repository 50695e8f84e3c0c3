//! Exact symbolic computation in the algebra of integro-differential
//! operators on a polynomial algebra in `n` variables.
//!
//! The crate provides:
//!
//! * canonical forms and exact operator arithmetic ([`operator`], [`atom`]),
//! * the faithful action on polynomials and action-based oracles ([`poly`]),
//! * the skew Laurent quotient by the largest proper ideal ([`bn`]),
//! * the full (finite) two-sided ideal lattice as antichains ([`ideal`]),
//! * unit recognition and inversion via the stable determinant ([`units`]),
//! * filtration growth measurement ([`filtration`]) and bounded-support
//!   linear characterizations ([`solve`]).
//!
//! Every value is immutable once built and every operation is a pure
//! function of its inputs, so the whole API is safe to use from multiple
//! threads without synchronization.

pub mod atom;
pub mod bn;
pub mod error;
pub mod filtration;
pub mod ideal;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod rational;
pub mod relations;
pub mod solve;
pub mod units;

pub use atom::{atom_mul, Atom};
pub use bn::{project_bn, BnElement};
pub use error::{Error, Result};
pub use ideal::{
    enumerate_ideals, factor_into_primes, height_and_chains, is_prime, minimal_primes,
    prime_from_subset, spectrum, IdealAc, PrimeLabel,
};
pub use operator::{from_word, Gen, Monomial, Operator};
pub use poly::{apply, zero_oracle, Polynomial};
pub use rational::Rational;
pub use units::{global_det, is_unit, split_scalar_plus_f, FiniteMatrixPart, UnitDecision};
