//! Finite category computations: categories and functors, set-valued diagrams
//! and Kan extensions, lifting problems, involutive and semidirect
//! constructions, real simplicial sets, cyclic operads and chain complexes over
//! prime fields.

pub mod catmodel;
pub mod chaincx;
pub mod corpus;
pub mod cycops;
pub mod error;
pub mod fincat;
pub mod invcat;
pub mod nabla;
pub mod semidirect;
pub mod setval;

pub use error::{Error, Result};

pub type F2 = chaincx::Fp<2>;
pub type F3 = chaincx::Fp<3>;
pub type F5 = chaincx::Fp<5>;
pub type Q = num_rational::Rational64;
