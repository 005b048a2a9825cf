//! Finite categories, functors, natural transformations and finite groups.

mod category;
pub mod constructions;
mod enumerate;
mod functor;
mod group;
pub mod presentation;

pub use category::{CategoryBuilder, FiniteCategory, Morphism, ValidationReport, Violation};
pub use constructions::{coproduct, core, opposite, product, Coproduct, Product};
pub use enumerate::{enumerate_functors, enumerate_naturals, is_equivalence_by_search, FunctorSearch, DEFAULT_SEARCH_BUDGET};
pub use functor::{CatFunctor, FunctorViolation, NaturalTransformation};
pub use group::{all_permutations, FiniteGroup};
