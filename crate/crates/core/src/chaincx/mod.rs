//! Finite-dimensional cochain complexes over exact fields, change of rings
//! along maps of finite algebras, and truncations.

mod algebra;
mod complex;
mod field;
mod matrix;
mod modcx;
mod truncation;

pub use algebra::{
    check_change_of_rings_counts, coinduce, coinduce_map, direct_sums, dual_number_modules, hom_basis, induce, induce_map,
    restrict_scalars, split_modules, truncated_polynomial_modules, AlgebraMap, ChangeOfRingsReport, Coinduced, FiniteAlgebra,
    HomCountEntry, Induced, Module,
};
pub use complex::{ComplexMap, FiniteComplex};
pub use field::{count_vectors, Field, Fp};
pub use matrix::{cokernel_projection, Matrix};
pub use modcx::{
    chain_map_basis, check_preservation, coinduce_complex, coinduce_complex_map, induce_complex, induce_complex_map,
    module_map_corpus, random_chain_map, random_module_complex, restrict_complex, restrict_complex_map, ModuleComplex,
    ModuleComplexMap, PreservationReport,
};
pub use truncation::{
    homotopy_truncate, homotopy_truncate_map, identity_cone, naive_truncate, naive_truncate_map,
    reproduce_truncation_counterexample, TruncationReport,
};
