//! Set-valued operads and cyclic operads truncated at an arity bound, the
//! cofree cyclic operad `R P` on an operad, and finite checks of the
//! adjunction between them.
//!
//! Conventions: `P(n)` has inputs `1..n` and output `0`. Permutations are
//! stored 0-based; an element `s` of `Σ_n` acts on `{1..n}` by
//! `k ↦ s[k-1] + 1`, an element of `Σ_{n+1}` acts on `{0..n}` directly, and
//! products compose as functions. Actions are right actions: relabelling an
//! operation by `σ` moves its input `σ(k)` to position `k`.

mod adjoint;
mod examples;
mod operad;

pub use adjoint::{
    check_adjunction_count, check_fr_products, cyclic_maps, operad_maps, right_adjoint_r, sigma_i, AdjunctionCount, FrReport,
    OperadMap,
};
pub use examples::{
    associative, cyclic_associative, endomorphism, random_two_element, terminal, terminal_cyclic, two_element,
    two_element_cyclic, TwoElementKind,
};
pub use operad::{
    forget_cyclic, validate_cyclic, validate_operad, AxiomReport, ExtendedPermutation, Sym, TruncatedCyclicOperad,
    TruncatedOperad,
};

/// Default arity bound.
pub const DEFAULT_ARITY_BOUND: usize = 3;
