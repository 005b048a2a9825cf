//! The `.cat` text format: a line-oriented block grammar and its loader.

mod load;
mod syntax;

pub(crate) use load::with_prime;
pub use load::{ComplexData, Failure, LoadError, Loaded, OperadData, TruncatedData, PRIMES};
pub use syntax::{emit, parse, Block, Document, Entry, ParseError, KINDS};
