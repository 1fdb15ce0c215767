//! Exact-arithmetic computational algebra for finite heaps, groups, and
//! finite-dimensional structure-constant (co)algebras: Hopf algebras, ternary
//! cooperations, quantum heaps, and their module categories.
//!
//! Everything is stored as multiplication tables or sparse exact matrices
//! over the rationals or a prime field, so every axiom and every structural
//! identity in the library is a decidable, zero-tolerance equality check.
//!
//! The main entry points:
//!
//! - [`heaps`]: finite heaps and groups as tables; the heap/group dictionary.
//! - [`algcore`]: algebras, Hopf algebras, quantum heaps and their verifiers.
//! - [`functors`]: Hopf algebra -> quantum heap and back, with round trips.
//! - [`zoo`]: built-in exactly-constructed fixtures.
//! - [`reps`]: modules, ternary lozenge products, intertwiner search.
//! - [`proterm`]: the arity-typed term language over generators `t`, `e`, `d`
//!   and its evaluation in vector spaces and finite sets.
//! - [`schema`]: the JSON structure-file format shared with the CLI.
//!
//! With the default `parallel` feature the tuple scans and sparse kernels run
//! on rayon; disabling it yields a fully sequential build with identical
//! results.
//!
//! ```
//! use heapforge_core::heaps::{aut_group, groups_isomorphic, heap_from_group, verify_heap};
//! use heapforge_core::zoo::builtin_group;
//!
//! // A group, its unit-forgetting ternary structure, and the recovery of
//! // the group from the heap's translation maps, up to isomorphism.
//! let g = builtin_group("sym(3)")?;
//! let heap = heap_from_group(&g);
//! assert!(verify_heap(&heap)?.pass());
//! let recovered = aut_group(&heap)?;
//! assert!(groups_isomorphic(&recovered.group, &g)?.is_some());
//!
//! // A Hopf algebra, its derived quantum heap, and the exact round trip.
//! use heapforge_core::functors::roundtrip_check_hopf;
//! use heapforge_core::zoo::{group_algebra, sweedler_hopf};
//! use heapforge_core::FieldSpec;
//!
//! let hopf = sweedler_hopf(FieldSpec::Rationals)?;
//! assert!(roundtrip_check_hopf(&hopf)?.pass());
//! # Ok::<(), heapforge_core::Error>(())
//! ```

pub mod algcore;
mod exec;
pub mod field;
pub mod functors;
pub mod heaps;
pub mod matrix;
pub mod proterm;
pub mod report;
pub mod reps;
pub mod schema;
pub mod zoo;

pub use field::{FieldSpec, Scalar};
pub use matrix::{kron, kron_all, tensor_permutation, Matrix, MultiIndex};
pub use report::{AxiomCheck, VerificationReport};

/// Crate-wide error type. Input errors (shape/field/schema violations) are
/// kept distinct from axiom failures, which are never errors: verifiers
/// report those in a [`VerificationReport`].
#[derive(thiserror::Error, Debug)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(field::FieldSpec, field::FieldSpec),
    #[error("shape mismatch for {op}: {}x{} vs {}x{}", lhs.0, lhs.1, rhs.0, rhs.1)]
    ShapeMismatch {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {text:?} as a scalar over {field}")]
    BadScalar { field: field::FieldSpec, text: String },
    #[error("index {index:?} out of range for bound {bound:?}")]
    IndexOutOfRange { index: Vec<usize>, bound: Vec<usize> },
    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("term syntax error at {pos}: {msg}")]
    TermSyntax { pos: usize, msg: String },
    #[error("arity mismatch composing {lhs:?} -> {rhs:?}")]
    ArityMismatch { lhs: (usize, usize), rhs: (usize, usize) },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
