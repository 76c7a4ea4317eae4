//! Exact arithmetic for the generalized Heisenberg-Virasoro algebra `ℒ[G]`
//! and its Verma modules.

pub mod algebra;
pub mod decide;
pub mod error;
pub mod group;
pub mod linalg;
pub mod reduction;
pub mod sample;
pub mod scalar;
pub mod singular;
pub mod trace;
pub mod verma;

pub use algebra::{bracket, bracket_generators, theta, theta_inverse, transport_highest_weight};
pub use algebra::{AlgebraElement, Generator, HighestWeight, Tag};
pub use decide::{decide, decide_with_samples, Decision, Verdict, Witness, DEFAULT_MAX_LEVEL};
pub use error::{Error, Result};
pub use group::{Decomposition, GroupElement, OrderClass, OrderKind, OrderedGroup};
pub use linalg::exact_kernel;
pub use reduction::{reduce_dense, reduce_discrete, DenseReduction, DiscreteReduction};
pub use sample::VectorSampler;
pub use scalar::FieldScalar;
pub use singular::{is_singular, singular_search, LevelKernel};
pub use trace::{Phase, ReductionTrace, TraceStep};
pub use verma::{Monomial, ModuleVector, VermaModule, VectorTerm};
