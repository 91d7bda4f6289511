//! Exact rational linear algebra: scalars, vectors, matrices and
//! symmetric bilinear forms.
//!
//! Nothing here uses floating point. Inertia is computed by congruence
//! reduction and metric traces through the inverse Gram matrix, so no
//! square roots are ever needed.

mod form;
mod linalg;
mod scalar;

pub use form::{kernel, scalar_trace, signature, signed_trace, Signature, SymForm};
pub use linalg::{coordinates, in_span, independent, rank_of, same_span, Matrix, Vector};
pub use scalar::{
    fmt_scalar, int, one, parse_scalar, q, rational_sqrt, serialize_opt_scalar, serialize_scalar, zero, Scalar,
};
