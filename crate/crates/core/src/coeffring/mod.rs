//! Exact coefficients: Laurent polynomials in the label variables and the
//! label system itself.

pub mod labels;
pub mod laurent;

pub use labels::{ClassKey, LabelSet};
pub use laurent::{LaurentPoly, Monomial, PolyJson};
