//! Affine Hecke algebras with unequal parameters.
//!
//! Root data and affine Weyl groups, the Iwahori-Hecke algebra in the `T_w`
//! basis, the Bernstein basis `θ_x`, the trace `τ` and its generating
//! function, and the minimal principal series at numeric torus points.

pub mod bernstein;
pub mod coeffring;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod principal;
pub mod rootdata;
pub mod scalar;
pub mod tracegen;
pub mod weyl;

pub use error::{HeckeError, Result};
pub use rootdata::{Preset, RootDatum, RootDatumDesc};
pub use weyl::{AffineRoot, AffineWeylElem, AffineWeylGroup, WeylGroup};
pub use coeffring::{LabelSet, LaurentPoly, Monomial};
pub use scalar::Scalar;
pub use hecke::{HeckeAlgebra, HeckeElem, Letter};
pub use bernstein::{Bernstein, BernsteinElem, GroupAlgebraElem};
pub use tracegen::{TorusPoint, TraceGen};
pub use principal::{Mat, Params, Principal};
