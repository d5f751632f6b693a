//! Exact computations with Lefschetz decompositions of the exterior algebra
//! of `ℂᴺ`, their first-order deformations, the Weil star operator, and
//! harmonic forms on flat tori.

pub mod cli;
pub mod cones;
pub mod error;
pub mod form;
pub mod hodge;
pub mod linalg;
pub mod linop;
pub mod sample;
pub mod scalar;
pub mod sl2;
pub mod torus;

pub use error::{Error, Result};
pub use form::{Form, Mono};
pub use scalar::{DualScalar, Ring, Scalar};
pub use sl2::{build_model, PrimDecomp, QTriple, Sl2Model};
