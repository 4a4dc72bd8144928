//! Nonhomogeneous Airy equation `y'' = (az + b) y + c`: multiprecision series
//! solutions, their zeros, and the cubic Laurent recursion of the logarithmic
//! derivative whose ratio limit walks from zero to zero.

pub mod error;
pub mod laurent;
pub mod num;
pub mod series;
pub mod special;
pub mod transform;
pub mod zeros;

pub use error::{Error, Result};
pub use laurent::{laurent_coeffs, next_zero, walk_zeros, LaurentSequence, NextZeroOptions, WalkDiagnostics, WalkState};
pub use num::{Complex, ExactComplex};
pub use series::{build_series, evaluate, EvalResult, FamilyTag, InitialData, Parameters, SeriesSolution};
pub use transform::{apply_transform, TransformSpec};
pub use zeros::{ZeroInterval, ZeroMethod, ZeroRecord};
