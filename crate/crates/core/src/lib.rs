pub mod analytic;
pub mod ball;
pub mod discriminants;
pub mod error;
pub mod jfun;
pub mod report;
pub mod verifier;

pub use error::{Error, Result};

/// Discriminant with machine-word coefficients, used throughout the crate.
pub type Disc = discriminants::Discriminant<i64>;
/// Reduced form with machine-word coefficients.
pub type Form = discriminants::ReducedForm<i64>;
/// Class profile with machine-word coefficients.
pub type Profile = discriminants::ClassProfile<i64>;
