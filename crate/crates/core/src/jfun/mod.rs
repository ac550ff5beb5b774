//! Singular moduli: coefficients of `j`, certified values and class
//! polynomials.

mod classpoly;
mod coefficients;
mod eval;

pub use classpoly::{class_polynomial, class_polynomial_with_cap, quadratic_field_kernel, IntegerPolynomial};
pub use coefficients::{
    cache_dir, compute_coefficients, j_coefficients, max_coefficients, read_cache, set_cache_dir, set_max_coefficients,
    write_cache, CACHE_DIR_ENV, DEFAULT_MAX_COEFFICIENTS,
};
pub use eval::{
    all_singular_moduli, class_number, dominant_singular_modulus, evaluate_singular_modulus,
    real_nondominant_singular_moduli, SingularModulusValue, ValueSummary, DEFAULT_PRECISION_BITS, PRECISION_CAP,
};
