//! Discriminants, reduced forms, class profiles and range scans.

mod discriminant;
mod forms;
mod int;
mod profile;
mod scan;
mod star;

pub use discriminant::{factor_discriminant, is_discriminant, is_fundamental, Discriminant};
pub use forms::{reduced_forms, ReducedForm};
pub use int::{isqrt, DiscInt};
pub use profile::{class_profile, ClassProfile};
pub use scan::{
    class_number_list, profiles_in_range, scan, scan_profiles, scan_with_jobs, CLASS_NUMBER_32_BOUND,
    MAX_LISTED_CLASS_NUMBER,
};
pub use star::{least_fundamental_with_class_number_at_least, verify_star_discriminant, STAR_DISCRIMINANT};
