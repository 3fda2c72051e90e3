//! Descent of flat bundles: to a smaller field, to a finite field through a
//! trivializing covering, and down a tower of circle coverings.

mod field;
mod modp;
mod tower;

pub use field::{field_descent, Trivialization};
pub use modp::{mod_p_pipeline, ModPReduction};
pub use tower::{
    etale_quotients, finite_quotient_survival, format_survival_table, jordan_factors, level_of_definition,
    solenoid_summary, tower_make, LevelOfDefinition, Tower,
};
