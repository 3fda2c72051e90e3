//! Finite coverings of 2-complexes and what local systems do along them.

mod cover;
mod group;
mod transport;

pub use cover::{Covering, GaloisData};
pub use group::{check_permutation, compose, invert_permutation, FiniteGroup, MAX_TABLE_ORDER};
pub use transport::{
    etale_image_size, exact_sequence_report, flat_sections, parallel_transport, pullback, pullback_cocycle,
    pushforward, pushforward_cocycle, subgroup_generators, transport_with_sections, trivializes, EtalePathLevel,
    ExactSequenceReport,
};
