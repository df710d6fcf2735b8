//! Explicit and randomized constructions of free sets.

mod algebraic;
mod behrend;
mod deletion;

pub use algebraic::{
    integer_l222_construction, l222_prime, mixed_radix_embed, mixed_radix_value, primitive_root, zp3_construction,
    MAX_CUBE_ORDER,
};
pub use behrend::{behrend_set, behrend_set_in, is_ap3_free};
pub use deletion::{
    deletion_probability, random_deletion, random_deletion_retry, DeletionReport, MAX_DELETION_N,
};
