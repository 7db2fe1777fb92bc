//! Exact cyclotomic numbers and character tables.

mod cyclotomic;
mod modp;
mod table;

pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic, RootSum};
pub use table::{class_matrix, compute_character_table, lifting_prime, CharacterTable};
