//! Bounded complexes of projective modules and their homotopy category:
//! Hom spaces, shifts, cones, minimal forms and the alternating-sum Cartan
//! formula.

mod chain;
mod complex;
mod happel;
mod hom;
mod minimize;

pub use chain::{mapping_cone, ChainMap};
pub use complex::{check_complex, Matrix, ProjComplex};
pub use happel::{congruence, euler_matrix, happel_cartan};
pub use hom::{hom_block, homotopy_dim, homotopy_hom, is_null_homotopic, HomSystem, HomotopyHom};
pub use minimize::{homotopy_equivalent, minimize};

#[cfg(test)]
mod tests;
