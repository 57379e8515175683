//! Path algebras modulo relations: presentations, exact bases, Cartan
//! matrices and socle quotients.

mod cartan;
#[cfg(test)]
mod elimination;
mod groebner;
mod path;
mod presentation;
mod quotient;
mod socle;

pub use cartan::CartanMatrix;
pub use path::{path_cmp, Path, PathElement};
pub use presentation::{a_n_presentation, omega_n_presentation, omega_n_quiver, omega_relations, Presentation};
pub use quotient::{quotient_basis, quotient_default, Elem, QuotientAlgebra};
pub use socle::{presentations_equal_on_basis, socle, socle_quotient};
