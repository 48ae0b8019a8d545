//! Exact computation of torus-equivariant cohomology rings of regular
//! B-varieties through the zero scheme of the vector field `2V - vW`.

pub mod cohomology;
pub mod error;
pub mod exactalg;
pub mod fundscheme;
pub mod groebner;
pub mod pushforward;
pub mod hessenberg;
pub mod regvariety;
pub mod rootsys;
mod serde_str;
pub mod suite;

pub use error::{Error, Result};
