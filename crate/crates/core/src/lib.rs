//! Excedance enumerators over permutations whose displacements lie in a
//! fixed residue class modulo `k`, with polynomial matrices, closed forms and
//! gamma-positivity checks.

pub mod closed;
pub mod error;
pub mod families;
pub mod gamma;
pub mod perm;
pub mod poly;
pub mod polymat;

pub use error::{Error, Result};
pub use families::FamilySpec;
pub use gamma::{Center, GammaReport, GammaVector, GammaVerdict, Parity};
pub use perm::Perm;
pub use poly::IntPoly;
pub use polymat::{Limits, PolyMatrix};
