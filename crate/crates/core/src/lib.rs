//! Exact computations in the t-deformed Grothendieck ring of a quantum loop
//! algebra of ADE type, together with the quantum-group side (quantum minors,
//! dual PBW and dual canonical bases) and the isomorphism between them.
//!
//! Vertices are 0-based internally and printed 1-based. Positions in an
//! adapted reduced word are 1-based, with 0 standing for "no position".

pub mod cartan;
pub mod characters;
pub mod error;
pub mod laurent;
pub mod monomial;
pub mod presentation;
pub mod qcartan;
pub mod qgroup;
pub mod quiver;
pub mod torus;

pub use cartan::{CartanDatum, Kind, Weight};
pub use characters::{CharacterContext, Mode};
pub use error::{Error, Result};
pub use laurent::{HalfInt, HalfLaurent};
pub use monomial::Monomial;
pub use qcartan::CtildeTable;
pub use qgroup::QuantumGroupSide;
pub use quiver::QuiverDatum;
pub use torus::{Element, XVec};
