//! Ringel Hall numbers, Toën's derived Hall constants and the twisted derived
//! Hall algebra of a type A quiver over a small finite field, computed by
//! brute-force enumeration, with an exact comparison against the
//! `t`-deformed Grothendieck ring specialised at `t = √q`.

pub mod dh;
pub mod field;
pub mod hall;
pub mod iota;
pub mod rep;
pub mod scalar;

pub use dh::{DHElement, DhRelationReport, Word};
pub use field::Field;
pub use hall::{Caps, HallContext, RiedtmannReport};
pub use iota::{iota_check, IotaReport};
pub use rep::{parse_iso_class, FqRep, IsoClass};
pub use scalar::ScalarQ;
