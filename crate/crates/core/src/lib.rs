//! Exact arithmetic for elliptic fibrations over the projective line:
//! group law and torsion certification, multisections and their class maps,
//! density sweeps by translation, and tangency constructions on a quadratic
//! cone.

pub mod density;
pub mod enriques;
pub mod elliptic;
pub mod exactmath;
pub mod fibration;

pub use exactmath::{enumerate_rationals, ExactError, Field, NfElem, NumField, Poly, Rat, RatFn};
