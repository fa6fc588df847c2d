//! Binary-field arithmetic over the pentanomial family
//! `x^(2b+c) + x^(b+c) + x^b + x^c + 1`.
//!
//! The crate is split into:
//!
//! * [`gf2x`]: dense GF(2)\[x\] polynomials ([`BitPoly`]), schoolbook and
//!   recursive Karatsuba products, long division, gcd.
//! * [`family`]: pentanomial shapes, step counts, irreducibility and
//!   enumeration of irreducible members.
//! * [`reduce`]: the step-by-step reduction with a full trace, and the three
//!   constant-operation reducers (`c = 1`, general `c > 1`, `b = 2c`).
//! * [`field`]: GF(2^m) arithmetic bound to an irreducible family member.
//! * [`gatecount`]: symbolic execution of the multiplier and reducers into a
//!   gate graph, for exact XOR/AND counts and depths.
//! * [`cli`]: the command-line front end.
//!
//! Every bit-level algorithm is written once against [`algebra::BitOps`], so
//! the same code runs on concrete bits, on an operation counter, and on the
//! symbolic gate graph.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod family;
pub mod field;
pub mod gatecount;
pub mod gf2x;
pub mod reduce;

pub use error::{Error, Result};
pub use family::{PentaShape, StepCounts, Subfamily};
pub use field::{FieldCtx, FieldElement};
pub use gf2x::{BitPoly, Degree};
