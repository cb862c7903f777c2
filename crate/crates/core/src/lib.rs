//! Solution structures of the Erdős–Straus equation `4/n = 1/x + 1/y + 1/z`.
//!
//! Three shapes of solution are searched for and constructed:
//!
//! - [`type_a`]: `(du, dv, duv)`
//! - [`type_b`]: `(duv, dun, dvn)`
//! - [`type_c`]: `(uv, uwn, vwn)`
//!
//! Every characterization is checked against the brute-force enumeration in
//! [`triple`]. [`polyform`] holds the polynomial family whose images are the
//! denominators with each shape, [`egyptian_chain`] the reduction to
//! two-term Egyptian fractions and the consecutive-chain construction, and
//! [`scan`] the parallel range scanner and report writer.
//!
//! All public integers are `u64`; products are checked and overflow is
//! reported as [`Error::Overflow`].

#![allow(clippy::manual_is_multiple_of)]

pub mod arith;
pub mod cli;
pub mod egyptian_chain;
mod error;
pub mod polyform;
pub mod scan;
pub mod triple;
pub mod type_a;
pub mod type_b;
pub mod type_c;

pub use error::{Error, Result};
pub use triple::{GcdClass, SolutionTriple, StructureMatch};
