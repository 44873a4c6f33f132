//! Generic erasure-correcting sets, (r,s)-sets and s-wise intersecting codes
//! over GF(2): verification, construction, exact search and bounds.

pub mod bounds;
pub mod cli;
pub mod code;
pub mod construct;
pub mod erasure;
pub mod error;
pub mod gf2;
pub mod verify;

pub use code::LinearCode;
pub use error::{Error, Result};
pub use gf2::{BinMatrix, BitVector, Flat};
pub use verify::{Certificate, VectorSet, Verdict};
