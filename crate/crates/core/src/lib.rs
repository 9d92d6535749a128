//! Exact computations over graded hypersurface rings: Gröbner bases and
//! syzygies, minimal free resolutions, matrix factorizations, Tor and Ext,
//! the theta pairing, Euler characteristics, divisor classes, and
//! Gram-matrix inertia.

pub mod error;
pub mod groebner;
pub mod homology;
pub mod numeq;
pub mod pairings;
pub mod ring;

pub use error::{Error, Result};
