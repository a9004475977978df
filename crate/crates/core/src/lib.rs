//! Fourier analysis of Boolean functions on the Hamming cube `{-1,1}^n`.
//!
//! Points and subsets share one encoding: bit `j-1` of an index is set when
//! `x_j = -1` (for points) or `j ∈ S` (for subsets), so
//! `χ_S(x) = (-1)^{popcount(S & x)}`. Boolean truth tables store
//! `c_i = (1 - f(x_i)) / 2` packed into 64-bit words.

pub mod cli;
pub mod cube;
pub mod entropy;
pub mod error;
pub mod format;
pub mod fourier;
pub mod influence;
pub mod noise;
pub mod report;
pub mod social;
pub mod suite;
pub mod survey;
pub mod zoo;

pub use cube::{max_arity, set_max_arity, BooleanFunction, Point, RealFunction, Sign, Subset};
pub use error::{Error, Result};
pub use fourier::Spectrum;
pub use report::{Report, Tolerance};
