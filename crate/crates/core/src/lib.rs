//! Exact computations on homogeneous varieties: Borel-Weil-Bott, the
//! Littlewood-Richardson rule, exceptional collections and their Gram
//! matrices, and cellular resolutions of determinantal ideals.

pub mod bott;
pub mod cellres;
pub mod cli;
pub mod error;
pub mod excseq;
pub mod ktheory;
pub mod parab;
pub mod rootsys;
pub mod young;

pub use error::{Error, Result};
