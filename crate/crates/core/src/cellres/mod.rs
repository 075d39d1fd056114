//! Cellular resolutions of monomial ideals, the complex `Y^n` resolving the
//! ideal of the degenerate diagonal, the Eagon–Northcott comparison complex
//! and the degenerate Beilinson functor on `P^n`.

pub mod beilinson;
pub mod complex;
pub mod eagon;
pub mod linalg;
pub mod poly;
pub mod yn;

pub use complex::{cellular_complex, is_resolution, CellComplex, GradedComplex, MonomialIdeal};
pub use yn::{j_ideal, yn_build, YnComplex, YnFace};
