//! Dense complex linear algebra and the discrete Fourier transform used by
//! the collocation and quadrature engines.

mod dft;
mod lu;

pub use dft::{dft, idft};
pub use lu::{lu_solve, solve_refined, ComplexMatrix, LuFactors};
