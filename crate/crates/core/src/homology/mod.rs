//! Modules over a graded hypersurface ring: presentations, minimal free
//! resolutions, matrix factorizations, Tor and Ext.

mod factorization;
mod linear;
mod matrix;
mod presentation;
mod resolution;
mod tor;

pub use factorization::{extract_matrix_factorization, MatrixFactorization};
pub use matrix::Matrix;
pub use presentation::ModulePresentation;
pub use resolution::{minimal_resolution, syzygy_of, Resolution};
pub use tor::{
    complex_homology, dual_module, ext_module, ext_module_from, homology_of_tensored, tor_length, tor_length_from,
};
