//! Exact integer linear algebra.

pub mod abelian;
pub mod complex;
pub mod hermite;
pub mod int;
pub mod matrix;
pub mod smith;
pub mod sparse;

pub use abelian::{
    check_exact, normalize_quotient, AbelianMap, ExactnessCheck, FgAbGroup, NormalizedQuotient,
};
pub use complex::{induced_by_matrix, induced_map, ChainComplex, ChainMap, Homology, HomologyMap};
pub use hermite::{
    kernel_basis, rank, row_echelon, solve_integer, IncrementalLattice, Lattice, Solver,
};
pub use int::Int;
pub use matrix::IntMatrix;
pub use smith::{determinant, invariant_factors, smith_decompose, smith_form, SmithForm, Track};
pub use sparse::{eliminate, SparseMatrix};
