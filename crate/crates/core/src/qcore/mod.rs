//! Dense complex linear algebra for small multi-qubit registers.
//!
//! Basis convention: qubit 1 is the most significant bit, so `|q1 q2 ... qN>` has index
//! `sum q_i 2^(N-i)`. Serialized states record this as `"convention": "msb-first"`.

mod eigen;
mod matrix;
mod ops;
mod serial;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigen_with, hermitian_eigenvalues, HermitianEigen};
pub use matrix::{CMatrix, C64};
pub use ops::{outer_product, partial_trace, partial_transpose, reduced_pair_from_pure, tensor_product};
pub use serial::{SerializedState, StateFile, StateKind, CONVENTION};
pub use state::{qubit_mask, DensityOperator, PureState};

pub(crate) use matrix::ZERO;
pub(crate) use state::check_qubit;
