//! Exact verification, symmetry analysis and numerical search for rank
//! decompositions of the matrix multiplication tensor M⟨n⟩.
//!
//! Containers are generic over [`Scalar`]; the aliases below fix the two
//! modes used throughout: exact rationals and `f64`.

pub mod cancel;
pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod mat;
pub mod poly;
pub mod scalar;
pub mod search;
pub mod symmetry;
pub mod tensor;

pub use cancel::CancelToken;
pub use decomposition::{standard_decomposition, Decomposition, RankOneTriple};
pub use error::CoreError;
pub use mat::Mat;
pub use poly::Poly;
pub use scalar::{ExactScalar, FloatScalar, Real, Scalar, ScalarMode};
pub use tensor::{flat_index, matmul_tensor, Tensor3};

pub type ExactMat = Mat<ExactScalar>;
pub type FloatMat = Mat<FloatScalar>;
pub type ExactTensor = Tensor3<ExactScalar>;
pub type FloatTensor = Tensor3<FloatScalar>;
pub type ExactTriple = RankOneTriple<ExactScalar>;
pub type ExactDecomposition = Decomposition<ExactScalar>;
pub type FloatDecomposition = Decomposition<FloatScalar>;
