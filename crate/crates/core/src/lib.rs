//! Exact homological invariants of bound quiver algebras.
pub mod algebra;
pub mod homalg;
pub mod linalg;
pub mod oracle;
pub mod quiver;
pub mod repmod;
pub mod scalar;
pub mod uniformize;

pub use algebra::{AlgebraElement, BoundQuiverAlgebra, LoewyProfile};
pub use repmod::{ExtendedNat, Representation, Resolution};
pub use scalar::{Field, Fp, Rational, Scalar};

/// Algebra over the rationals.
pub type QAlgebra = BoundQuiverAlgebra<Rational>;
/// Algebra over a prime field.
pub type FpAlgebra = BoundQuiverAlgebra<Fp>;
/// Module over the rationals.
pub type QModule = Representation<Rational>;
