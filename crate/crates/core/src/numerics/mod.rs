//! Scalar arithmetic (exact rationals with float fallback), complex numbers,
//! projective points and Hermitian circle forms.

mod circle;
mod complex;
mod scalar;

pub use circle::CircleForm;
pub use complex::{ComplexScalar, ProjPoint};
pub use scalar::{integer_sqrt, parse_rational, rational_sqrt, Scalar, FLOAT_TOLERANCE};
