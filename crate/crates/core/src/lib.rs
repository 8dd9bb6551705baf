//! Computational apparatus for the classical Hamburger and Stieltjes moment
//! problems, in exact rational or MPFR float arithmetic.

pub mod complex;
pub mod determinacy;
pub mod error;
pub mod families;
pub mod hankel;
pub mod jacobi;
pub mod linalg;
pub mod moments;
pub mod nevanlinna;
pub mod orthopoly;
pub mod pade;
pub mod poly;
pub mod scalar;
pub mod tolerance;

pub use complex::ComplexScalar;
pub use error::{Error, Result};
pub use moments::{Kind, MomentSequence};
pub use scalar::{Mode, Scalar};
