pub mod apolarity;
pub mod betti;
pub mod error;
pub mod exact;
pub mod intersect;
pub mod poly;
pub mod spinor;
pub mod sylvester;

pub use apolarity::{Form, HilbertFunction, PointSet};
pub use error::{AlgebraError, Result};
pub use exact::{ExactMatrix, Field, RowSpace, Scalar, SolveOutcome};
pub use poly::{LinearParam, MPoly, Monomial, RingKind};
