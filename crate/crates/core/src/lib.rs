//! Imaginarity measures, open-system qubit dynamics and imaginarity speed
//! limits.

pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod figures;
pub mod liouville;
pub mod matfun;
pub mod measures;
pub mod random;
pub mod states;

pub use error::{Error, Result};
pub use matfun::{ComplexMatrix, C64};
pub use measures::MeasureKind;
pub use states::DensityMatrix;
