pub mod error;
pub mod macdonald;
pub mod plethysm;
pub mod qt_algebra;
pub mod specializations;
pub mod tesler;
pub mod verify;
pub mod young;

pub use error::{Error, MatrixDefect, Result};
pub use qt_algebra::{q_int, qt_int, LaurentPoly, RatFunc, Specialization};
pub use tesler::{tes, TeslerMatrix};
pub use young::{partitions_of, LaurentPartition, Partition};
