pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod moebius;
pub mod relations;
pub mod report;
pub mod sync;
pub mod words;

pub use algebra::{Enclosure, FieldElement, NumberField, RealAlgebraic, Tower};
pub use error::{Error, Result};
pub use moebius::{Ext, Gen, Group, GroupWord, ProjMatrix};
pub use words::{Digit, TreeWord, Word};
