//! Representation theory of finite transformation monoids over a field of
//! characteristic zero: Green structure, Schützenberger groups, fixed-point
//! counts, character tables and Cartan matrices, all in exact arithmetic.

pub mod error;
pub mod xform;
pub mod enumeration;
pub mod green;
pub mod perm;
pub mod schutz;
pub mod cyclotomic;
pub mod groupchar;
pub mod bichar;
pub mod linalg;
pub mod families;
pub mod radical;
pub mod chartable;
pub mod analysis;

pub use enumeration::MonoidTable;
pub use error::{Error, Result};
pub use green::{GreenStructure, Side};
pub use perm::{Perm, PermGroup};
pub use xform::Transformation;
