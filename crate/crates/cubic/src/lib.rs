//! Cubic rings over Z through GL2(Z)-classes of integral binary cubic
//! forms: enumeration by discriminant, local splitting types, and the
//! local and global density constants governing their counts.

pub mod error;
pub mod forms;
pub mod localtypes;
pub mod census;
pub mod densities;

pub use error::{Error, Result};
pub use forms::{ArchType, Form, RingInvariants, Transform};
pub use localtypes::SplittingSymbol;
