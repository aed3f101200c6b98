//! Finite hypergroups given by Cayley tables: the fundamental relations
//! `β` and `γ`, their kernels, quotient hypergroups and free products.

pub mod error;
pub mod fixtures;
pub mod freeprod;
pub mod groups;
pub mod hyper;
pub mod partition;
pub mod quotients;
pub mod relations;
pub mod set;

pub use error::{Error, Result};
pub use groups::GroupTable;
pub use hyper::HyperTable;
pub use partition::Partition;
pub use relations::Limits;
pub use set::{Element, ElementSet};
