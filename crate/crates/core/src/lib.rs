pub mod bitset;
pub mod catalog;
pub mod classes;
pub mod config;
pub mod constants;
pub mod context;
pub mod error;
pub mod exact;
pub mod group;
pub mod groupfile;
pub mod hp;
pub mod laws;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod resrad;
pub mod section;
pub mod selftest;
pub mod sharpness;

pub use config::{Caps, Execution};
pub use context::Context;
pub use error::{Error, Result};
pub use group::{GroupHandle, WreathProduct};
pub use perm::Permutation;
