#![no_std]
//! Free-group and graph-of-groups machinery for satellite knot computations.

extern crate alloc;

pub mod agraphs;
pub mod apath;
pub mod braidspace;
pub mod error;
pub mod patternspace;
pub mod satellites;
pub mod stallings;
pub mod word;

pub use error::{Error, Result};
pub use stallings::SubgroupGraph;
pub use word::{Gen, Word};
