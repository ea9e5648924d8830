//! Nilradicals of parabolic subalgebras, their cohomology, and symplectic
//! structures on them.

#![allow(clippy::needless_range_loop)]

pub mod chevbasis;
pub mod cohom;
pub mod error;
pub mod fixtures;
pub mod kostant;
pub mod linalg;
pub mod modp;
pub mod nilrad;
pub mod obstruct;
pub mod rootsys;
pub mod survey;
pub mod symp;

pub use error::{Error, Result};
pub use linalg::Q;
