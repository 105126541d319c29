//! Finite-group and representation toolkit: exact arithmetic over `F_q`,
//! abstract groups on dense indices, 2x2 matrix groups, splitting criteria,
//! semidirect products, induced representations and pair groups, each with
//! checks that the constructed objects have the claimed properties.

pub mod error;
pub mod ffield;
pub mod groupspec;
pub mod grp;
pub mod induce;
pub mod linalg;
pub mod matgrp;
pub mod par;
pub mod repalg;
pub mod report;
pub mod sdp;
pub mod split;
pub mod suites;

pub use error::{Error, Result};
pub use par::Exec;
