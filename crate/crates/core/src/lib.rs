//! Finite-group arithmetic regularity toolkit: stabilizers, VC dimension of
//! translate systems, coverings, regularity and structure checks.
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod afz;
pub mod bitset;
pub mod bohr;
pub mod covering;
pub mod decompose;
pub mod error;
pub mod group;
pub mod progression;
pub mod rational;
pub mod regularity;
pub mod stabilizer;
pub mod subgroups;
pub mod subset;
pub mod vc;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use group::{build_group, FiniteGroup, GroupSpec};
pub use rational::{Epsilon, Rational, Threshold};
pub use subset::GroupSubset;
pub use vc::{SetSystem, Side, VcDim};
