//! Exact computational algebra for finite skew left braces.
//!
//! The crate provides a validated Cayley-table group kernel, skew left
//! braces with their lambda maps and ideals, the associated semidirect
//! ("lambda") groups, an exact character-degree engine, representation
//! triples over cyclotomic integers, and group/brace isoclinism deciders
//! with certificates. Everything is exact: no floating point anywhere.

// Index loops over Cayley tables read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

pub mod brace;
pub mod caps;
pub mod characters;
pub mod corpus;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod isoclinism;
pub mod lambda;
pub mod report;
pub mod reps;
pub mod verify;

pub use brace::{
    find_brace_isomorphism, is_self_opposite, make_radical_brace, make_trivial_brace, BraceFile,
    BraceHom, LambdaFlavor, LambdaMap, SkewBrace,
};
pub use caps::Caps;
pub use error::{BraceError, CharError, CheckError, GroupError, PropertyViolation, RepError};
pub use group::{ConjugacyData, FiniteGroup, GroupAction, GroupFile, GroupHom, Subset};
pub use report::{CheckItem, Report};
