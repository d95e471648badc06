//! Exact algebra for regular covers of punctured disks and their mapping classes.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is exact: words in
//! free groups are kept freely reduced, deck groups are Cayley tables, and
//! homology is computed over the integers.
//!
//! Module map:
//!
//! - [`words`]: freely reduced words over a ranked alphabet.
//! - [`autos`]: free-group endomorphisms, Artin generators and marked
//!   (groupoid) automorphisms.
//! - [`braids`]: braid words, the Artin action and handle reduction.
//! - [`cover`]: deck groups, cover labelings, the path groupoid of the cover,
//!   liftability tests and the lift operator.
//! - [`homology`]: Schreier bases of kernel subgroups and induced actions on
//!   first homology of punctured and filled covers.
//! - [`twists`]: twist words, relation sets and the derivation checker.
//! - [`census`]: enumeration of cyclic covers and their braid orbits.
//!
//! Composition convention used everywhere: `compose(f, g)` means "f after g",
//! and a braid word acts on the free group as the composite of its letters
//! read left to right, i.e. `artin_action(s1 s2) = compose(A(s1), A(s2))`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod autos;
pub mod braids;
pub mod census;
pub mod cover;
mod error;
pub mod homology;
pub mod matrix;
pub mod twists;
pub mod words;

pub use error::{Error, Result};
