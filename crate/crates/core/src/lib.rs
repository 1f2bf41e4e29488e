//! Fixed-point-aware Mahonian statistics.
//!
//! Words with nonnegative letters encode permutations through
//! [`zder::zder`]: fixed points become zeros and the remaining values form a
//! reduced derangement. Two bijections act on the resulting shuffle classes:
//!
//! - [`phi::phi`] moves zeros so that the rise set of a word becomes the
//!   modified rise set (`RISE•`) of its image;
//! - [`f3::f3`] carries the major index of a word to its `mafz` statistic
//!   while keeping the last letter.
//!
//! Lifted to permutations they transfer `(fix, dez, maz)` to
//! `(fix, des, maj)` and `(fix, maz)` to `(fix, maf)`. The [`enumeration`]
//! module checks these transfers exhaustively and [`qseries`] compares the
//! resulting distributions with their known generating functions.

pub mod enumeration;
pub mod error;
pub mod f3;
pub mod phi;
pub mod qseries;
pub mod report;
pub mod word;
pub mod zder;

pub use error::{Error, Result};
pub use word::{IndexSet, Letter, LetterClass, Word};
pub use zder::{Permutation, StatVector};
