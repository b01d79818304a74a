//! Exact Burrows-Wheeler transforms and the combinatorics of their run counts.
//!
//! The crate covers both BWT variants: the rotation-based transform of a word
//! `w` (whose run count is `r(w)`) and the transform of `w$` with a unique end
//! marker ranked below every byte (run count `r_$(w)`). On top of that it
//! provides generators for the word families whose run counts are known in
//! closed form, single-character edit scans, and a registry of executable
//! checks comparing those closed forms against computed transforms.

pub mod bwt;
pub mod ca;
mod error;
pub mod families;
pub mod sensitivity;
mod symbol;
pub mod verify;
pub mod word;

pub use bwt::{
    bwt, bwt_block, bwt_dollar, bwt_dollar_block, inverse_bwt, inverse_bwt_dollar, r, r_dollar,
    rle, runs, BwtMatrix, Run, Transform,
};
pub use ca::{conjugate_array, CaBuilder, ConjugateArray};
pub use error::{Error, Result};
pub use symbol::{Symbol, END_MARKER_BYTE};
