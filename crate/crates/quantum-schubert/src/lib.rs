//! Quantum cohomology of generalized flag varieties and the
//! filtered-algebra comparison between `QH^*(G/B)` and `QH^*(G/P)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`] — root systems, Cartan data and coroots;
//! * [`weyl`] — Weyl group elements, reduced words, Bruhat order;
//! * [`parabolic`] — ordered parabolic setups, the Peterson–Woodward lifting
//!   and the virtual null coroot lattice;
//! * [`grading`] — the `Z^{r+1}` gradings `gr` and `gr'`;
//! * [`qh`] — the quantum Chevalley formula and the quantum product;
//! * [`verify`] — executable checks and table reproduction;
//! * [`cli`] — the `qschub` command-line front end.

pub mod error;
pub mod lattice;
pub mod rootsys;
pub mod weyl;
pub mod parabolic;
pub mod grading;
pub mod qh;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
