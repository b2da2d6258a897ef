//! Exact computations in representation categories over prime fields:
//! symmetric, divided and exterior powers, Frobenius twists, the Verlinde
//! quotient of `Rep C_p`, and a battery of executable checks built on them.
//!
//! All arithmetic is over `F_p` with `u32` residues; nothing is approximate.

pub mod error;
pub mod ffla;
pub mod frob;
pub mod io;
pub mod permgrp;
pub mod repmod;
pub mod rng;
pub mod superrep;
pub mod sympow;
pub mod theorems;
pub mod verlinde;
