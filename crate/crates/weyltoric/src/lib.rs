//! Combinatorics of the toric varieties attached to classical root systems:
//! Weyl chamber fans, homology via signed-permutation descents, and the
//! moduli interpretation by pointed chains of projective lines with
//! involution.

pub mod cli;
pub mod fan;
pub mod homology;
pub mod moduli;
pub mod rootsys;
