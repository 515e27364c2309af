//! Existence of smooth curves of given degree and genus on projective K3
//! surfaces of degree `2n` in `P^(n+1)`.
//!
//! The crate decides, for a triple `(n, d, g)`, whether some K3 surface of
//! degree `2n` carries a smooth curve of degree `d` and genus `g`. The
//! closed-form arithmetic criteria live in [`classifier`]; [`obstruction`]
//! recovers the same answers by searching the rank-2 Picard lattice
//! `Z H + Z C` for the divisor classes that would break very ampleness of `H`
//! or base point freeness of `C`, and [`oracle`] checks the two against each
//! other and against naive enumeration.

pub mod classifier;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod obstruction;
pub mod oracle;
pub mod record;
pub mod special;

pub use classifier::{classify, Case, ClassificationResult, Exception, PicardDescription, Quadrics};
pub use error::{Error, Result};
pub use lattice::{CurveQuery, DivisorClass, GramLattice, Mode, RankOneWitness};
