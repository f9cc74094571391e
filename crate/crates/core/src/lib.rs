//! Exact symbolic calculator for degenerate Eisenstein series on groups of
//! type D4 (split and quasi-split) and G2.
//!
//! The pipeline is: a labeled relative root datum ([`root_datum`]), Weyl
//! words and torus characters ([`weyl`], [`characters`]), formal products of
//! completed Dedekind zeta functions with Laurent analysis ([`zeta`]), and on
//! top of those the constant terms, pole reports and residue constants
//! ([`eisenstein`]). [`dual_side`] and [`local_integrals`] hold the
//! L-function bookkeeping for the standard representation of G2.

pub mod affine;
pub mod characters;
pub mod cli;
pub mod dual_side;
pub mod eisenstein;
pub mod error;
pub mod local_integrals;
pub mod rational;
pub mod root_datum;
pub mod weyl;
pub mod zeta;

pub use affine::AffineForm;
pub use characters::TorusCharacter;
pub use error::{Error, Result};
pub use rational::Q;
pub use root_datum::{FieldLabel, Preset, Root, RootSystem};
pub use weyl::WeylWord;
pub use zeta::{LaurentData, ZetaExpr};
