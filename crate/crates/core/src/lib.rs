//! Numerical laboratory for the scaling method on pseudoconvex model domains.
//!
//! Exact symbolic layer: [`scalar`], [`jexpr`], [`wpoly`]. Domain catalog
//! and structural checks: [`weights`], [`psh`], [`domains`]. Scaling
//! pipeline: [`sequences`], [`maps`], [`scaling`]. Numerical diagnostics:
//! [`analysis`]. End-to-end entry points: [`specfile`], [`repro`].

pub mod analysis;
pub mod domains;
pub mod error;
pub mod hermitian;
pub mod jexpr;
pub mod maps;
mod par;
pub mod psh;
pub mod realfn;
pub mod repro;
pub mod scalar;
pub mod scaling;
pub mod sequences;
pub mod specfile;
pub mod sphere;
pub mod weights;
pub mod wpoly;

pub use error::{Error, Result};
