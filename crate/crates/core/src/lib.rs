#![no_std]

//! Exact arithmetic for restricting Seshadri constants of ample line bundles
//! on surfaces.
//!
//! For a non-square degree `d = (L^2)` and a solution `(p, q)` of
//! `q^2 - d p^2 = 1`, either `ε(L;1) >= p d / q` or `ε(L;1)` lies in a finite,
//! explicitly enumerable exceptional set. This crate computes that set,
//! sharpens it with the geometric elimination filters and checks the
//! arithmetic behind the `p0 = 1` and `p0 = 2` families.
//!
//! Everything is exact: integers are arbitrary precision and rationals are
//! kept reduced. The crate needs only `alloc`.
//!
//! - [`arith`]: integers, reduced rationals, integer square roots.
//! - [`pell`]: continued fraction of `√d` and Pell solutions.
//! - [`excset`]: candidate enumeration, filters and the pipeline.
//! - [`analysis`]: degree classification and grid verifiers.

extern crate alloc;

pub mod analysis;
pub mod arith;
mod error;
pub mod excset;
pub mod pell;

pub use crate::analysis::{classify_d, DegreeClass, Pattern, VerificationReport};
pub use crate::arith::{Int, Rat};
pub use crate::error::Error;
pub use crate::excset::{
    run_pipeline, CandidatePair, ConjectureStatus, DegreeReport, FilterId, FilterTrace,
    PipelineConfig, Verdict,
};
pub use crate::pell::{ContinuedFractionExpansion, PellSolution};
