//! Qualitative (sign) stability analysis for real matrices.
//!
//! A sign pattern assigns one of `{-, 0, +}` to every entry of an n×n matrix
//! and thereby describes the whole family of real matrices sharing those
//! signs. This crate decides, from the pattern alone, whether almost every
//! member of that family is Hurwitz (all eigenvalues in the open left
//! half-plane), and provides the machinery to validate and illustrate that
//! verdict:
//!
//! - [`sign`] — sign patterns, real matrices, parsing and realization;
//! - [`graph`] — the induced digraph, simple-cycle enumeration, structural rank;
//! - [`stability`] — the five-condition qualitative stability test with witnesses;
//! - [`spectra`] — dense eigenvalues, determinants, and polynomial roots,
//!   computed in-house with residual verification;
//! - [`sampler`] — seeded Monte Carlo over random realizations of a pattern;
//! - [`rootlocus`] — loop-gain reduction of simple k-cycles, root-locus
//!   sweeps, and asymptote geometry.
//!
//! The verdict is *generic*: a pattern judged stable can still admit
//! realizations with eigenvalues exactly on the imaginary axis, but only on
//! a measure-zero set of parameter values. The Monte Carlo summaries count
//! such draws as marginal rather than as refutations.
//!
//! All types are immutable values and all operations are pure functions;
//! everything here is safe to share across threads.

pub mod assign;
pub mod defaults;
pub mod graph;
pub mod rootlocus;
pub mod sampler;
pub mod sign;
pub mod spectra;
pub mod stability;

pub use graph::{Cycle, Digraph, GraphError};
pub use rootlocus::{GainSign, LocusTrace, SimpleCycleSystem};
pub use sampler::{MagnitudeDistribution, SampleSummary};
pub use sign::{ParseError, RealMatrix, Sign, SignPattern};
pub use spectra::{MonicPolynomial, Spectrum, SpectraError, StabilityClass};
pub use stability::{ConditionId, ConditionResult, StabilityReport, Verdict};
