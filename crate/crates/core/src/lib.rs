//! Exact combinatorics of horizontal open books on Seifert fibered 3-manifolds.
//!
//! The crate is organised around four layers:
//!
//! - [`seifert`]: Seifert invariants `(g, n; r_1, ..., r_k)`, the eligible class
//!   `n <= 0`, `r_i = -1/p_i`, and the rational Euler number.
//! - [`plumbing`]: star-shaped plumbing graphs, blow-ups and blow-downs, and the
//!   normalization of a positive-leaf star into non-positive standard form.
//! - [`homology`]: integer matrices, fraction-free determinants, Smith normal form
//!   and first homology of a plumbed boundary.
//! - [`openbook`]: the open book constructor, the boundary-twist classifier,
//!   formal Dehn twist words and contact `(+-1)`-surgery presentations.
//!
//! Every transformation is checked against invariants it must preserve: first
//! homology and the rational Euler number.

pub mod exact;
pub mod homology;
pub mod openbook;
pub mod plumbing;
pub mod seifert;

pub use exact::Rational;
pub use homology::{AbelianGroup, IntegerMatrix};
pub use openbook::{
    Classification, Curve, LanternConfig, OpenBook, SurgeryPresentation, TwistWord,
};
pub use plumbing::{Chain, Move, Normalized, PlumbingGraph, Transcript, Vertex};
pub use seifert::{EligibilityReport, SeifertInvariants};
