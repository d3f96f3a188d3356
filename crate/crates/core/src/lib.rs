//! Exact combinatorics of stable-pair degenerations of the projective plane.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactmath`]: exact rationals, modular inverses, Hirzebruch–Jung
//!   continued fractions.
//! - [`quotsing`]: cyclic quotient singularities, resolution chains and
//!   cycles, and the `K^2 + rho` bookkeeping attached to them.
//! - [`markov`]: solutions of `a^2 + b^2 + c^2 = 3abc`, mutations, and the
//!   weighted projective planes `P(a^2, b^2, c^2)` they define.
//! - [`curvewt`]: plane curve germs, Newton polygons and the weighted
//!   stability test `wt(D) < d/3 (m + n)`.
//! - [`surfcat`]: surface descriptors, intersection numbers, the coarse
//!   classification, smoothability checks for two-component surfaces and the
//!   built-in degree 4 and 5 catalogues.
//! - [`report`] and [`cli`]: machine-readable reports and the command line.

pub mod cli;
pub mod curvewt;
pub mod error;
pub mod exactmath;
pub mod markov;
pub mod quotsing;
pub mod report;
pub mod surfcat;

pub use error::{Error, Result};
pub use exactmath::{hj_eval, hj_expand, mod_inverse, HJExpansion, Rational};
