//! Contact decomposition of polar curves of irreducible plane branches.
//!
//! Given a branch f (an irreducible plane curve germ, given as a polynomial
//! in x and y), the y-derivatives d^k f / dy^k split into bunches by their
//! contact with f, and each bunch splits once more by a leading-coefficient
//! test inside the pseudo-balls of the branch's root tree.  Both the coarse
//! and the refined decomposition obey closed-form counting laws driven
//! entirely by the characteristic sequence of f.  This crate computes both
//! sides — the prediction from the characteristic sequence and the
//! observation from honest root expansions — and compares them.
//!
//! The pipeline:
//!
//! - [`BivariatePoly`] holds the input curve; [`puiseux_roots`] expands its
//!   roots as fractional power series to a requested depth.
//! - [`resolve_curve`] certifies irreducibility and reads off the
//!   characteristic sequence; [`strata`] builds the pseudo-ball tree.
//! - [`predicted_decomposition`] evaluates the counting laws.
//! - [`decompose_polar`] measures a polar and verdicts every prediction.
//!
//! Arithmetic is exact rational wherever the expansion stays rational and
//! switches to complex floating point per subtree when it does not; all
//! numeric equality decisions go through explicit tolerances carried by
//! [`Config`].

pub mod bivar;
pub mod config;
pub mod contact;
pub mod error;
pub mod exponent;
pub mod invariants;
pub mod newton;
pub mod puiseux;
pub mod scalar;
pub mod unipoly;

pub use bivar::BivariatePoly;
pub use config::Config;
pub use contact::{
    classify_factor, cont, cont_curves, decompose_polar, default_depth, ball_derivative_identity,
    prepare_branch, strata, BallCount, BranchData, BunchObservation, FactorObservation,
    PolarDecomposition, RefinementSide, SemiRootClass, Stratum, StratumBall, Verdict,
};
pub use error::{Error, Result};
pub use exponent::{Exponent, OrderBound, Trunc};
pub use invariants::{
    characteristic_of_series, conjugate_contact, derivative_shape, derivative_shape_oracle,
    index_ik, predicted_decomposition, resolve_curve, BranchResolution, BunchPrediction,
    CharacteristicData, CorollaryFlag, DerivativeShape, PredictedDecomposition,
};
pub use newton::{
    group_branches, is_irreducible, newton_polygon, puiseux_roots, visibly_equal, BranchGroups,
    BranchOrbit, NewtonEdge, RootEntry, RootSet,
};
pub use puiseux::{leading_coeff_wrt, PseudoBall, PuiseuxSeries};
pub use scalar::{Mode, Scalar};
