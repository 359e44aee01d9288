//! Gamma-function ratios through the joint-factor product, exact unit-ball
//! volume ratios, and a catalog of bounds for
//! `v_n = Ω_{n−1}/Ω_n` and `w_n = Ω_n²/(Ω_{n−1}Ω_{n+1})` with tools to check
//! them against exact values.
//!
//! Approximate paths are generic over [`Scalar`] (`f32`, `f64`); exact
//! quantities use arbitrary-precision rationals. The aliases below fix the
//! scalar to `f64`, which is what the command-line tool uses.

pub mod analysis;
pub mod ballvol;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod gautschi;
pub mod scalar;
pub mod specfun;

pub use analysis::{
    crossover, klein_rota_check, make_table, remark1_r, remark1_upper_check, verify_bounds,
    CrossoverResult,
};
pub use ballvol::{omega_exact, v_exact, v_product, w_exact, w_product, BallSweep, ExactBallValue};
pub use bounds::{catalog, eval_bound, BoundId, BoundSpec, Side, Target};
pub use error::{Error, Result};
pub use gautschi::{
    gautschi_ratio, joint_factor, joint_factor_truncate, JointFactorArgs, ProductEstimate,
    TruncationControl,
};
pub use scalar::Scalar;
pub use specfun::{
    digamma_closed, digamma_diff, digamma_series, psi_lower_ineq, trigamma_closed,
    trigamma_lower_ineq, HalfInteger,
};

/// Exact rational used for every exact quantity.
pub type Rational = num_rational::BigRational;

pub type Real = f64;
pub type Constants64 = specfun::Constants<f64>;
pub type Constants32 = specfun::Constants<f32>;
pub type JointFactorArgs64 = gautschi::JointFactorArgs<f64>;
pub type ProductEstimate64 = gautschi::ProductEstimate<f64>;
pub type EvaluationRecord64 = analysis::EvaluationRecord<f64>;
pub type SweepContext64 = analysis::SweepContext<f64>;
pub type BoundTable64 = analysis::BoundTable<f64>;
pub type HalfIntTable64 = specfun::HalfIntTable<f64>;
