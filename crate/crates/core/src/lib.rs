//! Weak superimposed codes: verification, randomized sample-and-alter construction,
//! asymptotic rate bounds and Monte-Carlo experiments.
//!
//! A binary `l × n` matrix is a weak `(t, d)` code when every set `S` of columns with
//! `2 <= |S| <= t` has at least `d` rows in which exactly one member of `S` is 1.
//!
//! ```
//! use wsc::{alteration_construct, verify_weak, ConstructionConfig};
//!
//! let cfg = ConstructionConfig::new(3, 1, 16, 2.0, 7).with_n(40);
//! let (code, log) = alteration_construct(&cfg).unwrap();
//! assert!(verify_weak(&code, 3, 1, None).unwrap().ok);
//! assert_eq!(code.live_count(), log.final_n);
//! ```

pub mod bounds;
pub mod cli;
pub mod construct;
mod error;
pub mod experiments;
pub mod format;
mod kernel;
mod matrix;
pub mod scalar;
pub mod verify;

pub use construct::{
    alteration_construct, cff_alteration_construct, sample_random_code, target_size, CffConfig, ConstructionConfig,
    ConstructionLog, Deletion, TargetSize,
};
pub use error::{Error, Result};
pub use format::{parse_wsc, write_wsc};
pub use matrix::{CodeMatrix, CodeParams};
pub use scalar::Scalar;
pub use verify::{
    cff_verify, is_weak_code, min_distance, verify_locally_thin, verify_weak, VerificationResult, ViolationKind,
    ViolationReport,
};

/// Default floating-point scalar.
pub type Real = f64;
/// Exact rational used by the closed-form cover-free bounds.
pub type Exact = num_rational::BigRational;
pub type BoundTable64 = bounds::BoundTable<f64>;
pub type BoundTable32 = bounds::BoundTable<f32>;
pub type BoundRow64 = bounds::BoundRow<f64>;
