//! Numerical verification of multiplicative differential forms on Lie
//! groupoids, at desk scale and to stated tolerances.
//!
//! The library builds finite-dimensional and loop-space transformation
//! groupoids, evaluates the differential forms that live on them (the
//! Liouville and symplectic forms of centrally extended cotangent bundles,
//! the invariant three-form and its companion two-form on the conjugation
//! groupoid, the loop transgression form), and checks every identity these
//! objects satisfy: closedness, multiplicativity, cocycle equations in the
//! simplicial-De Rham total complex, holonomy equivariance, and the
//! descent identity relating the loop groupoid to the conjugation
//! groupoid through the holonomy morphism, plus the equivalence-bimodule
//! axioms between the two.
//!
//! Orientation and sign conventions are calibrated once (see
//! [`conventions`]) and recorded in a text file that every suite reads.
//! The `harness` module exposes the suites behind a CLI with
//! machine-readable JSON reports.

pub mod amm;
pub mod central_ext;
pub mod conventions;
pub mod geometry;
pub mod harness;
pub mod lie;
pub mod linalg;
pub mod loopspace;
pub mod morita;
pub mod sampling;
pub mod simplicial;
pub mod tolerances;

pub use conventions::{Conventions, FaceFamily};
pub use harness::{calibrate, run_suite, SuiteConfig, VerificationReport};
