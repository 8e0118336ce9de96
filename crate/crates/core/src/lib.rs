//! Exact-derivative curvature engine for complex almost contact metric
//! manifolds, together with identity suites for the complex Sasakian
//! structure on the complex Heisenberg group.
//!
//! Layering, bottom to top:
//!
//! * [`jet`] and [`field`]: truncated Taylor jets and tensor fields whose
//!   components are pure functions of a chart point.
//! * [`curvature`]: Levi-Civita connection, Riemann, Ricci, scalar and
//!   sectional curvature at a point.
//! * [`contact`]: the structure tensors `(J, G, H, U, V, u, v)` and their
//!   structure-level identities.
//! * [`models`]: the complex Heisenberg group plus flat and spherical controls.
//! * [`suites`]: named identity batteries, the generalized B-tensor and the
//!   report format.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod contact;
pub mod curvature;
pub mod error;
pub mod field;
pub mod jet;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod suites;

pub use contact::{ContactStructureBundle, SplitVector, StructureAtPoint};
pub use curvature::{ChristoffelAtPoint, CurvatureSign, PointGeometry};
pub use error::{Error, Result};
pub use field::{
    exterior_d_1form, lie_bracket, metric_pair, wedge_1forms, Chart, EndField, MetricTensor,
    OneForm, Point, ScalarField, VectorField, WedgeConvention,
};
pub use jet::{Jet, Jet2Scalar, Layout};
pub use models::{Calibration, ModelInstance, ModelKind};
pub use suites::{
    b_preset, b_tensor, flatness_probes, run_suite, BCoefficients, BPreset, CheckRecord,
    SuiteConfig, SuiteReport,
};
