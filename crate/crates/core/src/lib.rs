//! Finite metric spaces and their Ramsey-type dichotomies.
//!
//! The crate is organized around one currency type, [`MetricSpace`]: every
//! algorithm consumes metric spaces and returns subspace witnesses together
//! with an [`EmbeddingCert`] proving the claimed distortion. On top of that
//! sit tree-shaped representations ([`HstTree`], [`LacunarySequence`]), the
//! constructive extraction algorithms ([`extraction`]), adversarial instance
//! generators ([`instances`]) and exact exponential-time oracles ([`oracle`])
//! that serve as ground truth at desk scale.

pub mod approx;
pub mod embedding;
pub mod error;
pub mod extraction;
pub mod hst;
pub mod instances;
pub mod lacunary;
pub mod metric;
pub mod oracle;

pub use embedding::{distortion_of, EmbeddingCert};
pub use error::{ExtractError, HstError, InstanceError, MetricError, OracleError};
pub use hst::HstTree;
pub use lacunary::LacunarySequence;
pub use metric::{aspect_ratio, equilateral_distortion, restrict, validate_metric};
pub use metric::{MetricSpace, SubspaceWitness};
