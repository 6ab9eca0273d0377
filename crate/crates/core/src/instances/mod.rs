//! Adversarial and synthetic instance generation: simple metric composition
//! and its powers, certified diameter-2 random graph metrics, and standard
//! families. Generators are pure functions of (seed, parameters); instances
//! carry a provenance block naming the generator, its parameters, the seed,
//! and the PRNG identifier, so they are portable across platforms.

pub mod composition;
pub mod families;
pub mod graphs;
pub mod rng;

pub use composition::{
    composition_power, decompose_flat, decompose_lacunary, metric_composition, CompositionBase,
    CompositionRecord, FlatDecomposition,
};
pub use graphs::{certified_ramsey_graph, graph_metric, random_graph_metric, GraphCertificate};
