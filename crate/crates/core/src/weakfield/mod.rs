//! Complex-perturbed Minkowski metric and geodesic motion of a test particle
//! with complex four-momentum.

mod config;
mod connection;
mod motion;

pub use config::{FieldSample, WeakFieldConfig, DEFAULT_GUARD};
pub use connection::{perturbed_metric, weakfield_connection, ConnectionSlice};
pub use motion::{
    cyclotron_period, force_decomposition, geodesic_step, trajectory, ForceDecomposition,
    TestParticle, TrajectorySample,
};
