//! Eigensolvers, bounds and certificates for adjacency tensors.

pub mod bounds;
pub mod eigenpair;
pub mod nqz;
pub mod oracle;
pub mod positivity;
pub mod sshopm;
pub mod symmetry;

pub use bounds::{closed_form_regular_z, complete_graph_z, z_bounds, BoundsReport};
pub use eigenpair::{h_residual, z_residual, EigenKind, EigenPair, CERTIFICATION_BOUND};
pub use nqz::{nqz_h_spectral_radius, Bracket, NqzConfig, NqzResult, NqzRun, NqzState};
pub use oracle::{brute_force_z_oracle, OracleConfig, ZSpectrumSample, VALUE_CLUSTER_TOL};
pub use positivity::{
    boundary_z_eigenpair, classify_positivity, embed_z_eigenpair, PositivityClass,
    DEFAULT_ZERO_TOL,
};
pub use sshopm::{
    nonnegative_start, sshopm, z_spectral_radius, ShiftPolicy, SshopmConfig, SshopmResult,
    ZStarConfig, ZStarResult,
};
pub use symmetry::{negate_eigenpair, spectrum_symmetry_check, SymmetryCheck};
