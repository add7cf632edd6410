//! Tire pitch sequence noise optimization.
//!
//! Finds the order of pitch types around a one-track tire whose profile has
//! the smallest peak Fourier harmonic, subject to occurrence, adjacency and
//! run-length constraints.

pub mod error;
pub mod ga;
pub mod graph;
pub mod instance_file;
pub mod milp;
pub mod pitch;
pub mod search;
pub mod spectrum;

pub use error::{Error, Result};
pub use ga::{solve_ga, solve_ga_traced, GaConfig, GenerationStats, Selection};
pub use graph::{build_graph, PitchGraph};
pub use instance_file::{load_instance_file, parse_instance_file, InstanceFile};
pub use milp::{
    build_milp, evaluate_assignment, parse_lp, AssignmentCheck, MilpModel, MilpOptions,
};
pub use pitch::{
    canonical_types, derive_unit, min_rotation, parse_ratio, validate_sequence, Instance,
    PitchCatalog, PitchSequence, Rational, ValidityReport,
};
pub use search::{
    gap_percent, incumbent_log, solve_approx, solve_exact, SolveOptions, SolveResult, Symmetry,
};
pub use spectrum::{
    approx_noise, contribution_tables, dirac_spectrum, exact_noise, profile_spectrum,
    ContributionTables, NoisePeak, Objective, Spectrum, SpectrumKernel,
};
