//! Quantum decision theory for two conditions and two choices.
//!
//! * [`decision`]: closed-form quantum conditional probabilities, the
//!   classical prediction and both families of bounds.
//! * [`amplitude`]: the same probabilities computed from explicit complex
//!   amplitudes, projections and density matrices, for any number of
//!   conditions and choices.
//! * [`geometry`]: level sets of the conditional probability in the phase
//!   plane, their intersections and contour grids.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`). The aliases below
//! fix the scalar to `f64`.

// `!(x > tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod decision;
pub mod error;
pub mod geometry;
pub mod scalar;
pub mod types;

pub use decision::{
    classical_bounds, conditional_classical, conditional_quantum, conditional_quantum_at_cosines,
    extremal_weights, interference_amplitude, quantum_bounds, sure_thing_violation,
    two_level_bounds, two_level_mix, ExtremalWeights, MixedProbability, QuantumBounds,
    TwoLevelBounds,
};
pub use error::{QdtError, Result};
pub use geometry::{
    concurrency, contour, intersect, sample_trajectory, trajectory, ConcurrencyReport, ContourGrid,
    Intersection, Region, TrajectoryLine,
};
pub use scalar::Scalar;
pub use types::{Choice, PhasePair, ProbabilityInterval, TwoChoiceExperiment};

pub type Experiment = TwoChoiceExperiment<f64>;
pub type Phases = PhasePair<f64>;
pub type Interval = ProbabilityInterval<f64>;
pub type Line = TrajectoryLine<f64>;
pub type Grid = ContourGrid<f64>;
pub type State = amplitude::JointState<f64>;
pub type Event = amplitude::IntermediateEvent<f64>;
pub type Density = amplitude::ConditionDensity<f64>;

pub type Experiment32 = TwoChoiceExperiment<f32>;
pub type Phases32 = PhasePair<f32>;
