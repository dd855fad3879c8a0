//! Restless multi-armed bandits with partially observed arms, k-step
//! unlabeled transitions, and Thompson sampling backed by Stein-variational
//! recovery of each arm's transition dynamics.
//!
//! The crate is organized around six pieces:
//!
//! * [`mdp`] — transition matrices, the controlled-restarts environment
//!   (CRE), rewards, and exact matrix operations.
//! * [`kstep`] — sufficient statistics, likelihood, and gradients for
//!   recovering dynamics from k-step unlabeled trajectories.
//! * [`stein`] — finite-particle SVGD, its mirror (simplex-respecting) and
//!   projected variants, kernels, and RMSprop step-size control.
//! * [`policies`] — Whittle index, myopic, and random arm-selection rules
//!   behind a common selection interface.
//! * [`engine`] — the bandit loop: episodic posterior sampling, strict-budget
//!   selection, partial observation with gaps, and batched updates.
//! * [`harness`] — data ingestion, dynamics fitting, baseline comparisons,
//!   sensitivity grids, split-half evaluation, and CSV/JSONL output.

pub mod engine;
pub mod harness;
pub mod kstep;
pub mod mdp;
pub mod policies;
pub mod rng;
pub mod stein;

pub use engine::{History, Observation, RunConfig};
pub use kstep::{KStepCounts, KStepFamily, KStepModel, Trajectory, TransitionParams};
pub use mdp::{CreArmSpec, TransitionMatrix};
pub use policies::{ArmModel, Selection, WhittleTable};
pub use rng::RngStream;
pub use stein::{Bandwidth, KernelSpec, OptimizerState, ParticleSet};
