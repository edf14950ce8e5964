//! Reference simulators and trajectory analysis.
//!
//! The discrete simulator iterates `x_{k+1} = f(x_k) + w_k` for a linear or
//! named nonlinear transition under an arithmetically structured
//! disturbance. The hybrid simulator integrates a lightly damped oscillator
//! and applies a dissipative jump whenever continuous time hits a prime.
//! Traces convert trajectories into per-step Euclidean and Ramanujan-kernel
//! norms; checkers evaluate the energy-function conditions along a hybrid
//! run.

mod checks;
mod discrete;
mod disturbance;
mod filter;
mod hybrid;
mod trace;

pub use checks::{
    lyapunov_flow_check, lyapunov_jump_check, FlowCheckReport, FlowViolation, JumpCheck,
    JumpCheckReport,
};
pub use discrete::{example1_matrix, example1_system, simulate_discrete, DiscreteSystem,
    DiscreteTrajectory, Transition};
pub use disturbance::DisturbanceSpec;
pub use filter::{filter_demo, FilterDemoReport};
pub use hybrid::{integrate_flow, simulate_hybrid, HybridSample, HybridSystem, HybridTrajectory,
    JumpEvent};
pub use trace::{
    hybrid_ramanujan_trace, ramanujan_trace, trace_energies, HybridTracePoint, TraceConfig,
    TraceNorm, TracePoint,
};

/// Simulated states abort beyond this magnitude (overflow guard for
/// user-supplied unstable parameters).
pub const STATE_LIMIT: f64 = 1e12;
