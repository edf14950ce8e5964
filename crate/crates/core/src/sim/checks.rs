//! Energy-function condition checkers for hybrid runs.
//!
//! With `V(x) = ½(x₁² + x₂²)` fixed for the oscillator: along the flow the
//! analytic derivative collapses to `⟨∇V, f⟩ = −c_damp·x₂²`, and across a
//! jump `ΔV = ½(c_jump² − 1)·x₂²`. The checkers evaluate both identities
//! numerically at every recorded sample/event and additionally bound the
//! finite-difference slope of V between consecutive samples.

use super::hybrid::{HybridSystem, HybridTrajectory};

/// Identity tolerance for expressions that agree up to rounding.
const IDENTITY_TOL: f64 = 1e-12;

/// One violation found along the flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowViolation {
    pub index: usize,
    pub t: f64,
    /// Amount by which the check exceeded its tolerance.
    pub excess: f64,
}

/// Result of checking the flow conditions along the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowCheckReport {
    pub samples_checked: usize,
    /// Worst |⟨∇V, f⟩ − (−c_damp·x₂²)| observed.
    pub max_identity_error: f64,
    /// Largest finite-difference slope of V between consecutive samples.
    pub max_slope: f64,
    pub slope_tolerance: f64,
    pub identity_violations: Vec<FlowViolation>,
    pub slope_violations: Vec<FlowViolation>,
}

impl FlowCheckReport {
    pub fn is_clean(&self) -> bool {
        self.identity_violations.is_empty() && self.slope_violations.is_empty()
    }
}

/// Check the flow-derivative identity and the V slope along a run.
pub fn lyapunov_flow_check(
    sys: &HybridSystem,
    traj: &HybridTrajectory,
    slope_tolerance: f64,
) -> FlowCheckReport {
    let samples = traj.samples();
    let mut max_identity_error = 0.0f64;
    let mut max_slope = f64::NEG_INFINITY;
    let mut identity_violations = Vec::new();
    let mut slope_violations = Vec::new();

    for (i, s) in samples.iter().enumerate() {
        let x = &s.state;
        let f = sys.flow(x);
        let analytic = x[0] * f[0] + x[1] * f[1];
        let expected = -sys.damping * x[1] * x[1];
        let err = (analytic - expected).abs();
        max_identity_error = max_identity_error.max(err);
        if err > IDENTITY_TOL {
            identity_violations.push(FlowViolation {
                index: i,
                t: s.t,
                excess: err - IDENTITY_TOL,
            });
        }
    }

    for (i, w) in samples.windows(2).enumerate() {
        let dt = w[1].t - w[0].t;
        if dt <= 0.0 {
            continue;
        }
        let slope = (HybridSystem::energy(&w[1].state) - HybridSystem::energy(&w[0].state)) / dt;
        max_slope = max_slope.max(slope);
        if slope > slope_tolerance {
            slope_violations.push(FlowViolation {
                index: i + 1,
                t: w[1].t,
                excess: slope - slope_tolerance,
            });
        }
    }

    FlowCheckReport {
        samples_checked: samples.len(),
        max_identity_error,
        max_slope,
        slope_tolerance,
        identity_violations,
        slope_violations,
    }
}

/// Per-jump energy bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpCheck {
    pub t: f64,
    pub delta_v: f64,
    pub expected_delta_v: f64,
    pub error: f64,
}

/// Result of checking every jump's energy drop.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpCheckReport {
    pub jumps: Vec<JumpCheck>,
    pub max_error: f64,
    pub all_nonpositive: bool,
}

impl JumpCheckReport {
    pub fn is_clean(&self) -> bool {
        self.max_error <= IDENTITY_TOL && self.all_nonpositive
    }
}

/// Verify `ΔV = ½(c_jump² − 1)·x₂²(before)` at every jump event.
pub fn lyapunov_jump_check(sys: &HybridSystem, traj: &HybridTrajectory) -> JumpCheckReport {
    let factor = 0.5 * (sys.jump_scale * sys.jump_scale - 1.0);
    let mut jumps = Vec::with_capacity(traj.jump_events().len());
    let mut max_error = 0.0f64;
    let mut all_nonpositive = true;
    for e in traj.jump_events() {
        let dv = e.delta_energy();
        let expected = factor * e.before[1] * e.before[1];
        let error = (dv - expected).abs();
        max_error = max_error.max(error);
        if dv > 0.0 {
            all_nonpositive = false;
        }
        jumps.push(JumpCheck {
            t: e.t,
            delta_v: dv,
            expected_delta_v: expected,
            error,
        });
    }
    JumpCheckReport {
        jumps,
        max_error,
        all_nonpositive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::simulate_hybrid;
    use approx::assert_abs_diff_eq;
    use nalgebra::Vector2;

    #[test]
    fn flow_derivative_point_values() {
        let sys = HybridSystem::default();
        // at x = (1, 1): <grad V, f> = -0.1
        let x = Vector2::new(1.0, 1.0);
        let f = sys.flow(&x);
        assert_abs_diff_eq!(x[0] * f[0] + x[1] * f[1], -0.1, epsilon = 1e-15);
        // no damping without velocity
        let x = Vector2::new(5.0, 0.0);
        let f = sys.flow(&x);
        assert_abs_diff_eq!(x[0] * f[0] + x[1] * f[1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn full_run_is_clean() {
        let sys = HybridSystem::default();
        let traj = simulate_hybrid(&sys, &Vector2::new(1.0, 1.0)).unwrap();
        let flow = lyapunov_flow_check(&sys, &traj, 1e-6);
        assert!(flow.is_clean(), "flow report: {flow:?}");
        assert!(flow.max_slope <= 1e-9);
        let jump = lyapunov_jump_check(&sys, &traj);
        assert!(jump.is_clean());
        assert_eq!(jump.jumps.len(), 15);
    }

    #[test]
    fn jump_delta_examples() {
        let sys = HybridSystem::default();
        // before = (1, 1): dV = 0.5(1 + 0.36) - 0.5(1 + 1) = -0.32
        let before = Vector2::new(1.0, 1.0);
        let after = sys.jump(&before);
        let dv = HybridSystem::energy(&after) - HybridSystem::energy(&before);
        assert_abs_diff_eq!(dv, -0.32, epsilon = 1e-15);
        // before = (3, 0): the jump leaves the state unchanged
        let before = Vector2::new(3.0, 0.0);
        let after = sys.jump(&before);
        assert_eq!(HybridSystem::energy(&after), HybridSystem::energy(&before));
    }
}
