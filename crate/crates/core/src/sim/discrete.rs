//! Discrete-time simulation `x_{k+1} = f(x_k) + w_k`.

use nalgebra::{DMatrix, DVector};

use super::disturbance::DisturbanceSpec;
use super::STATE_LIMIT;
use crate::{Error, Result};

/// State transition map: a matrix or a named nonlinear function.
#[derive(Debug, Clone)]
pub enum Transition {
    Linear(DMatrix<f64>),
    Nonlinear {
        name: &'static str,
        map: fn(&DVector<f64>) -> DVector<f64>,
    },
}

impl Transition {
    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        match self {
            Transition::Linear(a) => a * x,
            Transition::Nonlinear { map, .. } => map(x),
        }
    }
}

/// A discrete-time system: dimension, transition, and disturbance input.
#[derive(Debug, Clone)]
pub struct DiscreteSystem {
    dim: usize,
    transition: Transition,
    disturbance: DisturbanceSpec,
}

impl DiscreteSystem {
    /// Linear system `x_{k+1} = A·x_k + w_k`.
    pub fn linear(a: DMatrix<f64>, disturbance: DisturbanceSpec) -> Result<Self> {
        if a.nrows() != a.ncols() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                got: a.ncols(),
            });
        }
        let dim = a.nrows();
        disturbance.validate(dim)?;
        Ok(Self {
            dim,
            transition: Transition::Linear(a),
            disturbance,
        })
    }

    /// Named nonlinear system with an explicit state dimension.
    pub fn nonlinear(
        name: &'static str,
        dim: usize,
        map: fn(&DVector<f64>) -> DVector<f64>,
        disturbance: DisturbanceSpec,
    ) -> Result<Self> {
        disturbance.validate(dim)?;
        Ok(Self {
            dim,
            transition: Transition::Nonlinear { name, map },
            disturbance,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn transition(&self) -> &Transition {
        &self.transition
    }

    pub fn disturbance(&self) -> &DisturbanceSpec {
        &self.disturbance
    }
}

/// The worked 2x2 Schur-stable matrix.
pub fn example1_matrix() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.8, 0.1, 0.0, 0.8])
}

/// The worked system: `example1_matrix` driven by a prime-indexed
/// disturbance `(0, 0.5)`.
pub fn example1_system() -> DiscreteSystem {
    DiscreteSystem::linear(
        example1_matrix(),
        DisturbanceSpec::PrimeIndexed {
            vector: DVector::from_vec(vec![0.0, 0.5]),
        },
    )
    .expect("well-formed")
}

/// State history `x_0..x_K` plus the disturbances applied at each step.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteTrajectory {
    states: Vec<DVector<f64>>,
    disturbances: Vec<DVector<f64>>,
}

impl DiscreteTrajectory {
    /// All states, `x_0` first; length `K + 1`.
    pub fn states(&self) -> &[DVector<f64>] {
        &self.states
    }

    /// Disturbance applied at step `k` (producing `x_{k+1}`); length `K`.
    pub fn disturbances(&self) -> &[DVector<f64>] {
        &self.disturbances
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Per-step Euclidean norm `(k, ‖x_k‖₂)`.
    pub fn euclidean_trace(&self) -> Vec<(usize, f64)> {
        self.states
            .iter()
            .enumerate()
            .map(|(k, x)| (k, x.norm()))
            .collect()
    }

    /// Squared Euclidean norms, the energies the Ramanujan trace consumes.
    pub fn energies(&self) -> Vec<f64> {
        self.states.iter().map(|x| x.norm_squared()).collect()
    }
}

/// Iterate the system for `steps` transitions from `x0`.
///
/// Deterministic; aborts with a diagnostic if any state component leaves
/// the finite range.
pub fn simulate_discrete(
    sys: &DiscreteSystem,
    x0: &DVector<f64>,
    steps: usize,
) -> Result<DiscreteTrajectory> {
    if x0.len() != sys.dim {
        return Err(Error::DimensionMismatch {
            expected: sys.dim,
            got: x0.len(),
        });
    }
    let mut states = Vec::with_capacity(steps + 1);
    let mut disturbances = Vec::with_capacity(steps);
    let mut x = x0.clone();
    check_state(&x, 0)?;
    states.push(x.clone());
    for k in 0..steps {
        let w = sys.disturbance.value_at(k as u64, sys.dim);
        x = sys.transition.apply(&x) + &w;
        check_state(&x, k + 1)?;
        states.push(x.clone());
        disturbances.push(w);
    }
    Ok(DiscreteTrajectory {
        states,
        disturbances,
    })
}

fn check_state(x: &DVector<f64>, step: usize) -> Result<()> {
    if x.iter().any(|v| !v.is_finite() || v.abs() > STATE_LIMIT) {
        return Err(Error::StateDiverged {
            at: format!("step {step}"),
            limit: STATE_LIMIT,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn v2(a: f64, b: f64) -> DVector<f64> {
        DVector::from_vec(vec![a, b])
    }

    #[test]
    fn one_step_nominal() {
        let sys = DiscreteSystem::linear(example1_matrix(), DisturbanceSpec::Zero).unwrap();
        let traj = simulate_discrete(&sys, &v2(1.0, 1.0), 1).unwrap();
        assert_abs_diff_eq!(traj.states()[1][0], 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(traj.states()[1][1], 0.8, epsilon = 1e-15);
    }

    #[test]
    fn three_steps_with_prime_disturbance() {
        let traj = simulate_discrete(&example1_system(), &v2(1.0, 1.0), 3).unwrap();
        let x3 = &traj.states()[3];
        assert_abs_diff_eq!(x3[0], 0.704, epsilon = 1e-12);
        assert_abs_diff_eq!(x3[1], 1.012, epsilon = 1e-12);
        // disturbance record is parallel: w_2 = (0, 0.5), w_0 = w_1 = 0
        assert_eq!(traj.disturbances()[2], v2(0.0, 0.5));
        assert_eq!(traj.disturbances()[0], v2(0.0, 0.0));
    }

    #[test]
    fn zero_matrix_resets_state() {
        let sys = DiscreteSystem::linear(DMatrix::zeros(2, 2), DisturbanceSpec::Zero).unwrap();
        let traj = simulate_discrete(&sys, &v2(3.0, -4.0), 1).unwrap();
        assert_eq!(traj.states()[1], v2(0.0, 0.0));
    }

    #[test]
    fn euclidean_trace_values() {
        let traj = simulate_discrete(&example1_system(), &v2(1.0, 1.0), 3).unwrap();
        let trace = traj.euclidean_trace();
        assert_abs_diff_eq!(trace[0].1, 2.0f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(trace[3].1, (0.704f64.powi(2) + 1.012f64.powi(2)).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn determinism() {
        let a = simulate_discrete(&example1_system(), &v2(1.0, 1.0), 100).unwrap();
        let b = simulate_discrete(&example1_system(), &v2(1.0, 1.0), 100).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn overflow_guard_triggers() {
        let sys = DiscreteSystem::linear(DMatrix::from_row_slice(1, 1, &[10.0]), DisturbanceSpec::Zero)
            .unwrap();
        let err = simulate_discrete(&sys, &DVector::from_vec(vec![1.0]), 100).unwrap_err();
        assert!(matches!(err, Error::StateDiverged { .. }));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let sys = example1_system();
        assert!(simulate_discrete(&sys, &DVector::from_vec(vec![1.0]), 1).is_err());
    }
}
