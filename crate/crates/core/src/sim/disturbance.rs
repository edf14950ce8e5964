//! Arithmetically structured disturbance inputs.

use std::collections::BTreeMap;

use nalgebra::DVector;

use crate::arith::is_prime;
use crate::{Error, Result};

/// Description of the exogenous input `w_k`.
///
/// The injected vector is returned exactly when the spec's arithmetic
/// condition holds at step `k`, and zero otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum DisturbanceSpec {
    /// `w_k = 0` for all k.
    Zero,
    /// `w_k = d` iff `k` is prime.
    PrimeIndexed { vector: DVector<f64> },
    /// `w_k = d` iff `k ≡ residue (mod modulus)`.
    ResidueClass {
        modulus: u64,
        residue: u64,
        vector: DVector<f64>,
    },
    /// Explicit `(k, d_k)` table; absent steps are zero.
    Table { entries: BTreeMap<u64, DVector<f64>> },
}

impl DisturbanceSpec {
    /// Check internal invariants against a state dimension.
    pub fn validate(&self, dim: usize) -> Result<()> {
        match self {
            DisturbanceSpec::Zero => Ok(()),
            DisturbanceSpec::PrimeIndexed { vector } => check_dim(vector, dim),
            DisturbanceSpec::ResidueClass {
                modulus,
                residue,
                vector,
            } => {
                if *modulus == 0 {
                    return Err(Error::NonPositive { name: "m" });
                }
                if residue >= modulus {
                    return Err(Error::InvalidParameter {
                        name: "r0",
                        reason: format!("residue {residue} not in [0, {modulus})"),
                    });
                }
                check_dim(vector, dim)
            }
            DisturbanceSpec::Table { entries } => {
                for v in entries.values() {
                    check_dim(v, dim)?;
                }
                Ok(())
            }
        }
    }

    /// The disturbance vector applied at step `k`.
    pub fn value_at(&self, step: u64, dim: usize) -> DVector<f64> {
        match self {
            DisturbanceSpec::Zero => DVector::zeros(dim),
            DisturbanceSpec::PrimeIndexed { vector } => {
                if is_prime(step) {
                    vector.clone()
                } else {
                    DVector::zeros(dim)
                }
            }
            DisturbanceSpec::ResidueClass {
                modulus,
                residue,
                vector,
            } => {
                if step % modulus == *residue {
                    vector.clone()
                } else {
                    DVector::zeros(dim)
                }
            }
            DisturbanceSpec::Table { entries } => entries
                .get(&step)
                .cloned()
                .unwrap_or_else(|| DVector::zeros(dim)),
        }
    }
}

fn check_dim(v: &DVector<f64>, dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v2(a: f64, b: f64) -> DVector<f64> {
        DVector::from_vec(vec![a, b])
    }

    #[test]
    fn prime_indexed() {
        let d = DisturbanceSpec::PrimeIndexed {
            vector: v2(0.0, 0.5),
        };
        assert_eq!(d.value_at(4, 2), v2(0.0, 0.0));
        assert_eq!(d.value_at(7, 2), v2(0.0, 0.5));
        assert_eq!(d.value_at(0, 2), v2(0.0, 0.0));
        assert_eq!(d.value_at(1, 2), v2(0.0, 0.0));
        assert_eq!(d.value_at(2, 2), v2(0.0, 0.5));
    }

    #[test]
    fn residue_class() {
        let d = DisturbanceSpec::ResidueClass {
            modulus: 4,
            residue: 1,
            vector: DVector::from_vec(vec![1.0]),
        };
        assert_eq!(d.value_at(9, 1)[0], 1.0);
        assert_eq!(d.value_at(8, 1)[0], 0.0);
    }

    #[test]
    fn table_and_zero() {
        let mut entries = BTreeMap::new();
        entries.insert(3u64, DVector::from_vec(vec![2.0]));
        let d = DisturbanceSpec::Table { entries };
        assert_eq!(d.value_at(3, 1)[0], 2.0);
        assert_eq!(d.value_at(4, 1)[0], 0.0);
        assert_eq!(DisturbanceSpec::Zero.value_at(11, 3), DVector::zeros(3));
    }

    #[test]
    fn validation() {
        let bad = DisturbanceSpec::ResidueClass {
            modulus: 4,
            residue: 4,
            vector: DVector::from_vec(vec![1.0]),
        };
        assert!(bad.validate(1).is_err());
        let mismatch = DisturbanceSpec::PrimeIndexed {
            vector: DVector::from_vec(vec![1.0]),
        };
        assert!(mismatch.validate(2).is_err());
    }
}
