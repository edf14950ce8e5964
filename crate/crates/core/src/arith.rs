//! Exact integer number theory behind the Ramanujan kernels.
//!
//! Everything here is exact: Ramanujan sums are produced by the Hölder
//! closed form `c_q(n) = μ(q/d)·φ(q)/φ(q/d)` with `d = gcd(|n|, q)`, entirely
//! in integer arithmetic. The defining exponential sum is kept as an
//! independent cross-check ([`ramanujan_sum_direct`]); it is the only
//! floating-point path and it must land on an integer.
//!
//! Factorization is plain trial division, which is ample for the moduli this
//! crate targets (q up to about 10^6).

use crate::{Error, Result};

/// Greatest common divisor (Euclid). `gcd(0, b) = b`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple without intermediate overflow for in-range results.
pub fn lcm(a: u64, b: u64) -> u128 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)) as u128 * b as u128
}

/// All primes `<= limit`, ascending. `limit < 2` yields an empty list.
pub fn prime_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Canonical prime factorization of a positive integer.
///
/// Factors are `(prime, exponent)` pairs in strictly increasing prime order;
/// `n = 1` has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Euler's totient from the factorization: `n·∏(1 − 1/p)`.
    pub fn totient(&self) -> u64 {
        let mut phi = self.n;
        for &(p, _) in &self.factors {
            phi = phi / p * (p - 1);
        }
        phi
    }

    /// Möbius function: 0 on squareful numbers, else `(−1)^(#prime factors)`.
    pub fn moebius(&self) -> i64 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All divisors of `n`, unsorted.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs
    }
}

/// Factorize by trial division. Rejects `n = 0`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive { name: "n" });
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d * d <= rest {
        if rest % d == 0 {
            let mut e = 0u32;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// Euler's totient φ(n). Rejects `n = 0`; φ(1) = 1.
pub fn totient(n: u64) -> Result<u64> {
    Ok(factorize(n)?.totient())
}

/// Möbius function μ(n) in {−1, 0, 1}. Rejects `n = 0`.
pub fn moebius(n: u64) -> Result<i64> {
    Ok(factorize(n)?.moebius())
}

/// Ramanujan sum `c_q(n)` by the Hölder closed form, exact.
///
/// With `d = gcd(|n|, q)` (so `d = q` when `n ≡ 0 mod q`):
/// `c_q(n) = μ(q/d) · φ(q) / φ(q/d)`. The sum is even in `n`, so negative
/// indices reduce to `|n|`.
pub fn ramanujan_sum(q: u64, n: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::NonPositive { name: "q" });
    }
    let d = gcd(n.unsigned_abs(), q);
    let q_over_d = q / d;
    let mu = moebius(q_over_d)?;
    if mu == 0 {
        return Ok(0);
    }
    let phi_q = totient(q)?;
    let phi_qd = totient(q_over_d)?;
    // phi(q/d) divides phi(q) whenever q/d divides q.
    debug_assert_eq!(phi_q % phi_qd, 0);
    Ok(mu * (phi_q / phi_qd) as i64)
}

/// Ramanujan sum by the defining exponential sum, rounded to an integer.
///
/// Evaluates `Σ_{k coprime to q} cos(2πkn/q)` in floating point; fails if
/// the residual to the nearest integer exceeds 1e−6. This is the
/// independent oracle for [`ramanujan_sum`], not the production path.
pub fn ramanujan_sum_direct(q: u64, n: i64) -> Result<i64> {
    if q == 0 {
        return Err(Error::NonPositive { name: "q" });
    }
    let n_mod = n.rem_euclid(q as i64) as u64;
    let mut sum = 0.0f64;
    for k in 1..=q {
        if gcd(k, q) == 1 {
            // reduce k·n mod q before forming the angle to keep it in [0, 2π)
            let t = ((k as u128 * n_mod as u128) % q as u128) as f64;
            sum += (2.0 * std::f64::consts::PI * t / q as f64).cos();
        }
    }
    let rounded = sum.round();
    let residual = (sum - rounded).abs();
    if residual > 1e-6 {
        return Err(Error::RoundingResidual { q, n, residual });
    }
    Ok(rounded as i64)
}

/// One full period of `c_q`: entry `s` holds `c_q(s)` for `s = 0..q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamanujanRow {
    q: u64,
    values: Vec<i64>,
}

impl RamanujanRow {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `c_q(n)` for any integer `n`, by periodicity.
    pub fn value(&self, n: i64) -> i64 {
        self.values[n.rem_euclid(self.q as i64) as usize]
    }
}

/// Build the full period table of `c_q` via the Hölder form.
///
/// The modulus is factorized once and the totient/Möbius values of its
/// divisors are reused across the row.
pub fn ramanujan_row(q: u64) -> Result<RamanujanRow> {
    if q == 0 {
        return Err(Error::NonPositive { name: "q" });
    }
    let fact = factorize(q)?;
    let phi_q = fact.totient();
    let mut divisor_data: Vec<(u64, u64, i64)> = Vec::new(); // (divisor, phi, mu)
    for d in fact.divisors() {
        let df = factorize(d)?;
        divisor_data.push((d, df.totient(), df.moebius()));
    }
    divisor_data.sort_unstable_by_key(|&(d, _, _)| d);

    let lookup = |d: u64| -> (u64, i64) {
        let i = divisor_data
            .binary_search_by_key(&d, |&(v, _, _)| v)
            .expect("divisor of q");
        (divisor_data[i].1, divisor_data[i].2)
    };

    let mut values = Vec::with_capacity(q as usize);
    for s in 0..q {
        let d = if s == 0 { q } else { gcd(s, q) };
        let (phi_qd, mu) = lookup(q / d);
        let v = if mu == 0 { 0 } else { mu * (phi_q / phi_qd) as i64 };
        values.push(v);
    }
    Ok(RamanujanRow { q, values })
}

/// Linear-sieve tables of smallest prime factor, totient, and Möbius up to a
/// bound. Immutable once built; used where many consecutive moduli are
/// needed (Cesàro weights, truncated inner products).
#[derive(Debug, Clone)]
pub struct SieveTables {
    limit: u64,
    phi: Vec<u64>,
    mu: Vec<i8>,
}

impl SieveTables {
    /// Tables for all moduli `1..=limit`.
    pub fn up_to(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::NonPositive { name: "limit" });
        }
        const MAX_LIMIT: u64 = 100_000_000;
        if limit > MAX_LIMIT {
            return Err(Error::InvalidParameter {
                name: "limit",
                reason: format!("sieve limit {limit} exceeds {MAX_LIMIT}"),
            });
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<usize> = Vec::new();
        let mut phi = vec![0u64; n + 1];
        let mut mu = vec![0i8; n + 1];
        if n >= 1 {
            phi[1] = 1;
            mu[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i);
                phi[i] = i as u64 - 1;
                mu[i] = -1;
            }
            for &p in &primes {
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
                if i % p == 0 {
                    phi[i * p] = phi[i] * p as u64;
                    mu[i * p] = 0;
                } else {
                    phi[i * p] = phi[i] * (p as u64 - 1);
                    mu[i * p] = -mu[i];
                }
            }
        }
        Ok(Self { limit, phi, mu })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize]
    }

    pub fn mu(&self, n: u64) -> i64 {
        self.mu[n as usize] as i64
    }

    /// `c_q(n)` from the tables, exact.
    pub fn ramanujan(&self, q: u64, n: i64) -> i64 {
        debug_assert!(q >= 1 && q <= self.limit);
        let d = gcd(n.unsigned_abs(), q);
        let qd = (q / d) as usize;
        let mu = self.mu[qd] as i64;
        if mu == 0 {
            0
        } else {
            mu * (self.phi[q as usize] / self.phi[qd]) as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division oracle used by the sieve and factorization tests.
    fn primes_by_trial(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&n| is_prime(n)).collect()
    }

    #[test]
    fn sieve_edge_cases() {
        assert!(prime_sieve(0).is_empty());
        assert!(prime_sieve(1).is_empty());
        assert_eq!(prime_sieve(2), vec![2]);
    }

    #[test]
    fn sieve_matches_trial_division() {
        assert_eq!(prime_sieve(10), vec![2, 3, 5, 7]);
        assert_eq!(prime_sieve(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_sieve(1000), primes_by_trial(1000));
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(0).is_err());
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        // product of p^e reconstructs n
        for n in 1..500u64 {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.factors().iter().all(|&(p, e)| is_prime(p) && e >= 1));
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn totient_examples() {
        assert!(totient(0).is_err());
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(totient(97).unwrap(), 96);
        // coprime-count oracle
        for n in 1..=200u64 {
            let count = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(totient(n).unwrap(), count, "phi({n})");
        }
    }

    #[test]
    fn moebius_examples() {
        assert!(moebius(0).is_err());
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
    }

    #[test]
    fn ramanujan_sum_examples() {
        assert_eq!(ramanujan_sum(5, 1).unwrap(), -1);
        assert_eq!(ramanujan_sum(4, 2).unwrap(), -2);
        assert_eq!(ramanujan_sum(6, 3).unwrap(), -2);
        assert!(ramanujan_sum(0, 3).is_err());
    }

    #[test]
    fn ramanujan_sum_direct_examples() {
        assert_eq!(ramanujan_sum_direct(1, 7).unwrap(), 1);
        assert_eq!(ramanujan_sum_direct(5, 0).unwrap(), 4);
        assert_eq!(ramanujan_sum_direct(10, 5).unwrap(), -4);
    }

    #[test]
    fn holder_matches_direct_sum() {
        for q in 1..=60u64 {
            for n in 0..q as i64 {
                assert_eq!(
                    ramanujan_sum(q, n).unwrap(),
                    ramanujan_sum_direct(q, n).unwrap(),
                    "c_{q}({n})"
                );
            }
        }
    }

    #[test]
    fn row_examples_and_invariants() {
        assert_eq!(ramanujan_row(1).unwrap().values(), &[1]);
        assert_eq!(ramanujan_row(5).unwrap().values(), &[4, -1, -1, -1, -1]);
        assert_eq!(ramanujan_row(6).unwrap().values(), &[2, 1, -1, -2, -1, 1]);
        for q in 1..=80u64 {
            let row = ramanujan_row(q).unwrap();
            let phi = totient(q).unwrap() as i64;
            assert_eq!(row.values()[0], phi);
            let sum: i64 = row.values().iter().sum();
            assert_eq!(sum, if q == 1 { 1 } else { 0 }, "row sum q={q}");
            assert!(row.values().iter().all(|&v| v.abs() <= phi));
            // periodicity through the accessor
            assert_eq!(row.value(-1), row.value(q as i64 - 1));
            assert_eq!(row.value(3 + q as i64), row.value(3));
        }
    }

    #[test]
    fn moebius_specialization_and_multiplicativity() {
        for q in 1..=40u64 {
            let mu = moebius(q).unwrap();
            for n in 0..q as i64 {
                if gcd(n.unsigned_abs(), q) == 1 {
                    assert_eq!(ramanujan_sum(q, n).unwrap(), mu);
                }
            }
        }
        for q1 in 1..=20u64 {
            for q2 in 1..=20u64 {
                if gcd(q1, q2) != 1 {
                    continue;
                }
                for n in 0..(q1 * q2) as i64 {
                    assert_eq!(
                        ramanujan_sum(q1 * q2, n).unwrap(),
                        ramanujan_sum(q1, n).unwrap() * ramanujan_sum(q2, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn even_in_n() {
        for q in 1..=30u64 {
            for n in -(q as i64)..=(q as i64) {
                assert_eq!(ramanujan_sum(q, n).unwrap(), ramanujan_sum(q, -n).unwrap());
            }
        }
    }

    #[test]
    fn sieve_tables_agree_with_scalar_functions() {
        let tables = SieveTables::up_to(2000).unwrap();
        for n in 1..=2000u64 {
            assert_eq!(tables.phi(n), totient(n).unwrap());
            assert_eq!(tables.mu(n), moebius(n).unwrap());
        }
        for q in 1..=120u64 {
            for n in -5..(q as i64) {
                assert_eq!(tables.ramanujan(q, n), ramanujan_sum(q, n).unwrap());
            }
        }
    }
}
