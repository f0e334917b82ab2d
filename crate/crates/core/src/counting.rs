//! Exact big-integer counting: Bell and Stirling numbers, binomials,
//! factorials and the other closed forms used by the size formulas.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default bound for the shared [`CountTable`].
pub const DEFAULT_COUNT_BOUND: usize = 64;

/// Bell numbers `b_m` and Stirling numbers of the second kind `S(m, k)`,
/// tabulated once up to `bound` and read-only afterwards.
#[derive(Debug, Clone)]
pub struct CountTable {
    bound: usize,
    stirling: Vec<Vec<BigUint>>,
    bell: Vec<BigUint>,
}

impl CountTable {
    pub fn new(bound: usize) -> Self {
        let mut stirling: Vec<Vec<BigUint>> = Vec::with_capacity(bound + 1);
        stirling.push(vec![BigUint::one()]);
        for m in 1..=bound {
            let prev = &stirling[m - 1];
            let mut row = vec![BigUint::zero(); m + 1];
            for k in 1..=m {
                let mut v = if k < m {
                    &prev[k] * BigUint::from(k)
                } else {
                    BigUint::zero()
                };
                v += &prev[k - 1];
                row[k] = v;
            }
            stirling.push(row);
        }
        let bell = stirling
            .iter()
            .map(|row| row.iter().fold(BigUint::zero(), |acc, x| acc + x))
            .collect();
        CountTable {
            bound,
            stirling,
            bell,
        }
    }

    /// Process-wide table with [`DEFAULT_COUNT_BOUND`].
    pub fn shared() -> &'static CountTable {
        static TABLE: OnceLock<CountTable> = OnceLock::new();
        TABLE.get_or_init(|| CountTable::new(DEFAULT_COUNT_BOUND))
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn bell(&self, m: usize) -> Result<BigUint> {
        self.check(m)?;
        Ok(self.bell[m].clone())
    }

    pub fn stirling2(&self, m: usize, k: usize) -> Result<BigUint> {
        self.check(m)?;
        Ok(self.stirling[m].get(k).cloned().unwrap_or_default())
    }

    fn check(&self, m: usize) -> Result<()> {
        if m > self.bound {
            return Err(Error::BoundExceeded {
                size: m,
                bound: self.bound,
            });
        }
        Ok(())
    }
}

/// Bell number from the shared table. Panics beyond [`DEFAULT_COUNT_BOUND`].
pub fn bell(m: usize) -> BigUint {
    CountTable::shared().bell(m).expect("bell number beyond shared bound")
}

pub fn stirling2(m: usize, k: usize) -> BigUint {
    CountTable::shared()
        .stirling2(m, k)
        .expect("stirling number beyond shared bound")
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `(2n-1)!! = 1 * 3 * ... * (2n-1)`, the number of perfect matchings of `2n` points.
pub fn double_factorial_odd(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(2 * k - 1))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Catalan number `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / BigUint::from(n + 1)
}

pub fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn bell_numbers_match_recurrence() {
        // b_{m+1} = sum_k binom(m, k) b_k
        let t = CountTable::new(20);
        let mut oracle = vec![b(1)];
        for m in 0..20 {
            let next = (0..=m).fold(BigUint::zero(), |acc, k| acc + binomial(m, k) * &oracle[k]);
            oracle.push(next);
        }
        for m in 0..=20 {
            assert_eq!(t.bell(m).unwrap(), oracle[m], "b_{m}");
        }
        assert_eq!(t.bell(8).unwrap(), b(4140));
    }

    #[test]
    fn stirling_small_values() {
        let t = CountTable::new(10);
        assert_eq!(t.stirling2(4, 2).unwrap(), b(7));
        assert_eq!(t.stirling2(5, 3).unwrap(), b(25));
        assert_eq!(t.stirling2(5, 0).unwrap(), b(0));
        assert_eq!(t.stirling2(0, 0).unwrap(), b(1));
        assert_eq!(t.stirling2(3, 7).unwrap(), b(0));
    }

    #[test]
    fn bound_is_enforced() {
        let t = CountTable::new(5);
        assert!(matches!(t.bell(6), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn closed_forms() {
        assert_eq!(double_factorial_odd(5), b(945));
        assert_eq!(catalan(6), b(132));
        assert_eq!(binomial(9, 5), b(126));
        assert_eq!(binomial(3, 5), b(0));
        assert_eq!(factorial(5), b(120));
        assert_eq!(pow2(10), b(1024));
    }
}
