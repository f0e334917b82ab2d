//! Exact sizes: 2-balanced partition counts `U(n, k)` and the closed size
//! formulas for the ramified, tied and partition monoids.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::{bell, binomial, catalan, double_factorial_odd, factorial, pow2, stirling2};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::ramified::DiagramFamily;
use crate::set_partition::count_partitions_where;

/// Default largest ground set for the brute-force `U(n, k)`.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 12;

/// Brute-force count of partitions of `n` elements (the first `k` positive,
/// the next `k` negative, the rest neutral) in which every block holds as
/// many positive as negative elements.
pub fn two_balanced_count(n: usize, k: usize) -> Result<u64> {
    two_balanced_count_bounded(n, k, DEFAULT_BRUTE_FORCE_BOUND)
}

pub fn two_balanced_count_bounded(n: usize, k: usize, bound: usize) -> Result<u64> {
    if 2 * k > n {
        return Err(Error::OutsideDomain(format!("U({n}, {k}) needs 2k <= n")));
    }
    if n > bound {
        return Err(Error::BoundExceeded { size: n, bound });
    }
    if n == 0 {
        return Ok(1);
    }
    count_partitions_where(n, |a| {
        let mut balance = [0i32; 256];
        for (p, &b) in a.iter().enumerate() {
            if p < k {
                balance[b as usize] += 1;
            } else if p < 2 * k {
                balance[b as usize] -= 1;
            }
        }
        balance.iter().all(|&x| x == 0)
    })
}

/// `U(n, k)` through a block-removal recurrence; agrees with
/// [`two_balanced_count`] wherever both run.
pub fn two_balanced_count_recursive(n: usize, k: usize) -> Result<BigUint> {
    if 2 * k > n {
        return Err(Error::OutsideDomain(format!("U({n}, {k}) needs 2k <= n")));
    }
    let mut memo = HashMap::new();
    Ok(balanced_blocks(k, n - 2 * k, &mut memo))
}

// f(p, z): p positives, p negatives, z neutrals. Remove the block of the last
// neutral element, or of the last positive one when no neutral is left.
fn balanced_blocks(p: usize, z: usize, memo: &mut HashMap<(usize, usize), BigUint>) -> BigUint {
    if p == 0 && z == 0 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(&(p, z)) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    if z > 0 {
        for a in 0..=p {
            let pairs = binomial(p, a) * binomial(p, a);
            for c in 0..z {
                total += &pairs * binomial(z - 1, c) * balanced_blocks(p - a, z - 1 - c, memo);
            }
        }
    } else {
        for a in 1..=p {
            total += binomial(p - 1, a - 1) * binomial(p, a) * balanced_blocks(p - a, 0, memo);
        }
    }
    memo.insert((p, z), total.clone());
    total
}

/// Number of Brauer diagrams on `n` strands with exactly `k` up brackets.
pub fn brauer_with_brackets(n: usize, k: usize) -> BigUint {
    // choose endpoints of k arcs on each row, then match the n-2k lines
    let nf = factorial(n);
    let per_row = &nf / (pow2(k) * factorial(k) * factorial(n - 2 * k));
    &per_row * &per_row * factorial(n - 2 * k)
}

/// `|bBr_n|` from the bracket-count sum with a given `U`.
pub fn bbr_size_with(n: usize, mut u: impl FnMut(usize, usize) -> Result<BigUint>) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for k in 0..=n / 2 {
        total += brauer_with_brackets(n, k) * u(n, k)?;
    }
    Ok(total)
}

/// Families with a closed size formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SizeFamily {
    /// `|M| * b_n` for the ramified monoid over a classical diagram monoid.
    Ramified(DiagramFamily),
    /// A classical diagram monoid itself.
    Diagram(DiagramFamily),
    BBr,
    TJ,
    BJ,
    /// Double partitions.
    DP,
    /// Linear partitions.
    LP,
    /// Set partitions under join.
    P,
}

impl FromStr for SizeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "RS" | "TS" | "TSn" => SizeFamily::Ramified(DiagramFamily::Symmetric),
            "RJ" => SizeFamily::Ramified(DiagramFamily::Jones),
            "RBr" | "Q" | "Qn" => SizeFamily::Ramified(DiagramFamily::Brauer),
            "S" | "Sn" => SizeFamily::Diagram(DiagramFamily::Symmetric),
            "J" | "Jn" => SizeFamily::Diagram(DiagramFamily::Jones),
            "Br" | "Brn" => SizeFamily::Diagram(DiagramFamily::Brauer),
            "bBr" | "W" | "Wn" => SizeFamily::BBr,
            "tJ" | "tJn" => SizeFamily::TJ,
            "bJ" => SizeFamily::BJ,
            "DP" | "DPn" => SizeFamily::DP,
            "LP" | "LPn" => SizeFamily::LP,
            "P" | "Pn" => SizeFamily::P,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }
}

pub fn diagram_family_size(family: DiagramFamily, n: usize) -> BigUint {
    match family {
        DiagramFamily::Symmetric => factorial(n),
        DiagramFamily::Jones => catalan(n),
        DiagramFamily::Brauer => double_factorial_odd(n),
    }
}

/// Value of the closed formula for `family` at `n`.
pub fn size_formula(family: SizeFamily, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutsideDomain("sizes are defined for n >= 1".into()));
    }
    let table = crate::counting::CountTable::shared();
    Ok(match family {
        SizeFamily::Ramified(m) => diagram_family_size(m, n) * table.bell(n)?,
        SizeFamily::Diagram(m) => diagram_family_size(m, n),
        SizeFamily::BBr => bbr_size_with(n, two_balanced_count_recursive)?,
        SizeFamily::TJ | SizeFamily::BJ => binomial(2 * n - 1, n),
        SizeFamily::DP => {
            table.bell(n)?;
            (1..=n).fold(BigUint::zero(), |acc, k| acc + stirling2(n, k) * bell(k))
        }
        SizeFamily::LP => pow2(n - 1),
        SizeFamily::P => table.bell(n)?,
    })
}

/// `sum over I in M of b_{#blocks(I)}`: the exact size of the ramified monoid
/// over an explicitly listed `M`.
pub fn ramified_size_by_blocks(elements: &[Diagram]) -> BigUint {
    elements
        .iter()
        .fold(BigUint::zero(), |acc, d| acc + bell(d.num_blocks()))
}
