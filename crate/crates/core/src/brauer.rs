//! Normal form of Brauer diagrams as `s * H_1 * H_3 * ... * H_{2k-1} * s'`
//! with permutation diagrams `s`, `s'`.

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::set_partition::SetPartition;

/// `g = s * H_1 * H_3 * ... * H_{2k-1} * s'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerNormalForm {
    pub s: Permutation,
    pub k: usize,
    pub s_prime: Permutation,
}

impl BrauerNormalForm {
    pub fn evaluate(&self) -> Diagram {
        let n = self.s.n();
        let mut acc = self.s.to_diagram();
        for i in 0..self.k {
            acc = acc.concat_unchecked(&Diagram::h(n, 2 * i + 1).expect("2k <= n"));
        }
        acc.concat_unchecked(&self.s_prime.to_diagram())
    }
}

/// The arrangement permutation of a partition of `[n]` into blocks of size at
/// most two: the `i`-th pair `{a_i < b_i}` (ordered by `a_i`) goes to
/// `{2i-1, 2i}` and the singletons, increasing, go to `2k+1, ..., n`.
pub fn arrangement_permutation(i: &SetPartition) -> Result<Permutation> {
    let blocks = i.blocks();
    if let Some(b) = blocks.iter().find(|b| b.len() > 2) {
        return Err(Error::NotBrauer(format!("block {b:?} has more than two points")));
    }
    let pairs: Vec<(usize, usize)> = blocks
        .iter()
        .filter(|b| b.len() == 2)
        .map(|b| (b[0], b[1]))
        .collect();
    Ok(arrange(i.ground_size(), &pairs))
}

/// Send the listed pairs to `{1,2}, {3,4}, ...` in the given order and the
/// remaining points, increasing, after them.
pub(crate) fn arrange(n: usize, pairs: &[(usize, usize)]) -> Permutation {
    let mut images = vec![0usize; n];
    for (idx, &(a, b)) in pairs.iter().enumerate() {
        images[a - 1] = 2 * idx + 1;
        images[b - 1] = 2 * idx + 2;
    }
    let mut next = 2 * pairs.len();
    for slot in images.iter_mut() {
        if *slot == 0 {
            next += 1;
            *slot = next;
        }
    }
    Permutation::new(images).expect("arrangement is a bijection")
}

pub fn brauer_normal_form(g: &Diagram) -> Result<BrauerNormalForm> {
    if !g.is_brauer() {
        return Err(Error::NotBrauer(g.to_string()));
    }
    Ok(normal_form_with_pairing(g, &g.up_brackets(), &g.down_brackets()))
}

/// Normal form where the `i`-th listed up bracket and the `i`-th listed down
/// bracket become the two brackets of `H_{2i-1}`. Pair orientation `a < b`.
pub(crate) fn normal_form_with_pairing(
    g: &Diagram,
    up: &[(usize, usize)],
    down: &[(usize, usize)],
) -> BrauerNormalForm {
    let n = g.n();
    let s = arrange(n, up);
    let bottom_arrangement = arrange(n, down);
    // lines: top x sits at s(x), must reach the slot of its bottom end
    let mut tie_up: Vec<usize> = (1..=n).collect();
    for (x, y) in g.lines() {
        tie_up[s.apply(x) - 1] = bottom_arrangement.apply(y);
    }
    let t_g = Permutation::new(tie_up).expect("lines give a bijection");
    let s_prime = t_g.then(&bottom_arrangement.inverse());
    BrauerNormalForm {
        s,
        k: up.len(),
        s_prime,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_partition::enumerate_partitions;

    #[test]
    fn worked_example_n6() {
        let g: Diagram = "1,5|2,3|4,3'|6,2'|1',5'|4',6'".parse().unwrap();
        let n_i = arrangement_permutation(&g.top()).unwrap();
        assert_eq!(n_i.images(), vec![1, 3, 4, 5, 2, 6]);
        let n_j = arrangement_permutation(&g.bottom()).unwrap();
        assert_eq!(n_j.images(), vec![1, 5, 6, 3, 2, 4]);
        let nf = brauer_normal_form(&g).unwrap();
        assert_eq!(nf.k, 2);
        assert_eq!(nf.s, n_i);
        let t_g = Permutation::new(vec![1, 2, 3, 4, 6, 5]).unwrap();
        assert_eq!(nf.s_prime, t_g.then(&n_j.inverse()));
        assert_eq!(nf.evaluate(), g);
    }

    #[test]
    fn arrangement_examples() {
        let i: SetPartition = "1,6|2|3,4|5,8|7|9".parse().unwrap();
        let p = arrangement_permutation(&i).unwrap();
        assert_eq!(p.images(), vec![1, 7, 3, 4, 5, 2, 8, 6, 9]);
        assert!(arrangement_permutation(&SetPartition::unity(4).unwrap())
            .unwrap()
            .is_identity());
        assert!(arrangement_permutation(&"1,2,3".parse().unwrap()).is_err());
    }

    #[test]
    fn permutation_diagrams_have_k_zero() {
        let p = crate::permutation::Permutation::new(vec![3, 1, 4, 2]).unwrap();
        let nf = brauer_normal_form(&p.to_diagram()).unwrap();
        assert_eq!(nf.k, 0);
        assert_eq!(nf.s.then(&nf.s_prime), p);
    }

    #[test]
    fn round_trip_and_injective_on_all_brauer_diagrams() {
        for n in 1..=5 {
            let mut seen = std::collections::HashSet::new();
            let mut count = 0;
            for part in enumerate_partitions(2 * n).unwrap() {
                let g = Diagram::new(n, part).unwrap();
                if !g.is_brauer() {
                    assert!(brauer_normal_form(&g).is_err());
                    continue;
                }
                count += 1;
                let nf = brauer_normal_form(&g).unwrap();
                assert_eq!(nf.evaluate(), g);
                assert!(seen.insert((nf.s.images(), nf.k, nf.s_prime.images())));
            }
            let expected = (1..=n).map(|k| 2 * k - 1).product::<usize>();
            assert_eq!(count, expected);
        }
    }
}
