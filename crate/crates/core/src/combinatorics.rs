//! Binomial bookkeeping for graded pieces of polynomial rings and for the
//! Koszul resolution of a complete intersection of `n` forms of degree `m-1`.
//!
//! Every binomial follows the convention `C(a, b) = 0` whenever `a < b` (or
//! either argument is negative).

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// `C(a, b)` with the zero convention, via a memoized Pascal triangle.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || a < b {
        return BigInt::zero();
    }
    static PASCAL: OnceLock<Mutex<Vec<Vec<BigInt>>>> = OnceLock::new();
    let table = PASCAL.get_or_init(|| Mutex::new(vec![vec![BigInt::from(1)]]));
    let mut rows = table.lock().unwrap();
    while rows.len() <= a as usize {
        let prev = rows.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigInt::from(1));
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        rows.push(next);
    }
    rows[a as usize][b as usize].clone()
}

/// `C(a, b)` in machine integers, for sizing (saturates on overflow).
pub fn binomial_u128(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) / (i + 1) stays exact at every step
        acc = match acc.checked_mul((a - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `N(n, d) = C(d+n-1, n-1)`, the dimension of degree-`d` forms in `n` variables.
pub fn n_dim(n: i64, d: i64) -> BigInt {
    binomial(d + n - 1, n - 1)
}

/// `M(n,m) = sum_{h=1}^{n} (-1)^{h-1} C(n,h) C((n-h)(m-1), n-1)`.
pub fn m_sum(n: i64, m: i64) -> BigInt {
    (1..=n).fold(BigInt::zero(), |acc, h| {
        let term = binomial(n, h) * binomial((n - h) * (m - 1), n - 1);
        if h % 2 == 1 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `C(n(m-1), n-1)`, the closed form of [`m_sum`].
pub fn m_closed_form(n: i64, m: i64) -> BigInt {
    binomial(n * (m - 1), n - 1)
}

/// `sum_{h=2}^{n} (-1)^h C(n,h) C((n-h)(m-1), n-1)`: the kernel dimension of the
/// multiplication map `S_{n(m-2)-m+2} ⊗ J_{m-1} -> S_{n(m-2)+1}`.
pub fn koszul_kernel_dim(n: i64, m: i64) -> BigInt {
    (2..=n).fold(BigInt::zero(), |acc, h| {
        let term = binomial(n, h) * binomial((n - h) * (m - 1), n - 1);
        if h % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Kernel dimension of `S_{t-m+1} ⊗ J_{m-1} -> S_t` for the partials of a
/// regular form of degree `m`: the Koszul syzygies landing in degree `t`,
/// `sum_{h>=2} (-1)^h C(n,h) N(n, t - h(m-1))`.
pub fn koszul_kernel_dim_at(n: i64, m: i64, target: i64) -> BigInt {
    (2..=n).fold(BigInt::zero(), |acc, h| {
        let term = binomial(n, h) * n_dim(n, target - h * (m - 1));
        if h % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Degree-`d` dimension of the Milnor algebra of a regular form of degree `m`
/// in `n` variables, from the exact Koszul complex:
/// `sum_h (-1)^h C(n,h) N(n, d - h(m-1))`.
pub fn koszul_hilbert_value(n: i64, m: i64, d: i64) -> BigInt {
    (0..=n).fold(BigInt::zero(), |acc, h| {
        let term = binomial(n, h) * n_dim(n, d - h * (m - 1));
        if h % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// One row of the lemma table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRow {
    pub n: i64,
    pub m: i64,
    pub lhs: String,
    pub rhs: String,
    /// subset count by enumeration, when `n(m-1) <= 20`
    pub brute_force: Option<u64>,
    pub equal: bool,
}

/// Largest ground set enumerated by [`brute_force_subset_count`].
pub const BRUTE_FORCE_LIMIT: i64 = 20;

/// Counts `(n-1)`-subsets of `n` disjoint blocks of size `m-1` that miss at
/// least one block entirely, by enumeration.
pub fn brute_force_subset_count(n: i64, m: i64) -> Option<u64> {
    let block = (m - 1) as u32;
    let total = (n as u32) * block;
    if total as i64 > BRUTE_FORCE_LIMIT || n < 1 {
        return None;
    }
    let k = (n - 1) as u32;
    let block_masks: Vec<u32> = (0..n as u32)
        .map(|j| ((1u32 << block) - 1) << (j * block))
        .collect();
    let misses_a_block = |s: u32| block_masks.iter().any(|b| s & b == 0);
    if k == 0 {
        return Some(u64::from(misses_a_block(0)));
    }
    if k > total {
        return Some(0);
    }
    // Gosper's hack over all k-subsets of `total` bits
    let mut count = 0u64;
    let mut s: u32 = (1u32 << k) - 1;
    let limit: u64 = 1u64 << total;
    while (s as u64) < limit {
        if misses_a_block(s) {
            count += 1;
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    Some(count)
}

/// Evaluates the alternating sum against its closed form (and the subset
/// enumeration where small) for every `2 <= n <= max_n`, `2 <= m <= max_m`.
pub fn verify_lemma_comb(max_n: i64, max_m: i64) -> Vec<LemmaRow> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for m in 2..=max_m {
            let lhs = m_sum(n, m);
            let rhs = m_closed_form(n, m);
            let brute_force = brute_force_subset_count(n, m);
            let equal = lhs == rhs
                && brute_force.is_none_or(|b| rhs.to_u64() == Some(b));
            rows.push(LemmaRow {
                n,
                m,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                brute_force,
                equal,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), b(10));
        assert_eq!(binomial(0, 1), b(0));
        assert_eq!(binomial(-1, 0), b(0));
        assert_eq!(binomial(3, -1), b(0));
        assert_eq!(binomial_u128(6, 2), 15);
        assert_eq!(binomial_u128(2, 6), 0);
        for a in 0..30u64 {
            for k in 0..=a {
                assert_eq!(BigInt::from(binomial_u128(a, k)), binomial(a as i64, k as i64));
            }
        }
    }

    #[test]
    fn n_dim_examples() {
        assert_eq!(n_dim(3, 2), b(6));
        assert_eq!(n_dim(3, 2), b(Monomial::all_of_degree(3, 2).len() as i64));
        assert_eq!(n_dim(2, 5), b(6));
        assert_eq!(n_dim(4, -1), b(0));
    }

    #[test]
    fn m_sum_examples() {
        assert_eq!(m_sum(2, 3), b(4));
        assert_eq!(m_sum(2, 4), b(6));
        assert_eq!(m_sum(3, 3), b(15));
        assert_eq!(m_closed_form(3, 3), b(15));
    }

    #[test]
    fn koszul_kernel_examples() {
        assert_eq!(koszul_kernel_dim(2, 4), b(0));
        assert_eq!(koszul_kernel_dim(3, 3), b(3));
        // S_2 ⊗ J_2 -> S_4 for a plane cubic: one Koszul syzygy, image 3*2 - 1 = 5
        assert_eq!(koszul_kernel_dim_at(2, 3, 4), b(1));
        assert_eq!(b(3 * 2) - koszul_kernel_dim_at(2, 3, 4), n_dim(2, 4));
    }

    #[test]
    fn kernel_formula_is_target_degree_specialization() {
        for n in 2..=6 {
            for m in 2..=6 {
                assert_eq!(koszul_kernel_dim(n, m), koszul_kernel_dim_at(n, m, n * (m - 2) + 1));
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_subset_count(2, 3), Some(4));
        assert_eq!(brute_force_subset_count(3, 3), Some(15));
        assert_eq!(brute_force_subset_count(3, 8), None);
    }

    #[test]
    fn lemma_table_small() {
        let rows = verify_lemma_comb(4, 4);
        assert_eq!(rows.len(), 9);
        assert!(rows.iter().all(|r| r.equal));
        let r23 = rows.iter().find(|r| r.n == 2 && r.m == 3).unwrap();
        assert_eq!((r23.lhs.as_str(), r23.rhs.as_str(), r23.brute_force), ("4", "4", Some(4)));
    }

    #[test]
    fn koszul_hilbert_matches_power_of_geometric_sum() {
        // coefficients of (1 + t + ... + t^{m-2})^n by repeated convolution
        for n in 1..=4i64 {
            for m in 2..=6i64 {
                let mut coeffs = vec![1i64];
                for _ in 0..n {
                    let mut next = vec![0i64; coeffs.len() + (m - 2) as usize];
                    for (i, c) in coeffs.iter().enumerate() {
                        for j in 0..=(m - 2) as usize {
                            next[i + j] += c;
                        }
                    }
                    coeffs = next;
                }
                for d in 0..(coeffs.len() as i64 + 3) {
                    let expected = coeffs.get(d as usize).copied().unwrap_or(0);
                    assert_eq!(koszul_hilbert_value(n, m, d), b(expected), "n={n} m={m} d={d}");
                }
            }
        }
    }
}
