//! Cyclotomic polynomials and the reduction tables used for `Q(ζ_n)` arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Coefficients (constant term first) of the n-th cyclotomic polynomial.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Φ_d(x)` with exact integer
/// division; every intermediate quotient is monic so no rationals appear.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &phi_d);
        }
    }
    num
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &b) in den.iter().enumerate() {
                rem[k + i] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// For a monic modulus of degree `m`, the residues of `x^m, …, x^(2m-2)`
/// expressed in the basis `1, x, …, x^(m-1)`.
pub fn reduction_table(modulus: &[i64]) -> Vec<Vec<BigInt>> {
    let m = modulus.len() - 1;
    if m == 0 {
        return Vec::new();
    }
    let mut table = Vec::with_capacity(m.saturating_sub(1));
    // x^m ≡ -(c_0 + c_1 x + … + c_{m-1} x^{m-1})
    let mut cur: Vec<BigInt> = modulus[..m].iter().map(|&c| BigInt::from(-c)).collect();
    for _ in 0..m.saturating_sub(1) {
        table.push(cur.clone());
        // multiply by x and fold the overflow back in
        let top = cur[m - 1].clone();
        for i in (1..m).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = BigInt::zero();
        if !top.is_zero() {
            for i in 0..m {
                cur[i] -= &top * modulus[i];
            }
        }
    }
    if table.is_empty() {
        table.push(cur);
    }
    table
}

pub(crate) fn coprime_residues(n: u32) -> Vec<u32> {
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degrees_match_totient() {
        for n in 1..=64 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n) as usize, "n = {n}");
        }
    }

    #[test]
    fn table_for_phi5() {
        let t = reduction_table(&cyclotomic_polynomial(5));
        // x^4 = -1 - x - x^2 - x^3
        assert_eq!(t[0], vec![(-1).into(), (-1).into(), (-1).into(), (-1).into()]);
        // x^5 = 1
        assert_eq!(t[1], vec![1.into(), 0.into(), 0.into(), 0.into()]);
    }
}
