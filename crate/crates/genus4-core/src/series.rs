//! Truncated power series over `F_q`, used for local expansions at places of
//! hyperelliptic function fields.
//!
//! A series is a coefficient vector of fixed length `n` (precision `O(t^n)`).
//! Only what the local analysis needs is implemented: ring operations,
//! inversion and square roots of units (odd characteristic), and composition
//! with `t -> t` shifts is avoided by always expanding in a local parameter
//! directly.

use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{Fe, FieldSpec};
use crate::poly::Poly;

pub fn mul_trunc(f: &FieldSpec, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    let mut out = vec![0 as Fe; n];
    for i in 0..a.len().min(n) {
        if a[i] == 0 {
            continue;
        }
        for j in 0..b.len().min(n - i) {
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    out
}

pub fn add_series(f: &FieldSpec, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect()
}

pub fn scale_series(f: &FieldSpec, a: &[Fe], c: Fe, n: usize) -> Vec<Fe> {
    (0..n).map(|i| f.mul(a.get(i).copied().unwrap_or(0), c)).collect()
}

/// Inverse of a unit series (`a[0] != 0`), by the standard recurrence.
pub fn inv_trunc(f: &FieldSpec, a: &[Fe], n: usize) -> Vec<Fe> {
    assert!(!a.is_empty() && a[0] != 0, "series inverse needs a unit");
    let c0 = f.inv(a[0]);
    let mut out = vec![0 as Fe; n];
    out[0] = c0;
    for i in 1..n {
        // sum_{j=1..=i} a[j] * out[i-j] must cancel
        let mut s = 0 as Fe;
        for j in 1..=i.min(a.len() - 1) {
            s = f.add(s, f.mul(a[j], out[i - j]));
        }
        out[i] = f.neg(f.mul(c0, s));
    }
    out
}

/// Square root of a unit series with `a[0] = r0^2`, choosing the branch with
/// constant term `r0`. Odd characteristic only.
pub fn sqrt_trunc(f: &FieldSpec, a: &[Fe], r0: Fe, n: usize) -> Vec<Fe> {
    assert!(f.p() > 2);
    assert!(!a.is_empty() && f.mul(r0, r0) == a[0], "r0 must square to a[0]");
    let mut out = vec![0 as Fe; n];
    out[0] = r0;
    let inv2r0 = f.inv(f.add(r0, r0));
    for i in 1..n {
        // coefficient i of out^2 must equal a[i]:
        // 2 r0 out[i] + sum_{j=1..i-1} out[j] out[i-j] = a[i]
        let mut s = 0 as Fe;
        for j in 1..i {
            s = f.add(s, f.mul(out[j], out[i - j]));
        }
        let target = f.sub(a.get(i).copied().unwrap_or(0), s);
        out[i] = f.mul(target, inv2r0);
    }
    out
}

/// Expansion of the polynomial `g` around `x = x0 + t`, to precision `n`.
pub fn taylor_at(f: &FieldSpec, g: &Poly, x0: Fe, n: usize) -> Vec<Fe> {
    // synthetic Taylor shift by repeated division by (x - x0)
    let mut out = vec![0 as Fe; n];
    let mut cur = g.clone();
    for coeff in out.iter_mut().take(n) {
        if cur.is_empty() {
            break;
        }
        // divide cur by (x - x0): remainder is cur(x0)
        let mut q = vec![0 as Fe; cur.len().saturating_sub(1)];
        let mut carry = 0 as Fe;
        for i in (0..cur.len()).rev() {
            let v = f.add(cur[i], f.mul(carry, x0));
            if i > 0 {
                q[i - 1] = v;
            } else {
                *coeff = v;
            }
            carry = v;
        }
        crate::poly::trim(&mut q);
        cur = q;
    }
    out
}

/// Coefficients of `g(1/t) * t^deg(g)`, i.e. the reversal of `g` padded to
/// `n` terms: the expansion of `g` "at infinity" in the parameter `t = 1/x`
/// after clearing the pole `t^{-deg g}`.
pub fn reversal(g: &Poly, n: usize) -> Vec<Fe> {
    let mut out = vec![0 as Fe; n];
    for (i, &c) in g.iter().rev().enumerate() {
        if i < n {
            out[i] = c;
        }
    }
    out
}

/// First index with a nonzero coefficient, if any.
pub fn order(a: &[Fe]) -> Option<usize> {
    a.iter().position(|&c| c != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;
    use crate::poly::from_ints;

    #[test]
    fn inverse_and_sqrt() {
        let f = make_field(13, 1).unwrap();
        let a = alloc::vec![4 as Fe, 1, 7, 0, 2, 9];
        let inv = inv_trunc(&f, &a, 6);
        let one = mul_trunc(&f, &a, &inv, 6);
        assert_eq!(one, alloc::vec![1, 0, 0, 0, 0, 0]);

        let r0 = f.sqrt(4).unwrap();
        let s = sqrt_trunc(&f, &a, r0, 6);
        assert_eq!(mul_trunc(&f, &s, &s, 6), a);
    }

    #[test]
    fn taylor_shift() {
        let f = make_field(11, 1).unwrap();
        let g = from_ints(&f, &[3, 0, 1]); // x^2 + 3
        let t = taylor_at(&f, &g, 2, 5);
        // (2+t)^2 + 3 = 7 + 4t + t^2
        assert_eq!(t, alloc::vec![7, 4, 1, 0, 0]);
    }
}
