//! Dense univariate polynomials over a [`FieldSpec`].
//!
//! Coefficients are stored constant term first with no trailing zeros; the
//! zero polynomial is the empty vector. Operations take the field explicitly,
//! matching how the rest of the crate threads a shared `FieldSpec`.

use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{Fe, FieldSpec};

pub type Poly = Vec<Fe>;

pub fn trim(v: &mut Poly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(a: &Poly) -> i64 {
    a.len() as i64 - 1 // -1 for the zero polynomial
}

pub fn from_ints(f: &FieldSpec, c: &[i64]) -> Poly {
    let mut v: Poly = c.iter().map(|&x| f.el(x)).collect();
    trim(&mut v);
    v
}

pub fn constant(c: Fe) -> Poly {
    if c == 0 {
        vec![]
    } else {
        vec![c]
    }
}

pub fn x_pow(n: usize) -> Poly {
    let mut v = vec![0; n + 1];
    v[n] = 1;
    v
}

pub fn add(f: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0 as Fe; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = f.add(x, y);
    }
    trim(&mut out);
    out
}

pub fn neg(f: &FieldSpec, a: &Poly) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub fn sub(f: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    add(f, a, &neg(f, b))
}

pub fn mul(f: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0 as Fe; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    trim(&mut out);
    out
}

pub fn scale(f: &FieldSpec, a: &Poly, c: Fe) -> Poly {
    if c == 0 {
        return vec![];
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// Quotient and remainder; `b` nonzero.
pub fn divrem(f: &FieldSpec, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    let db = b.len() - 1;
    let linv = f.inv(*b.last().unwrap());
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![0 as Fe; r.len() - db];
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        let c = f.mul(lead, linv);
        if c != 0 {
            q[shift] = c;
            for i in 0..=db {
                let s = f.mul(c, b[i]);
                r[shift + i] = f.sub(r[shift + i], s);
            }
        } else {
            r.pop();
        }
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(f: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: &FieldSpec, a: &Poly) -> Poly {
    match a.last() {
        None => vec![],
        Some(&l) => scale(f, a, f.inv(l)),
    }
}

pub fn gcd(f: &FieldSpec, a: &Poly, b: &Poly) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative(f: &FieldSpec, a: &Poly) -> Poly {
    if a.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(a.len() - 1);
    for i in 1..a.len() {
        let mut c = 0 as Fe;
        for _ in 0..(i as u32 % f.p()) {
            c = f.add(c, a[i]);
        }
        out.push(c);
    }
    trim(&mut out);
    out
}

pub fn eval(f: &FieldSpec, a: &Poly, x: Fe) -> Fe {
    let mut acc = 0 as Fe;
    for &c in a.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

pub fn is_squarefree(f: &FieldSpec, a: &Poly) -> bool {
    if a.len() <= 1 {
        return !a.is_empty();
    }
    let d = derivative(f, a);
    if d.is_empty() {
        return false; // p-th power
    }
    deg(&gcd(f, a, &d)) == 0
}

/// Valuation of `a` at the monic irreducible `p`: the largest `e` with
/// `p^e | a`. Returns 0 for `a = 0`? No: `a` must be nonzero.
pub fn valuation(f: &FieldSpec, a: &Poly, p: &Poly) -> u32 {
    assert!(!a.is_empty());
    let mut v = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = divrem(f, &cur, p);
        if !r.is_empty() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

pub fn pow_mod(f: &FieldSpec, a: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut acc = vec![1 as Fe];
    let mut base = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// Factors a nonzero polynomial into `(monic irreducible, multiplicity)`
/// pairs plus the leading coefficient, by distinct-degree factorization and
/// a deterministic equal-degree splitting scan. Requires odd characteristic
/// (all factoring call sites here have char > 2).
pub fn factor(f: &FieldSpec, a: &Poly) -> (Fe, Vec<(Poly, u32)>) {
    assert!(!a.is_empty(), "factor of zero");
    assert!(f.p() > 2, "equal-degree splitting here assumes odd characteristic");
    let lead = *a.last().unwrap();
    let mut work = monic(f, a);
    let mut out: Vec<(Poly, u32)> = Vec::new();

    // split off repeated content via gcd with derivative, recursively
    fn squarefree_parts(f: &FieldSpec, a: &Poly, mult: u32, acc: &mut Vec<(Poly, u32)>) {
        if deg(a) == 0 {
            return;
        }
        let d = derivative(f, a);
        if d.is_empty() {
            // a = b^p with b obtained by taking p-th roots of coefficients
            let p = f.p() as usize;
            let mut b: Poly = Vec::new();
            let mut i = 0;
            while i < a.len() {
                // coefficient of x^(i/p); p-th root in F_q is x -> x^(q/p)
                let c = a[i];
                let root = f.pow(c, (f.q() as u64 / f.p() as u64).max(1));
                // verify: root^p == c
                debug_assert_eq!(f.pow(root, f.p() as u64), c);
                b.push(root);
                i += p;
            }
            trim(&mut b);
            squarefree_parts(f, &b, mult * f.p(), acc);
            return;
        }
        let g = gcd(f, a, &d);
        if deg(&g) == 0 {
            acc.push((a.clone(), mult));
            return;
        }
        let (sf, _) = divrem(f, a, &g);
        acc.push((sf, mult)); // squarefree part (may share factors with g; fixed below)
        squarefree_parts(f, &g, mult, acc);
    }

    let mut parts: Vec<(Poly, u32)> = Vec::new();
    squarefree_parts(f, &work, 1, &mut parts);
    // The recursion can emit overlapping squarefree parts; recombine by
    // dividing the original and factoring each squarefree part fully.
    let mut irreducibles: Vec<Poly> = Vec::new();
    for (part, _) in &parts {
        for p in factor_squarefree(f, part) {
            if !irreducibles.contains(&p) {
                irreducibles.push(p);
            }
        }
    }
    irreducibles.sort();
    for p in irreducibles {
        let v = valuation(f, &work, &p);
        if v > 0 {
            out.push((p.clone(), v));
            for _ in 0..v {
                work = divrem(f, &work, &p).0;
            }
        }
    }
    debug_assert_eq!(deg(&work), 0);
    (lead, out)
}

/// Factors a monic squarefree polynomial into monic irreducibles.
fn factor_squarefree(f: &FieldSpec, a: &Poly) -> Vec<Poly> {
    let mut out = Vec::new();
    if deg(a) <= 0 {
        return out;
    }
    // distinct-degree: g_d = gcd(x^{q^d} - x, rest)
    let mut rest = a.clone();
    let mut d = 1u32;
    while deg(&rest) > 0 {
        if (deg(&rest) as u32) < 2 * d {
            out.push(monic(f, &rest));
            break;
        }
        let qd = (f.q() as u64).pow(d);
        let mut xq = pow_mod(f, &x_pow(1), qd, &rest);
        // xq - x
        if xq.len() < 2 {
            xq.resize(2, 0);
        }
        xq[1] = f.sub(xq[1], 1);
        trim(&mut xq);
        let g = gcd(f, &xq, &rest);
        if deg(&g) > 0 {
            split_equal_degree(f, &g, d, &mut out);
            rest = divrem(f, &rest, &g).0;
        }
        d += 1;
    }
    out.sort();
    out
}

/// Splits a product of distinct irreducibles all of degree `d`, by a
/// deterministic scan over shift polynomials (odd q).
fn split_equal_degree(f: &FieldSpec, a: &Poly, d: u32, out: &mut Vec<Poly>) {
    if deg(a) as u32 == d {
        out.push(monic(f, a));
        return;
    }
    let e = ((f.q() as u64).pow(d) - 1) / 2;
    // try (x + c)^e - 1 for c in field order, then (x^2 + c)^e - 1
    for attempt in 0..(2 * f.q()) {
        let shift: Poly = if attempt < f.q() {
            vec![attempt as Fe, 1]
        } else {
            vec![(attempt - f.q()) as Fe, 0, 1]
        };
        let mut t = pow_mod(f, &shift, e, a);
        if t.is_empty() {
            t = vec![0];
        }
        t[0] = f.sub(t[0], 1);
        trim(&mut t);
        if t.is_empty() {
            continue;
        }
        let g = gcd(f, &t, a);
        let dg = deg(&g);
        if dg > 0 && dg < deg(a) {
            split_equal_degree(f, &g, d, out);
            let (q, _) = divrem(f, a, &g);
            split_equal_degree(f, &q, d, out);
            return;
        }
    }
    unreachable!("equal-degree splitting exhausted its deterministic scan");
}

/// Enumerates all monic irreducible polynomials of exact degree `d`,
/// in the deterministic digit order used everywhere in this crate.
pub fn monic_irreducibles(f: &FieldSpec, d: u32) -> Vec<Poly> {
    let q = f.q() as u64;
    let mut out = Vec::new();
    let total = q.pow(d);
    for v in 0..total {
        let mut c = Vec::with_capacity(d as usize + 1);
        let mut vv = v;
        for _ in 0..d {
            c.push((vv % q) as Fe);
            vv /= q;
        }
        c.push(1);
        if is_irreducible_poly(f, &c) {
            out.push(c);
        }
    }
    out
}

/// Irreducibility over `F_q` via the Frobenius criterion.
pub fn is_irreducible_poly(f: &FieldSpec, m: &Poly) -> bool {
    let k = deg(m);
    if k <= 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let k = k as u32;
    // degree 2/3: irreducible iff no roots
    if k <= 3 {
        return !f.elements().any(|x| eval(f, m, x) == 0);
    }
    let qk = (f.q() as u64).pow(k);
    let mut xq = pow_mod(f, &x_pow(1), qk, m);
    if xq.len() < 2 {
        xq.resize(2, 0);
    }
    xq[1] = f.sub(xq[1], 1);
    trim(&mut xq);
    if !xq.is_empty() {
        return false;
    }
    let mut prime_divs = Vec::new();
    let mut kk = k;
    let mut l = 2;
    while kk > 1 {
        if kk % l == 0 {
            prime_divs.push(l);
            while kk % l == 0 {
                kk /= l;
            }
        }
        l += 1;
    }
    for l in prime_divs {
        let e = (f.q() as u64).pow(k / l);
        let mut t = pow_mod(f, &x_pow(1), e, m);
        if t.len() < 2 {
            t.resize(2, 0);
        }
        t[1] = f.sub(t[1], 1);
        trim(&mut t);
        if t.is_empty() || deg(&gcd(f, &t, m)) > 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn arithmetic_and_gcd() {
        let f = make_field(13, 1).unwrap();
        let a = from_ints(&f, &[-3, 0, 1]); // x^2 - 3
        let b = from_ints(&f, &[1, 1]); // x + 1
        let p = mul(&f, &a, &b);
        let (q, r) = divrem(&f, &p, &b);
        assert_eq!(q, a);
        assert!(r.is_empty());
        assert_eq!(gcd(&f, &p, &b), monic(&f, &b));
    }

    #[test]
    fn factor_small() {
        let f = make_field(13, 1).unwrap();
        // (x-1)^2 (x^2+1) : x^2+1 irreducible mod 13? -1 = 12 = 5^2, so it splits.
        let a = mul(
            &f,
            &mul(&f, &from_ints(&f, &[-1, 1]), &from_ints(&f, &[-1, 1])),
            &from_ints(&f, &[1, 0, 1]),
        );
        let (lead, fac) = factor(&f, &a);
        assert_eq!(lead, 1);
        let total: i64 = fac.iter().map(|(p, m)| deg(p) * *m as i64).sum();
        assert_eq!(total, 4);
        for (p, _) in &fac {
            assert!(is_irreducible_poly(&f, p));
        }
        assert!(fac.iter().any(|(p, m)| deg(p) == 1 && *m == 2));
    }

    #[test]
    fn factor_with_irreducible_quadratic() {
        let f = make_field(7, 1).unwrap();
        // x^2 + 1 is irreducible mod 7
        let a = mul(&f, &from_ints(&f, &[1, 0, 1]), &from_ints(&f, &[3, 1]));
        let (_, fac) = factor(&f, &a);
        assert_eq!(fac.len(), 2);
        assert!(fac.iter().any(|(p, _)| deg(p) == 2));
    }

    #[test]
    fn irreducible_enumeration_counts() {
        let f = make_field(5, 1).unwrap();
        // number of monic irreducible quadratics over F_q is (q^2 - q)/2
        assert_eq!(monic_irreducibles(&f, 2).len(), (25 - 5) / 2);
        // cubics: (q^3 - q)/3
        assert_eq!(monic_irreducibles(&f, 3).len(), (125 - 5) / 3);
    }

    #[test]
    fn valuation_and_squarefree() {
        let f = make_field(11, 1).unwrap();
        let p = from_ints(&f, &[2, 1]);
        let a = mul(&f, &mul(&f, &p, &p), &from_ints(&f, &[1, 1]));
        assert_eq!(valuation(&f, &a, &p), 2);
        assert!(!is_squarefree(&f, &a));
        assert!(is_squarefree(&f, &from_ints(&f, &[1, 0, 1])));
    }
}
