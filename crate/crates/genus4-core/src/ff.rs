//! Arithmetic in `F_q` for prime powers `q`, sized for `q < 100`.
//!
//! Elements are indices `0..q` encoding coefficient vectors in the polynomial
//! basis, least-significant digit first: the element with index
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` is `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`
//! modulo a deterministically chosen irreducible polynomial. Indices
//! `0..p` are the prime subfield, `0` and `1` the additive and multiplicative
//! identities.
//!
//! All binary operations are table lookups; tables are built once at
//! construction (at most `q^2` entries each, trivial for `q < 100`) and the
//! whole structure is immutable afterwards, so a `FieldSpec` can be shared
//! freely across worker threads.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// An element of `F_q`, as an index into the owning [`FieldSpec`] tables.
pub type Fe = u16;

/// A finite field `F_q`, `q = p^k`, with precomputed operation tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible modulus, coefficient list of length `k + 1`,
    /// constant term first.
    modulus: Vec<u32>,
    add_t: Vec<Fe>,
    mul_t: Vec<Fe>,
    neg_t: Vec<Fe>,
    inv_t: Vec<Fe>,
    frob_t: Vec<Fe>,
}

impl core::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "F_{}", self.q)?;
        if self.k > 1 {
            write!(f, " = F_{}[x]/{:?}", self.p, self.modulus)?;
        }
        Ok(())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial arithmetic over `F_p` on raw digit vectors, used only during
/// field construction (before the tables exist).
mod praw {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + ai * bj) % p;
            }
        }
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for i in 0..=dm {
                    let sub = (lead * m[i]) % p;
                    let idx = shift + i;
                    r[idx] = (r[idx] + p - sub) % p;
                }
            }
            r.pop();
            trim(&mut r);
            if r.len() <= dm {
                break;
            }
        }
        r
    }

    pub fn modpow_x(e: u64, m: &[u32], p: u32) -> Vec<u32> {
        // x^e mod m by square and multiply
        let mut base = rem(&[0, 1], m, p);
        let mut acc = vec![1u32];
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic for rem
            let lead = *b.last().unwrap();
            let linv = super::modinv_u32(lead, p);
            let bm: Vec<u32> = b.iter().map(|&c| c * linv % p).collect();
            let r = rem(&a, &bm, p);
            a = b;
            b = r;
        }
        a
    }
}

fn modinv_u32(a: u32, p: u32) -> u32 {
    // Fermat; p prime, a != 0
    let mut acc = 1u64;
    let mut base = a as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// `m` monic of degree `k` over `F_p`: irreducible iff `x^{p^k} = x (mod m)`
/// and `gcd(x^{p^{k/l}} - x, m) = 1` for every prime `l | k`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    let pk = (p as u64).pow(k);
    let mut xq = praw::modpow_x(pk, m, p);
    // xq - x
    if xq.len() < 2 {
        xq.resize(2, 0);
    }
    xq[1] = (xq[1] + p - 1) % p;
    praw::trim(&mut xq);
    if !xq.is_empty() {
        return false;
    }
    let mut l = 2u32;
    let mut kk = k;
    let mut prime_divs = Vec::new();
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
        let e = (p as u64).pow(k / l);
        let mut t = praw::modpow_x(e, m, p);
        if t.len() < 2 {
            t.resize(2, 0);
        }
        t[1] = (t[1] + p - 1) % p;
        praw::trim(&mut t);
        if t.is_empty() {
            return false; // x^{p^{k/l}} = x, so m has a factor of degree dividing k/l
        }
        let g = praw::gcd(&t, m, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^k}` with the deterministically chosen modulus: the monic
    /// irreducible `x^k + c_{k-1} x^{k-1} + ... + c_0` whose digit string
    /// `(c_{k-1}, ..., c_0)` is smallest, i.e. smallest `sum c_i p^i`.
    pub fn new(p: u32, k: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::BadDegree(k));
        }
        let q64 = (p as u64).checked_pow(k).filter(|&q| q <= u16::MAX as u64);
        let q = q64.ok_or(Error::BadDegree(k))? as u32;

        let modulus: Vec<u32> = if k == 1 {
            vec![0, 1] // x; the convention for prime fields
        } else {
            let mut found = None;
            for v in 0..q {
                let mut m = Vec::with_capacity(k as usize + 1);
                let mut vv = v;
                for _ in 0..k {
                    m.push(vv % p);
                    vv /= p;
                }
                m.push(1);
                if is_irreducible(&m, p) {
                    found = Some(m);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        // element index <-> digit vector; arithmetic through praw, then tables
        let qs = q as usize;
        let digits = |i: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut ii = i;
            for _ in 0..k {
                v.push(ii % p);
                ii /= p;
            }
            v
        };
        let index = |d: &[u32]| -> u32 {
            let mut acc = 0u32;
            for (i, &c) in d.iter().enumerate() {
                acc += c * p.pow(i as u32);
            }
            acc
        };

        let mut add_t = vec![0 as Fe; qs * qs];
        let mut mul_t = vec![0 as Fe; qs * qs];
        let mut neg_t = vec![0 as Fe; qs];
        for a in 0..q {
            let da = digits(a);
            let mut dn: Vec<u32> = da.iter().map(|&c| (p - c) % p).collect();
            praw::trim(&mut dn);
            neg_t[a as usize] = index(&dn) as Fe;
            for b in a..q {
                let db = digits(b);
                let ds: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                let s = index(&ds) as Fe;
                add_t[a as usize * qs + b as usize] = s;
                add_t[b as usize * qs + a as usize] = s;
                let dm = praw::rem(&praw::mul(&da, &db, p), &modulus, p);
                let m = index(&dm) as Fe;
                mul_t[a as usize * qs + b as usize] = m;
                mul_t[b as usize * qs + a as usize] = m;
            }
        }
        let mut inv_t = vec![0 as Fe; qs];
        for a in 1..q {
            // a^(q-2)
            let mut acc: Fe = 1;
            let mut base = a as Fe;
            let mut e = q - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_t[acc as usize * qs + base as usize];
                }
                base = mul_t[base as usize * qs + base as usize];
                e >>= 1;
            }
            inv_t[a as usize] = acc;
        }
        let mut frob_t = vec![0 as Fe; qs];
        for a in 0..q {
            let mut acc: Fe = 1;
            let mut base = a as Fe;
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_t[acc as usize * qs + base as usize];
                }
                base = mul_t[base as usize * qs + base as usize];
                e >>= 1;
            }
            frob_t[a as usize] = acc;
        }

        Ok(FieldSpec { p, k, q, modulus, add_t, mul_t, neg_t, inv_t, frob_t })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Modulus coefficients, constant term first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline(always)]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add_t[a as usize * self.q as usize + b as usize]
    }
    #[inline(always)]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        self.mul_t[a as usize * self.q as usize + b as usize]
    }
    #[inline(always)]
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg_t[a as usize]
    }
    #[inline(always)]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; panics on zero.
    #[inline(always)]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a != 0, "inverse of zero");
        self.inv_t[a as usize]
    }
    #[inline(always)]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }
    /// The Frobenius `a -> a^p`.
    #[inline(always)]
    pub fn frob(&self, a: Fe) -> Fe {
        self.frob_t[a as usize]
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc: Fe = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Embeds a signed integer through the prime subfield.
    pub fn el(&self, n: i64) -> Fe {
        let r = n.rem_euclid(self.p as i64) as u32;
        r as Fe
    }

    /// Coefficient vector of an element in the polynomial basis, length `k`.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut i = a as u32;
        for _ in 0..self.k {
            v.push(i % self.p);
            i /= self.p;
        }
        v
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        let mut acc = 0u32;
        for (i, &ci) in c.iter().enumerate() {
            acc += (ci % self.p) * self.p.pow(i as u32);
        }
        acc as Fe
    }

    /// All elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q as Fe
    }

    /// Smallest non-square in index order (exists for odd q).
    pub fn least_nonsquare(&self) -> Fe {
        assert!(self.p != 2, "every element is a square in characteristic 2");
        let t = self.power_residue_table(2);
        self.elements()
            .find(|&v| v != 0 && t.root_count(v) == 0)
            .expect("odd field has a nonsquare")
    }

    /// One square root, if any exists (scan; fields here are tiny).
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        self.elements().find(|&z| self.mul(z, z) == a)
    }

    /// Builds the `z -> z^m` fiber-count table in one pass.
    pub fn power_residue_table(&self, m: u32) -> PowerResidueTable {
        let mut counts = vec![0u16; self.q as usize];
        for z in self.elements() {
            counts[self.pow(z, m as u64) as usize] += 1;
        }
        PowerResidueTable { m, counts }
    }
}

/// For a fixed exponent `m`, the map `v -> #{ z : z^m = v }`.
///
/// `root_count(0) = 1`, and for `v != 0` the count is `0` or `gcd(m, q-1)`.
/// This is exactly the number of points of the cover `z^m = f` lying over a
/// base point where `f` takes the unit value `v`, which makes the table the
/// inner-loop kernel of every search.
#[derive(Clone, Debug)]
pub struct PowerResidueTable {
    m: u32,
    counts: Vec<u16>,
}

impl PowerResidueTable {
    pub fn m(&self) -> u32 {
        self.m
    }
    #[inline(always)]
    pub fn root_count(&self, v: Fe) -> u16 {
        self.counts[v as usize]
    }
    #[inline(always)]
    pub fn counts(&self) -> &[u16] {
        &self.counts
    }
}

/// The orbit `{x, x^p, x^{p^2}, ...}` of `x` under the Galois group.
pub fn frobenius_orbit(f: &FieldSpec, x: Fe) -> Vec<Fe> {
    let mut orbit = vec![x];
    let mut y = f.frob(x);
    while y != x {
        orbit.push(y);
        y = f.frob(y);
    }
    orbit
}

/// Convenience constructor mirroring the library surface: `F_{p^k}` with the
/// deterministic modulus choice, so runs are reproducible.
pub fn make_field(p: u32, k: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, k)
}

/// All prime powers `p^k < bound` in increasing order.
pub fn prime_powers_below(bound: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for q in 2..bound {
        let mut n = q;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                break;
            }
            p += 1;
        }
        let p = if n % p == 0 && p * p <= n { p } else { n };
        // p is the least prime factor of q
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if n == 1 {
            out.push((p, k));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = make_field(13, 1).unwrap();
        assert_eq!(f.q(), 13);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(7, 9), 3);
        assert_eq!(f.mul(5, 8), 1);
        assert_eq!(f.inv(5), 8);
        assert_eq!(f.el(-3), 10);
    }

    #[test]
    fn f49_lex_least_modulus() {
        let f = make_field(7, 2).unwrap();
        assert_eq!(f.q(), 49);
        // smallest v with x^2 + c1 x + c0 irreducible over F_7: v=1 is x^2+1,
        // and -1 is a nonsquare mod 7, so x^2+1 is irreducible.
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(make_field(6, 1).unwrap_err(), Error::NotPrime(6));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::BadDegree(0));
    }

    #[test]
    fn frobenius_orbits() {
        let f13 = make_field(13, 1).unwrap();
        for x in f13.elements() {
            assert_eq!(frobenius_orbit(&f13, x), alloc::vec![x]);
        }
        let f49 = make_field(7, 2).unwrap();
        assert_eq!(frobenius_orbit(&f49, 0), alloc::vec![0]);
        // a generator has a full orbit of size 2
        let mut sizes = alloc::collections::BTreeSet::new();
        for x in f49.elements() {
            let s = frobenius_orbit(&f49, x).len();
            assert!(s == 1 || s == 2);
            assert!(2 % s == 0);
            sizes.insert((x < 7, s));
            if x < 7 {
                assert_eq!(s, 1); // prime subfield is fixed
            }
        }
        assert!(sizes.contains(&(false, 2)));
    }

    #[test]
    fn residue_tables() {
        let f13 = make_field(13, 1).unwrap();
        let t = f13.power_residue_table(2);
        assert_eq!(t.root_count(4), 2);
        assert_eq!(t.root_count(0), 1);
        let squares = f13.elements().filter(|&v| v != 0 && t.root_count(v) == 2).count();
        assert_eq!(squares, 6);

        let f11 = make_field(11, 1).unwrap();
        let t5 = f11.power_residue_table(5);
        for v in f11.elements() {
            if v != 0 {
                assert!(t5.root_count(v) == 0 || t5.root_count(v) == 5);
            }
        }
    }

    #[test]
    fn residue_table_mass_all_small_fields() {
        for (p, k) in prime_powers_below(100) {
            let f = make_field(p, k).unwrap();
            for m in [2u32, 3, 5, 6] {
                let t = f.power_residue_table(m);
                let total: u32 = f.elements().map(|v| t.root_count(v) as u32).sum();
                assert_eq!(total, f.q(), "mass check failed for q={} m={}", f.q(), m);
                assert_eq!(t.root_count(0), 1);
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for (p, k) in prime_powers_below(100) {
            let f = make_field(p, k).unwrap();
            for _ in 0..1000 {
                let a = rng.gen_range(0..f.q()) as Fe;
                let b = rng.gen_range(0..f.q()) as Fe;
                let c = rng.gen_range(0..f.q()) as Fe;
                assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                if a != 0 {
                    assert_eq!(f.mul(f.inv(a), a), 1);
                }
            }
        }
    }
}
