//! The non-double-cover searches and the superelliptic verifier:
//! hyperelliptic curves with an order-4 automorphism, degree-5 Kummer covers
//! of the projective line, degree-3 Kummer covers of elliptic curves, and
//! exact counting of `z^m = f` data over the line or over a `y^2`-base.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cover::{merge_outcomes, CoverWitness, SearchOutcome, ShardOutcome};
use crate::curves::enumerate_classes;
use crate::ff::{Fe, FieldSpec};
use crate::funcfield::{check_cover, CoverCheck, CurveFn, HyperBase};
use crate::poly::{self, Poly};
use crate::{Error, Result};

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// Covers of the projective line
// ---------------------------------------------------------------------------

/// Exact rational point count and genus audit for `z^m = num/den` over the
/// projective line. `num` and `den` must be coprime.
pub fn p1_cover_check(field: &FieldSpec, m: u32, num: &Poly, den: &Poly) -> Result<CoverCheck> {
    if num.is_empty() {
        return Err(Error::BadCoverFunction("zero function"));
    }
    assert!(!den.is_empty());
    debug_assert_eq!(poly::deg(&poly::gcd(field, num, den)), 0);
    let rs = crate::funcfield::ResidueSet::new(field, m);

    let mut count = 0u64;
    for x in field.elements() {
        let (ord, unit) = p1_local(field, num, den, x);
        let d = divisor_gcd(m, ord);
        count += rs.count(d, unit);
    }
    // place at infinity: ord = deg den - deg num, unit = lead num / lead den
    let ord_inf = poly::deg(den) - poly::deg(num);
    let unit_inf = field.div(*num.last().unwrap(), *den.last().unwrap());
    count += rs.count(divisor_gcd(m, ord_inf), unit_inf);

    // genus via the factored divisor
    let mut entries: Vec<(i64, u32)> = Vec::new();
    let (_, nf) = poly::factor(field, num);
    for (p, v) in nf {
        entries.push((v as i64, poly::deg(&p) as u32));
    }
    let (_, df) = poly::factor(field, den);
    for (p, v) in df {
        entries.push((-(v as i64), poly::deg(&p) as u32));
    }
    if ord_inf != 0 {
        entries.push((ord_inf, 1));
    }
    let mut g_all = m as u64;
    for (o, _) in &entries {
        g_all = gcd_u(g_all, o.rem_euclid(m as i64) as u64);
    }
    let genus = if g_all == 1 {
        let mut ram = 0i64;
        for (o, deg) in &entries {
            let d = divisor_gcd(m, *o) as i64;
            ram += (m as i64 - d) * *deg as i64;
        }
        let two_g_minus_2 = -2 * m as i64 + ram;
        debug_assert!(two_g_minus_2 % 2 == 0);
        Some(two_g_minus_2 / 2 + 1)
    } else {
        None
    };
    Ok(CoverCheck { count, genus })
}

fn divisor_gcd(m: u32, ord: i64) -> u32 {
    let r = ord.rem_euclid(m as i64) as u64;
    let d = gcd_u(m as u64, r);
    if d == 0 {
        m
    } else {
        d as u32
    }
}

fn p1_local(field: &FieldSpec, num: &Poly, den: &Poly, x: Fe) -> (i64, Fe) {
    let (vn, un) = deflate_at(field, num, x);
    let (vd, ud) = deflate_at(field, den, x);
    (vn - vd, field.div(un, ud))
}

/// Order of vanishing at `x` and the value of the deflated polynomial there.
fn deflate_at(field: &FieldSpec, p: &Poly, x: Fe) -> (i64, Fe) {
    let mut cur = p.clone();
    let mut v = 0i64;
    loop {
        let val = poly::eval(field, &cur, x);
        if val != 0 {
            return (v, val);
        }
        // synthetic division by (x - x0)
        let mut qp = vec![0 as Fe; cur.len() - 1];
        let mut carry = 0 as Fe;
        for i in (1..cur.len()).rev() {
            carry = field.add(cur[i], field.mul(carry, x));
            qp[i - 1] = carry;
        }
        cur = qp;
        v += 1;
    }
}

/// Substitution `x -> 1/u + a` on `num/den`, returning the new fraction
/// (poles/zeros at `x = a` move to `u = infinity` and vice versa).
pub fn p1_shift(field: &FieldSpec, num: &Poly, den: &Poly, a: Fe) -> (Poly, Poly) {
    let dn = poly::deg(num).max(0) as usize;
    let dd = poly::deg(den).max(0) as usize;
    let shifted_rev = |p: &Poly, d: usize| -> Poly {
        // u^d * p(a + 1/u): reversal of the Taylor expansion at a
        let t = crate::series::taylor_at(field, p, a, d + 1);
        let mut out: Poly = t.into_iter().rev().collect();
        poly::trim(&mut out);
        out
    };
    let mut n2 = shifted_rev(num, dn);
    let mut d2 = shifted_rev(den, dd);
    // f = u^{dd - dn} n2 / d2
    if dd >= dn {
        n2 = poly::mul(field, &n2, &poly::x_pow(dd - dn));
    } else {
        d2 = poly::mul(field, &d2, &poly::x_pow(dn - dd));
    }
    let g = poly::gcd(field, &n2, &d2);
    if poly::deg(&g) > 0 {
        n2 = poly::divrem(field, &n2, &g).0;
        d2 = poly::divrem(field, &d2, &g).0;
    }
    (n2, d2)
}

/// Substitution `x -> 1/u + a` on a tower `z^m = g` over `y^2 = F(x)`;
/// returns an isomorphic tower on a fresh even-degree base model. `F(a)`
/// must be nonzero.
pub fn tower_shift(base: &HyperBase, m: u32, g: &CurveFn, a: Fe) -> Result<(HyperBase, CurveFn)> {
    let field = base.field.clone();
    let f = &*field;
    assert!(poly::eval(f, &base.f, a) != 0, "shift point must avoid the branch locus");
    let d = base.deg();
    let k = d + (d % 2); // even target degree
    // new base: y'^2 = u^k F(a + 1/u)
    let t = crate::series::taylor_at(f, &base.f, a, k + 1);
    let mut newf: Poly = t.into_iter().rev().collect();
    // taylor vector has length k+1 >= d+1; reversal gives u^k * F(a + 1/u)
    poly::trim(&mut newf);
    let newbase = HyperBase::new(field.clone(), newf)?;
    // g = A(x) + B(x) y; with y = y' / u^{k/2}:
    //   u^{m s} g = u^{m s} A(a + 1/u) + u^{m s - k/2} B(a + 1/u) y'
    let da = poly::deg(&g.a).max(0) as usize;
    let db = poly::deg(&g.b).max(0) as usize;
    let s = (da + db + k).div_ceil(m as usize); // large enough
    let ms = m as usize * s;
    let rev_at = |p: &Poly, shift: usize| -> Poly {
        if p.is_empty() {
            return vec![];
        }
        let dp = poly::deg(p) as usize;
        let t = crate::series::taylor_at(f, p, a, dp + 1);
        let rev: Poly = t.into_iter().rev().collect();
        let mut out = poly::mul(f, &rev, &poly::x_pow(shift - dp));
        poly::trim(&mut out);
        out
    };
    let na = rev_at(&g.a, ms);
    let nb = rev_at(&g.b, ms - k / 2);
    Ok((newbase, CurveFn::from_polys(na, nb)))
}

/// One superelliptic verification datum.
#[derive(Clone, Debug)]
pub enum SuperellipticDatum {
    /// `z^m = num/den` over the projective line.
    P1 { m: u32, num: Poly, den: Poly },
    /// `z^m = a + b y` over `y^2 = f`.
    Tower { base_f: Poly, m: u32, g: CurveFn },
}

/// Exact point count of a geometrically irreducible genus-4 superelliptic
/// datum; errors when the datum fails the irreducibility criterion or the
/// genus audit.
pub fn superelliptic_count(field: &Arc<FieldSpec>, datum: &SuperellipticDatum) -> Result<u64> {
    let chk = match datum {
        SuperellipticDatum::P1 { m, num, den } => p1_cover_check(field, *m, num, den)?,
        SuperellipticDatum::Tower { base_f, m, g } => {
            let base = HyperBase::new(field.clone(), base_f.clone())?;
            check_cover(&base, *m, g)?
        }
    };
    match chk.genus {
        None => Err(Error::BadCoverFunction("cover fails the irreducibility criterion")),
        Some(4) => Ok(chk.count),
        Some(_) => Err(Error::BadCoverFunction("cover is not of genus 4")),
    }
}

// ---------------------------------------------------------------------------
// Hyperelliptic curves with an order-4 automorphism
// ---------------------------------------------------------------------------

/// The five polynomials spanning the `x -> -1/x` family:
/// `x^10 + 1, x^9 - x, x^8 + x^2, x^7 - x^3, x^6 + x^4`.
pub fn order4_family(field: &FieldSpec) -> Vec<Poly> {
    let neg = field.neg(1);
    let mk = |pairs: &[(usize, Fe)]| -> Poly {
        let mut v = vec![0 as Fe; 11];
        for &(i, c) in pairs {
            v[i] = c;
        }
        poly::trim(&mut v);
        v
    };
    vec![
        mk(&[(10, 1), (0, 1)]),
        mk(&[(9, 1), (1, neg)]),
        mk(&[(8, 1), (2, 1)]),
        mk(&[(7, 1), (3, neg)]),
        mk(&[(6, 1), (4, 1)]),
    ]
}

/// Shard: leading-coefficient class and the next coefficient fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HyperShard {
    /// 0: `c0 in {1, nu}`, free `c1`; 1: `c0 = 0, c1 in {1, nu}`.
    pub lead: u8,
    pub lead_val: Fe,
    pub next: Fe,
}

/// Search over `y^2 = c0 (x^10+1) + ... + c4 (x^6+x^4)` up to squares.
pub struct HyperellipticOrder4Search {
    field: Arc<FieldSpec>,
    rc2: crate::ff::PowerResidueTable,
    /// values of the five family polynomials at every x
    vals: Vec<Vec<Fe>>,
    family: Vec<Poly>,
}

impl HyperellipticOrder4Search {
    pub fn new(field: Arc<FieldSpec>) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::BadCharacteristic { p: 2, min_excluded: 2 });
        }
        let family = order4_family(&field);
        let vals = family
            .iter()
            .map(|p| field.elements().map(|x| poly::eval(&field, p, x)).collect())
            .collect();
        let rc2 = field.power_residue_table(2);
        Ok(HyperellipticOrder4Search { field, rc2, vals, family })
    }

    pub fn shards(&self) -> Vec<HyperShard> {
        let nu = self.field.least_nonsquare();
        let mut out = Vec::new();
        for lead_val in [1 as Fe, nu] {
            for next in self.field.elements() {
                out.push(HyperShard { lead: 0, lead_val, next });
            }
        }
        for lead_val in [1 as Fe, nu] {
            for next in self.field.elements() {
                out.push(HyperShard { lead: 1, lead_val, next });
            }
        }
        out
    }

    pub fn estimate(&self) -> u128 {
        let q = self.field.q() as u128;
        2 * (q.pow(4) + q.pow(3)) * q.div_ceil(6)
    }

    pub fn run_shard(&self, shard: &HyperShard) -> ShardOutcome {
        let f = &*self.field;
        let q = f.q() as usize;
        let rc = self.rc2.counts();
        let mut out = ShardOutcome::default();
        let mut best = 0i64;

        // coefficient layout: c[0..5]; shard fixes the first two live ones
        let (fixed, free_from): ([Fe; 5], usize) = match shard.lead {
            0 => ([shard.lead_val, shard.next, 0, 0, 0], 2),
            _ => ([0, shard.lead_val, shard.next, 0, 0], 3),
        };
        let inf_cnt: i64 = if fixed[0] != 0 { rc[fixed[0] as usize] as i64 } else { 1 };

        // partial values over all x for the fixed prefix
        let mut partial = vec![0 as Fe; q];
        for (x, pv) in partial.iter_mut().enumerate() {
            let mut v = 0 as Fe;
            for (j, &c) in fixed.iter().enumerate().take(free_from) {
                if c != 0 {
                    v = f.add(v, f.mul(c, self.vals[j][x]));
                }
            }
            *pv = v;
        }
        let mut coeffs = fixed;
        self.scan(free_from, &partial, &mut coeffs, inf_cnt, &mut best, &mut out);
        out
    }

    fn scan(
        &self,
        level: usize,
        partial: &[Fe],
        coeffs: &mut [Fe; 5],
        inf_cnt: i64,
        best: &mut i64,
        out: &mut ShardOutcome,
    ) {
        let f = &*self.field;
        let q = f.q() as usize;
        let rc = self.rc2.counts();
        if level == 4 {
            let bl = &self.vals[4];
            for c in f.elements() {
                out.counted += 1;
                let mut cnt = inf_cnt;
                let mut aborted = false;
                for i in 0..q {
                    if cnt + 2 * (q - i) as i64 <= *best {
                        aborted = true;
                        break;
                    }
                    let v = f.add(partial[i], f.mul(c, bl[i]));
                    cnt += rc[v as usize] as i64;
                }
                if aborted {
                    out.pruned += 1;
                    continue;
                }
                if cnt > *best {
                    coeffs[4] = c;
                    // validate: degree 9 or 10 and separable means genus 4,
                    // and then the fast count is already exact
                    let mut fp: Poly = vec![];
                    for (j, &cj) in coeffs.iter().enumerate() {
                        if cj != 0 {
                            fp = poly::add(f, &fp, &poly::scale(f, &self.family[j], cj));
                        }
                    }
                    let d = poly::deg(&fp);
                    if (d == 9 || d == 10) && poly::is_squarefree(f, &fp) {
                        *best = cnt;
                        out.best = cnt as u64;
                        out.witness = Some(CoverWitness {
                            q: f.q(),
                            base_poly: vec![],
                            m: 2,
                            g: CurveFn::from_polys(fp, vec![]),
                            space: alloc::string::String::from("hyperelliptic-order4"),
                            count: cnt as u64,
                        });
                    }
                }
            }
            return;
        }
        let mut next = vec![0 as Fe; q];
        for c in f.elements() {
            coeffs[level] = c;
            for i in 0..q {
                next[i] = f.add(partial[i], f.mul(c, self.vals[level][i]));
            }
            self.scan(level + 1, &next, coeffs, inf_cnt, best, out);
        }
    }

    pub fn run(&self) -> SearchOutcome {
        let outs: Vec<ShardOutcome> = self.shards().iter().map(|s| self.run_shard(s)).collect();
        merge_outcomes(&outs)
    }
}

/// Maximum point count over the order-4-automorphism hyperelliptic family.
pub fn hyperelliptic_order4_search(field: Arc<FieldSpec>) -> Result<SearchOutcome> {
    Ok(HyperellipticOrder4Search::new(field)?.run())
}

// ---------------------------------------------------------------------------
// Degree-5 Kummer covers of the projective line
// ---------------------------------------------------------------------------

/// A support configuration for `z^5 = c * prod p_i^{e_i}`.
#[derive(Clone, Debug)]
struct Kummer5Config {
    factors: Vec<(Poly, u32)>,
    /// exponent at infinity, modulo 5 (0 means unramified over infinity)
    e_inf: u32,
}

/// Search over degree-5 Kummer covers of the line with genus 4: divisor
/// supported on 4 geometric points, exponents nonzero mod 5 summing to 0.
///
/// Support shapes up to the projective linear action: four rational points
/// `{0, 1, inf, lambda}`; two rational points `{0, inf}` plus a quadratic
/// place; two quadratic places (one pinned to the least irreducible
/// quadratic); a cubic place plus `{inf}`. Every shape is swept over all
/// fifth-power-free twists.
pub struct Kummer5Search {
    field: Arc<FieldSpec>,
    rc5: crate::ff::PowerResidueTable,
    twists: Vec<Fe>,
    configs: Vec<Kummer5Config>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Kummer5Shard {
    pub start: usize,
    pub end: usize,
}

impl Kummer5Search {
    pub fn new(field: Arc<FieldSpec>) -> Result<Self> {
        if field.q() % 5 != 1 {
            return Err(Error::RootsOfUnityMissing { q: field.q(), m: 5 });
        }
        let f = &*field;
        let rc5 = f.power_residue_table(5);
        // coset representatives of F* / (F*)^5
        let mut twists = Vec::new();
        let mut covered = vec![false; f.q() as usize];
        for c in f.elements() {
            if c == 0 || covered[c as usize] {
                continue;
            }
            twists.push(c);
            for z in f.elements() {
                if z != 0 {
                    covered[f.mul(c, f.pow(z, 5)) as usize] = true;
                }
            }
        }
        debug_assert_eq!(twists.len(), 5);

        let lin = |r: i64| poly::from_ints(f, &[-r, 1]);
        let mut configs = Vec::new();
        // four rational points 0, 1, inf, lambda
        for lam in f.elements() {
            if lam == 0 || lam == 1 {
                continue;
            }
            for e1 in 1..5u32 {
                for e2 in 1..5u32 {
                    for e3 in 1..5u32 {
                        let e4 = (20 - (e1 + e2 + e3) % 5) % 5;
                        if e4 == 0 {
                            continue;
                        }
                        configs.push(Kummer5Config {
                            factors: vec![
                                (lin(0), e1),
                                (lin(1), e2),
                                (poly::from_ints(f, &[-(lam as i64), 1]), e3),
                            ],
                            e_inf: e4,
                        });
                    }
                }
            }
        }
        // rational 0, inf + one quadratic place
        let quads = poly::monic_irreducibles(f, 2);
        for p in &quads {
            for eq in 1..5u32 {
                for e0 in 1..5u32 {
                    let ei = (20 - (2 * eq + e0) % 5) % 5;
                    if ei == 0 {
                        continue;
                    }
                    configs.push(Kummer5Config {
                        factors: vec![(p.clone(), eq), (lin(0), e0)],
                        e_inf: ei,
                    });
                }
            }
        }
        // two quadratic places, the first pinned to the least one
        let p0 = quads[0].clone();
        for p in &quads[1..] {
            for e1 in 1..5u32 {
                let e2 = 5 - e1;
                configs.push(Kummer5Config {
                    factors: vec![(p0.clone(), e1), (p.clone(), e2)],
                    e_inf: 0,
                });
            }
        }
        // one cubic place + inf
        for p in poly::monic_irreducibles(f, 3) {
            for ec in 1..5u32 {
                let ei = (20 - (3 * ec) % 5) % 5;
                debug_assert!(ei != 0);
                configs.push(Kummer5Config { factors: vec![(p.clone(), ec)], e_inf: ei });
            }
        }
        Ok(Kummer5Search { field, rc5, twists, configs })
    }

    pub fn shards(&self) -> Vec<Kummer5Shard> {
        let step = 2048usize;
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.configs.len() {
            out.push(Kummer5Shard { start: i, end: (i + step).min(self.configs.len()) });
            i += step;
        }
        out
    }

    pub fn estimate(&self) -> u128 {
        self.configs.len() as u128 * 5 * (self.field.q() as u128 + 1)
    }

    pub fn run_shard(&self, shard: &Kummer5Shard) -> ShardOutcome {
        let f = &*self.field;
        let mut out = ShardOutcome::default();
        let mut best = 0i64;
        for ci in shard.start..shard.end {
            let cfg = &self.configs[ci];
            // product of factor values (with exponents) at every x; support
            // points contribute exactly one point each (total ramification)
            let mut prod = vec![0 as Fe; f.q() as usize];
            let mut support_pts = 0i64;
            for x in f.elements() {
                let mut v = 1 as Fe;
                let mut in_support = false;
                for (p, e) in &cfg.factors {
                    let pv = poly::eval(f, p, x);
                    if pv == 0 {
                        in_support = true;
                        break;
                    }
                    v = f.mul(v, f.pow(pv, *e as u64));
                }
                if in_support {
                    support_pts += 1;
                    prod[x as usize] = 0;
                } else {
                    prod[x as usize] = v;
                }
            }
            let inf_support = cfg.e_inf != 0;
            for &c in &self.twists {
                out.counted += 1;
                let mut cnt = support_pts;
                cnt += if inf_support { 1 } else { self.rc5.root_count(c) as i64 };
                for x in f.elements() {
                    let v = prod[x as usize];
                    if v != 0 {
                        cnt += self.rc5.root_count(f.mul(c, v)) as i64;
                    }
                }
                if cnt > best {
                    // re-verify exactly over the line
                    let mut num = poly::constant(c);
                    for (p, e) in &cfg.factors {
                        for _ in 0..*e {
                            num = poly::mul(f, &num, p);
                        }
                    }
                    let chk = p1_cover_check(f, 5, &num, &vec![1 as Fe]).expect("nonzero");
                    debug_assert_eq!(chk.genus, Some(4));
                    if chk.genus == Some(4) && chk.count as i64 > best {
                        best = chk.count as i64;
                        out.best = chk.count;
                        out.witness = Some(CoverWitness {
                            q: f.q(),
                            base_poly: vec![],
                            m: 5,
                            g: CurveFn::from_polys(num, vec![]),
                            space: alloc::string::String::from("kummer5"),
                            count: chk.count,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn run(&self) -> SearchOutcome {
        let outs: Vec<ShardOutcome> = self.shards().iter().map(|s| self.run_shard(s)).collect();
        merge_outcomes(&outs)
    }
}

/// Maximum point count over genus-4 degree-5 Kummer covers of the line.
pub fn kummer5_search(field: Arc<FieldSpec>) -> Result<SearchOutcome> {
    Ok(Kummer5Search::new(field)?.run())
}

// ---------------------------------------------------------------------------
// Degree-3 Kummer covers of elliptic curves
// ---------------------------------------------------------------------------

/// Search over `z^3 = y + a x + b` for every trace-`t` elliptic curve class.
pub struct Kummer3Search {
    field: Arc<FieldSpec>,
    rc3: crate::ff::PowerResidueTable,
    bases: Vec<HyperBase>,
    /// affine points (x, y) per base
    pts: Vec<Vec<(Fe, Fe)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Kummer3Shard {
    pub base: usize,
    pub a: Fe,
}

impl Kummer3Search {
    pub fn new(field: Arc<FieldSpec>, t: i64) -> Result<Self> {
        if field.q() % 3 != 1 {
            return Err(Error::RootsOfUnityMissing { q: field.q(), m: 3 });
        }
        if field.p() <= 3 {
            return Err(Error::BadCharacteristic { p: field.p(), min_excluded: 3 });
        }
        let classes = enumerate_classes(&field, t)?;
        let mut bases = Vec::new();
        let mut pts = Vec::new();
        for (e, _) in &classes.representatives {
            let base = HyperBase::new(field.clone(), e.cubic())?;
            let p: Vec<(Fe, Fe)> = base
                .rational_places()
                .into_iter()
                .filter_map(|pl| match pl {
                    crate::funcfield::RatPlace::Affine { x, y } => Some((x, y)),
                    crate::funcfield::RatPlace::Branch { x } => Some((x, 0)),
                    _ => None,
                })
                .collect();
            bases.push(base);
            pts.push(p);
        }
        let rc3 = field.power_residue_table(3);
        Ok(Kummer3Search { field, rc3, bases, pts })
    }

    pub fn shards(&self) -> Vec<Kummer3Shard> {
        let mut out = Vec::new();
        for base in 0..self.bases.len() {
            for a in self.field.elements() {
                out.push(Kummer3Shard { base, a });
            }
        }
        out
    }

    pub fn estimate(&self) -> u128 {
        self.bases.len() as u128 * (self.field.q() as u128).pow(3)
    }

    pub fn run_shard(&self, shard: &Kummer3Shard) -> ShardOutcome {
        let f = &*self.field;
        let rc = self.rc3.counts();
        let base = &self.bases[shard.base];
        let pts = &self.pts[shard.base];
        let npts = pts.len();
        let mut out = ShardOutcome::default();
        let mut best = 0i64;
        // y + a x precomputed per point; 3 points over infinity (unit 1)
        let pre: Vec<Fe> = pts.iter().map(|&(x, y)| f.add(y, f.mul(shard.a, x))).collect();
        for b in f.elements() {
            out.counted += 1;
            let mut cnt = 3i64;
            let mut aborted = false;
            for (i, &v0) in pre.iter().enumerate() {
                if cnt + 3 * (npts - i) as i64 <= best {
                    aborted = true;
                    break;
                }
                cnt += rc[f.add(v0, b) as usize] as i64;
            }
            if aborted {
                out.pruned += 1;
                continue;
            }
            if cnt > best {
                let gg = CurveFn {
                    a: {
                        let mut v = vec![b, shard.a];
                        poly::trim(&mut v);
                        v
                    },
                    b: vec![1],
                };
                if let Ok(chk) = check_cover(base, 3, &gg) {
                    if chk.genus == Some(4) && chk.count as i64 > best {
                        best = chk.count as i64;
                        out.best = chk.count;
                        out.witness = Some(CoverWitness {
                            q: f.q(),
                            base_poly: base.f.clone(),
                            m: 3,
                            g: gg,
                            space: alloc::string::String::from("kummer3"),
                            count: chk.count,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn run(&self) -> SearchOutcome {
        let outs: Vec<ShardOutcome> = self.shards().iter().map(|s| self.run_shard(s)).collect();
        merge_outcomes(&outs)
    }
}

/// Maximum over `z^3 = y + ax + b` Kummer covers of trace-`t` curves.
pub fn kummer3_search(field: Arc<FieldSpec>, t: i64) -> Result<SearchOutcome> {
    Ok(Kummer3Search::new(field, t)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn p1_count_and_shift() {
        let field = Arc::new(make_field(13, 1).unwrap());
        let f = &*field;
        // z^2 = x: the line again, q + 1 points
        let chk = p1_cover_check(f, 2, &poly::x_pow(1), &vec![1]).unwrap();
        assert_eq!(chk.count, 14);
        assert_eq!(chk.genus, Some(0));

        // shift invariance for a quadratic-twist datum
        let num = poly::from_ints(f, &[3, 1, 0, 0, 0, 1]); // x^5 + x + 3
        let den = vec![1 as Fe];
        let c0 = p1_cover_check(f, 2, &num, &den).unwrap().count;
        for a in [0i64, 2, 5] {
            let af = f.el(a);
            if poly::eval(f, &num, af) == 0 {
                continue;
            }
            let (n2, d2) = p1_shift(f, &num, &den, af);
            let c1 = p1_cover_check(f, 2, &n2, &d2).unwrap().count;
            assert_eq!(c0, c1);
        }
    }

    #[test]
    fn bonus_curve_y6() {
        // y^6 = x^3 + x - 6 over F_67 has 129 points
        let field = Arc::new(make_field(67, 1).unwrap());
        let num = poly::from_ints(&field, &[-6, 1, 0, 1]);
        let chk = p1_cover_check(&field, 6, &num, &vec![1]).unwrap();
        assert_eq!(chk.genus, Some(4));
        assert_eq!(chk.count, 129);
        let d = SuperellipticDatum::P1 { m: 6, num, den: vec![1] };
        assert_eq!(superelliptic_count(&field, &d).unwrap(), 129);
    }

    #[test]
    fn hyper_family_small_field_bruteforce() {
        // brute-force oracle over F_5: maximum over the same family by naive
        // (x, y) enumeration
        let field = Arc::new(make_field(5, 1).unwrap());
        let f = &*field;
        let fam = order4_family(f);
        let mut brute_best = 0u64;
        let q = f.q();
        for c0 in f.elements() {
            for c1 in f.elements() {
                for c2 in f.elements() {
                    for c3 in f.elements() {
                        for c4 in f.elements() {
                            let cs = [c0, c1, c2, c3, c4];
                            let mut fp: Poly = vec![];
                            for (j, &cj) in cs.iter().enumerate() {
                                fp = poly::add(f, &fp, &poly::scale(f, &fam[j], cj));
                            }
                            let d = poly::deg(&fp);
                            if !(d == 9 || d == 10) || !poly::is_squarefree(f, &fp) {
                                continue;
                            }
                            let mut n = 0u64;
                            for x in f.elements() {
                                let v = poly::eval(f, &fp, x);
                                for y in f.elements() {
                                    if f.mul(y, y) == v {
                                        n += 1;
                                    }
                                }
                            }
                            n += if d == 10 {
                                let l = *fp.last().unwrap();
                                (0..q as Fe).filter(|&y| f.mul(y, y) == l).count() as u64
                            } else {
                                1
                            };
                            brute_best = brute_best.max(n);
                        }
                    }
                }
            }
        }
        let out = hyperelliptic_order4_search(field.clone()).unwrap();
        assert_eq!(out.max_points, brute_best);
    }

    #[test]
    fn kummer5_f11() {
        let field = Arc::new(make_field(11, 1).unwrap());
        let out = kummer5_search(field).unwrap();
        assert!(out.max_points < 34, "max = {}", out.max_points);
        assert!(out.max_points > 0);
    }

    #[test]
    fn kummer5_requires_roots_of_unity() {
        let field = Arc::new(make_field(13, 1).unwrap());
        assert!(kummer5_search(field).is_err());
    }

    #[test]
    fn kummer3_finds_148_over_f79() {
        // base y^2 = x^3 + x + 6 over F_79; witness z^3 = y + 33x + 2
        let field = Arc::new(make_field(79, 1).unwrap());
        let e = crate::curves::EllipticCurve::from_ints(field.clone(), 1, 6).unwrap();
        let t = e.trace();
        let out = kummer3_search(field.clone(), t).unwrap();
        assert_eq!(out.max_points, 148);
        // and the printed witness itself counts to 148
        let base = HyperBase::new(field.clone(), e.cubic()).unwrap();
        let g = CurveFn { a: poly::from_ints(&field, &[2, 33]), b: vec![1] };
        let chk = check_cover(&base, 3, &g).unwrap();
        assert_eq!(chk.genus, Some(4));
        assert_eq!(chk.count, 148);
    }
}
