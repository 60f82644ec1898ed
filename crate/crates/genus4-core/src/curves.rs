//! Elliptic and genus-2 curve models over small fields: point enumeration,
//! traces, the twist/Galois class enumeration, and the reduction of marked
//! points modulo `3E(k)` and `Aut E`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::ff::{Fe, FieldSpec};
use crate::poly::{self, Poly};
use crate::{Error, Result};

/// `y^2 = x^3 + a x + b`, nonsingular.
#[derive(Clone, Debug)]
pub struct EllipticCurve {
    pub field: Arc<FieldSpec>,
    pub a: Fe,
    pub b: Fe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EcPoint {
    Infinity,
    Affine(Fe, Fe),
}

impl EllipticCurve {
    pub fn new(field: Arc<FieldSpec>, a: Fe, b: Fe) -> Result<EllipticCurve> {
        let e = EllipticCurve { field, a, b };
        if e.is_singular() {
            return Err(Error::Singular);
        }
        Ok(e)
    }

    pub fn from_ints(field: Arc<FieldSpec>, a: i64, b: i64) -> Result<EllipticCurve> {
        let (ae, be) = (field.el(a), field.el(b));
        EllipticCurve::new(field, ae, be)
    }

    fn is_singular(&self) -> bool {
        let f = &*self.field;
        // 4a^3 + 27b^2
        let a3 = f.mul(self.a, f.mul(self.a, self.a));
        let b2 = f.mul(self.b, self.b);
        let four = f.el(4);
        let twenty7 = f.el(27);
        f.add(f.mul(four, a3), f.mul(twenty7, b2)) == 0
    }

    /// The cubic `x^3 + a x + b` as a polynomial.
    pub fn cubic(&self) -> Poly {
        let mut v = vec![self.b, self.a, 0, 1];
        poly::trim(&mut v);
        v
    }

    pub fn rhs(&self, x: Fe) -> Fe {
        let f = &*self.field;
        f.add(f.mul(x, f.add(f.mul(x, x), self.a)), self.b)
    }

    pub fn contains(&self, p: &EcPoint) -> bool {
        match *p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    /// `#E(F_q) = 1 + sum_x #{y : y^2 = x^3 + ax + b}`.
    pub fn count_points(&self) -> u64 {
        let f = &*self.field;
        let t = f.power_residue_table(2);
        let mut n = 1u64;
        for x in f.elements() {
            n += t.root_count(self.rhs(x)) as u64;
        }
        n
    }

    pub fn trace(&self) -> i64 {
        self.field.q() as i64 + 1 - self.count_points() as i64
    }

    /// All rational points, infinity first, affine points in index order.
    pub fn points(&self) -> Vec<EcPoint> {
        let f = &*self.field;
        let mut pts = vec![EcPoint::Infinity];
        for x in f.elements() {
            for y in f.elements() {
                if f.mul(y, y) == self.rhs(x) {
                    pts.push(EcPoint::Affine(x, y));
                }
            }
        }
        pts
    }

    pub fn neg(&self, p: &EcPoint) -> EcPoint {
        match *p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x, self.field.neg(y)),
        }
    }

    /// Chord-tangent group law; requires characteristic > 3.
    pub fn add(&self, p: &EcPoint, q: &EcPoint) -> EcPoint {
        let f = &*self.field;
        assert!(f.p() > 3, "group law implemented for characteristic > 3");
        match (*p, *q) {
            (EcPoint::Infinity, r) | (r, EcPoint::Infinity) => r,
            (EcPoint::Affine(x1, y1), EcPoint::Affine(x2, y2)) => {
                if x1 == x2 && y1 == f.neg(y2) {
                    return EcPoint::Infinity;
                }
                let lambda = if x1 == x2 {
                    // tangent
                    let num = f.add(f.mul(f.el(3), f.mul(x1, x1)), self.a);
                    f.div(num, f.mul(f.el(2), y1))
                } else {
                    f.div(f.sub(y2, y1), f.sub(x2, x1))
                };
                let x3 = f.sub(f.sub(f.mul(lambda, lambda), x1), x2);
                let y3 = f.sub(f.mul(lambda, f.sub(x1, x3)), y1);
                EcPoint::Affine(x3, y3)
            }
        }
    }

    pub fn mul_point(&self, n: u64, p: &EcPoint) -> EcPoint {
        let mut acc = EcPoint::Infinity;
        let mut base = *p;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn j_is_zero(&self) -> bool {
        self.a == 0
    }
    pub fn j_is_1728(&self) -> bool {
        self.b == 0
    }

    /// Scalars `u` realizing `Aut E` as `(x, y) -> (u^2 x, u^3 y)`:
    /// solutions of `u^6 = 1` when `j = 0`, `u^4 = 1` when `j = 1728`,
    /// `u^2 = 1` otherwise.
    pub fn aut_scalars(&self) -> Vec<Fe> {
        let f = &*self.field;
        let e: u64 = if self.j_is_zero() {
            6
        } else if self.j_is_1728() {
            4
        } else {
            2
        };
        f.elements().filter(|&u| u != 0 && f.pow(u, e) == 1).collect()
    }

    fn apply_aut(&self, u: Fe, p: &EcPoint) -> EcPoint {
        let f = &*self.field;
        match *p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => {
                let u2 = f.mul(u, u);
                EcPoint::Affine(f.mul(u2, x), f.mul(f.mul(u2, u), y))
            }
        }
    }
}

/// One representative per orbit of the combined `k^*`-twist and Galois action
/// on nonsingular `(a, b)` pairs, with the given trace.
#[derive(Clone, Debug)]
pub struct CurveClassSet {
    pub trace: i64,
    /// `(curve, orbit size)`, representative chosen lexicographically least.
    pub representatives: Vec<(EllipticCurve, u64)>,
}

/// Enumerates all `(a, b)` orbits (any trace), in lexicographic order of the
/// least orbit element. Characteristic > 3.
pub fn all_classes(field: &Arc<FieldSpec>) -> Result<Vec<(EllipticCurve, u64)>> {
    let f = &**field;
    if f.p() <= 3 {
        return Err(Error::BadCharacteristic { p: f.p(), min_excluded: 3 });
    }
    let q = f.q() as usize;
    let mut seen = vec![false; q * q];
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            let idx = a as usize * q + b as usize;
            if seen[idx] {
                continue;
            }
            let cand = EllipticCurve { field: field.clone(), a, b };
            if cand.is_singular() {
                seen[idx] = true;
                continue;
            }
            // orbit under (a, b) ~ (frob^j(a) u^4, frob^j(b) u^6)
            let mut orbit_size = 0u64;
            for u in f.elements() {
                if u == 0 {
                    continue;
                }
                let u4 = f.pow(u, 4);
                let u6 = f.pow(u, 6);
                let mut aa = f.mul(a, u4);
                let mut bb = f.mul(b, u6);
                for _ in 0..f.k() {
                    let j = aa as usize * q + bb as usize;
                    if !seen[j] {
                        seen[j] = true;
                        orbit_size += 1;
                    }
                    aa = f.frob(aa);
                    bb = f.frob(bb);
                }
            }
            out.push((cand, orbit_size));
        }
    }
    Ok(out)
}

/// The class enumeration restricted to a target trace; errors if the trace
/// violates the Hasse bound.
pub fn enumerate_classes(field: &Arc<FieldSpec>, t: i64) -> Result<CurveClassSet> {
    let q = field.q() as i64;
    if t * t > 4 * q {
        return Err(Error::HasseViolation { q: field.q(), t });
    }
    let all = all_classes(field)?;
    let representatives =
        all.into_iter().filter(|(e, _)| e.trace() == t).collect();
    Ok(CurveClassSet { trace: t, representatives })
}

/// Marked points for the double-cover search: one representative of each
/// orbit of `Aut E` acting on `E(k)/3E(k)`, the identity class represented by
/// infinity and every other class by a point of order different from 2.
pub fn q_representatives(e: &EllipticCurve) -> Vec<EcPoint> {
    let pts = e.points();
    let n = pts.len();
    let index_of = |p: &EcPoint| -> usize { pts.binary_search(p).expect("point on curve") };
    debug_assert!(pts.windows(2).all(|w| w[0] < w[1]));

    // image of multiplication by 3
    let mut in_3e = vec![false; n];
    for p in &pts {
        in_3e[index_of(&e.mul_point(3, p))] = true;
    }
    let three_e: Vec<EcPoint> = pts.iter().copied().filter(|p| in_3e[index_of(p)]).collect();

    // cosets of 3E(k)
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let mut members = Vec::new();
        for t in &three_e {
            let j = index_of(&e.add(p, t));
            if coset_of[j] == usize::MAX {
                coset_of[j] = id;
                members.push(j);
            }
        }
        members.sort_unstable();
        cosets.push(members);
    }

    // orbits of Aut E on the cosets
    let auts = e.aut_scalars();
    let ncos = cosets.len();
    let mut orbit_mark = vec![false; ncos];
    let identity_coset = coset_of[0]; // pts[0] is infinity
    let mut reps = Vec::new();
    for c in 0..ncos {
        if orbit_mark[c] {
            continue;
        }
        // mark the whole Aut-orbit of coset c
        let mut stack = vec![c];
        orbit_mark[c] = true;
        while let Some(d) = stack.pop() {
            let some_pt = pts[cosets[d][0]];
            for &u in &auts {
                let img = coset_of[index_of(&e.apply_aut(u, &some_pt))];
                if !orbit_mark[img] {
                    orbit_mark[img] = true;
                    stack.push(img);
                }
            }
        }
        if c == identity_coset {
            reps.push(EcPoint::Infinity);
        } else {
            // least-index member that is not 2-torsion (y != 0, not infinity)
            let rep = cosets[c]
                .iter()
                .map(|&i| pts[i])
                .find(|p| matches!(p, EcPoint::Affine(_, y) if *y != 0))
                .expect("every nontrivial class contains a non-2-torsion point");
            reps.push(rep);
        }
    }
    reps
}

/// The translated model `y^2 = x^3 + r x^2 + s x + t^2` carrying the marked
/// point `Q = (0, t)`, `t != 0`.
#[derive(Clone, Debug)]
pub struct ShiftedModel {
    pub field: Arc<FieldSpec>,
    pub r: Fe,
    pub s: Fe,
    pub t: Fe,
}

impl ShiftedModel {
    /// Cubic `x^3 + r x^2 + s x + t^2`.
    pub fn cubic(&self) -> Poly {
        let f = &*self.field;
        let mut v = vec![f.mul(self.t, self.t), self.s, self.r, 1];
        poly::trim(&mut v);
        v
    }

    /// Tangent slope at `Q`: `m = s / (2t)`.
    pub fn tangent_slope(&self) -> Fe {
        let f = &*self.field;
        f.div(self.s, f.mul(f.el(2), self.t))
    }
}

/// Translates coordinates so the marked point `q` sits at `x = 0`; errors if
/// `q` is infinity or 2-torsion.
pub fn shifted_model(e: &EllipticCurve, q: &EcPoint) -> Result<ShiftedModel> {
    let f = &*e.field;
    let (x0, y0) = match *q {
        EcPoint::Affine(x, y) if y != 0 => (x, y),
        _ => return Err(Error::TwoTorsionPoint),
    };
    let r = f.mul(f.el(3), x0);
    let s = f.add(f.mul(f.el(3), f.mul(x0, x0)), e.a);
    Ok(ShiftedModel { field: e.field.clone(), r, s, t: y0 })
}

/// `y^2 = f(x)` with `f` separable of degree 5 or 6, characteristic > 2.
#[derive(Clone, Debug)]
pub struct Genus2Curve {
    pub field: Arc<FieldSpec>,
    pub sextic: Poly,
}

impl Genus2Curve {
    pub fn new(field: Arc<FieldSpec>, sextic: Poly) -> Result<Genus2Curve> {
        if field.p() == 2 {
            return Err(Error::BadCharacteristic { p: 2, min_excluded: 2 });
        }
        let d = poly::deg(&sextic);
        if !(d == 5 || d == 6) || !poly::is_squarefree(&field, &sextic) {
            return Err(Error::Singular);
        }
        Ok(Genus2Curve { field, sextic })
    }

    pub fn from_ints(field: Arc<FieldSpec>, coeffs: &[i64]) -> Result<Genus2Curve> {
        let p = poly::from_ints(&field, coeffs);
        Genus2Curve::new(field, p)
    }

    /// Affine count plus 2/0/1 points at infinity according as the degree-6
    /// coefficient is a nonzero square / a nonsquare / zero.
    pub fn count_points(&self) -> u64 {
        let f = &*self.field;
        let t = f.power_residue_table(2);
        let mut n = 0u64;
        for x in f.elements() {
            n += t.root_count(poly::eval(f, &self.sextic, x)) as u64;
        }
        n += if poly::deg(&self.sextic) == 5 {
            1
        } else {
            t.root_count(*self.sextic.last().unwrap()) as u64
        };
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    fn f13() -> Arc<FieldSpec> {
        Arc::new(make_field(13, 1).unwrap())
    }

    #[test]
    fn count_points_examples() {
        // y^2 = x^3 + 4 over F_13 has 21 points, trace -7
        let e = EllipticCurve::from_ints(f13(), 0, 4).unwrap();
        assert_eq!(e.count_points(), 21);
        assert_eq!(e.trace(), -7);

        // y^2 = x^3 - x over F_3 has 4 points (counting works for char 3)
        let f3 = Arc::new(make_field(3, 1).unwrap());
        let e3 = EllipticCurve::from_ints(f3, -1, 0).unwrap();
        assert_eq!(e3.count_points(), 4);
    }

    #[test]
    fn hasse_bound_over_f13() {
        let field = f13();
        for (e, _) in all_classes(&field).unwrap() {
            let t = e.trace();
            assert!(t * t <= 4 * 13);
        }
    }

    #[test]
    fn group_law_basics() {
        let e = EllipticCurve::from_ints(f13(), 0, 4).unwrap();
        let pts = e.points();
        let n = e.count_points();
        for p in &pts {
            assert_eq!(e.add(p, &EcPoint::Infinity), *p);
            assert_eq!(e.add(p, &e.neg(p)), EcPoint::Infinity);
            assert_eq!(e.mul_point(n, p), EcPoint::Infinity);
        }
    }

    #[test]
    fn group_law_associativity_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (a, b) in [(0i64, 4i64), (1, 8), (2, 1)] {
            let e = match EllipticCurve::from_ints(f13(), a, b) {
                Ok(e) => e,
                Err(_) => continue,
            };
            let pts = e.points();
            for _ in 0..500 {
                let p = pts[rng.gen_range(0..pts.len())];
                let q = pts[rng.gen_range(0..pts.len())];
                let r = pts[rng.gen_range(0..pts.len())];
                assert_eq!(e.add(&e.add(&p, &q), &r), e.add(&p, &e.add(&q, &r)));
            }
        }
    }

    #[test]
    fn class_mass_checks() {
        for q in [5u32, 7, 11, 13] {
            let field = Arc::new(make_field(q, 1).unwrap());
            let classes = all_classes(&field).unwrap();
            let mass: u64 = classes.iter().map(|(_, s)| s).sum();
            assert_eq!(mass, (q * q - q) as u64, "mass for q={q}");
        }
    }

    #[test]
    fn classes_with_trace() {
        let field = f13();
        let c = enumerate_classes(&field, -7).unwrap();
        assert!(!c.representatives.is_empty());
        // the orbit of y^2 = x^3 + 4 must be represented
        assert!(c.representatives.iter().any(|(e, _)| {
            e.a == 0 // its twist class: a = 0 stays a = 0 under the action
        }));
        for (e, _) in &c.representatives {
            assert_eq!(e.trace(), -7);
        }
        assert!(enumerate_classes(&field, 8).is_err());
    }

    #[test]
    fn q_reps_examples() {
        // 3 | 21 = #E for y^2 = x^3 + 4/F_13, cyclic, so E/3E = Z/3 and
        // Aut (j=0, 13 = 1 mod 6) folds the two nontrivial classes together.
        let e = EllipticCurve::from_ints(f13(), 0, 4).unwrap();
        let reps = q_representatives(&e);
        assert!(reps.contains(&EcPoint::Infinity));
        assert!(reps.len() == 2);
        for r in &reps {
            if let EcPoint::Affine(_, y) = r {
                assert!(*y != 0);
            }
        }

        // 3 does not divide #E => only the identity class
        let e2 = EllipticCurve::from_ints(f13(), 1, 1).unwrap();
        let n2 = e2.count_points();
        if n2 % 3 != 0 {
            assert_eq!(q_representatives(&e2), alloc::vec![EcPoint::Infinity]);
        }
    }

    #[test]
    fn shifted_model_consistency() {
        let e = EllipticCurve::from_ints(f13(), 0, 4).unwrap();
        let f = e.field.clone();
        for p in e.points() {
            if let EcPoint::Affine(x0, _) = p {
                if let Ok(sm) = shifted_model(&e, &p) {
                    // the shifted cubic evaluated at x - x0 matches the original
                    for x in f.elements() {
                        let orig = e.rhs(x);
                        let shifted = poly::eval(&f, &sm.cubic(), f.sub(x, x0));
                        assert_eq!(orig, shifted);
                    }
                    // Q = (0, t) lies on the shifted model
                    assert_eq!(f.mul(sm.t, sm.t), poly::eval(&f, &sm.cubic(), 0));
                }
            }
        }
    }

    #[test]
    fn genus2_counting() {
        let f41 = Arc::new(make_field(41, 1).unwrap());
        let c = Genus2Curve::from_ints(f41.clone(), &[-7, 0, 8, 0, 7, 0, 1]).unwrap();
        let n = c.count_points() as i64;
        // Weil bound for genus 2
        assert!((n - 42).abs() <= 2 * 12);

        // y^2 = x^5 over F_5 is rejected
        let f5 = Arc::new(make_field(5, 1).unwrap());
        assert!(Genus2Curve::from_ints(f5, &[0, 0, 0, 0, 0, 1]).is_err());

        // y^2 = f and y^2 = c^2 f have equal counts
        let c2 = Genus2Curve::from_ints(f41.clone(), &[-7 * 9, 0, 8 * 9, 0, 7 * 9, 0, 9]).unwrap();
        assert_eq!(c.count_points(), c2.count_points());
    }
}
