//! Tangency spinors.
//!
//! For tangent disks with signed radii `r₁, r₂` and center difference `w`,
//! the spinor `u` satisfies `u² = w / (r₁r₂)`. Complex numbers double as
//! 2-vectors: `u × v = Im(ū v)` and `u · v = Re(ū v)`.

use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::numerics::{CircleForm, ComplexScalar, ProjPoint, Scalar};
use crate::symmetry::{generator, Generator};

const TANGENCY_TOL: f64 = 1e-9;

/// A closed disk, the exterior of a circle (negative curvature), or a
/// half-plane (curvature 0).
#[derive(Clone, Debug, PartialEq)]
pub enum Disk {
    Circle {
        curvature: Scalar,
        center: ComplexScalar,
    },
    /// Half-plane `Re(n̄ z) ≥ offset` with unit normal `n`.
    Line {
        normal: ComplexScalar,
        offset: Scalar,
    },
}

impl Disk {
    pub fn circle(curvature: Scalar, center: ComplexScalar) -> Self {
        Disk::Circle { curvature, center }
    }

    pub fn line(normal: ComplexScalar, offset: Scalar) -> Self {
        Disk::Line { normal, offset }
    }

    pub fn curvature(&self) -> Scalar {
        match self {
            Disk::Circle { curvature, .. } => curvature.clone(),
            Disk::Line { .. } => Scalar::zero(),
        }
    }

    pub fn center(&self) -> Option<&ComplexScalar> {
        match self {
            Disk::Circle { center, .. } => Some(center),
            Disk::Line { .. } => None,
        }
    }

    /// `1/curvature`, negative for containing disks.
    pub fn signed_radius(&self) -> Option<Scalar> {
        match self {
            Disk::Circle { curvature, .. } => Some(Scalar::one() / curvature),
            Disk::Line { .. } => None,
        }
    }

    pub fn radius_f64(&self) -> Option<f64> {
        self.signed_radius().map(|r| r.to_f64().abs())
    }

    /// Oriented unit-discriminant form.
    pub fn form(&self) -> CircleForm {
        match self {
            Disk::Circle { curvature, center } => CircleForm::oriented_circle(center.clone(), curvature.clone()),
            Disk::Line { normal, offset } => CircleForm::oriented_line(normal.clone(), offset.clone()),
        }
    }

    /// Reads a unit-discriminant oriented form back as a disk.
    pub fn from_form(f: &CircleForm) -> Disk {
        if f.is_line() {
            Disk::Line { normal: -&f.b, offset: &f.c * &Scalar::ratio(1, 2) }
        } else {
            Disk::Circle { curvature: f.a.clone(), center: f.center().expect("not a line") }
        }
    }

    /// Relative deviation from tangency; 0 for tangent pairs.
    pub fn tangency_residual(&self, other: &Disk) -> f64 {
        match (self, other) {
            (Disk::Circle { curvature: k1, center: c1 }, Disk::Circle { curvature: k2, center: c2 }) => {
                let (r1, r2) = (1.0 / k1.to_f64(), 1.0 / k2.to_f64());
                let (dx, dy) = (c2 - c1).to_f64();
                let dist = dx.hypot(dy);
                let scale = r1.abs().max(r2.abs());
                let ext = (dist - (r1.abs() + r2.abs())).abs();
                let int = (dist - (r1.abs() - r2.abs()).abs()).abs();
                ext.min(int) / scale
            }
            (Disk::Circle { curvature, center }, Disk::Line { normal, offset })
            | (Disk::Line { normal, offset }, Disk::Circle { curvature, center }) => {
                let r = 1.0 / curvature.to_f64().abs();
                let (cx, cy) = center.to_f64();
                let (nx, ny) = normal.to_f64();
                let dist = (cx * nx + cy * ny - offset.to_f64()).abs();
                (dist - r).abs() / r
            }
            (Disk::Line { normal: n1, .. }, Disk::Line { normal: n2, .. }) => {
                // parallel lines touch at infinity
                let (a, b) = n1.to_f64();
                let (c, d) = n2.to_f64();
                (a * d - b * c).abs()
            }
        }
    }
}

/// Spinor of an ordered pair of tangent disks, defined up to sign.
#[derive(Clone, Debug, PartialEq)]
pub struct TangencySpinor(pub ComplexScalar);

impl TangencySpinor {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        TangencySpinor(ComplexScalar::new(re, im))
    }

    pub fn value(&self) -> &ComplexScalar {
        &self.0
    }

    pub fn norm_sqr(&self) -> Scalar {
        self.0.norm_sqr()
    }

    /// `u₁v₂ − u₂v₁`.
    pub fn cross(&self, other: &TangencySpinor) -> Scalar {
        &(&self.0.re * &other.0.im) - &(&self.0.im * &other.0.re)
    }

    pub fn dot(&self, other: &TangencySpinor) -> Scalar {
        &(&self.0.re * &other.0.re) + &(&self.0.im * &other.0.im)
    }

    /// Symplectic conjugate `x⁺ = i·x`, the spinor of the reversed pair.
    pub fn plus(&self) -> TangencySpinor {
        TangencySpinor(&ComplexScalar::i() * &self.0)
    }

    pub fn approx_eq(&self, other: &TangencySpinor, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }
}

impl Add for &TangencySpinor {
    type Output = TangencySpinor;
    fn add(self, rhs: &TangencySpinor) -> TangencySpinor {
        TangencySpinor(&self.0 + &rhs.0)
    }
}

impl Sub for &TangencySpinor {
    type Output = TangencySpinor;
    fn sub(self, rhs: &TangencySpinor) -> TangencySpinor {
        TangencySpinor(&self.0 - &rhs.0)
    }
}

impl Neg for &TangencySpinor {
    type Output = TangencySpinor;
    fn neg(self) -> TangencySpinor {
        TangencySpinor(-&self.0)
    }
}

/// The stacked pair `ξ = [a; b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSpinor {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
}

impl PauliSpinor {
    pub fn new(a: ComplexScalar, b: ComplexScalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("Pauli spinor must be nonzero".into()));
        }
        Ok(PauliSpinor { a, b })
    }
}

/// `u` with `u² = w/(r₁r₂)`, principal root.
pub fn spinor_of_pair(d1: &Disk, d2: &Disk) -> Result<TangencySpinor> {
    let (Disk::Circle { curvature: k1, center: c1 }, Disk::Circle { curvature: k2, center: c2 }) = (d1, d2) else {
        return Err(Error::LineUnsupported);
    };
    let w = c2 - c1;
    let (r1, r2) = (Scalar::one() / k1, Scalar::one() / k2);
    let dist2 = w.norm_sqr();
    let sum = &r1 + &r2;
    let diff = &r1 - &r2;
    let gap_ext = &dist2 - &(&sum * &sum);
    let gap_int = &dist2 - &(&diff * &diff);
    let scale = (r1.to_f64().abs() + r2.to_f64().abs()).powi(2);
    let tangent = |g: &Scalar| {
        if g.is_exact() {
            g.is_zero()
        } else {
            g.to_f64().abs() <= TANGENCY_TOL * scale
        }
    };
    if !tangent(&gap_ext) && !tangent(&gap_int) {
        return Err(Error::NotTangent(d1.tangency_residual(d2)));
    }
    let u2 = w.scale(&(k1 * k2));
    Ok(TangencySpinor(u2.sqrt()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinorProducts {
    pub c: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub d_minus: Scalar,
    pub d_plus: Scalar,
    pub k: Scalar,
}

/// Curvatures read off a spinor pair anchored at disk `C`:
/// `C = a × b`, `A = ‖a‖² − C`, `B = ‖b‖² − C`, `D± = ‖a ± b‖² − C`,
/// `K = a · b`.
pub fn spinor_products(a: &TangencySpinor, b: &TangencySpinor) -> SpinorProducts {
    let c = a.cross(b);
    SpinorProducts {
        a: &a.norm_sqr() - &c,
        b: &b.norm_sqr() - &c,
        d_minus: &(a - b).norm_sqr() - &c,
        d_plus: &(a + b).norm_sqr() - &c,
        k: a.dot(b),
        c,
    }
}

/// `z = b/a`, or `∞` when `a = 0`.
pub fn project_pauli(xi: &PauliSpinor) -> ProjPoint {
    match xi.b.checked_div(&xi.a) {
        Some(z) => ProjPoint::Finite(z),
        None => ProjPoint::Infinity,
    }
}

/// Spinors from `C` to the two Descartes completions: `(b + a, b − a)`.
pub fn completion_spinors(a: &TangencySpinor, b: &TangencySpinor) -> (TangencySpinor, TangencySpinor) {
    (b + a, b - a)
}

/// The three anchor choices `(z, SF z, FS z)` of a spinor pair.
pub fn frame_representatives(z: &ProjPoint) -> (ProjPoint, ProjPoint, ProjPoint) {
    let s = generator(Generator::S);
    let f = generator(Generator::F);
    let sf = s.compose(&f);
    let fs = f.compose(&s);
    (z.clone(), sf.apply(z), fs.apply(z))
}

/// The six spinors of a tricycle `(A, B, C)`:
/// `a = spin(B, C)`, `b = spin(C, A)`, `c = spin(A, B)`, signs chosen so
/// that `a + b + c = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorFrame {
    pub a: TangencySpinor,
    pub b: TangencySpinor,
    pub c: TangencySpinor,
}

impl SpinorFrame {
    pub fn from_disks(disk_a: &Disk, disk_b: &Disk, disk_c: &Disk) -> Result<Self> {
        let a = spinor_of_pair(disk_b, disk_c)?;
        let b = spinor_of_pair(disk_c, disk_a)?;
        let c = spinor_of_pair(disk_a, disk_b)?;
        let scale = a.norm_sqr().to_f64().max(b.norm_sqr().to_f64()).max(c.norm_sqr().to_f64()).sqrt();
        for (sb, sc) in [(false, false), (true, false), (false, true), (true, true)] {
            let b2 = if sb { -&b } else { b.clone() };
            let c2 = if sc { -&c } else { c.clone() };
            let sum = &(&a + &b2) + &c2;
            let (x, y) = sum.0.to_f64();
            let closes = if sum.0.is_exact() { sum.0.is_zero() } else { x.hypot(y) <= TANGENCY_TOL * scale };
            if closes {
                return Ok(SpinorFrame { a, b: b2, c: c2 });
            }
        }
        Err(Error::GeometryInconsistent("spinors of the tricycle do not close".into()))
    }

    pub fn plus(&self) -> (TangencySpinor, TangencySpinor, TangencySpinor) {
        (self.a.plus(), self.b.plus(), self.c.plus())
    }

    /// `(b × a⁺, c × b⁺, a × c⁺)`; equals the curvatures `(C, A, B)` up to
    /// a common sign fixed by the orientation of the tricycle.
    pub fn cross_curvatures(&self) -> (Scalar, Scalar, Scalar) {
        let (ap, bp, cp) = self.plus();
        (self.b.cross(&ap), self.c.cross(&bp), self.a.cross(&cp))
    }

    /// The three Pauli projections `b/a⁺`, `c/b⁺`, `a/c⁺`.
    pub fn projections(&self) -> [ProjPoint; 3] {
        let (ap, bp, cp) = self.plus();
        [
            project_pauli(&PauliSpinor { a: ap.0, b: self.b.0.clone() }),
            project_pauli(&PauliSpinor { a: bp.0, b: self.c.0.clone() }),
            project_pauli(&PauliSpinor { a: cp.0, b: self.a.0.clone() }),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{descartes_solutions, triple_of_z, Triple};

    fn sp(re: i64, im: i64) -> TangencySpinor {
        TangencySpinor(ComplexScalar::gauss(re, im))
    }

    fn unit_at(x: i64) -> Disk {
        Disk::circle(Scalar::one(), ComplexScalar::gauss(x, 0))
    }

    #[test]
    fn pair_examples() {
        let u = spinor_of_pair(&unit_at(0), &unit_at(2)).unwrap();
        assert!((u.0.re.to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(u.norm_sqr().to_f64().round(), 2.0);
        let half = Disk::circle(Scalar::int(2), ComplexScalar::new(Scalar::ratio(3, 2), Scalar::zero()));
        let u = spinor_of_pair(&unit_at(0), &half).unwrap();
        assert!((u.0.re.to_f64() - 3f64.sqrt()).abs() < 1e-15);
        let v = spinor_of_pair(&half, &unit_at(0)).unwrap();
        assert!((v.0.im.to_f64() - 3f64.sqrt()).abs() < 1e-15);
        assert!(v.approx_eq(&u.plus(), 1e-12));
    }

    #[test]
    fn exact_when_square() {
        let u = spinor_of_pair(&unit_at(0), &Disk::circle(Scalar::one(), ComplexScalar::gauss(0, 2))).unwrap();
        // u² = 2i = (1 + i)²
        assert_eq!(u, sp(1, 1));
    }

    #[test]
    fn pair_errors() {
        assert!(matches!(spinor_of_pair(&unit_at(0), &unit_at(3)), Err(Error::NotTangent(_))));
        let line = Disk::line(ComplexScalar::i(), Scalar::one());
        assert_eq!(spinor_of_pair(&unit_at(0), &line), Err(Error::LineUnsupported));
    }

    #[test]
    fn internal_tangency() {
        let outer = Disk::circle(Scalar::int(-1), ComplexScalar::zero());
        let inner = Disk::circle(Scalar::int(2), ComplexScalar::new(Scalar::ratio(1, 2), Scalar::zero()));
        let u = spinor_of_pair(&outer, &inner).unwrap();
        // w = 1/2, r₁r₂ = −1/2
        assert_eq!(u, sp(0, 1));
    }

    #[test]
    fn product_examples() {
        let x = Scalar::ratio(3, 7);
        let y = Scalar::ratio(2, 5);
        let p = spinor_products(&sp(1, 0), &TangencySpinor::new(x.clone(), y.clone()));
        assert_eq!(p.c, y);
        assert_eq!(p.a, Scalar::one() - &y);
        assert_eq!(p.b, &(&x * &x) + &(&(&y * &y) - &y));
        let p = spinor_products(&sp(1, 0), &sp(0, 1));
        assert_eq!((p.c, p.a, p.b, p.d_minus, p.d_plus), (1.into(), 0.into(), 0.into(), 1.into(), 1.into()));
        let p = spinor_products(&sp(1, 0), &sp(1, 1));
        assert_eq!((p.c, p.a, p.b, p.d_minus, p.d_plus), (1.into(), 0.into(), 1.into(), 0.into(), 4.into()));
    }

    #[test]
    fn squared_norms_give_descartes_roots() {
        for (xn, xd, yn, yd) in [(3, 2, 1, 3), (5, 4, 7, 9), (0, 1, 1, 2), (2, 1, 1, 2)] {
            let b = TangencySpinor::new(Scalar::ratio(xn, xd), Scalar::ratio(yn, yd));
            let p = spinor_products(&sp(1, 0), &b);
            let (lo, hi) = descartes_solutions(&Triple::new(p.a.clone(), p.b.clone(), p.c.clone())).unwrap();
            assert_eq!((p.d_minus, p.d_plus), (lo, hi));
        }
    }

    #[test]
    fn sign_double_cover() {
        let a = sp(2, 1);
        let b = sp(-1, 3);
        let base = spinor_products(&a, &b);
        assert_eq!(spinor_products(&-&a, &b).c, -&base.c);
        assert_eq!(spinor_products(&-&a, &-&b), base);
    }

    #[test]
    fn projection_examples() {
        let xi = PauliSpinor::new(ComplexScalar::one(), ComplexScalar::gauss(3, 4)).unwrap();
        assert_eq!(project_pauli(&xi), ProjPoint::Finite(ComplexScalar::gauss(3, 4)));
        let xi = PauliSpinor::new(ComplexScalar::gauss(2, 0), ComplexScalar::gauss(0, 2)).unwrap();
        assert_eq!(project_pauli(&xi), ProjPoint::Finite(ComplexScalar::i()));
        let xi = PauliSpinor::new(ComplexScalar::zero(), ComplexScalar::one()).unwrap();
        assert_eq!(project_pauli(&xi), ProjPoint::Infinity);
        assert!(PauliSpinor::new(ComplexScalar::zero(), ComplexScalar::zero()).is_err());
    }

    #[test]
    fn completions() {
        let x = Scalar::ratio(2, 3);
        let y = Scalar::ratio(1, 4);
        let a = sp(1, 0);
        let b = TangencySpinor::new(x.clone(), y.clone());
        let (p, m) = completion_spinors(&a, &b);
        assert_eq!(p, TangencySpinor::new(&x + &Scalar::one(), y.clone()));
        assert_eq!(m, TangencySpinor::new(&x - &Scalar::one(), y.clone()));
        let prod = spinor_products(&a, &b);
        assert_eq!(&p.norm_sqr() - &prod.c, prod.d_plus);
        assert_eq!(&m.norm_sqr() - &prod.c, prod.d_minus);
        let (p, m) = completion_spinors(&a, &sp(0, 1));
        assert_eq!((p, m), (sp(1, 1), sp(-1, 1)));
    }

    #[test]
    fn representatives() {
        let (z1, z2, z3) = frame_representatives(&ProjPoint::Finite(ComplexScalar::i()));
        assert_eq!(z1, ProjPoint::Finite(ComplexScalar::i()));
        assert_eq!(z2, ProjPoint::Infinity);
        assert_eq!(z3, ProjPoint::Finite(ComplexScalar::zero()));
        let z = ProjPoint::rational(1, 1, 0, 1);
        let (_, z2, z3) = frame_representatives(&z);
        // −1/(i − 1) = (1 + i)/2
        assert_eq!(z2, ProjPoint::rational(1, 2, 1, 2));
        assert_eq!(z3, ProjPoint::rational(1, 1, 1, 1));
    }

    #[test]
    fn representative_map_has_order_three() {
        let z = ProjPoint::rational(3, 7, 5, 11);
        let (_, z2, _) = frame_representatives(&z);
        let (_, z3, _) = frame_representatives(&z2);
        let (_, back, _) = frame_representatives(&z3);
        assert_eq!(back, z);
    }

    #[test]
    fn representative_triples_agree() {
        fn key(t: &Triple) -> Vec<Scalar> {
            let s = t.sum();
            let mut v: Vec<Scalar> = t.entries().iter().map(|e| *e / &s).collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            v
        }
        let z = ProjPoint::rational(4, 5, 2, 3);
        let (z1, z2, z3) = frame_representatives(&z);
        let k = key(&triple_of_z(&z1).unwrap());
        assert_eq!(key(&triple_of_z(&z2).unwrap()), k);
        assert_eq!(key(&triple_of_z(&z3).unwrap()), k);
    }

    #[test]
    fn frame_of_geometric_tricycle() {
        let (rc, ra, rb) = (1.0f64, 0.7, 0.45);
        let (l, d1, d2) = (rc + ra, rc + rb, ra + rb);
        let xb = (d1 * d1 - d2 * d2 + l * l) / (2.0 * l);
        let yb = (d1 * d1 - xb * xb).sqrt();
        let disk = |r: f64, x: f64, y: f64| Disk::circle(Scalar::float(1.0 / r), ComplexScalar::from_f64(x, y));
        let (a, b, c) = (disk(ra, l, 0.0), disk(rb, xb, yb), disk(rc, 0.0, 0.0));
        let frame = SpinorFrame::from_disks(&a, &b, &c).unwrap();
        let sum = &(&frame.a + &frame.b) + &frame.c;
        assert!(sum.0.approx_eq(&ComplexScalar::zero(), 1e-9));
        let (ap, bp, cp) = frame.plus();
        let psum = &(&ap + &bp) + &cp;
        assert!(psum.0.approx_eq(&ComplexScalar::zero(), 1e-9));
        let (x, y, z) = frame.cross_curvatures();
        let sign = x.to_f64().signum();
        assert!((sign * x.to_f64() - 1.0 / rc).abs() < 1e-9);
        assert!((sign * y.to_f64() - 1.0 / ra).abs() < 1e-9);
        assert!((sign * z.to_f64() - 1.0 / rb).abs() < 1e-9);
    }

    #[test]
    fn disk_form_round_trip() {
        let d = Disk::circle(Scalar::int(-3), ComplexScalar::new(Scalar::ratio(1, 3), Scalar::ratio(-2, 5)));
        assert_eq!(Disk::from_form(&d.form()), d);
        let l = Disk::line(ComplexScalar::i(), Scalar::int(-1));
        assert_eq!(Disk::from_form(&l.form()), l);
    }
}
