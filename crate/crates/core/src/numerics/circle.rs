//! Hermitian representation of circles and lines.
//!
//! A form `(A, B, C)` with real `A`, `C` and complex `B` stands for the locus
//! `A·|z|² + B̄·z + B·z̄ + C = 0`, i.e. the null set of the Hermitian matrix
//! `[[A, B], [B̄, C]]` evaluated on `(z, 1)`. `A = 0` is a line.
//!
//! Forms scaled to unit discriminant `|B|² − AC = 1` carry an orientation:
//! `A` is the signed curvature, `−B` is curvature times center, and `C` is
//! the co-curvature. This is the linear coordinate system used by packing
//! generation.

use std::fmt;

use super::complex::{ComplexScalar, ProjPoint};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::symmetry::GroupElement;

#[derive(Clone, Debug, PartialEq)]
pub struct CircleForm {
    pub a: Scalar,
    pub b: ComplexScalar,
    pub c: Scalar,
}

impl CircleForm {
    /// Builds a form, rejecting empty or single-point loci.
    pub fn new(a: Scalar, b: ComplexScalar, c: Scalar) -> Result<Self> {
        let form = CircleForm { a, b, c };
        let d = form.discriminant();
        let scale = form.magnitude().powi(2).max(1e-300);
        if d.sign(scale) != std::cmp::Ordering::Greater {
            return Err(Error::DegenerateCircle);
        }
        Ok(form)
    }

    pub(crate) fn raw(a: Scalar, b: ComplexScalar, c: Scalar) -> Self {
        CircleForm { a, b, c }
    }

    /// Circle `|z − center| = radius`, oriented with positive curvature and
    /// normalized to unit discriminant when `radius` is exact.
    pub fn circle(center: ComplexScalar, radius: Scalar) -> Self {
        let k = Scalar::one() / &radius;
        Self::oriented_circle(center, k)
    }

    /// Oriented circle from signed curvature `k` (negative: the disk is the
    /// exterior) and center. Unit discriminant.
    pub fn oriented_circle(center: ComplexScalar, k: Scalar) -> Self {
        let b = -center.scale(&k);
        let c = &k * &center.norm_sqr() - Scalar::one() / &k;
        CircleForm { a: k, b, c }
    }

    /// Oriented line `Re(n̄·z) = offset` for a unit normal `n`; the disk is
    /// the half-plane the normal points into. Unit discriminant.
    pub fn oriented_line(normal: ComplexScalar, offset: Scalar) -> Self {
        CircleForm { a: Scalar::zero(), b: -normal, c: &offset * &Scalar::int(2) }
    }

    pub fn horizontal_line(y: Scalar) -> Self {
        Self::oriented_line(ComplexScalar::i(), y)
    }

    pub fn vertical_line(x: Scalar) -> Self {
        Self::oriented_line(ComplexScalar::one(), x)
    }

    pub fn discriminant(&self) -> Scalar {
        self.b.norm_sqr() - &self.a * &self.c
    }

    fn magnitude(&self) -> f64 {
        [self.a.to_f64(), self.b.re.to_f64(), self.b.im.to_f64(), self.c.to_f64()]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_exact(&self) -> bool {
        self.a.is_exact() && self.b.is_exact() && self.c.is_exact()
    }

    pub fn is_line(&self) -> bool {
        self.a.sign(self.magnitude()) == std::cmp::Ordering::Equal
    }

    /// Signed curvature of a unit-discriminant form.
    pub fn curvature(&self) -> &Scalar {
        &self.a
    }

    pub fn center(&self) -> Option<ComplexScalar> {
        if self.is_line() {
            return None;
        }
        Some((-&self.b).scale(&(Scalar::one() / &self.a)))
    }

    pub fn radius_f64(&self) -> Option<f64> {
        if self.is_line() {
            return None;
        }
        Some((self.discriminant().to_f64()).sqrt() / self.a.to_f64().abs())
    }

    /// Value of the form at `z`; zero on the locus.
    pub fn evaluate(&self, z: &ComplexScalar) -> Scalar {
        let bz = &self.b.conj() * z;
        &self.a * &z.norm_sqr() + &bz.re * &Scalar::int(2) + &self.c
    }

    pub fn contains_point(&self, p: &ProjPoint, tol: f64) -> bool {
        match p {
            ProjPoint::Infinity => self.is_line(),
            ProjPoint::Finite(z) => {
                let v = self.evaluate(z);
                let (x, y) = z.to_f64();
                let scale = self.magnitude() * (1.0 + x * x + y * y);
                if v.is_exact() {
                    v.is_zero()
                } else {
                    v.to_f64().abs() <= tol * scale
                }
            }
        }
    }

    /// Divides by the first nonzero coefficient among `(A, Re B, Im B, C)`.
    pub fn canonical(&self) -> CircleForm {
        let mag = self.magnitude();
        let lead = [&self.a, &self.b.re, &self.b.im, &self.c]
            .into_iter()
            .find(|v| v.sign(mag) != std::cmp::Ordering::Equal)
            .cloned()
            .unwrap_or_else(Scalar::one);
        let k = Scalar::one() / &lead;
        CircleForm { a: &self.a * &k, b: self.b.scale(&k), c: &self.c * &k }
    }

    /// Rescales to unit discriminant keeping the sign (orientation).
    pub fn normalized(&self) -> Result<CircleForm> {
        let d = self.discriminant();
        let root = d.sqrt().ok_or(Error::DegenerateCircle)?;
        if root.is_zero() {
            return Err(Error::DegenerateCircle);
        }
        let k = Scalar::one() / &root;
        Ok(CircleForm { a: &self.a * &k, b: self.b.scale(&k), c: &self.c * &k })
    }

    pub fn negated(&self) -> CircleForm {
        CircleForm { a: -&self.a, b: -&self.b, c: -&self.c }
    }

    /// Inversive product of two forms. For unit-discriminant oriented forms it
    /// equals 1 exactly when the disks are tangent with disjoint interiors.
    pub fn inversive_product(&self, other: &CircleForm) -> Scalar {
        let half = Scalar::ratio(1, 2);
        let cross = (&self.a * &other.c + &other.a * &self.c) * &half;
        cross - (&self.b * &other.b.conj()).re
    }

    /// Image of the locus under a Moebius or anti-Moebius map.
    pub fn apply(&self, g: &GroupElement) -> Result<CircleForm> {
        if g.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let b = if g.conj { self.b.conj() } else { self.b.clone() };
        let [m11, m12, m21, m22] = g.entries();
        // image = adj(M)^† · H · adj(M)
        let n = [m22.clone(), -m12, -m21, m11.clone()];
        let h = [ComplexScalar::real(self.a.clone()), b.clone(), b.conj(), ComplexScalar::real(self.c.clone())];
        let hn = mat_mul(&h, &n);
        let nh = [n[0].conj(), n[2].conj(), n[1].conj(), n[3].conj()];
        let out = mat_mul(&nh, &hn);
        Ok(CircleForm { a: out[0].re.clone(), b: out[1].clone(), c: out[3].re.clone() })
    }

    /// The unique circle or line through three distinct points (any of which
    /// may be ∞). Coefficients follow from the null vector of the rows
    /// `(|z|², x, y, 1)`, with `(1, 0, 0, 0)` standing for ∞.
    pub fn through_points(p: [&ProjPoint; 3]) -> Result<CircleForm> {
        let rows: Vec<[Scalar; 4]> = p
            .iter()
            .map(|pt| match pt {
                ProjPoint::Infinity => [Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()],
                ProjPoint::Finite(z) => [z.norm_sqr(), z.re.clone(), z.im.clone(), Scalar::one()],
            })
            .collect();
        let minor = |skip: usize| -> Scalar {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let m = |r: usize, c: usize| &rows[r][cols[c]];
            m(0, 0) * &(m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * &(m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * &(m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        };
        let a = minor(0);
        let two_u = -minor(1);
        let two_v = minor(2);
        let c = -minor(3);
        let half = Scalar::ratio(1, 2);
        CircleForm::new(a, ComplexScalar::new(&two_u * &half, &two_v * &half), c)
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.a.to_f64(), self.b.re.to_f64(), self.b.im.to_f64(), self.c.to_f64()]
    }

    /// Same locus, compared after canonical scaling.
    pub fn same_locus(&self, other: &CircleForm, tol: f64) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        if a.is_exact() && b.is_exact() {
            return a == b;
        }
        let (x, y) = (a.to_f64(), b.to_f64());
        let scale = x.iter().chain(y.iter()).fold(1.0f64, |m, v| m.max(v.abs()));
        x.iter().zip(y.iter()).all(|(p, q)| (p - q).abs() <= tol * scale)
    }
}

fn mat_mul(x: &[ComplexScalar; 4], y: &[ComplexScalar; 4]) -> [ComplexScalar; 4] {
    [
        &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
        &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
        &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
        &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
    ]
}

impl fmt::Display for CircleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[A={}, B={}, C={}]", self.a, self.b, self.c)
    }
}
