use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{rational_sqrt, Scalar};

/// A complex number over [`Scalar`]; Gaussian rationals when both parts are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        ComplexScalar { re, im: Scalar::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Scalar::zero())
    }

    pub fn one() -> Self {
        Self::real(Scalar::one())
    }

    pub fn i() -> Self {
        ComplexScalar { re: Scalar::zero(), im: Scalar::one() }
    }

    /// Gaussian integer `re + im·i`.
    pub fn gauss(re: i64, im: i64) -> Self {
        ComplexScalar { re: Scalar::int(re), im: Scalar::int(im) }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        ComplexScalar { re: Scalar::float(re), im: Scalar::float(im) }
    }

    pub fn is_exact(&self) -> bool {
        self.re.is_exact() && self.im.is_exact()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        ComplexScalar { re: &self.re * k, im: &self.im * k }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn checked_inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(ComplexScalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, rhs: &ComplexScalar) -> Option<Self> {
        Some(self * &rhs.checked_inv()?)
    }

    /// Principal square root (non-negative real part; non-negative imaginary
    /// part when the real part vanishes). Exact for Gaussian-rational squares.
    pub fn sqrt(&self) -> ComplexScalar {
        if let (Some(a), Some(b)) = (self.re.as_rational(), self.im.as_rational()) {
            if let Some(m) = rational_sqrt(&(a * a + b * b)) {
                let two = num_rational::BigRational::from_integer(2.into());
                let p = rational_sqrt(&((&m + a) / &two));
                let q = rational_sqrt(&((&m - a) / &two));
                if let (Some(p), Some(mut q)) = (p, q) {
                    if b < &num_rational::BigRational::from_integer(0.into()) {
                        q = -q;
                    }
                    return ComplexScalar { re: Scalar::Exact(p), im: Scalar::Exact(q) };
                }
            }
        }
        let (a, b) = self.to_f64();
        let m = a.hypot(b);
        let p = ((m + a) / 2.0).max(0.0).sqrt();
        let mut q = ((m - a) / 2.0).max(0.0).sqrt();
        if b < 0.0 {
            q = -q;
        }
        ComplexScalar::from_f64(p, q)
    }

    /// Tolerant equality for float values; exact for Gaussian rationals.
    pub fn approx_eq(&self, other: &ComplexScalar, tol: f64) -> bool {
        if self.is_exact() && other.is_exact() {
            return self == other;
        }
        let (a, b) = self.to_f64();
        let (c, d) = other.to_f64();
        let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs()).max(1.0);
        (a - c).abs() <= tol * scale && (b - d).abs() <= tol * scale
    }
}

impl Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: ComplexScalar) -> ComplexScalar {
        &self + &rhs
    }
}

impl Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: ComplexScalar) -> ComplexScalar {
        &self - &rhs
    }
}

impl Mul for &ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: &self.re * &rhs.re - &self.im * &rhs.im, im: &self.re * &rhs.im + &self.im * &rhs.re }
    }
}

impl Mul for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: ComplexScalar) -> ComplexScalar {
        &self * &rhs
    }
}

impl Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        -&self
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let neg = self.im < Scalar::zero();
        let mag = self.im.abs();
        if self.re.is_zero() {
            return write!(f, "{}{}i", if neg { "-" } else { "" }, mag);
        }
        write!(f, "{} {} {}i", self.re, if neg { "-" } else { "+" }, mag)
    }
}

/// A point of the extended complex plane.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjPoint {
    Finite(ComplexScalar),
    Infinity,
}

impl ProjPoint {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        ProjPoint::Finite(ComplexScalar::new(x, y))
    }

    pub fn from_f64(x: f64, y: f64) -> Self {
        ProjPoint::Finite(ComplexScalar::from_f64(x, y))
    }

    pub fn rational(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        ProjPoint::new(Scalar::ratio(xn, xd), Scalar::ratio(yn, yd))
    }

    pub fn finite(&self) -> Option<&ComplexScalar> {
        match self {
            ProjPoint::Finite(z) => Some(z),
            ProjPoint::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn is_exact(&self) -> bool {
        self.finite().is_none_or(ComplexScalar::is_exact)
    }

    pub fn x(&self) -> Option<&Scalar> {
        self.finite().map(|z| &z.re)
    }

    pub fn y(&self) -> Option<&Scalar> {
        self.finite().map(|z| &z.im)
    }

    pub fn to_f64(&self) -> Option<(f64, f64)> {
        self.finite().map(ComplexScalar::to_f64)
    }

    /// Equality with a relative tolerance for float points, exact otherwise.
    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        match (self, other) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => true,
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => a.approx_eq(b, tol),
            _ => false,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(z) => write!(f, "{z}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let z = ComplexScalar::gauss(1, 1);
        let w = ComplexScalar::gauss(1, -1);
        let q = z.checked_div(&w).unwrap();
        assert_eq!(q, ComplexScalar::i());
        assert!(ComplexScalar::zero().checked_inv().is_none());
    }

    #[test]
    fn principal_sqrt() {
        assert_eq!(ComplexScalar::gauss(-1, 0).sqrt(), ComplexScalar::i());
        assert_eq!(ComplexScalar::gauss(3, 4).sqrt(), ComplexScalar::gauss(2, 1));
        assert_eq!(ComplexScalar::gauss(3, -4).sqrt(), ComplexScalar::gauss(2, -1));
        let r = ComplexScalar::gauss(2, 0).sqrt();
        assert!(!r.is_exact());
        assert!((r.re.to_f64() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn display() {
        assert_eq!(ComplexScalar::new(Scalar::one(), Scalar::ratio(1, 2)).to_string(), "1 + 1/2i");
        assert_eq!(ComplexScalar::gauss(0, -1).to_string(), "-1i");
        assert_eq!(ProjPoint::Infinity.to_string(), "inf");
    }
}
