use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Absolute tolerance applied to float comparisons, after scaling by the
/// largest magnitude taking part in the comparison.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Returns `s` with `s * s == n` when `n` is a perfect square.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// Exact square root of a rational whose numerator and denominator are both
/// perfect squares (in lowest terms).
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

/// A real number held either as an exact rational or as a binary64 float.
///
/// Arithmetic between two exact values stays exact; anything touching a
/// float becomes a float.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n / d` as an exact rational. Panics when `d == 0`.
    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn float(v: f64) -> Self {
        Scalar::Float(v)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Float(v) => *v,
        }
    }

    /// Demotes to the float representation.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Float(v) => *v == 0.0,
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Sign of the value. Exact values compare exactly; floats within
    /// `FLOAT_TOLERANCE * scale` of zero count as zero.
    pub fn sign(&self, scale: f64) -> Ordering {
        match self {
            Scalar::Exact(q) => q.cmp(&BigRational::zero()),
            Scalar::Float(v) => {
                if v.abs() <= FLOAT_TOLERANCE * scale.abs() {
                    Ordering::Equal
                } else if *v > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Tolerant comparison of `self` against `other`; see [`Scalar::sign`].
    pub fn cmp_tol(&self, other: &Scalar) -> Ordering {
        let scale = self.to_f64().abs().max(other.to_f64().abs()).max(1.0);
        (self - other).sign(scale)
    }

    /// `self / rhs`, or `None` when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    /// Square root: exact when the rational is a perfect square, a float
    /// otherwise. `None` for negative input.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(q) => {
                if q.is_negative() {
                    return None;
                }
                match rational_sqrt(q) {
                    Some(r) => Some(Scalar::Exact(r)),
                    None => Some(Scalar::Float(rational_to_f64(q).sqrt())),
                }
            }
            Scalar::Float(v) => {
                if *v < 0.0 {
                    None
                } else {
                    Some(Scalar::Float(v.sqrt()))
                }
            }
        }
    }

    pub fn floor(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.floor()),
            Scalar::Float(v) => Scalar::Float(v.floor()),
        }
    }

    pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Option<Scalar> {
        values
            .into_iter()
            .fold(None, |acc: Option<&Scalar>, v| match acc {
                Some(a) if a >= v => Some(a),
                _ => Some(v),
            })
            .cloned()
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    match q.to_f64() {
        Some(v) => v,
        None => {
            // numerator and denominator overflow f64 individually
            let n = q.numer().to_f64().unwrap_or(f64::NAN);
            let d = q.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Exact(q)
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (a, b) => Scalar::Float(a.to_f64() $op b.to_f64()),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self) $op (&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self) $op rhs
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self $op (&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Float(v) => Scalar::Float(-v),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (a, b) => a.to_f64() == b.to_f64(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (a, b) => a.to_f64().partial_cmp(&b.to_f64()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Parses `"62/179"`, `"-3"`, `"0.5"` or `"1.25e-3"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let bad = || format!("not a rational number: '{s}'");
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10u32);
    let mut q = BigRational::from_integer(n);
    if shift >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, shift as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-shift) as usize));
    }
    Ok(if neg { -q } else { q })
}

impl std::str::FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        parse_rational(s).map(Scalar::Exact)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn integer_sqrt_examples() {
        assert_eq!(integer_sqrt(&big(16641)), Some(big(129)));
        assert_eq!(integer_sqrt(&big(0)), Some(big(0)));
        assert_eq!(integer_sqrt(&big(2)), None);
        assert_eq!(integer_sqrt(&big(-4)), None);
    }

    #[test]
    fn rational_sqrt_examples() {
        let q = |n, d| BigRational::new(big(n), big(d));
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(1, 1)), Some(q(1, 1)));
        assert_eq!(rational_sqrt(&q(1, 2)), None);
        // 18/8 reduces to 9/4
        assert_eq!(rational_sqrt(&q(18, 8)), Some(q(3, 2)));
    }

    #[test]
    fn exact_stays_exact_and_mixed_demotes() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(2, 3);
        assert!((&a + &b).is_exact());
        assert_eq!(&a + &b, Scalar::one());
        let c = &a * &Scalar::float(3.0);
        assert!(!c.is_exact());
        assert!((c.to_f64() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let s = Scalar::ratio(6, -4);
        let q = s.as_rational().unwrap();
        assert_eq!(q.numer(), &big(-3));
        assert_eq!(q.denom(), &big(2));
    }

    #[test]
    fn sqrt_demotes_only_for_non_squares() {
        assert_eq!(Scalar::int(16).sqrt(), Some(Scalar::int(4)));
        assert!(!Scalar::int(3).sqrt().unwrap().is_exact());
        assert!(Scalar::int(-1).sqrt().is_none());
    }

    #[test]
    fn tolerant_sign() {
        assert_eq!(Scalar::float(1e-15).sign(1.0), Ordering::Equal);
        assert_eq!(Scalar::float(1e-15).sign(1e-6), Ordering::Greater);
        assert_eq!(Scalar::ratio(-1, 1_000_000_000).sign(1e9), Ordering::Less);
    }

    #[test]
    fn parsing() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("62/179").unwrap(), q(62, 179));
        assert_eq!(parse_rational("0.5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.25e-1").unwrap(), q(-1, 8));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2e2").unwrap(), q(200, 1));
        for bad in ["", "x", "1/0", "1.2.3", "-", "1/2/3", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
