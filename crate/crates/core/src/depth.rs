//! The Apollonian depth function.
//!
//! Three routes are provided: the process on curvature triples
//! ([`depth_triple`]), the same process through the spinor parametrization
//! ([`depth_z`]), and the iteration of plane maps directly on `z`
//! ([`depth_z_algorithm`]), which also yields the α/β word.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{ComplexScalar, ProjPoint, Scalar};

pub const DEFAULT_MAX_STEPS: u64 = 10_000;

/// Three curvatures, in no particular order.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

impl Triple {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Self {
        Triple { a, b, c }
    }

    pub fn ints(a: i64, b: i64, c: i64) -> Self {
        Triple::new(Scalar::int(a), Scalar::int(b), Scalar::int(c))
    }

    pub fn floats(a: f64, b: f64, c: f64) -> Self {
        Triple::new(Scalar::float(a), Scalar::float(b), Scalar::float(c))
    }

    pub fn from_array([a, b, c]: [Scalar; 3]) -> Self {
        Triple { a, b, c }
    }

    pub fn to_array(&self) -> [Scalar; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn entries(&self) -> [&Scalar; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn is_exact(&self) -> bool {
        self.entries().iter().all(|v| v.is_exact())
    }

    pub fn scaled(&self, k: &Scalar) -> Triple {
        Triple::new(&self.a * k, &self.b * k, &self.c * k)
    }

    pub fn sum(&self) -> Scalar {
        let [p, q, r] = sorted_desc(self.entries());
        &(p + q) + r
    }

    /// `ab + bc + ca`.
    pub fn radicand(&self) -> Scalar {
        let [p, q, r] = sorted_desc(self.entries());
        &(&(p * q) + &(q * r)) + &(r * p)
    }

    fn magnitude(&self) -> f64 {
        self.entries().iter().fold(0.0f64, |m, v| m.max(v.to_f64().abs()))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Arithmetic is evaluated on the descending-sorted entries so that
/// permuted inputs round identically in float mode.
fn sorted_desc(mut v: [&Scalar; 3]) -> [&Scalar; 3] {
    v.sort_by(|x, y| y.partial_cmp(x).unwrap_or(Ordering::Equal));
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Depth {
    Finite(u64),
    Overflow,
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Overflow => f.write_str("overflow"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DepthResult {
    pub depth: Depth,
    /// Visited triples: the input first, the first triple holding a
    /// non-positive entry last.
    pub chain: Vec<Triple>,
    /// Run lengths `n₁..n_m` of the word `α^{n₁} β α^{n₂} … β α^{n_m}`;
    /// empty unless produced by [`depth_z_algorithm`].
    pub word: Vec<u64>,
}

impl DepthResult {
    pub fn value(&self) -> Result<u64> {
        match self.depth {
            Depth::Finite(d) => Ok(d),
            Depth::Overflow => Err(Error::Overflow(format!(
                "depth process did not terminate within {} steps",
                self.chain.len().saturating_sub(1)
            ))),
        }
    }

    /// The word written out, e.g. `α^2 β α^1`.
    pub fn word_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, n) in self.word.iter().enumerate() {
            if i > 0 {
                parts.push("β".to_string());
            }
            if *n > 0 {
                parts.push(format!("α^{n}"));
            }
        }
        parts.join(" ")
    }
}

fn root_of(radicand: &Scalar, scale: f64) -> Result<Scalar> {
    match radicand.sign(scale * scale) {
        Ordering::Less => Err(Error::NegativeRadicand(radicand.to_string())),
        Ordering::Equal if !radicand.is_exact() => Ok(Scalar::float(0.0)),
        _ => Ok(radicand.sqrt().expect("non-negative radicand")),
    }
}

/// The two curvatures `a+b+c ∓ 2√(ab+bc+ca)` completing the triple to a
/// Descartes configuration, smaller first.
pub fn descartes_solutions(t: &Triple) -> Result<(Scalar, Scalar)> {
    let root = root_of(&t.radicand(), t.magnitude().max(1.0))?;
    let sum = t.sum();
    let twice = &root * &Scalar::int(2);
    Ok((&sum - &twice, &sum + &twice))
}

fn first_max_index(v: &[Scalar; 3]) -> usize {
    let mut best = 0;
    for i in 1..3 {
        if v[i] > v[best] {
            best = i;
        }
    }
    best
}

/// Runs the replacement process. The chain stores each new triple as the two
/// surviving entries followed by the replacement.
fn run_process(t: &Triple, max_steps: u64, record: bool) -> Result<(Depth, Vec<Triple>)> {
    let mut chain = Vec::new();
    if record {
        chain.push(t.clone());
    }
    let largest = t.entries().iter().fold(f64::NEG_INFINITY, |m, v| m.max(v.to_f64()));
    let threshold = largest.max(0.0);
    let non_positive = |v: &Scalar| v.sign(threshold) != Ordering::Greater;
    if t.entries().iter().any(|v| non_positive(v)) {
        return Ok((Depth::Finite(0), chain));
    }
    let mut cur = t.to_array();
    let mut steps = 0u64;
    while steps < max_steps {
        let trip = Triple::from_array(cur.clone());
        let (d_minus, _) = descartes_solutions(&trip)?;
        let idx = first_max_index(&cur);
        let mut next: Vec<Scalar> = (0..3).filter(|&i| i != idx).map(|i| cur[i].clone()).collect();
        let done = non_positive(&d_minus);
        next.push(d_minus);
        cur = [next[0].clone(), next[1].clone(), next[2].clone()];
        steps += 1;
        if record {
            chain.push(Triple::from_array(cur.clone()));
        }
        if done {
            return Ok((Depth::Finite(steps), chain));
        }
    }
    Ok((Depth::Overflow, chain))
}

/// Number of ascending Descartes moves until a non-positive curvature
/// appears, counting the move that produces it.
pub fn depth_triple(t: &Triple, max_steps: u64) -> Result<DepthResult> {
    let (depth, chain) = run_process(t, max_steps, true)?;
    Ok(DepthResult { depth, chain, word: Vec::new() })
}

/// Depth without recording the chain; used for per-pixel evaluation.
pub fn depth_value(t: &Triple, max_steps: u64) -> Result<Depth> {
    run_process(t, max_steps, false).map(|(d, _)| d)
}

/// Scales a positive triple by its largest entry: `(a, b, c) ↦ (x, y)`,
/// taking the two entries that cyclically follow the first maximum.
pub fn reduce_triple(t: &Triple) -> Result<(Scalar, Scalar)> {
    if t.entries().iter().any(|v| v.sign(t.magnitude()) != Ordering::Greater) {
        return Err(Error::NonPositiveInput);
    }
    let arr = t.to_array();
    let k = first_max_index(&arr);
    let max = &arr[k];
    Ok((&arr[(k + 1) % 3] / max, &arr[(k + 2) % 3] / max))
}

/// Curvatures `(A, B, C) = (1−y, x²+y²−y, y)` of the tricycle encoded by `z`.
pub fn triple_of_z(z: &ProjPoint) -> Result<Triple> {
    let w = z.finite().ok_or(Error::InfinitePoint)?;
    let (x, y) = (&w.re, &w.im);
    let a = Scalar::one() - y;
    let b = &(x * x) + &(&(y * y) - y);
    Ok(Triple::new(a, b, y.clone()))
}

/// Inverse of [`triple_of_z`] up to scale, with `x ≥ 0`.
pub fn z_of_triple(t: &Triple) -> Result<ProjPoint> {
    let ac = &t.a + &t.c;
    if ac.sign(t.magnitude().max(1.0)) != Ordering::Greater {
        return Err(Error::NotRealizable("A + C must be positive".into()));
    }
    let lambda = Scalar::one() / &ac;
    let y = &lambda * &t.c;
    let x2 = &(&lambda * &t.b) - &(&(&y * &y) - &y);
    let x = match x2.sign(1.0) {
        Ordering::Less => return Err(Error::NotRealizable(format!("x² = {x2} < 0"))),
        Ordering::Equal if !x2.is_exact() => Scalar::float(0.0),
        _ => x2.sqrt().expect("non-negative"),
    };
    Ok(ProjPoint::new(x, y))
}

/// Depth of the tricycle encoded by `z`.
pub fn depth_z(z: &ProjPoint, max_steps: u64) -> Result<DepthResult> {
    depth_triple(&triple_of_z(z)?, max_steps)
}

/// Depth computed by iterating plane maps on `z`.
///
/// Starting from `x ← |x|` (and `y ← 1 − y` below the mirror `y = 1/2`), each
/// round tests the closed dark disk `x² + (1/2 − y)² ≤ 1/4`; otherwise, inside
/// `x² + (y−1)² < 1` it applies β (inversion in that circle, folded back to
/// `y ≥ 1/2`) and then α (`x ← |x − 1|`). Both β coordinates are computed
/// from the old `(x, y)`. Points outside the open strip `0 < y < 1` have
/// depth 0.
pub fn depth_z_algorithm(z: &ProjPoint, max_steps: u64) -> Result<DepthResult> {
    let w = z.finite().ok_or(Error::InfinitePoint)?;
    let one = Scalar::one();
    let half = Scalar::ratio(1, 2);
    let quarter = Scalar::ratio(1, 4);
    let mut x = w.re.abs();
    let mut y = w.im.clone();
    let scale = x.to_f64().abs().max(y.to_f64().abs()).max(1.0);
    let chain_point = |x: &Scalar, y: &Scalar| triple_of_z(&ProjPoint::new(x.clone(), y.clone()));
    let outside_strip = |y: &Scalar| y.sign(scale) != Ordering::Greater || (y - &one).sign(scale) != Ordering::Less;

    if outside_strip(&y) {
        return Ok(DepthResult { depth: Depth::Finite(0), chain: vec![triple_of_z(z)?], word: Vec::new() });
    }
    if y < half {
        y = &one - &y;
    }
    let mut chain = vec![chain_point(&x, &y)?];
    let mut word: Vec<u64> = vec![0];
    let mut d = 0u64;
    loop {
        let dy = &half - &y;
        let omega = &(&x * &x) + &(&dy * &dy);
        if (&omega - &quarter).sign(1.0) != Ordering::Greater || outside_strip(&y) {
            if d == 0 {
                word.clear();
            }
            return Ok(DepthResult { depth: Depth::Finite(d), chain, word });
        }
        if d >= max_steps {
            return Ok(DepthResult { depth: Depth::Overflow, chain, word });
        }
        let ym = &y - &one;
        let q = &(&x * &x) + &(&ym * &ym);
        if q < one {
            let b = &(&x * &x) + &(&(&y * &y) - &y);
            let nx = &x / &q;
            let ny = &half + &(&(&b / &q) - &half).abs();
            x = nx;
            y = ny;
            word.push(0);
        }
        x = (&x - &one).abs();
        d += 1;
        *word.last_mut().expect("nonempty") += 1;
        chain.push(chain_point(&x, &y)?);
    }
}

/// `δ(x, y) = δ(1, x, y)` on the unit square of reduced triples.
pub fn reduced_depth(x: &Scalar, y: &Scalar, max_steps: u64) -> Result<DepthResult> {
    depth_triple(&Triple::new(Scalar::one(), x.clone(), y.clone()), max_steps)
}

/// Convenience for `z = x + iy` from two scalars.
pub fn point(x: Scalar, y: Scalar) -> ProjPoint {
    ProjPoint::Finite(ComplexScalar::new(x, y))
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

    fn depth(t: &Triple) -> Depth {
        depth_triple(t, 2000).unwrap().depth
    }

    fn permuted(t: &Triple, p: [usize; 3]) -> Triple {
        let a = t.to_array();
        Triple::new(a[p[0]].clone(), a[p[1]].clone(), a[p[2]].clone())
    }

    proptest! {
        #[test]
        fn scale_invariance(a in 1i64..400, b in 1i64..400, c in 1i64..400, n in 1i64..60, d in 1i64..60) {
            let t = Triple::ints(a, b, c);
            prop_assert_eq!(depth(&t), depth(&t.scaled(&Scalar::ratio(n, d))));
        }

        #[test]
        fn scale_invariance_float(a in 0.01f64..1.0, b in 0.01f64..1.0, c in 0.01f64..1.0) {
            let t = Triple::floats(a, b, c);
            prop_assert_eq!(depth(&t), depth(&t.scaled(&Scalar::float(4.0))));
        }

        #[test]
        fn permutation_invariance(a in -50i64..400, b in 1i64..400, c in 1i64..400) {
            let t = Triple::ints(a, b, c);
            let d = depth(&t);
            for p in PERMS {
                prop_assert_eq!(depth(&permuted(&t, p)), d);
            }
        }

        #[test]
        fn permutation_invariance_float(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
            let t = Triple::floats(a, b, c);
            let d = depth(&t);
            for p in PERMS {
                prop_assert_eq!(depth(&permuted(&t, p)), d);
            }
        }

        #[test]
        fn root_identity_exact(xn in 0i64..60, xd in 1i64..30, yn in 1i64..29, yd in 30i64..31, k in 1i64..20) {
            // triples of rational points have square radicand x²
            let t = triple_of_z(&ProjPoint::rational(xn, xd, yn, yd)).unwrap().scaled(&Scalar::int(k));
            let (lo, hi) = descartes_solutions(&t).unwrap();
            prop_assert!(lo.is_exact() && hi.is_exact());
            let s = t.sum();
            prop_assert_eq!(&lo + &hi, &s * &Scalar::int(2));
            prop_assert_eq!(&lo * &hi, &(&s * &s) - &(&t.radicand() * &Scalar::int(4)));
            for d in [&lo, &hi] {
                let q = &(&s + d) * &(&s + d);
                let sq = &(&(&t.a * &t.a) + &(&t.b * &t.b)) + &(&(&t.c * &t.c) + &(d * d));
                prop_assert_eq!(q, &sq * &Scalar::int(2));
            }
        }

        #[test]
        fn descartes_formula_float(a in 0.01f64..10.0, b in 0.01f64..10.0, c in 0.01f64..10.0) {
            let t = Triple::floats(a, b, c);
            let (lo, hi) = descartes_solutions(&t).unwrap();
            for d in [lo.to_f64(), hi.to_f64()] {
                let lhs = (a + b + c + d).powi(2);
                let rhs = 2.0 * (a * a + b * b + c * c + d * d);
                prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.max(1.0));
            }
        }

        #[test]
        fn monotone_steps(a in 1i64..5000, b in 1i64..5000, c in 1i64..5000) {
            let r = depth_triple(&Triple::ints(a, b, c), 2000).unwrap();
            for w in r.chain.windows(2) {
                let prev = w[0].to_array();
                if prev.iter().all(|v| v.sign(1.0) == Ordering::Greater) {
                    let max = prev.iter().cloned().fold(Scalar::zero(), |m, v| if v > m { v } else { m });
                    prop_assert!(max > w[1].c);
                }
            }
            if let Depth::Finite(d) = r.depth {
                prop_assert_eq!(d as usize, r.chain.len() - 1);
            }
        }

        #[test]
        fn plane_depth_is_run_sum(xn in 0i64..96, yn in 1i64..32) {
            let z = ProjPoint::rational(xn, 32, yn, 32);
            let r = depth_z_algorithm(&z, 64).unwrap();
            if let Depth::Finite(d) = r.depth {
                prop_assert_eq!(r.word.iter().sum::<u64>(), d);
                prop_assert_eq!(depth_z(&z, 64).unwrap().depth, r.depth);
            }
        }
    }
}
