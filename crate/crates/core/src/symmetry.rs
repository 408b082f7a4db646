//! Mirror and Moebius symmetries of the depth pattern.
//!
//! Elements are 2×2 Gaussian-rational matrices up to scale plus a flag
//! for whether the map first conjugates its argument. The finite group Θ is
//! generated by the reflections `S`, `F`, `H`; the infinite group Ξ adds the
//! translation `T`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::depth::DepthResult;
use crate::error::{Error, Result};
use crate::numerics::{ComplexScalar, ProjPoint, Scalar};

const PROJECTIVE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    T,
    TInv,
    S,
    F,
    R,
    H,
    P,
}

impl Generator {
    pub const ALL: [Generator; 7] =
        [Generator::T, Generator::TInv, Generator::S, Generator::F, Generator::R, Generator::H, Generator::P];

    pub fn name(self) -> &'static str {
        match self {
            Generator::T => "T",
            Generator::TInv => "T^-1",
            Generator::S => "S",
            Generator::F => "F",
            Generator::R => "R",
            Generator::H => "H",
            Generator::P => "P",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "T" => Generator::T,
            "T^-1" | "Tinv" | "TInv" | "t" => Generator::TInv,
            "S" => Generator::S,
            "F" => Generator::F,
            "R" => Generator::R,
            "H" => Generator::H,
            "P" => Generator::P,
            other => return Err(Error::UnknownGenerator(other.to_string())),
        })
    }
}

/// `z ↦ M·z` or `z ↦ M·z̄`, stored with its first nonzero entry scaled to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    m: [ComplexScalar; 4],
    pub conj: bool,
}

fn lead_scale(m: &[ComplexScalar; 4]) -> f64 {
    m.iter().fold(0.0f64, |acc, e| {
        let (a, b) = e.to_f64();
        acc.max(a.abs()).max(b.abs())
    })
}

fn is_negligible(e: &ComplexScalar, scale: f64) -> bool {
    e.re.sign(scale) == Ordering::Equal && e.im.sign(scale) == Ordering::Equal
}

impl GroupElement {
    /// Entries in row-major order. Fails on a singular matrix.
    pub fn new(m: [ComplexScalar; 4], conj: bool) -> Result<Self> {
        let det = &(&m[0] * &m[3]) - &(&m[1] * &m[2]);
        let scale = lead_scale(&m);
        if is_negligible(&det, scale * scale) {
            return Err(Error::SingularMatrix);
        }
        let lead = m.iter().find(|e| !is_negligible(e, scale)).cloned().expect("nonsingular");
        let inv = lead.checked_inv().ok_or(Error::SingularMatrix)?;
        let m = m.map(|e| &e * &inv);
        Ok(GroupElement { m, conj })
    }

    fn gauss(m: [(i64, i64); 4], conj: bool) -> Self {
        Self::new(m.map(|(a, b)| ComplexScalar::gauss(a, b)), conj).expect("nonsingular constant")
    }

    pub fn identity() -> Self {
        Self::gauss([(1, 0), (0, 0), (0, 0), (1, 0)], false)
    }

    pub fn entries(&self) -> [&ComplexScalar; 4] {
        [&self.m[0], &self.m[1], &self.m[2], &self.m[3]]
    }

    pub fn det(&self) -> ComplexScalar {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, z: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = self.entries();
        match z {
            ProjPoint::Infinity => match a.checked_div(c) {
                Some(w) => ProjPoint::Finite(w),
                None => ProjPoint::Infinity,
            },
            ProjPoint::Finite(w) => {
                let w = if self.conj { w.conj() } else { w.clone() };
                let num = &(a * &w) + b;
                let den = &(c * &w) + d;
                match num.checked_div(&den) {
                    Some(v) => ProjPoint::Finite(v),
                    None => ProjPoint::Infinity,
                }
            }
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let h: Vec<ComplexScalar> = other.m.iter().map(|e| if self.conj { e.conj() } else { e.clone() }).collect();
        let g = &self.m;
        let m = [
            &(&g[0] * &h[0]) + &(&g[1] * &h[2]),
            &(&g[0] * &h[1]) + &(&g[1] * &h[3]),
            &(&g[2] * &h[0]) + &(&g[3] * &h[2]),
            &(&g[2] * &h[1]) + &(&g[3] * &h[3]),
        ];
        GroupElement::new(m, self.conj ^ other.conj).expect("product of nonsingular maps")
    }

    pub fn inverse(&self) -> GroupElement {
        let [a, b, c, d] = self.entries();
        let adj = [d.clone(), -b, -c, a.clone()];
        let m = if self.conj { adj.map(|e| e.conj()) } else { adj };
        GroupElement::new(m, self.conj).expect("nonsingular")
    }

    pub fn pow(&self, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(GroupElement::identity(), |acc, _| acc.compose(&base))
    }

    /// Projective equality; exact for Gaussian-rational entries.
    pub fn projective_eq(&self, other: &GroupElement, tol: f64) -> bool {
        self.conj == other.conj && self.m.iter().zip(other.m.iter()).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub fn is_exact(&self) -> bool {
        self.m.iter().all(ComplexScalar::is_exact)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "[[{a}, {b}], [{c}, {d}]]{}", if self.conj { " conj" } else { "" })
    }
}

/// The normative (mirror) version of each generator.
///
/// `F: z̄ + i`, `S: 1/z̄`, `R: iz̄/(z̄ + i)`, `H: −z̄`, `T: z + 1`, `P: 1 − z̄`.
pub fn generator(g: Generator) -> GroupElement {
    let (m, conj) = match g {
        Generator::T => ([(1, 0), (1, 0), (0, 0), (1, 0)], false),
        Generator::TInv => ([(1, 0), (-1, 0), (0, 0), (1, 0)], false),
        Generator::F => ([(1, 0), (0, 1), (0, 0), (1, 0)], true),
        Generator::S => ([(0, 0), (1, 0), (1, 0), (0, 0)], true),
        Generator::R => ([(1, 0), (0, 0), (0, -1), (1, 0)], true),
        Generator::H => ([(-1, 0), (0, 0), (0, 0), (1, 0)], true),
        Generator::P => ([(-1, 0), (1, 0), (0, 0), (1, 0)], true),
    };
    GroupElement::gauss(m, conj)
}

pub fn generator_by_name(name: &str) -> Result<GroupElement> {
    Ok(generator(name.parse()?))
}

/// The sign variant `S: z ↦ −1/z̄`. It differs from [`generator`]`(S)` by
/// the half-turn `z ↦ −z` and does not satisfy the mirror relations.
pub fn printed_s() -> GroupElement {
    GroupElement::gauss([(0, 0), (-1, 0), (1, 0), (0, 0)], true)
}

/// Orientation-preserving versions `T̂, F̂, Ŝ, R̂` (entries in ℤ[i]).
pub fn algebraic_generator(g: Generator) -> Option<GroupElement> {
    let m = match g {
        Generator::T => [(1, 0), (1, 0), (0, 0), (1, 0)],
        Generator::F => [(0, 1), (1, 0), (0, 0), (0, -1)],
        Generator::S => [(0, 0), (-1, 0), (1, 0), (0, 0)],
        Generator::R => [(0, 1), (0, 0), (1, 0), (0, -1)],
        _ => return None,
    };
    Some(GroupElement::gauss(m, false))
}

/// Coordinate form of each generator, evaluated directly on `(x, y)`.
pub fn generator_coordinate(g: Generator, z: &ProjPoint) -> ProjPoint {
    let w = match z {
        ProjPoint::Finite(w) => w,
        ProjPoint::Infinity => {
            return match g {
                Generator::S => ProjPoint::new(Scalar::zero(), Scalar::zero()),
                Generator::R => ProjPoint::new(Scalar::zero(), Scalar::one()),
                _ => ProjPoint::Infinity,
            }
        }
    };
    let (x, y) = (&w.re, &w.im);
    let one = Scalar::one();
    match g {
        Generator::T => ProjPoint::new(x + &one, y.clone()),
        Generator::TInv => ProjPoint::new(x - &one, y.clone()),
        Generator::F => ProjPoint::new(x.clone(), &one - y),
        Generator::H => ProjPoint::new(-x, y.clone()),
        Generator::P => ProjPoint::new(&one - x, y.clone()),
        Generator::S => {
            let n = &(x * x) + &(y * y);
            if n.is_zero() {
                return ProjPoint::Infinity;
            }
            ProjPoint::new(x / &n, y / &n)
        }
        Generator::R => {
            let ym = y - &one;
            let q = &(x * x) + &(&ym * &ym);
            if q.is_zero() {
                return ProjPoint::Infinity;
            }
            ProjPoint::new(x / &q, &one + &(&ym / &q))
        }
    }
}

/// Letters of a word. `Alpha` and `Beta` are the folded steps of the
/// z-plane depth algorithm: `Alpha` is `x ↦ |x − 1|`, `Beta` is the
/// inversion `R` followed by `F` when the image falls below `y = 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Gen(Generator),
    Alpha,
    Beta,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Gen(g) => write!(f, "{g}"),
            Letter::Alpha => f.write_str("α"),
            Letter::Beta => f.write_str("β"),
        }
    }
}

/// Run-length encoded word, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word {
    pub runs: Vec<(Letter, u64)>,
}

impl Word {
    pub fn new() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::new();
        for l in letters {
            w.push(l, 1);
        }
        w
    }

    /// `α^{n₁} β α^{n₂} … β α^{n_m}` from the run lengths.
    pub fn from_alpha_runs(runs: &[u64]) -> Self {
        let mut w = Word::new();
        for (i, &n) in runs.iter().enumerate() {
            if i > 0 {
                w.push(Letter::Beta, 1);
            }
            w.push(Letter::Alpha, n);
        }
        w
    }

    pub fn push(&mut self, letter: Letter, n: u64) {
        if n == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((l, k)) if *l == letter => *k += n,
            _ => self.runs.push((letter, n)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|(_, n)| n).sum()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|&(l, n)| std::iter::repeat_n(l, n as usize))
    }

    /// Applies the letters in order, the first letter first.
    pub fn apply(&self, z: &ProjPoint) -> ProjPoint {
        let mut p = z.clone();
        for &(l, n) in &self.runs {
            match l {
                Letter::Gen(Generator::T) => p = translate(&p, n as i64),
                Letter::Gen(Generator::TInv) => p = translate(&p, -(n as i64)),
                _ => {
                    for _ in 0..n {
                        p = apply_letter(l, &p);
                    }
                }
            }
        }
        p
    }

    /// The group element of a word without `α`/`β` (those depend on the point).
    pub fn element(&self) -> Option<GroupElement> {
        let mut g = GroupElement::identity();
        for &(l, n) in &self.runs {
            let Letter::Gen(gen) = l else { return None };
            g = generator(gen).pow(n as i64).compose(&g);
        }
        Some(g)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|(l, n)| match (l.to_string(), *n) {
                (s, 1) => s,
                (s, n) if s.contains('^') => format!("({s})^{n}"),
                (s, n) => format!("{s}^{n}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

fn translate(p: &ProjPoint, n: i64) -> ProjPoint {
    match p {
        ProjPoint::Infinity => ProjPoint::Infinity,
        ProjPoint::Finite(w) => ProjPoint::new(&w.re + &Scalar::int(n), w.im.clone()),
    }
}

fn apply_letter(l: Letter, p: &ProjPoint) -> ProjPoint {
    match l {
        Letter::Gen(g) => generator_coordinate(g, p),
        Letter::Alpha => match p {
            ProjPoint::Infinity => ProjPoint::Infinity,
            ProjPoint::Finite(w) => ProjPoint::new((&w.re - &Scalar::one()).abs(), w.im.clone()),
        },
        Letter::Beta => {
            let q = generator_coordinate(Generator::R, p);
            match &q {
                ProjPoint::Finite(w) if w.im < Scalar::ratio(1, 2) => generator_coordinate(Generator::F, &q),
                _ => q,
            }
        }
    }
}

/// Word of a z-plane depth run, preceded by the folds the algorithm applies
/// to its input.
pub fn depth_word(z: &ProjPoint, result: &DepthResult) -> Word {
    let mut w = Word::new();
    if let ProjPoint::Finite(c) = z {
        if c.re < Scalar::zero() {
            w.push(Letter::Gen(Generator::H), 1);
        }
        if c.im < Scalar::ratio(1, 2) {
            w.push(Letter::Gen(Generator::F), 1);
        }
    }
    for l in Word::from_alpha_runs(&result.word).letters() {
        w.push(l, 1);
    }
    w
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

fn word_element(gens: &[Generator]) -> GroupElement {
    gens.iter().fold(GroupElement::identity(), |acc, &g| acc.compose(&generator(g)))
}

/// Checks the defining relations of Θ and the identities tying the
/// generators together, by exact projective equality.
pub fn verify_relations() -> Vec<RelationCheck> {
    use Generator::*;
    let id = GroupElement::identity();
    let mut out = Vec::new();
    let mut check = |name: &str, lhs: GroupElement, rhs: &GroupElement| {
        out.push(RelationCheck { name: name.to_string(), holds: lhs == *rhs });
    };
    for g in [H, S, F, R] {
        check(&format!("{g}^2 = id"), generator(g).pow(2), &id);
    }
    check("(SF)^3 = id", word_element(&[S, F]).pow(3), &id);
    check("(FR)^3 = id", word_element(&[F, R]).pow(3), &id);
    check("(RS)^3 = id", word_element(&[R, S]).pow(3), &id);
    check("R = SFS", word_element(&[S, F, S]), &generator(R));
    check("R = FSF", word_element(&[F, S, F]), &generator(R));
    check("T = PH", word_element(&[P, H]), &generator(T));
    for g in [S, F, R] {
        check(&format!("H{g} = {g}H"), word_element(&[H, g]), &word_element(&[g, H]));
    }
    let (t, s) = (algebraic_generator(T).expect("T"), algebraic_generator(S).expect("S"));
    check("(T̂Ŝ)^3 = id", t.compose(&s).pow(3), &id);
    out
}

/// The same relations with the sign-variant `S: z ↦ −1/z̄` substituted.
pub fn printed_s_relations() -> Vec<RelationCheck> {
    use Generator::*;
    let id = GroupElement::identity();
    let s = printed_s();
    let (f, r) = (generator(F), generator(R));
    let checks = [
        ("S^2 = id", s.pow(2), id.clone()),
        ("(SF)^3 = id", s.compose(&f).pow(3), id.clone()),
        ("(RS)^3 = id", r.compose(&s).pow(3), id),
        ("R = SFS", s.compose(&f).compose(&s), r.clone()),
        ("R = FSF", f.compose(&s).compose(&f), r),
    ];
    checks.into_iter().map(|(n, l, rhs)| RelationCheck { name: n.to_string(), holds: l == rhs }).collect()
}

/// An element of a generated group with one word producing it.
#[derive(Clone, Debug)]
pub struct ClosureEntry {
    pub word: Vec<Generator>,
    pub element: GroupElement,
}

impl ClosureEntry {
    /// Applies the word through the coordinate forms (last letter first).
    pub fn apply_coordinate(&self, z: &ProjPoint) -> ProjPoint {
        self.word.iter().rev().fold(z.clone(), |p, &g| generator_coordinate(g, &p))
    }
}

/// Breadth-first closure of `gens` under composition.
pub fn closure_of(gens: &[GroupElement], names: &[Generator], limit: usize) -> Result<Vec<ClosureEntry>> {
    let mut found = vec![ClosureEntry { word: Vec::new(), element: GroupElement::identity() }];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for idx in frontier {
            for (g, &name) in gens.iter().zip(names) {
                let e = found[idx].element.compose(g);
                if found.iter().any(|f| f.element == e) {
                    continue;
                }
                if found.len() >= limit {
                    return Err(Error::ClosureOverflow(limit));
                }
                let mut word = found[idx].word.clone();
                word.push(name);
                found.push(ClosureEntry { word, element: e });
                next.push(found.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(found)
}

const CLOSURE_LIMIT: usize = 24;

fn closure_named(names: &[Generator]) -> Result<Vec<ClosureEntry>> {
    let gens: Vec<GroupElement> = names.iter().map(|&g| generator(g)).collect();
    closure_of(&gens, names, CLOSURE_LIMIT)
}

/// Θ = ⟨S, F, H⟩.
pub fn enumerate_theta() -> Result<Vec<ClosureEntry>> {
    closure_named(&[Generator::S, Generator::F, Generator::H])
}

/// Θ₀ = ⟨S, F⟩.
pub fn enumerate_theta0() -> Result<Vec<ClosureEntry>> {
    closure_named(&[Generator::S, Generator::F])
}

/// G = {id, FS, SF}.
pub fn enumerate_frame_group() -> Result<Vec<ClosureEntry>> {
    let fs = generator(Generator::F).compose(&generator(Generator::S));
    closure_of(&[fs], &[Generator::F], CLOSURE_LIMIT).map(|v| {
        v.into_iter()
            .map(|mut e| {
                // each step of the single generator is the pair F, S
                e.word = e.word.iter().flat_map(|_| [Generator::F, Generator::S]).collect();
                e
            })
            .collect()
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionPredicate {
    /// `x ≥ 0, y ≤ 1/2, |z| ≥ 1`
    Q,
    /// `0 ≤ x ≤ 1/2, y ≤ 0, |z| ≥ 1`
    P,
    /// `0 ≤ y ≤ 1`
    Strip,
    /// `x² + (y − 1/2)² ≤ 1/4`
    Dark,
}

impl FromStr for RegionPredicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(RegionPredicate::Q),
            "P" | "p" => Ok(RegionPredicate::P),
            "strip" => Ok(RegionPredicate::Strip),
            "dark" => Ok(RegionPredicate::Dark),
            other => Err(Error::InvalidArgument(format!("unknown region `{other}`"))),
        }
    }
}

/// Closed-set membership. `∞` belongs to the unbounded regions `P` and `Q`.
pub fn in_region(r: RegionPredicate, z: &ProjPoint) -> bool {
    let Some(w) = z.finite() else {
        return matches!(r, RegionPredicate::P | RegionPredicate::Q);
    };
    let (x, y) = (&w.re, &w.im);
    let ge = |a: &Scalar, b: &Scalar| (a - b).sign(1.0) != Ordering::Less;
    let zero = Scalar::zero();
    let half = Scalar::ratio(1, 2);
    let one = Scalar::one();
    let n = w.norm_sqr();
    match r {
        RegionPredicate::Q => ge(x, &zero) && ge(&half, y) && ge(&n, &one),
        RegionPredicate::P => ge(x, &zero) && ge(&half, x) && ge(&zero, y) && ge(&n, &one),
        RegionPredicate::Strip => ge(y, &zero) && ge(&one, y),
        RegionPredicate::Dark => {
            let dy = y - &half;
            ge(&Scalar::ratio(1, 4), &(&(x * x) + &(&dy * &dy)))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Canonical {
    pub point: ProjPoint,
    /// Word over `{T, T⁻¹, S, F, H, P}` mapping the input to `point`.
    pub word: Word,
    /// The result lies on the boundary of `P` (including the cusp `∞`).
    pub on_boundary: bool,
}

struct Reducer {
    p: ProjPoint,
    word: Word,
    steps: u64,
    max_steps: u64,
}

impl Reducer {
    fn apply(&mut self, g: Generator) -> Result<()> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(Error::Overflow(format!("canonicalization exceeded {} steps", self.max_steps)));
        }
        self.p = generator_coordinate(g, &self.p);
        self.word.push(Letter::Gen(g), 1);
        Ok(())
    }

    fn x(&self) -> Scalar {
        self.p.x().cloned().unwrap_or_else(Scalar::zero)
    }

    fn y(&self) -> Scalar {
        self.p.y().cloned().unwrap_or_else(Scalar::zero)
    }
}

/// Maps `z` into the closed fundamental domain `P` of Ξ.
///
/// Phases: fold to `x ≥ 0` with `H`; send `y ≥ 1` below the axis with `F`;
/// inside the open strip run the depth iteration to the dark disk and leave
/// it through `S` then `F`; in the lower half-plane reduce with translations,
/// the mirror `P` and the inversion `S`.
pub fn canonicalize_to_p(z: &ProjPoint, max_steps: u64) -> Result<Canonical> {
    use Generator::*;
    let mut r = Reducer { p: z.clone(), word: Word::new(), steps: 0, max_steps };
    let zero = Scalar::zero();
    let half = Scalar::ratio(1, 2);
    let quarter = Scalar::ratio(1, 4);
    let one = Scalar::one();
    if r.p.is_infinite() {
        return Ok(Canonical { point: ProjPoint::Infinity, word: r.word, on_boundary: true });
    }
    if r.x() < zero {
        r.apply(H)?;
    }
    if r.y() >= one {
        r.apply(F)?;
    }
    if r.y() > zero {
        if r.y() < half {
            r.apply(F)?;
        }
        loop {
            let (x, y) = (r.x(), r.y());
            let dy = &y - &half;
            if &(&x * &x) + &(&dy * &dy) <= quarter {
                break;
            }
            let ym = &y - &one;
            if &(&x * &x) + &(&ym * &ym) < one {
                // R = SFS
                r.apply(S)?;
                r.apply(F)?;
                r.apply(S)?;
                if r.y() < half {
                    r.apply(F)?;
                }
            }
            r.apply(TInv)?;
            if r.x() < zero {
                r.apply(H)?;
            }
        }
        r.apply(S)?;
        if r.p.is_infinite() {
            return Ok(Canonical { point: r.p, word: r.word, on_boundary: true });
        }
        r.apply(F)?;
    }
    loop {
        let x = r.x();
        let n = x.floor();
        let n_int = n.to_f64() as i64;
        if n_int > 0 {
            r.steps += n_int as u64;
            r.word.push(Letter::Gen(TInv), n_int as u64);
        } else if n_int < 0 {
            r.steps += n_int.unsigned_abs();
            r.word.push(Letter::Gen(T), n_int.unsigned_abs());
        }
        if r.steps > r.max_steps {
            return Err(Error::Overflow(format!("canonicalization exceeded {max_steps} steps")));
        }
        r.p = ProjPoint::new(&x - &n, r.y());
        if r.x() > half {
            r.apply(P)?;
        }
        let (x, y) = (r.x(), r.y());
        if &(&x * &x) + &(&y * &y) < one {
            r.apply(S)?;
            if r.p.is_infinite() {
                return Ok(Canonical { point: r.p, word: r.word, on_boundary: true });
            }
            continue;
        }
        break;
    }
    let on_boundary = on_p_boundary(&r.p);
    Ok(Canonical { point: r.p, word: r.word, on_boundary })
}

fn on_p_boundary(p: &ProjPoint) -> bool {
    let Some(w) = p.finite() else { return true };
    let near = |v: Scalar| {
        if v.is_exact() {
            v.is_zero()
        } else {
            v.to_f64().abs() <= PROJECTIVE_TOL
        }
    };
    near(w.re.clone()) || near(&w.re - &Scalar::ratio(1, 2)) || near(w.im.clone()) || near(w.norm_sqr() - Scalar::one())
}

fn contains_point(set: &[ProjPoint], p: &ProjPoint) -> bool {
    set.iter().any(|q| q.approx_eq(p, PROJECTIVE_TOL))
}

/// Distinct images of `z` under Ξ-words of length at most `word_length`
/// over `{T, T⁻¹, S, F, H}`.
pub fn orbit_sample(z: &ProjPoint, word_length: usize) -> Result<Vec<ProjPoint>> {
    if word_length > 8 {
        return Err(Error::InvalidArgument("orbit word length must be at most 8".into()));
    }
    use Generator::*;
    let gens = [T, TInv, S, F, H];
    let mut all = vec![z.clone()];
    let mut frontier = vec![z.clone()];
    for _ in 0..word_length {
        let mut next = Vec::new();
        for p in &frontier {
            for g in gens {
                let q = generator_coordinate(g, p);
                if !contains_point(&all, &q) {
                    all.push(q.clone());
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    Ok(all)
}
