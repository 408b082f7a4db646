//! Apollonian packings from a Descartes configuration.
//!
//! Disks are stored as oriented unit-discriminant forms `(A, B, C)`: signed
//! curvature, minus curvature times center, co-curvature. Reflecting one disk
//! of a configuration across the other three is the linear map
//! `w' = 2(w_j + w_k + w_l) − w_i` on all three coordinates, so integral and
//! Gaussian-rational seeds stay exact.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::depth::{depth_triple, descartes_solutions, triple_of_z, z_of_triple, Depth, Triple, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::numerics::{rational_sqrt, CircleForm, ComplexScalar, ProjPoint, Scalar};
use crate::spinor::Disk;
use crate::symmetry::GroupElement;

const GEOMETRY_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_DISKS: usize = 100_000;

/// Four curvatures of mutually tangent disks.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadruple(pub [Scalar; 4]);

impl Quadruple {
    pub fn ints(v: [i64; 4]) -> Self {
        Quadruple(v.map(Scalar::int))
    }

    /// `(a+b+c+d)² − 2(a²+b²+c²+d²)`.
    pub fn descartes_residual(&self) -> Scalar {
        let sum = self.0.iter().fold(Scalar::zero(), |acc, v| &acc + v);
        let sq = self.0.iter().fold(Scalar::zero(), |acc, v| &acc + &(v * v));
        &(&sum * &sum) - &(&sq * &Scalar::int(2))
    }

    /// Exact in exact mode, relative `1e−9` otherwise.
    pub fn satisfies_descartes(&self) -> bool {
        let r = self.descartes_residual();
        if r.is_exact() {
            return r.is_zero();
        }
        let scale = self.0.iter().fold(1.0f64, |m, v| m.max(v.to_f64().abs()));
        r.to_f64().abs() <= GEOMETRY_TOL * scale * scale
    }

    pub fn sorted(&self) -> Quadruple {
        let mut v = self.0.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        Quadruple(v)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// `(a, b, c, d₋)`.
pub fn complete_seed(t: &Triple) -> Result<Quadruple> {
    let (d, _) = descartes_solutions(t)?;
    Ok(Quadruple([t.a.clone(), t.b.clone(), t.c.clone(), d]))
}

/// Scales a rational quadruple to a primitive integral one.
pub fn scale_to_integral(q: &Quadruple) -> Result<Quadruple> {
    let rats: Vec<&BigRational> =
        q.0.iter().map(|v| v.as_rational().ok_or(Error::NonRationalInput)).collect::<Result<_>>()?;
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (*r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    let mut out = ints.into_iter().map(|n| Scalar::Exact(BigRational::from_integer(n / &gcd)));
    Ok(Quadruple([(); 4].map(|_| out.next().expect("four entries"))))
}

/// Oriented forms of four pairwise tangent disks with disjoint interiors.
#[derive(Clone, Debug, PartialEq)]
pub struct DescartesSeed {
    pub forms: [CircleForm; 4],
}

fn form_is_tangent(a: &CircleForm, b: &CircleForm) -> bool {
    let p = a.inversive_product(b);
    let d = &p - &Scalar::one();
    if d.is_exact() {
        d.is_zero()
    } else {
        d.to_f64().abs() <= GEOMETRY_TOL
    }
}

impl DescartesSeed {
    pub fn new(forms: [CircleForm; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in i + 1..4 {
                if !form_is_tangent(&forms[i], &forms[j]) {
                    let p = forms[i].inversive_product(&forms[j]).to_f64();
                    return Err(Error::GeometryInconsistent(format!(
                        "disks {i} and {j} are not externally tangent (inversive product {p})"
                    )));
                }
            }
        }
        Ok(DescartesSeed { forms })
    }

    pub fn from_disks(disks: [Disk; 4]) -> Result<Self> {
        Self::new(disks.map(|d| d.form()))
    }

    /// Outer circle −1 around the origin, two 2-disks at ±1/2 and the
    /// 3-disk at 2i/3.
    pub fn window() -> Self {
        let c = |k: i64, re: Scalar, im: Scalar| Disk::circle(Scalar::int(k), ComplexScalar::new(re, im));
        Self::from_disks([
            c(-1, Scalar::zero(), Scalar::zero()),
            c(2, Scalar::ratio(-1, 2), Scalar::zero()),
            c(2, Scalar::ratio(1, 2), Scalar::zero()),
            c(3, Scalar::zero(), Scalar::ratio(2, 3)),
        ])
        .expect("window seed is tangent")
    }

    /// Half-planes `y ≥ 1` and `y ≤ −1` with unit disks at 0 and 2.
    pub fn belt() -> Self {
        Self::from_disks([
            Disk::line(ComplexScalar::gauss(0, 1), Scalar::one()),
            Disk::line(ComplexScalar::gauss(0, -1), Scalar::one()),
            Disk::circle(Scalar::one(), ComplexScalar::zero()),
            Disk::circle(Scalar::one(), ComplexScalar::gauss(2, 0)),
        ])
        .expect("belt seed is tangent")
    }

    /// Tricycle of `z` completed by its outer disk `d₋`.
    pub fn from_z(z: &ProjPoint) -> Result<Self> {
        let [a, b, c] = tricycle_of_z_geometric(z)?;
        let forms = [a.form(), b.form(), c.form()];
        let (d, _) = complete_fourth([&forms[0], &forms[1], &forms[2]])?;
        let [fa, fb, fc] = forms;
        Self::new([fa, fb, fc, d])
    }

    /// A configuration with the given curvatures, in the given order.
    /// Quadruples with two zero curvatures become a scaled belt; otherwise
    /// three of the curvatures are placed through [`z_of_triple`].
    pub fn from_curvatures(q: &Quadruple) -> Result<Self> {
        if !q.satisfies_descartes() {
            return Err(Error::NotRealizable(format!("{q} does not satisfy the Descartes relation")));
        }
        let zeros: Vec<usize> = (0..4).filter(|&i| q.0[i].is_zero()).collect();
        if zeros.len() == 2 {
            let k = q.0.iter().find(|v| !v.is_zero()).cloned().ok_or_else(|| Error::NotRealizable(q.to_string()))?;
            let belt = Self::belt().scaled(&k);
            let mut rest = (0..4).filter(|i| !zeros.contains(i));
            let order = [zeros[0], zeros[1], rest.next().expect("two nonzero"), rest.next().expect("two nonzero")];
            let mut forms = belt.forms.clone();
            for (src, &dst) in order.iter().enumerate() {
                forms[dst] = belt.forms[src].clone();
            }
            return Self::new(forms);
        }
        let close = |a: &Scalar, b: &Scalar| {
            if a.is_exact() && b.is_exact() {
                a == b
            } else {
                (a.to_f64() - b.to_f64()).abs() <= GEOMETRY_TOL * (1.0 + a.to_f64().abs())
            }
        };
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for skip in (0..4).rev() {
            let rest: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
            for p in PERMS {
                let idx = p.map(|k| rest[k]);
                let t = Triple::new(q.0[idx[0]].clone(), q.0[idx[1]].clone(), q.0[idx[2]].clone());
                let Ok(z) = z_of_triple(&t) else { continue };
                let Ok(disks) = tricycle_of_z_geometric(&z) else { continue };
                let forms = disks.map(|d| d.form());
                let Ok((lo, hi)) = complete_fourth([&forms[0], &forms[1], &forms[2]]) else { continue };
                let lambda = &t.a + &t.c;
                let target = &q.0[skip] / &lambda;
                let fourth = if close(&lo.a, &target) {
                    lo
                } else if close(&hi.a, &target) {
                    hi
                } else {
                    continue;
                };
                let mut out = [fourth.clone(), fourth.clone(), fourth.clone(), fourth];
                for (k, f) in idx.iter().zip(forms) {
                    out[*k] = f;
                }
                if let Ok(seed) = Self::new(out) {
                    return Ok(seed.scaled(&lambda).centered());
                }
            }
        }
        Err(Error::NotRealizable(format!("no configuration with curvatures {q}")))
    }

    pub fn quadruple(&self) -> Quadruple {
        Quadruple(self.forms.clone().map(|f| f.a))
    }

    /// The same configuration scaled by `λ > 0` about the origin.
    pub fn scaled(&self, lambda: &Scalar) -> Self {
        let forms = self.forms.clone().map(|f| CircleForm::raw(&f.a * lambda, f.b, &f.c / lambda));
        DescartesSeed { forms }
    }

    /// Translated so that a circle of negative curvature, if any, is
    /// centered at the origin.
    pub fn centered(&self) -> Self {
        let Some(c) = self.forms.iter().find(|f| f.a.sign(1.0) == Ordering::Less).and_then(|f| f.center()) else {
            return self.clone();
        };
        let shift = GroupElement::new([ComplexScalar::one(), -&c, ComplexScalar::zero(), ComplexScalar::one()], false)
            .expect("translation");
        DescartesSeed { forms: self.forms.clone().map(|f| f.apply(&shift).expect("translation")) }
    }

    pub fn disks(&self) -> [Disk; 4] {
        self.forms.clone().map(|f| Disk::from_form(&f))
    }
}

/// Tangency point of two oriented forms, `∞` for parallel lines.
fn tangency_point(a: &CircleForm, b: &CircleForm) -> ProjPoint {
    let num = -&(&a.b + &b.b);
    let den = &a.a + &b.a;
    match num.checked_div(&ComplexScalar::real(den)) {
        Some(p) => ProjPoint::Finite(p),
        None => ProjPoint::Infinity,
    }
}

/// The two disks tangent to three mutually tangent ones, smaller curvature
/// first. Uses `w₄ = w₁ + w₂ + w₃ ± 2k` where `k` is the unit-discriminant
/// circle through the three tangency points.
pub fn complete_fourth(f: [&CircleForm; 3]) -> Result<(CircleForm, CircleForm)> {
    let p = [tangency_point(f[0], f[1]), tangency_point(f[1], f[2]), tangency_point(f[2], f[0])];
    let k = CircleForm::through_points([&p[0], &p[1], &p[2]])?.canonical().normalized()?;
    let sum =
        CircleForm::raw(&(&f[0].a + &f[1].a) + &f[2].a, &(&f[0].b + &f[1].b) + &f[2].b, &(&f[0].c + &f[1].c) + &f[2].c);
    let two = Scalar::int(2);
    let plus = CircleForm::raw(&sum.a + &(&k.a * &two), &sum.b + &k.b.scale(&two), &sum.c + &(&k.c * &two));
    let minus = CircleForm::raw(&sum.a - &(&k.a * &two), &sum.b - &k.b.scale(&two), &sum.c - &(&k.c * &two));
    if minus.a <= plus.a {
        Ok((minus, plus))
    } else {
        Ok((plus, minus))
    }
}

/// Disks `(A, B, C)` with curvatures from [`triple_of_z`]: `C` centered at
/// `−r_C` so that its tangency point with `A` is the origin, `A` at
/// `c_C + r_C r_A`, `B` at `c_C + z² r_C r_B`.
pub fn tricycle_of_z_geometric(z: &ProjPoint) -> Result<[Disk; 3]> {
    let t = triple_of_z(z)?;
    if t.entries().iter().any(|v| v.is_zero()) {
        return Err(Error::NotRealizable(format!("triple {t} has a zero curvature")));
    }
    let w = z.finite().ok_or(Error::InfinitePoint)?;
    let (ra, rb, rc) = (Scalar::one() / &t.a, Scalar::one() / &t.b, Scalar::one() / &t.c);
    let cc = ComplexScalar::real(-&rc);
    let ca = &cc + &ComplexScalar::real(&rc * &ra);
    let cb = &cc + &(w * w).scale(&(&rc * &rb));
    Ok([Disk::circle(t.a.clone(), ca), Disk::circle(t.b.clone(), cb), Disk::circle(t.c.clone(), cc)])
}

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    /// Disks of larger curvature are pruned.
    pub max_curvature: Option<Scalar>,
    /// Number of reflection rounds after the seed.
    pub max_levels: Option<usize>,
    pub max_disks: usize,
    /// `(xmin, xmax, ymin, ymax)`; circles centered outside are pruned.
    pub bounds: Option<[f64; 4]>,
}

impl GenerateOptions {
    pub fn to_curvature(max_curvature: Scalar) -> Self {
        GenerateOptions {
            max_curvature: Some(max_curvature),
            max_levels: None,
            max_disks: DEFAULT_MAX_DISKS,
            bounds: None,
        }
    }

    pub fn levels(n: usize) -> Self {
        GenerateOptions { max_curvature: None, max_levels: Some(n), max_disks: DEFAULT_MAX_DISKS, bounds: None }
    }

    pub fn with_bounds(mut self, bounds: [f64; 4]) -> Self {
        self.bounds = Some(bounds);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackedDisk {
    pub form: CircleForm,
    pub level: usize,
}

impl PackedDisk {
    pub fn curvature(&self) -> &Scalar {
        &self.form.a
    }

    pub fn disk(&self) -> Disk {
        Disk::from_form(&self.form)
    }
}

#[derive(Clone, Debug)]
pub struct Packing {
    pub disks: Vec<PackedDisk>,
    /// Tangent pairs `(i, j)` with `i < j`, sorted.
    pub adjacency: Vec<(usize, usize)>,
    /// Every Descartes configuration visited, as disk indices.
    pub configurations: Vec<[usize; 4]>,
    pub seed: Quadruple,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
enum DiskKey {
    Exact([BigRational; 4]),
    Float([i64; 4]),
}

fn disk_key(f: &CircleForm) -> DiskKey {
    let parts = [&f.a, &f.b.re, &f.b.im, &f.c];
    if parts.iter().all(|v| v.is_exact()) {
        DiskKey::Exact(parts.map(|v| v.as_rational().expect("exact").clone()))
    } else {
        DiskKey::Float(parts.map(|v| (v.to_f64() / GEOMETRY_TOL).round() as i64))
    }
}

fn reflect(forms: [&CircleForm; 4], i: usize) -> CircleForm {
    let mut a = Scalar::zero();
    let mut b = ComplexScalar::zero();
    let mut c = Scalar::zero();
    for (j, f) in forms.iter().enumerate() {
        if j != i {
            a = &a + &f.a;
            b = &b + &f.b;
            c = &c + &f.c;
        }
    }
    let two = Scalar::int(2);
    CircleForm::raw(&(&a * &two) - &forms[i].a, &b.scale(&two) - &forms[i].b, &(&c * &two) - &forms[i].c)
}

fn within_bounds(f: &CircleForm, bounds: &Option<[f64; 4]>) -> bool {
    let Some([x0, x1, y0, y1]) = bounds else { return true };
    match f.center() {
        None => true,
        Some(c) => {
            let (x, y) = c.to_f64();
            x >= *x0 && x <= *x1 && y >= *y0 && y <= *y1
        }
    }
}

fn exceeds(k: &Scalar, max: &Option<Scalar>) -> bool {
    let Some(m) = max else { return false };
    if k.is_exact() && m.is_exact() {
        return k > m;
    }
    k.to_f64() > m.to_f64() * (1.0 + GEOMETRY_TOL) + GEOMETRY_TOL
}

/// Breadth-first generation: every configuration reflects each disk except
/// the one that created it. Candidates are computed in parallel per level
/// and merged in frontier order.
pub fn generate_packing(seed: &DescartesSeed, opts: &GenerateOptions) -> Result<Packing> {
    if opts.max_curvature.is_none() && opts.max_levels.is_none() && opts.bounds.is_none() {
        return Err(Error::InvalidArgument("generation needs a curvature, level or bounds limit".into()));
    }
    let mut disks: Vec<PackedDisk> = Vec::new();
    let mut index: HashMap<DiskKey, usize> = HashMap::new();
    for f in &seed.forms {
        index.insert(disk_key(f), disks.len());
        disks.push(PackedDisk { form: f.clone(), level: 0 });
    }
    let mut configs: Vec<[usize; 4]> = vec![[0, 1, 2, 3]];
    let mut seen: HashSet<[usize; 4]> = HashSet::from([[0, 1, 2, 3]]);
    let mut frontier: Vec<([usize; 4], Option<usize>)> = vec![([0, 1, 2, 3], None)];
    let mut level = 0usize;
    while !frontier.is_empty() {
        if opts.max_levels.is_some_and(|m| level >= m) {
            break;
        }
        level += 1;
        let candidates: Vec<Vec<(usize, CircleForm)>> = frontier
            .par_iter()
            .map(|(cfg, created)| {
                let forms = cfg.map(|i| &disks[i].form);
                (0..4)
                    .filter(|&i| Some(i) != *created)
                    .map(|i| (i, reflect(forms, i)))
                    .filter(|(_, f)| !exceeds(&f.a, &opts.max_curvature) && within_bounds(f, &opts.bounds))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for ((cfg, _), cands) in frontier.iter().zip(candidates) {
            for (pos, form) in cands {
                let key = disk_key(&form);
                let idx = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        if disks.len() >= opts.max_disks {
                            return Err(Error::Overflow(format!("packing exceeded {} disks", opts.max_disks)));
                        }
                        index.insert(key, disks.len());
                        disks.push(PackedDisk { form, level });
                        disks.len() - 1
                    }
                };
                let mut new_cfg = *cfg;
                new_cfg[pos] = idx;
                let mut sorted = new_cfg;
                sorted.sort_unstable();
                if seen.insert(sorted) {
                    configs.push(new_cfg);
                    next.push((new_cfg, Some(pos)));
                }
            }
        }
        frontier = next;
    }
    let mut pairs = BTreeSet::new();
    for cfg in &configs {
        for i in 0..4 {
            for j in i + 1..4 {
                let (a, b) = (cfg[i].min(cfg[j]), cfg[i].max(cfg[j]));
                pairs.insert((a, b));
            }
        }
    }
    Ok(Packing { disks, adjacency: pairs.into_iter().collect(), configurations: configs, seed: seed.quadruple() })
}

#[derive(Debug, Serialize)]
struct DiskRecord {
    index: usize,
    curvature: f64,
    cx: Option<f64>,
    cy: Option<f64>,
    level: usize,
}

#[derive(Debug, Serialize)]
struct PackingRecord {
    disks: Vec<DiskRecord>,
    adjacency: Vec<(usize, usize)>,
}

impl Packing {
    pub fn curvatures(&self) -> Vec<Scalar> {
        self.disks.iter().map(|d| d.form.a.clone()).collect()
    }

    /// Sorted curvatures.
    pub fn curvature_multiset(&self) -> Vec<Scalar> {
        let mut v = self.curvatures();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        v
    }

    pub fn quadruples(&self) -> impl Iterator<Item = Quadruple> + '_ {
        self.configurations.iter().map(|cfg| Quadruple(cfg.map(|i| self.disks[i].form.a.clone())))
    }

    /// Largest relative center-distance residual over all tangent pairs.
    pub fn max_tangency_residual(&self) -> f64 {
        self.adjacency
            .iter()
            .map(|&(i, j)| self.disks[i].disk().tangency_residual(&self.disks[j].disk()))
            .fold(0.0, f64::max)
    }

    fn records(&self) -> PackingRecord {
        let disks = self
            .disks
            .iter()
            .enumerate()
            .map(|(index, d)| {
                let c = d.form.center().map(|c| c.to_f64());
                DiskRecord {
                    index,
                    curvature: d.form.a.to_f64(),
                    cx: c.map(|c| c.0),
                    cy: c.map(|c| c.1),
                    level: d.level,
                }
            })
            .collect();
        PackingRecord { disks, adjacency: self.adjacency.clone() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.records()).expect("plain data serializes")
    }

    /// `index,curvature,cx,cy,level`; lines leave the center empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in self.records().disks {
            w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(())
    }
}

/// A coordinate `r` or `√r` with `r` rational.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadraticCoord {
    Rational(BigRational),
    Sqrt(BigRational),
}

impl QuadraticCoord {
    /// The value when it is rational.
    fn rational(&self) -> Option<BigRational> {
        match self {
            QuadraticCoord::Rational(q) => Some(q.clone()),
            QuadraticCoord::Sqrt(q) => rational_sqrt(q),
        }
    }

    fn square(&self) -> BigRational {
        match self {
            QuadraticCoord::Rational(q) => q * q,
            QuadraticCoord::Sqrt(q) => q.clone(),
        }
    }
}

/// `rational + coeff·√radicand` with a non-square radicand.
#[derive(Clone, Debug, PartialEq)]
pub struct Surd {
    pub label: &'static str,
    pub rational: BigRational,
    pub coeff: BigRational,
    pub radicand: BigRational,
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |q: &BigRational| Scalar::Exact(q.clone()).to_string();
        let sign = if self.coeff.is_negative() { "-" } else { "+" };
        write!(f, "{} = {} {} {}·√{}", self.label, s(&self.rational), sign, s(&self.coeff.abs()), s(&self.radicand))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Integrality {
    IntegralAfterScaling { seed: Quadruple },
    NotIntegral { witness: Surd },
}

/// Decides whether the packing of `z = x + iy` is integral up to scale.
pub fn integrality_classify(x: &QuadraticCoord, y: &QuadraticCoord) -> Result<Integrality> {
    let Some(y) = y.rational() else {
        return Err(Error::UnsupportedForm("y must be rational".into()));
    };
    let one = BigRational::one();
    let x2 = x.square();
    let a = &one - &y;
    let b = &x2 + &y * &y - &y;
    let c = y.clone();
    match x.rational() {
        Some(_) => {
            let t = Triple::new(Scalar::Exact(a), Scalar::Exact(b), Scalar::Exact(c));
            let q = complete_seed(&t)?;
            Ok(Integrality::IntegralAfterScaling { seed: scale_to_integral(&q.sorted())? })
        }
        None => {
            // ab + bc + ca = x², so d₋ = a + b + c − 2x
            let sum = &a + &b + &c;
            Ok(Integrality::NotIntegral {
                witness: Surd {
                    label: "D-",
                    rational: sum,
                    coeff: BigRational::from_integer((-2).into()),
                    radicand: x2,
                },
            })
        }
    }
}

/// Triangles of mutually tangent disks, joined when they share two disks
/// and the two remaining disks are tangent.
#[derive(Clone, Debug)]
pub struct TricycleGraph {
    pub vertices: Vec<[usize; 3]>,
    pub neighbors: Vec<Vec<usize>>,
    lookup: HashMap<[usize; 3], usize>,
}

pub fn build_tricycle_graph(p: &Packing) -> TricycleGraph {
    let n = p.disks.len();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(i, j) in &p.adjacency {
        adj[i].insert(j);
        adj[j].insert(i);
    }
    let mut vertices = Vec::new();
    for i in 0..n {
        for &j in adj[i].range(i + 1..) {
            for &k in adj[j].range(j + 1..) {
                if adj[i].contains(&k) {
                    vertices.push([i, j, k]);
                }
            }
        }
    }
    let lookup: HashMap<[usize; 3], usize> = vertices.iter().enumerate().map(|(v, t)| (*t, v)).collect();
    let neighbors = vertices
        .iter()
        .map(|t| {
            let mut out = BTreeSet::new();
            for drop in 0..3 {
                let keep: Vec<usize> = (0..3).filter(|&q| q != drop).map(|q| t[q]).collect();
                let k = t[drop];
                for &l in adj[keep[0]].intersection(&adj[keep[1]]) {
                    if l != k && adj[k].contains(&l) {
                        let mut tri = [keep[0], keep[1], l];
                        tri.sort_unstable();
                        if let Some(&v) = lookup.get(&tri) {
                            out.insert(v);
                        }
                    }
                }
            }
            out.into_iter().collect()
        })
        .collect();
    TricycleGraph { vertices, neighbors, lookup }
}

impl TricycleGraph {
    pub fn vertex_of(&self, disks: [usize; 3]) -> Option<usize> {
        let mut t = disks;
        t.sort_unstable();
        self.lookup.get(&t).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.neighbors.iter().enumerate().all(|(v, ns)| ns.iter().all(|&u| self.neighbors[u].contains(&v)))
    }

    /// BFS distance of every vertex to the tricycles holding a disk of
    /// non-positive curvature.
    pub fn zero_distances(&self, p: &Packing) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        let mut queue = VecDeque::new();
        for (v, t) in self.vertices.iter().enumerate() {
            if t.iter().any(|&i| p.disks[i].form.a.sign(1.0) != Ordering::Greater) {
                dist[v] = Some(0);
                queue.push_back(v);
            }
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued");
            for &u in &self.neighbors[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// `true` when every vertex closer to `v` than `radius` has all six
    /// neighbors, so pruning cannot have removed a shorter path.
    pub fn ball_complete(&self, v: usize, radius: usize) -> bool {
        let mut dist = HashMap::from([(v, 0usize)]);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let d = dist[&u];
            if d >= radius {
                continue;
            }
            if self.degree(u) != 6 {
                return false;
            }
            for &w in &self.neighbors[u] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d + 1);
                    queue.push_back(w);
                }
            }
        }
        true
    }

    pub fn curvature_triple(&self, p: &Packing, v: usize) -> Triple {
        let [i, j, k] = self.vertices[v];
        Triple::new(p.disks[i].form.a.clone(), p.disks[j].form.a.clone(), p.disks[k].form.a.clone())
    }
}

/// Shortest-path depth of one vertex.
pub fn graph_depth(g: &TricycleGraph, p: &Packing, v: usize) -> Result<usize> {
    g.zero_distances(p)[v].ok_or(Error::Unreachable(v))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GreedyBfsReport {
    pub vertices: usize,
    pub checked: usize,
    pub mismatches: Vec<(usize, usize, u64)>,
}

/// Compares BFS depth with the greedy process on every vertex whose ball is
/// complete. Mismatches list `(vertex, bfs, greedy)`.
pub fn greedy_vs_bfs(g: &TricycleGraph, p: &Packing) -> Result<GreedyBfsReport> {
    let dist = g.zero_distances(p);
    let mut report = GreedyBfsReport { vertices: g.vertices.len(), ..Default::default() };
    for (v, d) in dist.iter().enumerate() {
        let Some(d) = *d else { continue };
        if !g.ball_complete(v, d) {
            continue;
        }
        report.checked += 1;
        let greedy = match depth_triple(&g.curvature_triple(p, v), DEFAULT_MAX_STEPS)?.depth {
            Depth::Finite(n) => n,
            Depth::Overflow => u64::MAX,
        };
        if greedy != d as u64 {
            report.mismatches.push((v, d, greedy));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Integrality::*;

    fn window(maxk: i64) -> Packing {
        generate_packing(&DescartesSeed::window(), &GenerateOptions::to_curvature(Scalar::int(maxk))).unwrap()
    }

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter().map(|s| s.to_f64() as i64).collect()
    }

    #[test]
    fn complete_seed_examples() {
        assert_eq!(complete_seed(&Triple::ints(2, 2, 3)).unwrap(), Quadruple::ints([2, 2, 3, -1]));
        assert_eq!(complete_seed(&Triple::ints(0, 0, 1)).unwrap(), Quadruple::ints([0, 0, 1, 1]));
        let q = complete_seed(&Triple::ints(1, 1, 1)).unwrap();
        assert!((q.0[3].to_f64() - (3.0 - 2.0 * 3f64.sqrt())).abs() < 1e-15);
        assert!(q.satisfies_descartes());
    }

    #[test]
    fn scaling_examples() {
        let q = Quadruple([Scalar::ratio(1, 2), Scalar::ratio(3, 4), Scalar::ratio(1, 2), Scalar::ratio(-1, 4)]);
        assert_eq!(scale_to_integral(&q).unwrap(), Quadruple::ints([2, 3, 2, -1]));
        assert_eq!(scale_to_integral(&Quadruple::ints([2, 2, 3, -1])).unwrap(), Quadruple::ints([2, 2, 3, -1]));
        assert_eq!(scale_to_integral(&Quadruple::ints([4, 4, 6, -2])).unwrap(), Quadruple::ints([2, 2, 3, -1]));
        let f = Quadruple([Scalar::float(1.0), Scalar::one(), Scalar::one(), Scalar::one()]);
        assert_eq!(scale_to_integral(&f), Err(Error::NonRationalInput));
    }

    #[test]
    fn window_to_fifteen() {
        let p = window(15);
        assert_eq!(
            ints(&p.curvature_multiset()),
            vec![-1, 2, 2, 3, 3, 6, 6, 6, 6, 11, 11, 11, 11, 14, 14, 14, 14, 15, 15]
        );
        assert!(p.quadruples().all(|q| q.satisfies_descartes() && q.0.iter().all(Scalar::is_exact)));
        assert!(p.max_tangency_residual() < 1e-9);
    }

    #[test]
    fn seed_only_at_seed_curvature() {
        let p = window(3);
        assert_eq!(ints(&p.curvature_multiset()), vec![-1, 2, 2, 3, 3]);
        let p = generate_packing(&DescartesSeed::window(), &GenerateOptions::levels(0)).unwrap();
        assert_eq!(p.disks.len(), 4);
    }

    #[test]
    fn belt_labels() {
        let opts = GenerateOptions::to_curvature(Scalar::int(4)).with_bounds([-2.5, 4.5, -2.0, 2.0]);
        let p = generate_packing(&DescartesSeed::belt(), &opts).unwrap();
        let k = ints(&p.curvature_multiset());
        assert_eq!(k.iter().filter(|&&v| v == 0).count(), 2);
        assert!(k.iter().filter(|&&v| v == 1).count() >= 3);
        assert!(k.iter().filter(|&&v| v == 4).count() >= 4);
        assert!(p.max_tangency_residual() < 1e-9);
    }

    #[test]
    fn generation_requires_a_limit() {
        let opts = GenerateOptions { max_curvature: None, max_levels: None, max_disks: 10, bounds: None };
        assert!(generate_packing(&DescartesSeed::window(), &opts).is_err());
        let opts = GenerateOptions { max_disks: 10, ..GenerateOptions::to_curvature(Scalar::int(1000)) };
        assert!(matches!(generate_packing(&DescartesSeed::window(), &opts), Err(Error::Overflow(_))));
    }

    #[test]
    fn inconsistent_seed() {
        let c = |k: i64, x: i64| Disk::circle(Scalar::int(k), ComplexScalar::gauss(x, 0));
        let err = DescartesSeed::from_disks([c(1, 0), c(1, 3), c(1, 6), c(1, 9)]).unwrap_err();
        assert!(matches!(err, Error::GeometryInconsistent(_)));
    }

    #[test]
    fn reflection_is_involution() {
        let s = DescartesSeed::window();
        let f = s.forms.each_ref();
        let r = reflect(f, 3);
        let back = reflect([f[0], f[1], f[2], &r], 3);
        assert_eq!(back, s.forms[3]);
    }

    #[test]
    fn geometric_tricycles() {
        let [a, b, c] = tricycle_of_z_geometric(&ProjPoint::rational(1, 1, 1, 2)).unwrap();
        assert_eq!(
            (a.curvature(), b.curvature(), c.curvature()),
            (Scalar::ratio(1, 2), Scalar::ratio(3, 4), Scalar::ratio(1, 2))
        );
        for (p, q) in [(&a, &b), (&b, &c), (&c, &a)] {
            assert!(p.tangency_residual(q) < 1e-9);
        }
        let [_, b, _] = tricycle_of_z_geometric(&ProjPoint::rational(0, 1, 1, 2)).unwrap();
        assert_eq!(b.curvature(), Scalar::ratio(-1, 4));
        assert!(tricycle_of_z_geometric(&ProjPoint::rational(0, 1, 1, 1)).is_err());
    }

    #[test]
    fn spinors_of_constructed_tricycle_project_back() {
        use crate::spinor::spinor_of_pair;
        let z = ProjPoint::rational(3, 2, 2, 5);
        let [a, b, c] = tricycle_of_z_geometric(&z).unwrap();
        let sa = spinor_of_pair(&c, &a).unwrap();
        let sb = spinor_of_pair(&c, &b).unwrap();
        assert_eq!(sa.0, ComplexScalar::one());
        let w = z.finite().unwrap();
        assert!(sb.0 == *w || sb.0 == -w);
    }

    #[test]
    fn seed_from_z_is_window() {
        let s = DescartesSeed::from_z(&ProjPoint::rational(1, 1, 1, 2)).unwrap();
        assert_eq!(s.quadruple().0[3], Scalar::ratio(-1, 4));
        assert_eq!(scale_to_integral(&s.quadruple().sorted()).unwrap(), Quadruple::ints([-1, 2, 2, 3]));
    }

    #[test]
    fn integrality_examples() {
        let r = |n: i64, d: i64| QuadraticCoord::Rational(BigRational::new(n.into(), d.into()));
        let IntegralAfterScaling { seed } = integrality_classify(&r(1, 1), &r(1, 2)).unwrap() else { panic!() };
        assert_eq!(seed, Quadruple::ints([-1, 2, 2, 3]));
        let IntegralAfterScaling { seed } = integrality_classify(&r(0, 1), &r(1, 1)).unwrap() else { panic!() };
        assert_eq!(seed, Quadruple::ints([0, 0, 1, 1]));
        let sqrt2 = QuadraticCoord::Sqrt(BigRational::from_integer(2.into()));
        let NotIntegral { witness } = integrality_classify(&sqrt2, &r(1, 2)).unwrap() else { panic!() };
        assert_eq!(witness.radicand, BigRational::from_integer(2.into()));
        // √(9/4) is rational
        let s = QuadraticCoord::Sqrt(BigRational::new(9.into(), 4.into()));
        assert!(matches!(integrality_classify(&s, &r(1, 3)).unwrap(), IntegralAfterScaling { .. }));
        assert!(matches!(integrality_classify(&r(1, 1), &sqrt2), Err(Error::UnsupportedForm(_))));
    }

    #[test]
    fn seed_graph() {
        let p = window(3);
        let g = build_tricycle_graph(&generate_packing(&DescartesSeed::window(), &GenerateOptions::levels(0)).unwrap());
        assert_eq!(g.vertices.len(), 4);
        assert!(g.is_symmetric());
        let g2 = build_tricycle_graph(&p);
        assert!(g2.is_symmetric());
    }

    #[test]
    fn graph_depth_examples() {
        let p = window(15);
        let g = build_tricycle_graph(&p);
        assert!(g.is_symmetric());
        let v = g.vertex_of([1, 2, 3]).unwrap();
        assert_eq!(graph_depth(&g, &p, v).unwrap(), 1);
        let v0 = g.vertex_of([0, 1, 2]).unwrap();
        assert_eq!(graph_depth(&g, &p, v0).unwrap(), 0);
    }

    #[test]
    fn export_formats() {
        let p = window(6);
        let json = p.to_json();
        assert_eq!(json["disks"].as_array().unwrap().len(), p.disks.len());
        assert_eq!(json["disks"][0]["curvature"], serde_json::json!(-1.0));
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("index,curvature,cx,cy,level\n"));
        assert_eq!(text.lines().count(), p.disks.len() + 1);
    }

    #[test]
    fn seeds_from_curvatures() {
        for v in
            [[-1, 2, 2, 3], [2, 3, -1, 2], [-2, 3, 6, 7], [0, 0, 1, 1], [1, 0, 1, 0], [0, 0, 3, 3], [-6, 11, 14, 15]]
        {
            let q = Quadruple::ints(v);
            let seed = DescartesSeed::from_curvatures(&q).unwrap();
            assert_eq!(seed.quadruple(), q, "{v:?}");
            assert!(seed.forms.iter().all(|f| f.is_exact()));
        }
        assert!(DescartesSeed::from_curvatures(&Quadruple::ints([1, 1, 1, 1])).is_err());
        let w = DescartesSeed::from_curvatures(&Quadruple::ints([-1, 2, 2, 3])).unwrap();
        assert_eq!(w.forms[0].center(), Some(ComplexScalar::zero()));
        let w = generate_packing(
            &DescartesSeed::from_curvatures(&Quadruple::ints([-1, 2, 2, 3])).unwrap(),
            &GenerateOptions::to_curvature(Scalar::int(15)),
        )
        .unwrap();
        assert_eq!(
            ints(&w.curvature_multiset()),
            vec![-1, 2, 2, 3, 3, 6, 6, 6, 6, 11, 11, 11, 11, 14, 14, 14, 14, 15, 15]
        );
    }
}
