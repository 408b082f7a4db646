//! Property suites run by `apollo verify` and reused by the acceptance tests.
//!
//! Every claim is checked by computation. Claims whose printed form in the
//! source material cannot be reproduced are reported as discrepancies and
//! do not fail a run.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::depth::{depth_triple, depth_z, depth_z_algorithm, descartes_solutions, Depth, Triple, DEFAULT_MAX_STEPS};
use crate::error::{Error, Result};
use crate::numerics::{ComplexScalar, ProjPoint, Scalar};
use crate::packing::{
    build_tricycle_graph, generate_packing, greedy_vs_bfs, integrality_classify, scale_to_integral, DescartesSeed,
    GenerateOptions, Integrality, Packing, QuadraticCoord,
};
use crate::spinor::{spinor_products, SpinorFrame, TangencySpinor};
use crate::symmetry::{
    canonicalize_to_p, depth_word, enumerate_frame_group, enumerate_theta, enumerate_theta0, generator_coordinate,
    in_region, printed_s, printed_s_relations, verify_relations, Generator, RegionPredicate,
};

pub const DEFAULT_SEED: u64 = 0x5eed_a901;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Groups,
    Depth,
    Spinor,
    Packing,
    Integrality,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Groups, Suite::Depth, Suite::Spinor, Suite::Packing, Suite::Integrality];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Groups => "groups",
            Suite::Depth => "depth",
            Suite::Spinor => "spinor",
            Suite::Packing => "packing",
            Suite::Integrality => "integrality",
        }
    }

    /// Parses a suite name; `all` gives every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Discrepancy,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Claim {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub claims: Vec<Claim>,
}

impl Report {
    fn add(&mut self, suite: Suite, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.claims.push(Claim { suite, name: name.into(), status, detail: detail.into() });
    }

    fn check(&mut self, suite: Suite, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.add(suite, name, Status::from_bool(ok), detail);
    }

    /// No hard failures.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.claims.iter().filter(|c| c.status == s).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let claims: Vec<_> = self
            .claims
            .iter()
            .map(|c| json!({"suite": c.suite.name(), "claim": c.name, "status": c.status.label(), "detail": c.detail}))
            .collect();
        json!({
            "passed": self.passed(),
            "pass": self.count(Status::Pass),
            "fail": self.count(Status::Fail),
            "discrepancy": self.count(Status::Discrepancy),
            "claims": claims,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.claims.iter().filter(|c| c.status != Status::Discrepancy) {
            writeln!(f, "{:<4} [{}] {}: {}", c.status.label(), c.suite.name(), c.name, c.detail)?;
        }
        let disc: Vec<_> = self.claims.iter().filter(|c| c.status == Status::Discrepancy).collect();
        if !disc.is_empty() {
            writeln!(f, "discrepancies with the printed source (not counted as failures):")?;
            for c in disc {
                writeln!(f, "  [{}] {}: {}", c.suite.name(), c.name, c.detail)?;
            }
        }
        write!(
            f,
            "{} passed, {} failed, {} discrepancies",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Discrepancy)
        )
    }
}

pub fn run(suites: &[Suite], seed: u64) -> Report {
    let mut r = Report::default();
    for &s in suites {
        let res = match s {
            Suite::Groups => groups_suite(&mut r),
            Suite::Depth => depth_suite(&mut r, seed),
            Suite::Spinor => spinor_suite(&mut r, seed),
            Suite::Packing => packing_suite(&mut r, seed),
            Suite::Integrality => integrality_suite(&mut r, seed),
        };
        if let Err(e) = res {
            r.add(s, "suite completed", Status::Fail, e.to_string());
        }
    }
    r
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform rational `num/den` with `|num|, den ≤ max`, inside `(lo, hi)`.
fn rational_in(rng: &mut ChaCha8Rng, max: i64, lo: f64, hi: f64) -> (i64, i64) {
    loop {
        let d = rng.gen_range(1..=max);
        let n = rng.gen_range(-max..=max);
        let v = n as f64 / d as f64;
        if v > lo && v < hi {
            return (n, d);
        }
    }
}

/// `n` rational points `x + iy` with numerators and denominators at most
/// `max`, `x ∈ (−3, 3)`, `y ∈ (0, 1)`.
pub fn random_rational_points(seed: u64, n: usize, max: i64) -> Vec<ProjPoint> {
    let mut r = rng(seed, 1);
    (0..n)
        .map(|_| {
            let (xn, xd) = rational_in(&mut r, max, -3.0, 3.0);
            let (yn, yd) = rational_in(&mut r, max, 0.0, 1.0);
            ProjPoint::rational(xn, xd, yn, yd)
        })
        .collect()
}

fn depth_of(z: &ProjPoint, max_steps: u64) -> Result<Depth> {
    Ok(depth_z(z, max_steps)?.depth)
}

/// Float points in `(0, 3) × (0, 1)` whose depth is finite and unchanged at
/// the four points offset by `margin` along the axes.
pub fn sample_margin_points(seed: u64, n: usize, margin: f64) -> Result<Vec<ProjPoint>> {
    let mut r = rng(seed, 2);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let (x, y) = (r.gen_range(0.0..3.0), r.gen_range(0.0..1.0));
        let d = depth_of(&ProjPoint::from_f64(x, y), DEFAULT_MAX_STEPS)?;
        if d == Depth::Overflow {
            continue;
        }
        let mut stable = true;
        for (dx, dy) in [(margin, 0.0), (-margin, 0.0), (0.0, margin), (0.0, -margin)] {
            if depth_of(&ProjPoint::from_f64(x + dx, y + dy), DEFAULT_MAX_STEPS)? != d {
                stable = false;
                break;
            }
        }
        if stable {
            out.push(ProjPoint::from_f64(x, y));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InvarianceReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

/// `δ(gz) = δ(z)` for every element of Θ, images computed through the
/// coordinate forms of the generators.
pub fn theta_invariance(points: &[ProjPoint]) -> Result<InvarianceReport> {
    let theta = enumerate_theta()?;
    let mut rep = InvarianceReport::default();
    for z in points {
        let d = depth_of(z, DEFAULT_MAX_STEPS)?;
        for e in &theta {
            rep.checks += 1;
            let gz = e.apply_coordinate(z);
            let dg = depth_of(&gz, DEFAULT_MAX_STEPS)?;
            if dg != d {
                let w: Vec<&str> = e.word.iter().map(|g| g.name()).collect();
                rep.failures.push(format!("{}({z}) has depth {dg}, {z} has {d}", w.join("")));
            }
        }
    }
    Ok(rep)
}

/// The same comparison for the matrix-table version of `S`.
pub fn printed_s_invariance(points: &[ProjPoint]) -> Result<InvarianceReport> {
    let s = printed_s();
    let mut rep = InvarianceReport::default();
    for z in points {
        rep.checks += 1;
        let (d, dg) = (depth_of(z, DEFAULT_MAX_STEPS)?, depth_of(&s.apply(z), DEFAULT_MAX_STEPS)?);
        if d != dg {
            rep.failures.push(format!("{z}: {d} vs {dg}"));
        }
    }
    Ok(rep)
}

pub const PACKING_GENERATORS: [Generator; 4] = [Generator::T, Generator::S, Generator::F, Generator::H];

/// `canonicalize_to_p(gz) = canonicalize_to_p(z)` within `tol` for
/// `g ∈ {T, S, F, H}`.
pub fn packing_invariance(points: &[ProjPoint], tol: f64) -> Result<InvarianceReport> {
    let mut rep = InvarianceReport::default();
    for z in points {
        let base = canonicalize_to_p(z, DEFAULT_MAX_STEPS)?.point;
        for g in PACKING_GENERATORS {
            rep.checks += 1;
            let img = canonicalize_to_p(&generator_coordinate(g, z), DEFAULT_MAX_STEPS)?.point;
            if !img.approx_eq(&base, tol) {
                rep.failures.push(format!("{g}({z}) reduces to {img}, {z} to {base}"));
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GridReport {
    pub points: usize,
    /// Points with depth at most the comparison bound.
    pub compared: usize,
    pub disagreements: Vec<String>,
}

/// Grid `x = k/16 (0 ≤ k ≤ 48)`, `y = k/16 (1 ≤ k ≤ 15)`, comparing the
/// triple process with the plane algorithm where the depth is at most
/// `bound`.
pub fn grid_agreement(bound: u64) -> Result<GridReport> {
    let mut rep = GridReport::default();
    let cap = bound + 1;
    for kx in 0..=48 {
        for ky in 1..=15 {
            rep.points += 1;
            let z = ProjPoint::rational(kx, 16, ky, 16);
            let a = depth_z(&z, cap)?.depth;
            let Depth::Finite(d) = a else { continue };
            if d > bound {
                continue;
            }
            rep.compared += 1;
            let b = depth_z_algorithm(&z, cap)?.depth;
            if a != b {
                rep.disagreements.push(format!("{z}: {a} vs {b}"));
            }
        }
    }
    Ok(rep)
}

/// Window labels `(curvature, x_num, x_den, y_num, y_den)` as drawn; each
/// sits at the center of its disk.
pub const WINDOW_LABELS: [(i64, i64, i64, i64, i64); 16] = [
    (2, -1, 2, 0, 1),
    (2, 1, 2, 0, 1),
    (3, 0, 1, 2, 3),
    (3, 0, 1, -2, 3),
    (6, 1, 2, 2, 3),
    (6, -1, 2, 2, 3),
    (6, 1, 2, -2, 3),
    (6, -1, 2, -2, 3),
    (11, 8, 11, 6, 11),
    (11, -8, 11, 6, 11),
    (11, 8, 11, -6, 11),
    (11, -8, 11, -6, 11),
    (14, 5, 14, 6, 7),
    (14, -5, 14, 6, 7),
    (14, 5, 14, -6, 7),
    (14, -5, 14, -6, 7),
];

/// Belt labels `(curvature, x, y)` in the drawn frame, which is the belt
/// of this crate rotated by a quarter turn; labels lie inside their disks.
pub const BELT_LABELS: [(i64, f64, f64); 19] = [
    (1, 0.0, 0.0),
    (1, 0.0, -2.0),
    (1, 0.0, 2.0),
    (4, -0.75, 1.0),
    (4, -0.75, -1.0),
    (4, 0.75, 1.0),
    (4, 0.75, -1.0),
    (9, 0.875, 8.0 / 6.0),
    (9, 0.875, -8.0 / 6.0),
    (9, 0.875, 4.0 / 6.0),
    (9, 0.875, -4.0 / 6.0),
    (9, -0.875, 8.0 / 6.0),
    (9, -0.875, -8.0 / 6.0),
    (9, -0.875, 4.0 / 6.0),
    (9, -0.875, -4.0 / 6.0),
    (12, -0.42, 1.0),
    (12, -0.42, -1.0),
    (12, 0.42, 1.0),
    (12, 0.42, -1.0),
];

pub fn window_packing(max_curvature: i64) -> Result<Packing> {
    generate_packing(&DescartesSeed::window(), &GenerateOptions::to_curvature(Scalar::int(max_curvature)))
}

pub fn belt_packing(max_curvature: i64) -> Result<Packing> {
    let opts = GenerateOptions::to_curvature(Scalar::int(max_curvature)).with_bounds([-2.5, 4.5, -2.0, 2.0]);
    generate_packing(&DescartesSeed::belt(), &opts)
}

/// Labels not matched by a disk of the given curvature centered exactly at
/// the label.
pub fn window_label_misses(p: &Packing) -> Vec<String> {
    let mut misses = Vec::new();
    for (k, xn, xd, yn, yd) in WINDOW_LABELS.iter() {
        let c = ComplexScalar::new(Scalar::ratio(*xn, *xd), Scalar::ratio(*yn, *yd));
        let hit = p.disks.iter().any(|d| d.form.a == Scalar::int(*k) && d.form.center().as_ref() == Some(&c));
        if !hit {
            misses.push(format!("{k} at {c}"));
        }
    }
    misses
}

/// Belt labels not inside a disk of the labelled curvature, after rotating
/// the drawn frame by `(x, y) ↦ (−y, x)`.
pub fn belt_label_misses(p: &Packing) -> Vec<String> {
    let mut misses = Vec::new();
    for &(k, x, y) in BELT_LABELS.iter() {
        let (px, py) = (-y, x);
        let hit = p.disks.iter().any(|d| {
            if d.form.a != Scalar::int(k) {
                return false;
            }
            let Some(c) = d.form.center() else { return false };
            let (cx, cy) = c.to_f64();
            (px - cx).hypot(py - cy) < 1.0 / k as f64
        });
        if !hit {
            misses.push(format!("{k} near ({px}, {py})"));
        }
    }
    misses
}

fn groups_suite(r: &mut Report) -> Result<()> {
    let g = Suite::Groups;
    let (theta, theta0, frame) = (enumerate_theta()?, enumerate_theta0()?, enumerate_frame_group()?);
    r.check(g, "|Θ| = 12", theta.len() == 12, format!("{} elements", theta.len()));
    r.check(g, "|Θ₀| = 6", theta0.len() == 6, format!("{} elements", theta0.len()));
    r.check(g, "|G| = 3", frame.len() == 3, format!("{} elements", frame.len()));
    for rel in verify_relations() {
        r.check(g, format!("relation {}", rel.name), rel.holds, "exact projective equality");
    }
    let printed = printed_s_relations();
    let broken: Vec<_> = printed.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
    let status = if broken.is_empty() { Status::Pass } else { Status::Discrepancy };
    r.add(
        g,
        "relations with S as z ↦ −1/z̄",
        status,
        if broken.is_empty() { "all hold".to_string() } else { format!("fail: {}", broken.join(", ")) },
    );

    // each sampled point lies in exactly one image g(Q)
    let mut rr = rng(DEFAULT_SEED, 3);
    let mut bad = 0usize;
    let samples = 500;
    for _ in 0..samples {
        let z = ProjPoint::from_f64(0.866 + rr.gen_range(-0.3..0.3), 0.5 + rr.gen_range(-0.3..0.3));
        let hits = theta.iter().filter(|e| in_region(RegionPredicate::Q, &e.element.inverse().apply(&z))).count();
        if hits != 1 {
            bad += 1;
        }
    }
    r.check(
        g,
        "Θ-images of Q tile near (√3/2, 1/2)",
        bad == 0,
        format!("{samples} samples, {bad} not covered exactly once"),
    );
    Ok(())
}

fn depth_suite(r: &mut Report, seed: u64) -> Result<()> {
    let s = Suite::Depth;
    let res = depth_triple(&Triple::ints(179, 62, 23), DEFAULT_MAX_STEPS)?;
    let sorted = |t: &Triple| {
        let mut v: Vec<Scalar> = t.to_array().to_vec();
        v.sort_by(|a, b| b.partial_cmp(a).expect("exact"));
        v
    };
    let members = [(62, 23, 6), (23, 6, 3), (3, 2, -1)];
    let found = members.iter().all(|&(a, b, c)| res.chain.iter().any(|t| sorted(t) == sorted(&Triple::ints(a, b, c))));
    r.check(
        s,
        "worked chain contains (62,23,6), (23,6,3), (3,2,−1)",
        found,
        format!("chain of {} triples", res.chain.len()),
    );
    let chain: Vec<String> = res.chain.iter().map(|t| t.to_string()).collect();
    r.add(
        s,
        "worked example δ(179,62,23)",
        if res.depth == Depth::Finite(3) { Status::Pass } else { Status::Discrepancy },
        format!("printed 3, computed {} via {}", res.depth, chain.join(" → ")),
    );
    let roots = descartes_solutions(&Triple::ints(2, 2, 3))?;
    r.check(
        s,
        "Descartes roots of (2,2,3)",
        roots == (Scalar::int(-1), Scalar::int(15)),
        format!("({}, {})", roots.0, roots.1),
    );

    let belt: Vec<Depth> =
        (0..3).map(|n| depth_of(&ProjPoint::rational(n, 1, 1, 2), DEFAULT_MAX_STEPS)).collect::<Result<_>>()?;
    r.check(
        s,
        "δ(i/2), δ(1+i/2), δ(2+i/2) = 0, 1, 2",
        belt == [Depth::Finite(0), Depth::Finite(1), Depth::Finite(2)],
        belt.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
    );

    let grid = grid_agreement(12)?;
    let share = grid.compared as f64 / grid.points as f64;
    r.check(
        s,
        "two-algorithm agreement on the k/16 grid",
        grid.disagreements.is_empty() && share >= 0.95,
        format!("{}/{} points with depth ≤ 12, {} disagreements", grid.compared, grid.points, grid.disagreements.len()),
    );

    let mut word_bad = 0;
    for kx in 0..=48 {
        for ky in 1..=15 {
            let z = ProjPoint::rational(kx, 16, ky, 16);
            let d = depth_z_algorithm(&z, 13)?;
            if d.depth == Depth::Overflow {
                continue;
            }
            if !in_region(RegionPredicate::Dark, &depth_word(&z, &d).apply(&z)) {
                word_bad += 1;
            }
        }
    }
    r.check(s, "α/β word maps z into the dark disk", word_bad == 0, format!("{word_bad} grid points outside"));

    let pts = sample_margin_points(seed, 1000, 1e-6)?;
    let inv = theta_invariance(&pts)?;
    r.check(
        s,
        "δ(gz) = δ(z) for all g ∈ Θ",
        inv.failures.is_empty(),
        format!("{} checks, {} failures", inv.checks, inv.failures.len()),
    );
    let ps = printed_s_invariance(&pts)?;
    r.add(
        s,
        "δ invariant under S as z ↦ −1/z̄",
        if ps.failures.is_empty() { Status::Pass } else { Status::Discrepancy },
        format!("{} of {} points change depth", ps.failures.len(), ps.checks),
    );
    Ok(())
}

fn spinor_suite(r: &mut Report, seed: u64) -> Result<()> {
    let s = Suite::Spinor;
    let p = window_packing(40)?;
    let (mut frames, mut open, mut wrong) = (0usize, 0usize, 0usize);
    for cfg in &p.configurations {
        for skip in 0..4 {
            let idx: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| cfg[i]).collect();
            let disks: Vec<_> = idx.iter().map(|&i| p.disks[i].disk()).collect();
            let frame = match SpinorFrame::from_disks(&disks[0], &disks[1], &disks[2]) {
                Ok(f) => f,
                Err(_) => {
                    open += 1;
                    continue;
                }
            };
            frames += 1;
            let (x, y, z) = frame.cross_curvatures();
            let want = [disks[2].curvature(), disks[0].curvature(), disks[1].curvature()].map(|k| k.to_f64());
            let got = [x, y, z].map(|k| k.to_f64());
            let scale = want.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let ok =
                [1.0, -1.0].iter().any(|sg| got.iter().zip(&want).all(|(g, w)| (sg * g - w).abs() <= 1e-9 * scale));
            if !ok {
                wrong += 1;
            }
        }
    }
    r.check(
        s,
        "frame closure a + b + c = 0",
        open == 0,
        format!("{frames} frames from Window configurations, {open} not closing"),
    );
    r.check(s, "cross products give the curvatures (C, A, B)", wrong == 0, format!("{wrong} of {frames} frames off"));

    let mut rr = rng(seed, 4);
    let (mut bad_roots, mut bad_cover) = (0, 0);
    let n = 200;
    for _ in 0..n {
        let mut q = || {
            let (a, b) = rational_in(&mut rr, 20, -5.0, 5.0);
            Scalar::ratio(a, b)
        };
        let a = TangencySpinor::new(q(), q());
        let b = TangencySpinor::new(q(), q());
        let pr = spinor_products(&a, &b);
        match descartes_solutions(&Triple::new(pr.a.clone(), pr.b.clone(), pr.c.clone())) {
            Ok((lo, hi)) => {
                let mut got = [pr.d_minus.clone(), pr.d_plus.clone()];
                got.sort_by(|x, y| x.partial_cmp(y).expect("exact"));
                if got != [lo, hi] {
                    bad_roots += 1;
                }
            }
            Err(_) => bad_roots += 1,
        }
        if spinor_products(&-&a, &b).c != -&pr.c || spinor_products(&-&a, &-&b) != pr {
            bad_cover += 1;
        }
    }
    r.check(
        s,
        "‖a ± b‖² − C are the Descartes roots",
        bad_roots == 0,
        format!("{n} exact spinor pairs, {bad_roots} off"),
    );
    r.check(s, "sign double cover", bad_cover == 0, format!("{n} pairs, {bad_cover} off"));

    // the unsquared reading ‖a ± b‖ − C
    let a = TangencySpinor::new(Scalar::one(), Scalar::zero());
    let b = TangencySpinor::new(Scalar::ratio(3, 2), Scalar::ratio(1, 3));
    let pr = spinor_products(&a, &b);
    let unsquared = (&a + &b).norm_sqr().to_f64().sqrt() - pr.c.to_f64();
    let agrees = (unsquared - pr.d_plus.to_f64()).abs() < 1e-9;
    r.add(
        s,
        "completion curvature read as ‖a + b‖ − C",
        if agrees { Status::Pass } else { Status::Discrepancy },
        format!("a = 1, b = 3/2 + i/3: ‖a+b‖ − C = {unsquared:.6}, D+ = {}", pr.d_plus),
    );
    Ok(())
}

fn packing_suite(r: &mut Report, seed: u64) -> Result<()> {
    let s = Suite::Packing;
    let w15 = window_packing(15)?;
    let ms: Vec<i64> = w15.curvature_multiset().iter().map(|k| k.to_f64() as i64).collect();
    let expected = [-1, 2, 2, 3, 3, 6, 6, 6, 6, 11, 11, 11, 11, 14, 14, 14, 14, 15, 15];
    r.check(s, "Window to curvature 15", ms == expected, format!("{ms:?}"));
    let misses = window_label_misses(&w15);
    r.check(
        s,
        "Window labels at exact disk centers",
        misses.is_empty(),
        format!("{} of 16 missing {misses:?}", misses.len()),
    );
    let belt = belt_packing(12)?;
    let misses = belt_label_misses(&belt);
    r.check(
        s,
        "Belt labels inside disks of that curvature",
        misses.is_empty(),
        format!("{} of 19 missing {misses:?}", misses.len()),
    );

    let w100 = window_packing(100)?;
    let bad = w100.quadruples().filter(|q| !q.satisfies_descartes()).count();
    r.check(
        s,
        "Descartes exact on every quadruple",
        bad == 0,
        format!("{} configurations, {bad} off", w100.configurations.len()),
    );
    let res = w100.max_tangency_residual();
    r.check(s, "tangency residual < 1e-9", res < 1e-9, format!("max residual {res:e}"));

    let g = build_tricycle_graph(&w100);
    let rep = greedy_vs_bfs(&g, &w100)?;
    r.check(
        s,
        "greedy depth equals BFS depth (Window)",
        rep.mismatches.is_empty(),
        format!("{} vertices, {} with complete balls, {} mismatches", rep.vertices, rep.checked, rep.mismatches.len()),
    );
    let bp = belt_packing(60)?;
    let g = build_tricycle_graph(&bp);
    let rep = greedy_vs_bfs(&g, &bp)?;
    r.check(
        s,
        "greedy depth equals BFS depth (Belt)",
        rep.mismatches.is_empty(),
        format!("{} vertices, {} with complete balls, {} mismatches", rep.vertices, rep.checked, rep.mismatches.len()),
    );

    let pts = random_rational_points(seed, 200, 20);
    let inv = packing_invariance(&pts, 1e-9)?;
    r.check(
        s,
        "canonical point invariant under T, S, F, H",
        inv.failures.is_empty(),
        format!("{} checks, {} failures", inv.checks, inv.failures.len()),
    );
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IntegralityReport {
    pub points: usize,
    pub classified_integral: usize,
    pub packings_integral: usize,
    pub failures: Vec<String>,
}

/// Random rational `z` off the dark circle: classify, then generate
/// `levels` rounds of the scaled packing and check that every curvature is
/// an integer.
pub fn integrality_sample(seed: u64, n: usize, levels: usize) -> Result<IntegralityReport> {
    let mut rr = rng(seed, 5);
    let mut rep = IntegralityReport::default();
    while rep.points < n {
        let (xn, xd) = rational_in(&mut rr, 20, 0.0, 3.0);
        let (yn, yd) = rational_in(&mut rr, 20, 0.0, 1.0);
        let z = ProjPoint::rational(xn, xd, yn, yd);
        let (x, y) = (z.x().expect("finite").clone(), z.y().expect("finite").clone());
        let b = &(&(&x * &x) + &(&y * &y)) - &y;
        if b.is_zero() {
            continue;
        }
        rep.points += 1;
        let qx = QuadraticCoord::Rational(x.as_rational().expect("exact").clone());
        let qy = QuadraticCoord::Rational(y.as_rational().expect("exact").clone());
        match integrality_classify(&qx, &qy)? {
            Integrality::IntegralAfterScaling { .. } => rep.classified_integral += 1,
            Integrality::NotIntegral { witness } => {
                rep.failures.push(format!("{z}: classified not integral ({witness})"));
                continue;
            }
        }
        let seed_cfg = DescartesSeed::from_z(&z)?;
        let q = seed_cfg.quadruple();
        let qi = scale_to_integral(&q)?;
        let i = (0..4).find(|&i| !q.0[i].is_zero()).expect("nonzero curvature");
        let lambda = &qi.0[i] / &q.0[i];
        let p = generate_packing(&seed_cfg.scaled(&lambda), &GenerateOptions::levels(levels))?;
        let all_int = p.disks.iter().all(|d| d.form.a.as_rational().map(|r| r.is_integer()).unwrap_or(false));
        if all_int {
            rep.packings_integral += 1;
        } else {
            rep.failures.push(format!("{z}: non-integral curvature within {levels} levels"));
        }
    }
    Ok(rep)
}

fn integrality_suite(r: &mut Report, seed: u64) -> Result<()> {
    let s = Suite::Integrality;
    let rep = integrality_sample(seed, 200, 3)?;
    r.check(
        s,
        "rational z give integral packings",
        rep.failures.is_empty() && rep.classified_integral == rep.points && rep.packings_integral == rep.points,
        format!(
            "{} points, {} classified integral, {} stay integral over 3 levels",
            rep.points, rep.classified_integral, rep.packings_integral
        ),
    );
    let two = num_rational::BigRational::from_integer(2.into());
    let half = num_rational::BigRational::new(1.into(), 2.into());
    let res = integrality_classify(&QuadraticCoord::Sqrt(two), &QuadraticCoord::Rational(half))?;
    let (ok, detail) = match &res {
        Integrality::NotIntegral { witness } => {
            (witness.radicand.to_string() == "2" && !witness.coeff.is_zero(), witness.to_string())
        }
        other => (false, format!("{other:?}")),
    };
    r.check(s, "x = √2, y = 1/2 is not integral", ok, detail);
    Ok(())
}
