//! Raster and vector output.
//!
//! Rasters are rendered row-parallel and assembled in row order, so the
//! bytes never depend on the number of workers.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::depth::{depth_value, Depth, Triple};
use crate::error::{Error, Result};
use crate::numerics::{CircleForm, ComplexScalar, ProjPoint, Scalar};
use crate::packing::Packing;
use crate::spinor::Disk;
use crate::symmetry::{generator, generator_coordinate, Generator};

/// Axis-aligned window `[xmin, xmax] × [ymin, ymax]` in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmax > xmin && ymax > ymin;
        if !ok {
            return Err(Error::InvalidArgument(format!("degenerate window ({xmin}, {xmax}) × ({ymin}, {ymax})")));
        }
        Ok(Window { xmin, xmax, ymin, ymax })
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Depth of the tricycle encoded by `z = x + iy`.
    Spinor,
    /// Reduced depth `δ(1, x, y)`.
    Web,
}

pub const ZERO_COLOR: [u8; 3] = [0, 0, 0];
pub const OVERFLOW_COLOR: [u8; 3] = [255, 255, 255];
pub const PALETTE: [[u8; 3]; 12] = [
    [25, 25, 112],
    [0, 0, 205],
    [30, 144, 255],
    [0, 191, 255],
    [135, 206, 235],
    [70, 130, 180],
    [100, 149, 237],
    [65, 105, 225],
    [0, 0, 139],
    [72, 61, 139],
    [106, 90, 205],
    [123, 104, 238],
];

pub fn depth_color(depth: Depth, max_depth: u64) -> [u8; 3] {
    match depth {
        Depth::Finite(0) => ZERO_COLOR,
        Depth::Finite(d) if d < max_depth => PALETTE[((d - 1) % 12) as usize],
        _ => OVERFLOW_COLOR,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Raster {
    pub width: usize,
    pub height: usize,
    pub window: Window,
    /// Row-major RGB, top row first.
    pub pixels: Vec<u8>,
}

impl Raster {
    pub fn pixel(&self, i: usize, j: usize) -> [u8; 3] {
        let o = 3 * (j * self.width + i);
        [self.pixels[o], self.pixels[o + 1], self.pixels[o + 2]]
    }

    /// Binary PPM.
    pub fn write_ppm<W: Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)
    }

    pub fn to_ppm(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.pixels.len() + 32);
        self.write_ppm(&mut v).expect("writing to memory");
        v
    }
}

/// Sample point of pixel `(i, j)`: the pixel center, measured from the
/// window midpoint so that mirror pixels sample exactly mirrored points.
/// Returns `(x, y-offset)` with `y = ymid − offset`.
fn pixel_offsets(w: &Window, width: usize, height: usize, i: usize, j: usize) -> (f64, f64) {
    let sx = w.width() / width as f64;
    let sy = w.height() / height as f64;
    let xmid = 0.5 * (w.xmin + w.xmax);
    let ox = i as f64 + 0.5 - 0.5 * width as f64;
    let oy = j as f64 + 0.5 - 0.5 * height as f64;
    (xmid + ox * sx, oy * sy)
}

fn pixel_depth(w: &Window, width: usize, height: usize, i: usize, j: usize, max_depth: u64, mode: Mode) -> Depth {
    let (x, t) = pixel_offsets(w, width, height, i, j);
    let ymid = 0.5 * (w.ymin + w.ymax);
    let triple = match mode {
        Mode::Spinor => {
            // C = y, A = 1 − y and B = x² − AC, written so that y ↦ 1 − y
            // swaps A and C bit for bit
            let c = ymid - t;
            let a = (1.0 - ymid) + t;
            let b = x * x - a * c;
            Triple::floats(a, b, c)
        }
        Mode::Web => Triple::floats(1.0, x, ymid - t),
    };
    depth_value(&triple, max_depth).unwrap_or(Depth::Finite(0))
}

/// Worker count from `APOLLO_THREADS`, else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var("APOLLO_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

pub fn render_depth(
    window: Window,
    width: usize,
    height: usize,
    max_depth: u64,
    mode: Mode,
    workers: usize,
) -> Result<Raster> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidArgument("raster size must be positive".into()));
    }
    if max_depth < 1 {
        return Err(Error::InvalidArgument("max depth must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let rows: Vec<Vec<u8>> = pool.install(|| {
        (0..height)
            .into_par_iter()
            .map(|j| {
                let mut row = Vec::with_capacity(3 * width);
                for i in 0..width {
                    let d = pixel_depth(&window, width, height, i, j, max_depth, mode);
                    row.extend_from_slice(&depth_color(d, max_depth));
                }
                row
            })
            .collect()
    });
    Ok(Raster { width, height, window, pixels: rows.concat() })
}

/// Up to 9 significant digits, trailing zeros removed.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// Maps plane coordinates (y up) to SVG user units (y down).
struct Canvas {
    window: Window,
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(window: Window, width_px: f64) -> Self {
        let scale = width_px / window.width();
        Canvas { window, scale, width: width_px, height: window.height() * scale, body: String::new() }
    }

    fn x(&self, x: f64) -> f64 {
        (x - self.window.xmin) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        (self.window.ymax - y) * self.scale
    }

    fn stroke(&self) -> String {
        fmt_num(0.005 * self.height)
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, color: &str) {
        let line = format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"/>\n",
            fmt_num(self.x(cx)),
            fmt_num(self.y(cy)),
            fmt_num(r * self.scale),
            self.stroke()
        );
        self.body.push_str(&line);
    }

    /// The line `nx·x + ny·y = c`, clipped to the window.
    fn line(&mut self, nx: f64, ny: f64, c: f64, color: &str) {
        let Some(((x0, y0), (x1, y1))) = clip_line(&self.window, nx, ny, c) else { return };
        let line = format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"/>\n",
            fmt_num(self.x(x0)),
            fmt_num(self.y(y0)),
            fmt_num(self.x(x1)),
            fmt_num(self.y(y1)),
            self.stroke()
        );
        self.body.push_str(&line);
    }

    fn label(&mut self, cx: f64, cy: f64, r: f64, text: &str) {
        let size = fmt_num(0.6 * r * self.scale);
        let _ = writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" font-size=\"{size}\" text-anchor=\"middle\" dominant-baseline=\"central\">{text}</text>",
            fmt_num(self.x(cx)),
            fmt_num(self.y(cy))
        );
    }

    fn finish(self) -> String {
        let (w, h) = (fmt_num(self.width), fmt_num(self.height));
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{}</svg>\n",
            self.body
        )
    }
}

fn clip_line(w: &Window, nx: f64, ny: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-12 * (w.width() + w.height());
    if ny.abs() > 0.0 {
        for x in [w.xmin, w.xmax] {
            let y = (c - nx * x) / ny;
            if y >= w.ymin - eps && y <= w.ymax + eps {
                pts.push((x, y));
            }
        }
    }
    if nx.abs() > 0.0 {
        for y in [w.ymin, w.ymax] {
            let x = (c - ny * y) / nx;
            if x >= w.xmin - eps && x <= w.xmax + eps {
                pts.push((x, y));
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    let (first, last) = (*pts.first()?, *pts.last()?);
    if (first.0 - last.0).abs() + (first.1 - last.1).abs() <= eps {
        return None;
    }
    Some((first, last))
}

fn default_packing_window(disks: &[Disk]) -> Window {
    let mut b = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
    for d in disks {
        if let (Some(c), Some(r)) = (d.center(), d.radius_f64()) {
            let (x, y) = c.to_f64();
            b = [b[0].min(x - r), b[1].max(x + r), b[2].min(y - r), b[3].max(y + r)];
        }
    }
    if !b.iter().all(|v| v.is_finite()) {
        return Window { xmin: -1.0, xmax: 1.0, ymin: -1.0, ymax: 1.0 };
    }
    let pad = 0.02 * (b[1] - b[0]).max(b[3] - b[2]);
    Window { xmin: b[0] - pad, xmax: b[1] + pad, ymin: b[2] - pad, ymax: b[3] + pad }
}

/// One `<circle>` per disk and one `<line>` per half-plane, largest first
/// (lines before circles), ties by center.
pub fn render_disks_svg(disks: &[Disk], window: Option<Window>, width_px: f64, labels: bool) -> String {
    let window = window.unwrap_or_else(|| default_packing_window(disks));
    let mut canvas = Canvas::new(window, width_px);
    let mut order: Vec<&Disk> = disks.iter().collect();
    let key = |d: &Disk| -> (f64, f64, f64) {
        match d {
            Disk::Line { .. } => (f64::INFINITY, 0.0, 0.0),
            Disk::Circle { center, .. } => {
                let (x, y) = center.to_f64();
                (d.radius_f64().unwrap_or(0.0), x, y)
            }
        }
    };
    order.sort_by(|a, b| {
        let (ra, xa, ya) = key(a);
        let (rb, xb, yb) = key(b);
        rb.partial_cmp(&ra)
            .unwrap_or(Ordering::Equal)
            .then(xa.partial_cmp(&xb).unwrap_or(Ordering::Equal))
            .then(ya.partial_cmp(&yb).unwrap_or(Ordering::Equal))
    });
    for d in order {
        match d {
            Disk::Line { normal, offset } => {
                let (nx, ny) = normal.to_f64();
                canvas.line(nx, ny, offset.to_f64(), "black");
            }
            Disk::Circle { curvature, center } => {
                let (x, y) = center.to_f64();
                let r = d.radius_f64().expect("circle");
                canvas.circle(x, y, r, "black");
                if labels && curvature.to_f64() > 0.0 {
                    canvas.label(x, y, r, &curvature.to_string());
                }
            }
        }
    }
    canvas.finish()
}

pub fn render_packing_svg(p: &Packing, window: Option<Window>, width_px: f64, labels: bool) -> String {
    let disks: Vec<Disk> = p.disks.iter().map(|d| d.disk()).collect();
    render_disks_svg(&disks, window, width_px, labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Images of the mirrors `x = 0`, `y = 1/2`, `|z| = 1`, `|z − i| = 1`.
    Mirror,
    /// Images of `y = 0`, `y = 1` and `|z − i/2| = 1/2`.
    Belt,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TessCircle {
    pub form: CircleForm,
    pub family: Family,
}

/// Tessellation circles reachable by words of each length.
#[derive(Clone, Debug)]
pub struct Tessellation {
    /// `layers[k]` holds every circle reachable by a word of length ≤ k.
    pub layers: Vec<Vec<TessCircle>>,
}

pub const TESSELLATION_GENERATORS: [Generator; 5] =
    [Generator::T, Generator::TInv, Generator::S, Generator::F, Generator::H];

fn base_circles() -> Vec<TessCircle> {
    let half = Scalar::ratio(1, 2);
    let mirror = |f: CircleForm| TessCircle { form: f.canonical(), family: Family::Mirror };
    let belt = |f: CircleForm| TessCircle { form: f.canonical(), family: Family::Belt };
    vec![
        mirror(CircleForm::vertical_line(Scalar::zero())),
        mirror(CircleForm::horizontal_line(half.clone())),
        mirror(CircleForm::circle(ComplexScalar::zero(), Scalar::one())),
        mirror(CircleForm::circle(ComplexScalar::i(), Scalar::one())),
        belt(CircleForm::horizontal_line(Scalar::zero())),
        belt(CircleForm::horizontal_line(Scalar::one())),
        belt(CircleForm::circle(ComplexScalar::new(Scalar::zero(), half.clone()), half)),
    ]
}

/// Breadth-first images of the base circles under words over
/// `{T, T⁻¹, S, F, H}`, deduplicated by exact canonical form.
pub fn tessellation(max_word_length: usize) -> Result<Tessellation> {
    if max_word_length > 8 {
        return Err(Error::InvalidArgument("tessellation word length must be at most 8".into()));
    }
    let gens: Vec<_> = TESSELLATION_GENERATORS.iter().map(|&g| generator(g)).collect();
    let mut all = base_circles();
    let mut seen: HashMap<String, usize> = all.iter().enumerate().map(|(i, c)| (c.form.to_string(), i)).collect();
    let mut layers = vec![all.clone()];
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    for _ in 0..max_word_length {
        let images: Vec<Vec<TessCircle>> = frontier
            .par_iter()
            .map(|&i| {
                gens.iter()
                    .map(|g| {
                        let form = all[i].form.apply(g).expect("nonsingular generator").canonical();
                        TessCircle { form, family: all[i].family }
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for c in images.into_iter().flatten() {
            let key = c.form.to_string();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                e.insert(all.len());
                next.push(all.len());
                all.push(c);
            }
        }
        frontier = next;
        layers.push(all.clone());
    }
    Ok(Tessellation { layers })
}

fn sample_points(f: &CircleForm) -> [ProjPoint; 3] {
    let [a, br, bi, c] = f.to_f64();
    if a.abs() < 1e-15 {
        // 2(br·x + bi·y) + c = 0
        let n2 = br * br + bi * bi;
        let p0 = (-c * br / (2.0 * n2), -c * bi / (2.0 * n2));
        let d = (-bi, br);
        return [ProjPoint::from_f64(p0.0, p0.1), ProjPoint::from_f64(p0.0 + d.0, p0.1 + d.1), ProjPoint::Infinity];
    }
    let (cx, cy) = (-br / a, -bi / a);
    let r = ((br * br + bi * bi - a * c).sqrt()) / a.abs();
    let at = |t: f64| ProjPoint::from_f64(cx + r * t.cos(), cy + r * t.sin());
    [at(0.3), at(2.4), at(4.4)]
}

/// Image of a circle computed through the coordinate maps of three of its
/// points, independent of the matrix action.
pub fn image_by_points(f: &CircleForm, g: Generator) -> Result<CircleForm> {
    let pts = sample_points(f);
    let img = pts.map(|p| generator_coordinate(g, &p));
    CircleForm::through_points([&img[0], &img[1], &img[2]])
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClosureReport {
    pub checked: usize,
    pub missing: Vec<String>,
}

/// Checks that every generator image of a circle in layer `len − 1` lies in
/// layer `len`, computing images by point maps and matching within `tol`.
pub fn tessellation_closure(t: &Tessellation, len: usize, tol: f64) -> Result<ClosureReport> {
    if len == 0 || len >= t.layers.len() {
        return Err(Error::InvalidArgument(format!("closure needs layers {} and {len}", len.saturating_sub(1))));
    }
    let target: Vec<CircleForm> = t.layers[len].iter().map(|c| c.form.clone()).collect();
    let results: Vec<(usize, Vec<String>)> = t.layers[len - 1]
        .par_iter()
        .map(|c| {
            let mut missing = Vec::new();
            for g in TESSELLATION_GENERATORS {
                match image_by_points(&c.form, g) {
                    Ok(img) if target.iter().any(|f| f.same_locus(&img, tol)) => {}
                    _ => missing.push(format!("{g} applied to {}", c.form)),
                }
            }
            (TESSELLATION_GENERATORS.len(), missing)
        })
        .collect();
    let mut report = ClosureReport::default();
    for (n, m) in results {
        report.checked += n;
        report.missing.extend(m);
    }
    Ok(report)
}

fn circle_visible(f: &CircleForm, w: &Window) -> bool {
    match (f.center(), f.radius_f64()) {
        (Some(c), Some(r)) => {
            let (x, y) = c.to_f64();
            x + r >= w.xmin && x - r <= w.xmax && y + r >= w.ymin && y - r <= w.ymax
        }
        _ => true,
    }
}

/// The tessellation as SVG: mirror images in black, the belt family in red.
pub fn render_tessellation_svg(max_word_length: usize, window: Window, width_px: f64) -> Result<String> {
    let t = tessellation(max_word_length)?;
    let mut circles = t.layers.last().expect("layer 0").clone();
    circles.sort_by(|a, b| {
        a.family.cmp(&b.family).then_with(|| {
            let (x, y) = (a.form.to_f64(), b.form.to_f64());
            x.partial_cmp(&y).unwrap_or(Ordering::Equal)
        })
    });
    let mut canvas = Canvas::new(window, width_px);
    for c in circles.iter().filter(|c| circle_visible(&c.form, &window)) {
        let color = match c.family {
            Family::Mirror => "black",
            Family::Belt => "#c00000",
        };
        let [a, br, bi, cc] = c.form.to_f64();
        if c.form.is_line() {
            canvas.line(2.0 * br, 2.0 * bi, -cc, color);
        } else {
            let r = c.form.radius_f64().expect("circle");
            canvas.circle(-br / a, -bi / a, r, color);
        }
    }
    Ok(canvas.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.5), "1.5");
        assert_eq!(fmt_num(2.0 / 3.0), "0.666666667");
        assert_eq!(fmt_num(-123456.789012), "-123456.789");
        assert_eq!(fmt_num(100.0), "100");
        assert_eq!(fmt_num(-1e-13), "-0.0000000000001");
    }

    #[test]
    fn palette_rule() {
        assert_eq!(depth_color(Depth::Finite(0), 10), ZERO_COLOR);
        assert_eq!(depth_color(Depth::Finite(1), 10), PALETTE[0]);
        assert_eq!(depth_color(Depth::Finite(13), 20), PALETTE[0]);
        assert_eq!(depth_color(Depth::Finite(10), 10), OVERFLOW_COLOR);
        assert_eq!(depth_color(Depth::Overflow, 10), OVERFLOW_COLOR);
    }

    #[test]
    fn ppm_header() {
        let r = Raster { width: 1, height: 1, window: Window::new(0.0, 1.0, 0.0, 1.0).unwrap(), pixels: vec![0, 0, 0] };
        let bytes = r.to_ppm();
        assert_eq!(&bytes[..11], b"P6\n1 1\n255\n");
        assert_eq!(&bytes[11..], &[0, 0, 0]);
        let r = Raster { width: 640, height: 480, window: r.window, pixels: vec![0; 640 * 480 * 3] };
        assert!(r.to_ppm().starts_with(b"P6\n640 480\n255\n"));
    }

    #[test]
    fn spinor_pixels() {
        let w = Window::new(0.0, 3.0, 0.0, 1.0).unwrap();
        let r = render_depth(w, 300, 100, 50, Mode::Spinor, 2).unwrap();
        assert_eq!(r.pixel(30, 50), ZERO_COLOR);
        assert_eq!(r.pixel(100, 50), PALETTE[0]);
    }

    #[test]
    fn web_pixels() {
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let r = render_depth(w, 100, 100, 50, Mode::Web, 1).unwrap();
        assert_ne!(r.pixel(90, 9), ZERO_COLOR);
        assert_eq!(r.pixel(99, 0), PALETTE[0]);
    }

    #[test]
    fn raster_symmetry_small() {
        let w = Window::new(-2.0, 2.0, 0.0, 1.0).unwrap();
        let r = render_depth(w, 80, 30, 40, Mode::Spinor, 3).unwrap();
        for j in 0..30 {
            for i in 0..80 {
                assert_eq!(r.pixel(i, j), r.pixel(79 - i, j));
                assert_eq!(r.pixel(i, j), r.pixel(i, 29 - j));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Window::new(1.0, 1.0, 0.0, 1.0).is_err());
        let w = Window::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(render_depth(w, 0, 1, 5, Mode::Web, 1).is_err());
        assert!(render_depth(w, 1, 1, 0, Mode::Web, 1).is_err());
    }

    #[test]
    fn empty_svg() {
        let s = render_disks_svg(&[], None, 200.0, false);
        assert!(s.contains("<svg") && s.ends_with("</svg>\n"));
        assert!(!s.contains("<circle") && !s.contains("<line"));
    }

    #[test]
    fn line_clipping() {
        let w = Window::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        let ((x0, y0), (x1, y1)) = clip_line(&w, 0.0, 1.0, 0.5).unwrap();
        assert_eq!((x0, y0, x1, y1), (-1.0, 0.5, 1.0, 0.5));
        assert!(clip_line(&w, 1.0, 0.0, 3.0).is_none());
    }

    #[test]
    fn tessellation_base_layer() {
        let t = tessellation(0).unwrap();
        assert_eq!(t.layers[0].len(), 7);
        assert_eq!(t.layers[0].iter().filter(|c| c.family == Family::Mirror).count(), 4);
    }

    #[test]
    fn tessellation_contains_vertical_lines() {
        let t = tessellation(2).unwrap();
        for n in -2..=2 {
            let line = CircleForm::vertical_line(Scalar::ratio(n, 2)).canonical();
            assert!(t.layers[2].iter().any(|c| c.form == line), "x = {n}/2");
        }
    }

    #[test]
    fn closure_small() {
        let t = tessellation(2).unwrap();
        let r = tessellation_closure(&t, 2, 1e-9).unwrap();
        assert!(r.missing.is_empty(), "{:?}", r.missing);
        assert_eq!(r.checked, t.layers[1].len() * 5);
    }

    #[test]
    fn tessellation_svg_renders() {
        let w = Window::new(-2.0, 2.0, -1.0, 2.0).unwrap();
        let s = render_tessellation_svg(2, w, 400.0).unwrap();
        assert!(s.contains("#c00000"));
        assert!(s.contains("<line"));
    }
}
