use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use apollonian::depth::{depth_triple, depth_z, depth_z_algorithm, Depth, DepthResult, Triple, DEFAULT_MAX_STEPS};
use apollonian::numerics::{ProjPoint, Scalar};
use apollonian::packing::{
    build_tricycle_graph, generate_packing, graph_depth, greedy_vs_bfs, DescartesSeed, GenerateOptions, Packing,
    Quadruple,
};
use apollonian::render::{self, Mode, Window};
use apollonian::symmetry::{canonicalize_to_p, generator_coordinate, orbit_sample, Generator};
use apollonian::verify::{self, Suite};
use apollonian::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "apollo", version, about = "Apollonian depth, symmetry and packing tools")]
struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of a curvature triple or of a point z = x + iy.
    Depth(DepthArgs),
    /// Render the depth fractal to a binary PPM.
    RenderDepth(RenderArgs),
    /// Map z into the fundamental domain P.
    Canonicalize(PointArgs),
    /// Apply a word to z, or list the orbit of z up to a word length.
    Orbit(OrbitArgs),
    /// Generate a packing from a Descartes quadruple.
    Packing(PackingArgs),
    /// Emit the mirror tessellation as SVG.
    Tessellation(TessellationArgs),
    /// Shortest-path depth in the tricycle graph of a packing.
    GraphDepth(GraphArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DepthArgs {
    /// Curvature triple, e.g. `179 62 23` or `1 1/2 0.25`.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_negative_numbers = true, conflicts_with = "z", required_unless_present = "z")]
    triple: Option<Vec<String>>,
    /// Point z = x + iy.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    z: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    /// Print the chain of triples and the α/β word.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, num_args = 4, value_names = ["XMIN", "XMAX", "YMIN", "YMAX"], allow_negative_numbers = true, default_values_t = [0.0, 3.0, 0.0, 1.0])]
    window: Vec<f64>,
    #[arg(long, num_args = 2, value_names = ["W", "H"], default_values_t = [600, 200])]
    size: Vec<usize>,
    #[arg(long, value_enum, default_value_t = RenderMode::Spinor)]
    mode: RenderMode,
    /// Depths at or above this are drawn in the overflow color.
    #[arg(long, default_value_t = 64)]
    max_depth: u64,
    /// Worker threads; defaults to APOLLO_THREADS or the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderMode {
    Spinor,
    Web,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, required = true)]
    z: Vec<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true, required = true)]
    z: Vec<String>,
    /// Word applied right to left, e.g. `SFT` or `T^-1,S` (`t` is T^-1).
    #[arg(long, conflicts_with = "length")]
    word: Option<String>,
    /// List all images under words over {T, T^-1, S, F, H} up to this length.
    #[arg(long, default_value_t = 2)]
    length: usize,
}

#[derive(Args)]
struct SeedArgs {
    /// Descartes quadruple, e.g. `-1 2 2 3` or `0 0 1 1`.
    #[arg(long, num_args = 4, value_names = ["A", "B", "C", "D"], allow_negative_numbers = true, default_values = ["-1", "2", "2", "3"])]
    seed: Vec<String>,
    #[arg(long, default_value = "100")]
    max_curvature: String,
    /// Stop after this many reflection rounds instead.
    #[arg(long)]
    levels: Option<usize>,
    /// Keep circles centered in XMIN XMAX YMIN YMAX; defaults to a box
    /// around the seed when it contains lines.
    #[arg(long, num_args = 4, value_names = ["XMIN", "XMAX", "YMIN", "YMAX"], allow_negative_numbers = true)]
    bounds: Option<Vec<f64>>,
}

#[derive(Args)]
struct PackingArgs {
    #[command(flatten)]
    seed: SeedArgs,
    #[arg(long, value_enum, default_value_t = Export::Json)]
    export: Export,
    /// SVG curvature labels.
    #[arg(long)]
    labels: bool,
    /// SVG width in pixels.
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Export {
    Json,
    Csv,
    Svg,
}

#[derive(Args)]
struct TessellationArgs {
    /// Maximum word length (at most 8).
    #[arg(long, default_value_t = 3)]
    words: usize,
    #[arg(long, num_args = 4, value_names = ["XMIN", "XMAX", "YMIN", "YMAX"], allow_negative_numbers = true, default_values_t = [-2.0, 2.0, -0.5, 1.5])]
    window: Vec<f64>,
    #[arg(long, default_value_t = 800.0)]
    width: f64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    seed: SeedArgs,
    /// Disk indices of one tricycle; without it every vertex is compared
    /// with the greedy depth.
    #[arg(long, num_args = 3, value_names = ["I", "J", "K"])]
    vertex: Option<Vec<usize>>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = ["all", "groups", "depth", "spinor", "packing", "integrality"])]
    suite: String,
    /// Seed for the sampled suites.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Verification,
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Overflow(_) | Error::ClosureOverflow(_) => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Depth(a) => cmd_depth(a, cli.format),
        Command::RenderDepth(a) => cmd_render(a, cli.format),
        Command::Canonicalize(a) => cmd_canonicalize(a, cli.format),
        Command::Orbit(a) => cmd_orbit(a, cli.format),
        Command::Packing(a) => cmd_packing(a, cli.format),
        Command::Tessellation(a) => cmd_tessellation(a, cli.format),
        Command::GraphDepth(a) => cmd_graph(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn scalar(s: &str) -> Result<Scalar, Failure> {
    s.parse::<Scalar>().map_err(Failure::Usage)
}

fn point(v: &[String]) -> Result<ProjPoint, Failure> {
    Ok(ProjPoint::new(scalar(&v[0])?, scalar(&v[1])?))
}

fn scalar_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(q) if q.is_integer() => match i64::try_from(q.to_integer()) {
            Ok(n) => json!(n),
            Err(_) => json!(s.to_string()),
        },
        Some(_) => json!(s.to_string()),
        None => json!(s.to_f64()),
    }
}

fn point_json(p: &ProjPoint) -> Value {
    match (p.x(), p.y()) {
        (Some(x), Some(y)) => json!({"x": scalar_json(x), "y": scalar_json(y)}),
        _ => json!("inf"),
    }
}

fn triple_json(t: &Triple) -> Value {
    Value::Array(t.entries().iter().map(|v| scalar_json(v)).collect())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn depth_json(r: &DepthResult) -> Value {
    match r.depth {
        Depth::Finite(d) => json!(d),
        Depth::Overflow => json!("overflow"),
    }
}

/// The worked triple whose printed depth differs from the step count.
fn worked_example_warning(t: &Triple, r: &DepthResult) -> Option<String> {
    let mut v: Vec<Scalar> = t.to_array().to_vec();
    v.sort_by(|a, b| b.partial_cmp(a).expect("ordered"));
    let s = &v[2];
    if s.is_zero() || !t.is_exact() {
        return None;
    }
    let norm: Vec<Scalar> = v.iter().map(|x| &(x * &Scalar::int(23)) / s).collect();
    let target = [Scalar::int(179), Scalar::int(62), Scalar::int(23)];
    if norm != target {
        return None;
    }
    Some(format!(
        "WARNING: the reference worked example prints depth 3 for (179, 62, 23); counting every replacement, \
         including the one that produces a non-positive entry, gives {}",
        r.depth
    ))
}

fn cmd_depth(a: DepthArgs, fmt: Format) -> CmdResult {
    let (result, input, word) = if let Some(t) = &a.triple {
        let t = Triple::new(scalar(&t[0])?, scalar(&t[1])?, scalar(&t[2])?);
        let r = depth_triple(&t, a.max_steps)?;
        (r, t, None)
    } else {
        let z = point(a.z.as_ref().expect("clap requires --triple or --z"))?;
        let r = depth_z(&z, a.max_steps)?;
        let alg = depth_z_algorithm(&z, a.max_steps)?;
        let t = r.chain[0].clone();
        (r, t, Some(alg))
    };
    let warning = worked_example_warning(&input, &result);
    if let Some(w) = &warning {
        eprintln!("{w}");
    }
    match fmt {
        Format::Json => {
            let mut v = json!({"input": triple_json(&input), "depth": depth_json(&result)});
            if a.trace {
                v["chain"] = Value::Array(result.chain.iter().map(triple_json).collect());
            }
            if let Some(alg) = &word {
                v["plane_depth"] = depth_json(alg);
                v["word"] = json!(alg.word);
                v["word_string"] = json!(alg.word_string());
            }
            if let Some(w) = &warning {
                v["warning"] = json!(w);
            }
            print_json(&v);
        }
        Format::Text => {
            if a.trace {
                for (i, t) in result.chain.iter().enumerate() {
                    println!("step {i}: {t}");
                }
                if let Some(alg) = &word {
                    println!("word: {}", if alg.word.is_empty() { "(empty)".to_string() } else { alg.word_string() });
                }
            }
            match result.depth {
                Depth::Finite(d) => println!("depth {d}"),
                Depth::Overflow => println!("depth overflow after {} steps", a.max_steps),
            }
        }
    }
    result.value()?;
    Ok(())
}

fn window(v: &[f64]) -> Result<Window, Failure> {
    Ok(Window::new(v[0], v[1], v[2], v[3])?)
}

fn cmd_render(a: RenderArgs, fmt: Format) -> CmdResult {
    let w = window(&a.window)?;
    let mode = match a.mode {
        RenderMode::Spinor => Mode::Spinor,
        RenderMode::Web => Mode::Web,
    };
    let workers = a.workers.unwrap_or_else(render::default_workers);
    let r = render::render_depth(w, a.size[0], a.size[1], a.max_depth, mode, workers)?;
    let mut out = BufWriter::new(File::create(&a.output)?);
    r.write_ppm(&mut out)?;
    out.flush()?;
    if fmt == Format::Json {
        print_json(&json!({"output": a.output.display().to_string(), "width": r.width, "height": r.height}));
    } else {
        println!("wrote {}x{} raster to {}", r.width, r.height, a.output.display());
    }
    Ok(())
}

fn cmd_canonicalize(a: PointArgs, fmt: Format) -> CmdResult {
    let z = point(&a.z)?;
    let c = canonicalize_to_p(&z, a.max_steps)?;
    match fmt {
        Format::Json => print_json(&json!({
            "input": point_json(&z),
            "point": point_json(&c.point),
            "word": c.word.to_string(),
            "on_boundary": c.on_boundary,
        })),
        Format::Text => {
            println!("point {}", c.point);
            println!("word {}", c.word);
            if c.on_boundary {
                println!("on the boundary of P");
            }
        }
    }
    Ok(())
}

fn parse_word(s: &str) -> Result<Vec<Generator>, Failure> {
    let tokens: Vec<String> = if s.contains([',', ' ']) {
        s.split([',', ' ']).filter(|t| !t.is_empty()).map(str::to_string).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    };
    tokens.iter().map(|t| t.parse::<Generator>().map_err(Failure::from)).collect()
}

fn cmd_orbit(a: OrbitArgs, fmt: Format) -> CmdResult {
    let z = point(&a.z)?;
    if let Some(w) = &a.word {
        let word = parse_word(w)?;
        let img = word.iter().rev().fold(z.clone(), |p, &g| generator_coordinate(g, &p));
        let names: Vec<&str> = word.iter().map(|g| g.name()).collect();
        match fmt {
            Format::Json => print_json(&json!({"input": point_json(&z), "word": names, "image": point_json(&img)})),
            Format::Text => println!("{img}"),
        }
        return Ok(());
    }
    let pts = orbit_sample(&z, a.length)?;
    match fmt {
        Format::Json => print_json(&json!({
            "input": point_json(&z),
            "length": a.length,
            "points": pts.iter().map(point_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            for p in &pts {
                println!("{p}");
            }
        }
    }
    Ok(())
}

fn build_packing(s: &SeedArgs) -> Result<Packing, Failure> {
    let q: Vec<Scalar> = s.seed.iter().map(|v| scalar(v)).collect::<Result<_, _>>()?;
    let quad = Quadruple([q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone()]);
    let seed = DescartesSeed::from_curvatures(&quad)?;
    let mut opts = match s.levels {
        Some(n) => GenerateOptions::levels(n),
        None => GenerateOptions::to_curvature(scalar(&s.max_curvature)?),
    };
    let bounds = match &s.bounds {
        Some(b) => Some([b[0], b[1], b[2], b[3]]),
        None if seed.forms.iter().any(|f| f.is_line()) => Some(seed_box(&seed)),
        None => None,
    };
    if let Some(b) = bounds {
        opts = opts.with_bounds(b);
    }
    Ok(generate_packing(&seed, &opts)?)
}

/// Box around the seed's circles, padded by the largest radius.
fn seed_box(seed: &DescartesSeed) -> [f64; 4] {
    let mut b = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
    let mut pad: f64 = 0.0;
    for f in &seed.forms {
        if let (Some(c), Some(r)) = (f.center(), f.radius_f64()) {
            let (x, y) = c.to_f64();
            b = [b[0].min(x - r), b[1].max(x + r), b[2].min(y - r), b[3].max(y + r)];
            pad = pad.max(r);
        }
    }
    [b[0] - pad, b[1] + pad, b[2] - pad, b[3] + pad]
}

fn emit(content: &[u8], output: &Option<PathBuf>) -> CmdResult {
    match output {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            f.write_all(content)?;
            f.flush()?;
        }
        None => io::stdout().lock().write_all(content)?,
    }
    Ok(())
}

fn cmd_packing(a: PackingArgs, fmt: Format) -> CmdResult {
    let p = build_packing(&a.seed)?;
    let content: Vec<u8> = match a.export {
        Export::Json => {
            let mut v = serde_json::to_string_pretty(&p.to_json()).expect("serializable");
            v.push('\n');
            v.into_bytes()
        }
        Export::Csv => {
            let mut buf = Vec::new();
            p.write_csv(&mut buf)?;
            buf
        }
        Export::Svg => render::render_packing_svg(&p, None, a.width, a.labels).into_bytes(),
    };
    if a.output.is_none() && fmt == Format::Json && a.export != Export::Json {
        return Err(Failure::Usage("--format json writes JSON to standard output; use --output for CSV or SVG".into()));
    }
    emit(&content, &a.output)?;
    if let Some(path) = &a.output {
        let summary = json!({"output": path.display().to_string(), "disks": p.disks.len(), "configurations": p.configurations.len()});
        match fmt {
            Format::Json => print_json(&summary),
            Format::Text => println!("wrote {} disks to {}", p.disks.len(), path.display()),
        }
    }
    Ok(())
}

fn cmd_tessellation(a: TessellationArgs, fmt: Format) -> CmdResult {
    let w = window(&a.window)?;
    let svg = render::render_tessellation_svg(a.words, w, a.width)?;
    match (fmt, &a.output) {
        (Format::Json, _) => {
            let t = render::tessellation(a.words)?;
            if let Some(p) = &a.output {
                emit(svg.as_bytes(), &a.output)?;
                print_json(
                    &json!({"output": p.display().to_string(), "layers": t.layers.iter().map(Vec::len).collect::<Vec<_>>()}),
                );
            } else {
                print_json(&json!({"layers": t.layers.iter().map(Vec::len).collect::<Vec<_>>(), "svg": svg}));
            }
        }
        (Format::Text, _) => emit(svg.as_bytes(), &a.output)?,
    }
    Ok(())
}

fn cmd_graph(a: GraphArgs, fmt: Format) -> CmdResult {
    let p = build_packing(&a.seed)?;
    let g = build_tricycle_graph(&p);
    if let Some(v) = &a.vertex {
        let mut key = [v[0], v[1], v[2]];
        key.sort_unstable();
        let idx = g
            .vertex_of(key)
            .ok_or_else(|| Failure::Usage(format!("disks {key:?} do not form a tricycle of this packing")))?;
        let d = graph_depth(&g, &p, idx)?;
        let t = g.curvature_triple(&p, idx);
        let greedy = depth_triple(&t, DEFAULT_MAX_STEPS)?;
        let complete = g.ball_complete(idx, d);
        match fmt {
            Format::Json => print_json(&json!({
                "vertex": key,
                "curvatures": triple_json(&t),
                "graph_depth": d,
                "greedy_depth": depth_json(&greedy),
                "ball_complete": complete,
            })),
            Format::Text => {
                println!("tricycle {key:?} with curvatures {t}");
                println!("graph depth {d}");
                println!("greedy depth {}", greedy.depth);
                if !complete {
                    println!("note: the search ball reaches past the generated disks");
                }
            }
        }
        return Ok(());
    }
    let rep = greedy_vs_bfs(&g, &p)?;
    match fmt {
        Format::Json => print_json(&json!({
            "vertices": rep.vertices,
            "checked": rep.checked,
            "mismatches": rep.mismatches.iter().map(|(v, b, gr)| json!({"vertex": g.vertices[*v], "graph": b, "greedy": gr})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            println!(
                "{} vertices, {} with complete search balls, {} mismatches",
                rep.vertices,
                rep.checked,
                rep.mismatches.len()
            );
            for (v, b, gr) in &rep.mismatches {
                println!("  {:?}: graph {b}, greedy {gr}", g.vertices[*v]);
            }
        }
    }
    if rep.mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_verify(a: VerifyArgs, fmt: Format) -> CmdResult {
    let suites = Suite::parse_list(&a.suite)?;
    let report = verify::run(&suites, a.seed);
    match fmt {
        Format::Json => print_json(&report.to_json()),
        Format::Text => println!("{report}"),
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
