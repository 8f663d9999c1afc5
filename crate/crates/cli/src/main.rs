//! `fraclab`: generators and analysis for the classical geometric
//! fractals. Every randomized command takes `--seed` (default 0) and is
//! reproducible bit for bit; every file output gets a manifest with its
//! sha256.

mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fraclab_core::cantor::{CantorSpec, IntervalSet};
use fraclab_core::error::Error as CoreError;
use fraclab_core::grid::Grid2D;
use fraclab_core::measures::{self, Histogram256};
use fraclab_core::multifractal::TwoScaleMeasure;
use fraclab_core::percolation::{self, CarpetLattice, ConnectivityRule};
use fraclab_core::sierpinski::{self, Axis, CarpetSpec};
use fraclab_core::staircase;
use fraclab_core::{estimators, rat, reproduce};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fraclab", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate pre-fractal sets, rasters and point clouds.
    #[command(subcommand)]
    Gen(GenCommand),
    /// The Cantor function (devil's staircase).
    #[command(subcommand, name = "cantor-fn")]
    CantorFn(CantorFnCommand),
    /// Multifractal analysis of two-scale measures.
    #[command(subcommand)]
    Mfa(MfaCommand),
    /// Empirical dimension estimators.
    #[command(subcommand)]
    Dim(DimCommand),
    /// Lacunarity and order measures.
    #[command(subcommand)]
    Measure(MeasureCommand),
    /// Percolation renormalization and Monte Carlo.
    #[command(subcommand)]
    Perc(PercCommand),
    /// Run the full reproduction checklist.
    Reproduce {
        /// Only criteria whose number or name matches.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// 1D Cantor-type sets as exact interval CSV.
    Cantor {
        /// triadic | middle:<b> | digits:<b>:<kept digits> | fat
        #[arg(long)]
        variant: String,
        /// Generation count.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sierpinski triangle by subdivision, IFS rendering or chaos game.
    Triangle {
        #[arg(long, value_enum)]
        method: TriangleMethod,
        /// Generation (subdivide/ifs) or membership depth (chaos).
        #[arg(long, default_value_t = 6)]
        gen: usize,
        /// Raster side for PGM output (power of two).
        #[arg(long)]
        resolution: Option<usize>,
        /// Chaos game: points to emit.
        #[arg(long, default_value_t = 100_000)]
        points: usize,
        /// Chaos game: points to discard first.
        #[arg(long, default_value_t = 20)]
        transient: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FileFormat::Pgm)]
        format: FileFormat,
        #[arg(long)]
        out: PathBuf,
    },
    /// Carpet rasters (standard or custom generator) as PGM.
    Carpet {
        #[arg(long, default_value_t = 3)]
        base: u32,
        #[arg(long)]
        gen: usize,
        /// Kept generator cells "r,c;r,c;..." (default: all but center).
        #[arg(long)]
        kept: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Menger sponge slices as PGM.
    Sponge {
        #[arg(long)]
        gen: usize,
        /// Slice "axis:index", e.g. z:0.
        #[arg(long)]
        slice: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TriangleMethod {
    Subdivide,
    Ifs,
    Chaos,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
    Pgm,
}

#[derive(Subcommand)]
enum CantorFnCommand {
    /// Evaluate M(x) by the digit algorithm.
    Eval {
        /// Rational argument, e.g. 1/4 or 0.3.
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Generation-n staircase polyline as CSV.
    Staircase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum MfaCommand {
    /// tau, D_q, alpha, f over a q grid for a two-scale measure.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    #[arg(long)]
    l1: String,
    #[arg(long)]
    l2: String,
    #[arg(long)]
    p1: String,
    #[arg(long)]
    p2: String,
    #[arg(long, default_value = "-10", allow_hyphen_values = true)]
    q_min: String,
    #[arg(long, default_value = "10", allow_hyphen_values = true)]
    q_max: String,
    #[arg(long, default_value = "0.5")]
    q_step: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DimCommand {
    /// Box-counting (capacity) dimension.
    Box(DimArgs),
    /// Information dimension from box probabilities.
    Info(DimArgs),
    /// Correlation dimension from the pair integral.
    Corr(DimArgs),
    /// Empirical Renyi spectrum.
    Renyi(DimArgs),
}

#[derive(Args)]
struct DimArgs {
    /// Input: .pgm raster or .csv points (x,y rows).
    #[arg(long = "in")]
    input: PathBuf,
    /// Scale exponents "k1..k2": box sides base^-k (grids) or
    /// 2^-k (points).
    #[arg(long, default_value = "1..6")]
    scales: String,
    /// Grid subdivision base when reading a PGM (inferred when the
    /// side is a pure power of 2 or 3).
    #[arg(long)]
    base: Option<u32>,
    /// Moment orders for the Renyi spectrum.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum MeasureCommand {
    /// Largest-gap lacunarity of an interval CSV.
    Lacuna1d {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Hole lacunarity of a PGM raster.
    Lacuna2d {
        #[arg(long = "in")]
        input: PathBuf,
        /// Also report the gliding-box variance exponent over these
        /// window sizes, e.g. "3,9,27".
        #[arg(long, value_delimiter = ',')]
        windows: Vec<usize>,
    },
    /// Kullback-Leibler order functional between two histograms
    /// (256 rows of "bin,count").
    Kl {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Subcommand)]
enum PercCommand {
    /// Renormalization polynomial, fixed point and exponents.
    Rg {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo spanning fraction at fixed occupation probability.
    Mc {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        gen: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bisection threshold estimate.
    Threshold {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        gen: usize,
        #[arg(long, default_value_t = 400)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// 12 significant digits.
fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-9..15).contains(&mag) {
        return format!("{x:.11e}");
    }
    let decimals = (11 - mag).clamp(0, 20) as usize;
    format!("{x:.decimals$}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Gen(cmd) => gen(cmd)?,
        Command::CantorFn(cmd) => cantor_fn(cmd)?,
        Command::Mfa(MfaCommand::Spectrum(args)) => mfa_spectrum(args)?,
        Command::Dim(cmd) => dim(cmd)?,
        Command::Measure(cmd) => measure(cmd)?,
        Command::Perc(cmd) => perc(cmd)?,
        Command::Reproduce { filter } => return Ok(reproduce_cmd(filter.as_deref())),
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_cantor_variant(text: &str) -> Result<CantorSpec, CoreError> {
    if text == "triadic" {
        return Ok(CantorSpec::triadic());
    }
    if text == "fat" {
        return Ok(CantorSpec::fat());
    }
    if let Some(rest) = text.strip_prefix("middle:") {
        let b: u32 = rest
            .parse()
            .map_err(|_| CoreError::Parse(format!("bad base in {text:?}")))?;
        return CantorSpec::middle_remove(b);
    }
    if let Some(rest) = text.strip_prefix("digits:") {
        let (b, digits) = rest
            .split_once(':')
            .ok_or_else(|| CoreError::Parse(format!("expected digits:<b>:<digits>: {text:?}")))?;
        let base: u32 = b
            .parse()
            .map_err(|_| CoreError::Parse(format!("bad base in {text:?}")))?;
        let keep: Vec<u32> = digits
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                c.to_digit(base.min(10))
                    .ok_or_else(|| CoreError::Parse(format!("bad digit {c:?} for base {base}")))
            })
            .collect::<Result<_, _>>()?;
        return CantorSpec::keep_digits(base, keep);
    }
    Err(CoreError::Parse(format!(
        "unknown variant {text:?} (triadic | middle:<b> | digits:<b>:<digits> | fat)"
    )))
}

fn parse_scales(text: &str) -> Result<Vec<u32>, CoreError> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| CoreError::Parse(format!("expected k1..k2, got {text:?}")))?;
    let k1: u32 = a
        .trim()
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad scale {a:?}")))?;
    let k2: u32 = b
        .trim()
        .parse()
        .map_err(|_| CoreError::Parse(format!("bad scale {b:?}")))?;
    if k2 < k1 {
        return Err(CoreError::Parse("scale range must increase".into()));
    }
    Ok((k1..=k2).collect())
}

fn gen(cmd: GenCommand) -> Result<(), Box<dyn std::error::Error>> {
    match cmd {
        GenCommand::Cantor { variant, n, out } => {
            let spec = parse_cantor_variant(&variant)?;
            let set = spec.generate(n)?;
            manifest::write_with_manifest(&out, set.to_csv().as_bytes(), None)?;
            println!(
                "wrote {} intervals, total length {}",
                set.len(),
                fmt12(rat::to_f64(&set.total_length()))
            );
        }
        GenCommand::Triangle {
            method,
            gen,
            resolution,
            points,
            transient,
            seed,
            format,
            out,
        } => match method {
            TriangleMethod::Subdivide => {
                let grid = sierpinski::triangle_raster(gen)?;
                manifest::write_with_manifest(&out, &grid.to_pgm(), None)?;
                println!(
                    "generation {gen}: {} occupied cells at side {}",
                    grid.count_occupied(),
                    grid.side()
                );
            }
            TriangleMethod::Ifs => {
                let res = resolution.unwrap_or(1 << gen);
                let grid = sierpinski::ifs_render(&sierpinski::sierpinski_ifs_affine(), gen, res)?;
                manifest::write_with_manifest(&out, &grid.to_pgm(), None)?;
                println!(
                    "depth {gen} at resolution {res}: {} occupied cells",
                    grid.count_occupied()
                );
            }
            TriangleMethod::Chaos => {
                let pts = sierpinski::chaos_game(
                    &sierpinski::TRIANGLE_VERTICES,
                    sierpinski::TRIANGLE_VERTICES[0],
                    points,
                    transient,
                    seed,
                );
                match format {
                    FileFormat::Csv => {
                        let mut csv = String::from("x,y\n");
                        for (x, y) in &pts {
                            writeln!(csv, "{x},{y}").unwrap();
                        }
                        manifest::write_with_manifest(&out, csv.as_bytes(), Some(seed))?;
                    }
                    FileFormat::Pgm => {
                        let res = resolution.unwrap_or(512);
                        let mut grid = Grid2D::new(res, 2)?;
                        for (x, y) in &pts {
                            let c = ((x * res as f64) as usize).min(res - 1);
                            let r = ((y * res as f64) as usize).min(res - 1);
                            grid.set(res - 1 - r, c, true);
                        }
                        manifest::write_with_manifest(&out, &grid.to_pgm(), Some(seed))?;
                    }
                    FileFormat::Json => {
                        return Err("chaos output supports csv or pgm".into());
                    }
                }
                println!("emitted {} chaos-game points (seed {seed})", pts.len());
            }
        },
        GenCommand::Carpet {
            base,
            gen,
            kept,
            out,
        } => {
            let spec = match kept {
                None if base == 3 => CarpetSpec::standard(),
                None => {
                    return Err("custom base needs --kept".into());
                }
                Some(text) => {
                    let cells: Vec<(u32, u32)> = text
                        .split(';')
                        .map(|pair| {
                            let (r, c) = pair
                                .split_once(',')
                                .ok_or_else(|| CoreError::Parse(format!("bad cell {pair:?}")))?;
                            Ok::<_, CoreError>((
                                r.trim().parse().map_err(|_| {
                                    CoreError::Parse(format!("bad row {r:?}"))
                                })?,
                                c.trim().parse().map_err(|_| {
                                    CoreError::Parse(format!("bad col {c:?}"))
                                })?,
                            ))
                        })
                        .collect::<Result<_, _>>()?;
                    CarpetSpec::new(base, cells)?
                }
            };
            let grid = spec.generate(gen)?;
            manifest::write_with_manifest(&out, &grid.to_pgm(), None)?;
            println!(
                "carpet base {base} generation {gen}: {} occupied cells, dimension {}",
                grid.count_occupied(),
                fmt12(spec.dimension())
            );
        }
        GenCommand::Sponge { gen, slice, out } => {
            let (axis, index) = slice
                .split_once(':')
                .ok_or_else(|| CoreError::Parse(format!("expected axis:index, got {slice:?}")))?;
            let axis: Axis = axis.parse()?;
            let index: usize = index
                .parse()
                .map_err(|_| CoreError::Parse(format!("bad slice index {index:?}")))?;
            let sponge = sierpinski::sponge_generate(gen)?;
            let grid = sierpinski::face_slice(&sponge, axis, index)?;
            manifest::write_with_manifest(&out, &grid.to_pgm(), None)?;
            println!(
                "sponge generation {gen}: {} voxels; slice {slice} has {} cells",
                sponge.count_occupied(),
                grid.count_occupied()
            );
        }
    }
    Ok(())
}

fn cantor_fn(cmd: CantorFnCommand) -> Result<(), Box<dyn std::error::Error>> {
    match cmd {
        CantorFnCommand::Eval { x, depth } => {
            let x = rat::parse(&x)?;
            let v = staircase::evaluate(&x, depth)?;
            println!(
                "M({x}) = {} = {}{}",
                v.value,
                fmt12(rat::to_f64(&v.value)),
                if v.exact {
                    String::new()
                } else {
                    format!(
                        " (truncated at depth {depth}; within {})",
                        fmt12(rat::to_f64(&v.error_bound()))
                    )
                }
            );
        }
        CantorFnCommand::Staircase { n, out } => {
            let s = staircase::staircase_polyline(n)?;
            let mut csv = String::from("x_num,x_den,y_num,y_den\n");
            for (x, y) in &s.points {
                writeln!(
                    csv,
                    "{},{},{},{}",
                    x.numer(),
                    x.denom(),
                    y.numer(),
                    y.denom()
                )
                .unwrap();
            }
            manifest::write_with_manifest(&out, csv.as_bytes(), None)?;
            println!(
                "generation {n}: {} vertices, {} plateaus, length {}",
                s.points.len(),
                s.plateau_count,
                fmt12(s.length)
            );
        }
    }
    Ok(())
}

fn mfa_spectrum(args: SpectrumArgs) -> Result<(), Box<dyn std::error::Error>> {
    let f = |s: &str| -> Result<f64, CoreError> { Ok(rat::to_f64(&rat::parse(s)?)) };
    let m = TwoScaleMeasure::new(f(&args.l1)?, f(&args.l2)?, f(&args.p1)?, f(&args.p2)?)?;
    let points = m.spectrum(f(&args.q_min)?, f(&args.q_max)?, f(&args.q_step)?)?;
    let mut csv = String::from("q,tau,Dq,alpha,f\n");
    for p in &points {
        writeln!(
            csv,
            "{},{},{},{},{}",
            fmt12(p.q),
            fmt12(p.tau),
            fmt12(p.dq),
            fmt12(p.alpha),
            fmt12(p.f)
        )
        .unwrap();
    }
    match &args.out {
        Some(path) => {
            manifest::write_with_manifest(path, csv.as_bytes(), None)?;
            println!(
                "wrote {} spectrum rows; D0 = {}, alpha range [{}, {}]",
                points.len(),
                fmt12(m.support_dimension()),
                fmt12(m.alpha_min()),
                fmt12(m.alpha_max()),
            );
        }
        None => print!("{csv}"),
    }
    Ok(())
}

enum DimInput {
    Grid(Grid2D),
    Points(Vec<(f64, f64)>),
}

fn load_dim_input(path: &Path, base: Option<u32>) -> Result<DimInput, Box<dyn std::error::Error>> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if ext.eq_ignore_ascii_case("pgm") {
        let data = std::fs::read(path)?;
        let mut grid = Grid2D::from_pgm(&data)?;
        let side = grid.side();
        let inferred = base.or_else(|| {
            [3u32, 2].into_iter().find(|&b| {
                let mut s = side;
                while s % b as usize == 0 {
                    s /= b as usize;
                }
                s == 1
            })
        });
        match inferred {
            Some(b) => grid = regrid(grid, b),
            None => return Err("cannot infer grid base; pass --base".into()),
        }
        Ok(DimInput::Grid(grid))
    } else {
        let text = std::fs::read_to_string(path)?;
        let mut pts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line.starts_with(|c: char| c.is_alphabetic())) {
                continue;
            }
            let mut it = line.split(',');
            let x: f64 = it
                .next()
                .ok_or_else(|| CoreError::Parse(format!("row {i}: missing x")))?
                .trim()
                .parse()
                .map_err(|_| CoreError::Parse(format!("row {i}: bad x")))?;
            let y: f64 = match it.next() {
                Some(field) => field
                    .trim()
                    .parse()
                    .map_err(|_| CoreError::Parse(format!("row {i}: bad y")))?,
                None => 0.0,
            };
            pts.push((x, y));
        }
        Ok(DimInput::Points(pts))
    }
}

fn regrid(grid: Grid2D, base: u32) -> Grid2D {
    let mut out = Grid2D::new(grid.side(), base).expect("same side");
    for r in 0..grid.side() {
        for c in 0..grid.side() {
            if grid.get(r, c) {
                out.set(r, c, true);
            }
        }
    }
    out
}

fn print_fit(kind: &str, fit: &estimators::FitResult) {
    println!(
        "{kind}: slope {} (r2 {}, box sides {} down to {})",
        fmt12(fit.slope),
        fmt12(fit.r2),
        fmt12(fit.scale_range.0),
        fmt12(fit.scale_range.1)
    );
    if fit.r2 < 0.99 {
        println!("note: r2 below 0.99; the scaling window is suspect");
    }
}

fn dim(cmd: DimCommand) -> Result<(), Box<dyn std::error::Error>> {
    let (args, kind) = match &cmd {
        DimCommand::Box(a) => (a, "box"),
        DimCommand::Info(a) => (a, "info"),
        DimCommand::Corr(a) => (a, "corr"),
        DimCommand::Renyi(a) => (a, "renyi"),
    };
    let ks = parse_scales(&args.scales)?;
    let input = load_dim_input(&args.input, args.base)?;
    let series = match &input {
        DimInput::Grid(grid) => estimators::box_count_grid(grid, &ks)?,
        DimInput::Points(pts) => {
            let ms: Vec<usize> = ks.iter().map(|&k| 1usize << k).collect();
            estimators::box_count_points(pts, &ms)?
        }
    };
    match kind {
        "box" => print_fit("capacity", &estimators::fit_dimension(&series)?),
        "info" => print_fit("information", &estimators::information_dimension(&series)?),
        "corr" => {
            let DimInput::Points(pts) = &input else {
                return Err("correlation dimension needs a point CSV".into());
            };
            let deltas: Vec<f64> = ks.iter().map(|&k| 0.5f64.powi(k as i32)).collect();
            print_fit("correlation", &estimators::correlation_dimension(pts, &deltas)?);
        }
        "renyi" => {
            let qs = if args.q.is_empty() {
                vec![0.0, 1.0, 2.0]
            } else {
                args.q.clone()
            };
            let spectrum = estimators::renyi_spectrum(&series, &qs)?;
            let mut csv = String::from("q,Dq,r2\n");
            for p in &spectrum {
                writeln!(csv, "{},{},{}", fmt12(p.q), fmt12(p.dq), fmt12(p.r2)).unwrap();
            }
            match &args.out {
                Some(path) => {
                    manifest::write_with_manifest(path, csv.as_bytes(), None)?;
                    println!("wrote {} spectrum rows", spectrum.len());
                }
                None => print!("{csv}"),
            }
        }
        _ => unreachable!(),
    }
    Ok(())
}

fn measure(cmd: MeasureCommand) -> Result<(), Box<dyn std::error::Error>> {
    match cmd {
        MeasureCommand::Lacuna1d { input } => {
            let set = IntervalSet::from_csv(&std::fs::read_to_string(input)?)?;
            let gap = measures::gap_lacunarity_1d(&set)?;
            println!("largest-gap lacunarity = {} = {}", gap, fmt12(rat::to_f64(&gap)));
        }
        MeasureCommand::Lacuna2d { input, windows } => {
            let grid = Grid2D::from_pgm(&std::fs::read(input)?)?;
            let hole = measures::hole_lacunarity_2d(&grid)?;
            println!("hole lacunarity sqrt(S)/p = {}", fmt12(hole));
            if !windows.is_empty() {
                let fit = measures::variance_lacunarity_exponent(&grid, &windows)?;
                println!(
                    "gliding-box variance exponent = {} (r2 {})",
                    fmt12(fit.slope),
                    fmt12(fit.r2)
                );
            }
        }
        MeasureCommand::Kl { a, b } => {
            let ha = read_histogram(&a)?;
            let hb = read_histogram(&b)?;
            println!("KL(a || b) = {}", fmt12(measures::kl_order(&ha, &hb)));
            println!("KL(b || a) = {}", fmt12(measures::kl_order(&hb, &ha)));
        }
    }
    Ok(())
}

fn read_histogram(path: &Path) -> Result<Histogram256, Box<dyn std::error::Error>> {
    let text = std::fs::read_to_string(path)?;
    let mut counts = vec![0.0f64; 256];
    let mut seen = 0;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line.starts_with(|c: char| c.is_alphabetic())) {
            continue;
        }
        let (bin, count) = line
            .split_once(',')
            .ok_or_else(|| CoreError::Parse(format!("row {i}: expected bin,count")))?;
        let bin: usize = bin
            .trim()
            .parse()
            .map_err(|_| CoreError::Parse(format!("row {i}: bad bin")))?;
        if bin > 255 {
            return Err(CoreError::Parse(format!("row {i}: bin {bin} > 255")).into());
        }
        counts[bin] = count
            .trim()
            .parse()
            .map_err(|_| CoreError::Parse(format!("row {i}: bad count")))?;
        seen += 1;
    }
    if seen == 0 {
        return Err(CoreError::EmptyInput("histogram CSV has no rows".into()).into());
    }
    Ok(Histogram256::from_counts(&counts)?)
}

fn perc(cmd: PercCommand) -> Result<(), Box<dyn std::error::Error>> {
    match cmd {
        PercCommand::Rg { rule, out } => {
            let rule: ConnectivityRule = rule.parse()?;
            let report = percolation::rg_report(rule)?;
            let json = serde_json::to_string_pretty(&report)?;
            match out {
                Some(path) => {
                    manifest::write_with_manifest(&path, json.as_bytes(), None)?;
                    println!(
                        "p_c = {}, nu = {}, beta = {}",
                        fmt12(report.p_c),
                        fmt12(report.nu),
                        fmt12(report.beta)
                    );
                }
                None => println!("{json}"),
            }
        }
        PercCommand::Mc {
            rule,
            gen,
            p,
            trials,
            seed,
        } => {
            let lattice = CarpetLattice::new(gen, rule.parse()?)?;
            let est = percolation::mc_spanning(&lattice, p, trials, seed)?;
            println!(
                "spanning fraction {} +- {} ({} trials at p = {}, generation {gen}, seed {seed})",
                fmt12(est.fraction),
                fmt12(est.std_error),
                est.trials,
                fmt12(p)
            );
        }
        PercCommand::Threshold {
            rule,
            gen,
            trials,
            seed,
        } => {
            let lattice = CarpetLattice::new(gen, rule.parse()?)?;
            let est = percolation::mc_threshold(&lattice, trials, seed)?;
            println!(
                "threshold estimate {} +- {} ({} bisection steps, final fraction {})",
                fmt12(est.p),
                fmt12(est.uncertainty),
                est.iterations,
                fmt12(est.final_fraction)
            );
        }
    }
    Ok(())
}

fn reproduce_cmd(filter: Option<&str>) -> ExitCode {
    let results = reproduce::run_all(filter);
    if results.is_empty() {
        eprintln!("no criterion matches the filter");
        return ExitCode::from(2);
    }
    let mut all_passed = true;
    for r in &results {
        println!(
            "criterion {:>2} [{}] {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name
        );
        for line in &r.details {
            println!("    {line}");
        }
        all_passed &= r.passed;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
