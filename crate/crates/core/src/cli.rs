//! Command-line front end: argument parsing, validation and the pipelines
//! behind each subcommand.
//!
//! Exit status is 0 on success, 1 when a library operation fails and 2 for
//! invalid configurations (bad flags, unreadable inputs, clashing paths).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::basis::BasisKind;
use crate::diagnostics::{
    chebyshev_product_trace, counting_measure, diameter_trace, green_trace, write_green_csv, AxisBins,
    HistogramSpec, Projection,
};
use crate::error::Error;
use crate::intertwine::{check_factorization_with, intertwine, DeterminantMethod};
use crate::leja::{
    discrete_leja_with, load_sequence, pseudo_leja_with, save_sequence, verify_pseudo_leja, with_empirical_growth,
    LejaOptions, LejaSequence, SeedRule,
};
use crate::meshes::{load_mesh, save_mesh, Format, Mesh};
use crate::monomials::dim_space;
use crate::point::Point;
use crate::sets::CompactSet;

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "PLEJA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "pleja", version, about = "Leja and pseudo-Leja sequences on compact sets")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for parallel scans; results do not depend on it.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the degree-d mesh of a built-in set.
    Mesh(MeshArgs),
    /// Generate a (pseudo-)Leja sequence.
    Leja(LejaArgs),
    /// Intertwine two sequences into a sequence on the product set.
    Intertwine(IntertwineArgs),
    /// Measure the empirical growth factors of a sequence.
    Verify(VerifyArgs),
    /// Transfinite diameter estimates per degree block.
    Diameter(DiameterArgs),
    /// Green function estimates at points outside the set.
    Green(GreenArgs),
    /// Histogram of the normalised counting measure.
    Measure(MeasureArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeedArg {
    /// Lowest mesh index.
    Lowest,
    /// Largest Euclidean norm.
    MaxNorm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Monomial,
    Scaled,
    Adapted,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    /// Set spec: interval:a,b | circle:cx,cy,r | square:a,b | product:S1×S2
    #[arg(long)]
    pub set: String,
    #[arg(long)]
    pub degree: usize,
    #[arg(long, default_value_t = 2.0)]
    pub oversample: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Output format; defaults to the extension of --out.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Args)]
pub struct LejaArgs {
    /// Built-in set; generates a pseudo-Leja sequence up to --dmax.
    #[arg(long, conflicts_with = "mesh")]
    pub set: Option<String>,
    /// Mesh file; extracts --n discrete Leja points from it.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    #[arg(long)]
    pub dmax: Option<usize>,
    /// Number of points for --mesh, or a single-mesh run on --set.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub oversample: f64,
    #[arg(long, value_enum, default_value_t = SeedArg::Lowest)]
    pub seed_rule: SeedArg,
    #[arg(long, value_enum, default_value_t = BasisArg::Adapted)]
    pub basis: BasisArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct IntertwineArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub out: PathBuf,
    /// Check the determinant factorisation at every step.
    #[arg(long)]
    pub verify: bool,
    /// Where to write the factorisation report (JSON).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Set whose validation mesh is used.
    #[arg(long, conflicts_with = "mesh")]
    pub set: Option<String>,
    /// Explicit validation mesh file.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    #[arg(long, default_value_t = 2.0)]
    pub oversample: f64,
    #[arg(long, default_value_t = 4.0)]
    pub validation_oversample: f64,
    /// Sequence with empirical growth factors, or a CSV of the factors.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiameterArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Adds the Chebyshev-product estimate on this set's validation mesh.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = 2.0)]
    pub oversample: f64,
    #[arg(long, default_value_t = 4.0)]
    pub validation_oversample: f64,
    /// CSV output; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub set: String,
    /// Evaluation point as re,im pairs per coordinate, e.g. "2,0" or "2,0;0,1".
    #[arg(long, required = true)]
    pub z: Vec<String>,
    /// Largest N; defaults to the sequence length.
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub oversample: f64,
    #[arg(long, default_value_t = 4.0)]
    pub validation_oversample: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub degree: usize,
    /// Binned quantity: angle[:i[:cx,cy]] | real[:i] | imag[:i]; coordinates count from 1.
    #[arg(long, default_value = "real")]
    pub axis: String,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    /// Bin range lo,hi (ignored for angles).
    #[arg(long)]
    pub range: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum RunError {
    Config(String),
    Module(Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 2,
            RunError::Module(_) => 1,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Module(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Module(e)
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

fn config<T>(r: crate::error::Result<T>) -> RunResult<T> {
    r.map_err(|e| RunError::Config(e.to_string()))
}

fn parse_set(spec: &str) -> RunResult<CompactSet> {
    config(spec.parse())
}

fn read_sequence(path: &Path) -> RunResult<LejaSequence> {
    if !path.exists() {
        return Err(RunError::Config(format!("input {} does not exist", path.display())));
    }
    config(load_sequence(path))
}

fn read_mesh(path: &Path) -> RunResult<Mesh> {
    if !path.exists() {
        return Err(RunError::Config(format!("input {} does not exist", path.display())));
    }
    config(load_mesh(path))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

/// Rejects outputs that coincide with an input or with each other.
fn check_paths(inputs: &[&Path], outputs: &[&Path]) -> RunResult<()> {
    for (i, o) in outputs.iter().enumerate() {
        if let Some(clash) = inputs.iter().chain(&outputs[..i]).find(|p| same_file(p, o)) {
            return Err(RunError::Config(format!(
                "path {} is used more than once",
                clash.display()
            )));
        }
    }
    Ok(())
}

fn check_oversample(x: f64, name: &str) -> RunResult<()> {
    if x >= 1.0 && x.is_finite() {
        Ok(())
    } else {
        Err(RunError::Config(format!("--{name} must be >= 1, got {x}")))
    }
}

fn create(path: &Path) -> RunResult<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(Error::from)?))
}

/// Writes CSV to the file or to standard output.
fn emit<F>(out: Option<&Path>, write: F) -> RunResult<()>
where
    F: FnOnce(&mut dyn Write) -> crate::error::Result<()>,
{
    match out {
        Some(p) => {
            let mut w = create(p)?;
            write(&mut w)?;
            w.flush().map_err(Error::from)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
        }
    }
    Ok(())
}

fn parse_point(text: &str) -> RunResult<Point> {
    let bad = || RunError::Config(format!("cannot parse point '{text}', expected re,im[;re,im…]"));
    let coords = text
        .split(';')
        .map(|c| {
            let v: Vec<f64> = c
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            match v.as_slice() {
                [re] => Ok(Complex64::new(*re, 0.0)),
                [re, im] => Ok(Complex64::new(*re, *im)),
                _ => Err(bad()),
            }
        })
        .collect::<RunResult<Vec<_>>>()?;
    Point::try_new(coords).map_err(|_| bad())
}

fn max_growth(seq: &LejaSequence) -> f64 {
    seq.growth.iter().cloned().fold(1.0, f64::max)
}

fn summary(seq: &LejaSequence, growth: f64) -> String {
    let diameter = diameter_trace(seq)
        .last()
        .map_or("n/a".to_string(), |e| format!("{:.6}", e.estimate));
    format!(
        "points={} diameter={} max_growth={:.6} growth={}",
        seq.len(),
        diameter,
        growth,
        seq.growth_kind
    )
}

fn run_mesh(a: &MeshArgs) -> RunResult<String> {
    check_oversample(a.oversample, "oversample")?;
    let set = parse_set(&a.set)?;
    let mesh = set.mesh(a.degree, a.oversample)?;
    let fmt = match a.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Csv) => Format::Csv,
        None => Format::from_path(&a.out),
    };
    if fmt != Format::from_path(&a.out) {
        let mut w = create(&a.out)?;
        match fmt {
            Format::Json => w
                .write_all(crate::meshes::mesh_to_json(&mesh)?.as_bytes())
                .map_err(Error::from)?,
            Format::Csv => crate::meshes::write_points_csv(mesh.points(), &mut w)?,
        }
        w.flush().map_err(Error::from)?;
    } else {
        save_mesh(&mesh, &a.out)?;
    }
    Ok(format!(
        "points={} degree={} growth_bound={}",
        mesh.len(),
        mesh.valid_degree(),
        mesh.growth_bound().map_or("none".into(), |m| format!("{m:.6}"))
    ))
}

fn run_leja(a: &LejaArgs) -> RunResult<String> {
    check_oversample(a.oversample, "oversample")?;
    let opts = LejaOptions {
        seed: match a.seed_rule {
            SeedArg::Lowest => SeedRule::LowestIndex,
            SeedArg::MaxNorm => SeedRule::MaxNorm,
        },
        basis: match a.basis {
            BasisArg::Monomial => BasisKind::Monomial,
            BasisArg::Scaled => BasisKind::ColumnScaled,
            BasisArg::Adapted => BasisKind::Adapted,
        },
    };
    let seq = match (&a.set, &a.mesh) {
        (Some(spec), None) => {
            let set = parse_set(spec)?;
            match (a.dmax, a.n) {
                (Some(d), None) => pseudo_leja_with(|k| set.mesh(k, a.oversample), d, opts)?,
                (d, Some(n)) => {
                    let deg = d.unwrap_or_else(|| {
                        (0..).find(|&k| dim_space(k, set.dimension()) >= n).expect("degree exists")
                    });
                    discrete_leja_with(&set.mesh(deg, a.oversample)?, n, opts)?
                }
                (None, None) => return Err(RunError::Config("--set needs --dmax or --n".into())),
            }
        }
        (None, Some(path)) => {
            check_paths(&[path], &[&a.out])?;
            let n = a.n.ok_or_else(|| RunError::Config("--mesh needs --n".into()))?;
            discrete_leja_with(&read_mesh(path)?, n, opts)?
        }
        _ => return Err(RunError::Config("exactly one of --set and --mesh is required".into())),
    };
    // lead the source with the set spec so later commands can rebuild meshes
    let seq = match &a.set {
        Some(spec) => LejaSequence {
            source: format!("{spec}; {}", seq.source),
            ..seq
        },
        None => seq,
    };
    save_sequence(&seq, &a.out)?;
    Ok(summary(&seq, max_growth(&seq)))
}

fn run_intertwine(a: &IntertwineArgs) -> RunResult<String> {
    let mut outs: Vec<&Path> = vec![&a.out];
    if let Some(r) = &a.report {
        outs.push(r);
    }
    check_paths(&[&a.left, &a.right], &outs)?;
    let left = read_sequence(&a.left)?;
    let right = read_sequence(&a.right)?;
    let seq = intertwine(&left, &right, a.n)?;
    save_sequence(&seq.combined, &a.out)?;
    let mut line = summary(&seq.combined, max_growth(&seq.combined));
    if a.verify || a.report.is_some() {
        let mut checks = Vec::new();
        for j in 1..seq.combined.len() {
            // evaluate at the next point of the sequence shifted off the grid
            let z = Point::new(
                seq.combined.points[j]
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c + Complex64::new(0.01 * (i + 1) as f64, 0.02))
                    .collect(),
            );
            checks.push(check_factorization_with(&seq, j, &z, DeterminantMethod::Pivoted)?);
        }
        let worst = checks.iter().map(|c| c.relative_residual()).fold(0.0, f64::max);
        if let Some(r) = &a.report {
            let report = serde_json::json!({
                "n_points": seq.combined.len(),
                "max_residual": worst,
                "checks": checks,
            });
            let mut w = create(r)?;
            serde_json::to_writer_pretty(&mut w, &report).map_err(Error::from)?;
            w.flush().map_err(Error::from)?;
        }
        line.push_str(&format!(" factorization_residual={worst:.3e}"));
    }
    Ok(line)
}

fn validation_for(set: Option<&String>, mesh: Option<&PathBuf>, seq: &LejaSequence, os: f64, vos: f64) -> RunResult<Mesh> {
    check_oversample(os, "oversample")?;
    check_oversample(vos, "validation-oversample")?;
    let d = seq.complete_degree().unwrap_or(0).max(kappa_degree(seq));
    match (set, mesh) {
        (Some(spec), None) => Ok(parse_set(spec)?.validation_mesh(d, os, vos)?),
        (None, Some(path)) => read_mesh(path),
        (None, None) => {
            // fall back to the set recorded in the sequence source
            let spec = seq.source.split(';').next().unwrap_or("");
            match spec.parse::<CompactSet>() {
                Ok(set) => Ok(set.validation_mesh(d, os, vos)?),
                Err(_) => Err(RunError::Config("a validation --set or --mesh is required".into())),
            }
        }
        _ => Err(RunError::Config("give either --set or --mesh, not both".into())),
    }
}

/// Degree of the last point of the sequence.
fn kappa_degree(seq: &LejaSequence) -> usize {
    crate::monomials::kappa(seq.len().saturating_sub(1), seq.dimension()).degree() as usize
}

fn run_verify(a: &VerifyArgs) -> RunResult<String> {
    let mut inputs: Vec<&Path> = vec![&a.input];
    if let Some(m) = &a.mesh {
        inputs.push(m);
    }
    if let Some(o) = &a.out {
        check_paths(&inputs, &[o])?;
    }
    let seq = read_sequence(&a.input)?;
    let mesh = validation_for(a.set.as_ref(), a.mesh.as_ref(), &seq, a.oversample, a.validation_oversample)?;
    let factors = verify_pseudo_leja(&seq, &mesh)?;
    let worst = factors.iter().cloned().fold(1.0, f64::max);
    let violations = factors
        .iter()
        .zip(&seq.growth)
        .filter(|(e, m)| **e > **m * (1.0 + 1e-9) + 1e-9)
        .count();
    if let Some(out) = &a.out {
        if Format::from_path(out) == Format::Csv {
            let rows: Vec<(usize, f64)> = factors.iter().enumerate().map(|(i, &e)| (i + 1, e)).collect();
            emit(Some(out), |w| {
                let mut cw = csv::Writer::from_writer(w);
                cw.write_record(["j", "empirical", "recorded"])?;
                for (j, e) in &rows {
                    cw.write_record([j.to_string(), e.to_string(), seq.growth[j - 1].to_string()])?;
                }
                cw.flush()?;
                Ok(())
            })?;
        } else {
            save_sequence(&with_empirical_growth(&seq, &factors), out)?;
        }
    }
    Ok(format!(
        "{} validation_points={} violations={violations}",
        summary(&seq, worst),
        mesh.len()
    ))
}

fn run_diameter(a: &DiameterArgs) -> RunResult<String> {
    if let Some(o) = &a.out {
        check_paths(&[&a.input], &[o])?;
    }
    let seq = read_sequence(&a.input)?;
    let trace = diameter_trace(&seq);
    let product = match &a.set {
        Some(spec) => {
            let mesh = validation_for(Some(spec), None, &seq, a.oversample, a.validation_oversample)?;
            Some(chebyshev_product_trace(&seq, &mesh)?)
        }
        None => None,
    };
    emit(a.out.as_deref(), |w| {
        let mut cw = csv::Writer::from_writer(w);
        let mut header = vec!["d", "h_d", "l_d", "log_vdm", "estimate"];
        if product.is_some() {
            header.push("chebyshev_product");
        }
        cw.write_record(&header)?;
        for e in &trace.per_degree {
            let mut rec = vec![
                e.d.to_string(),
                e.h_d.to_string(),
                e.l_d.to_string(),
                e.log_vdm.to_string(),
                e.estimate.to_string(),
            ];
            if let Some(p) = &product {
                rec.push(p[e.d].1.to_string());
            }
            cw.write_record(&rec)?;
        }
        cw.flush()?;
        Ok(())
    })?;
    Ok(summary(&seq, max_growth(&seq)))
}

fn run_green(a: &GreenArgs) -> RunResult<String> {
    if let Some(o) = &a.out {
        check_paths(&[&a.input], &[o])?;
    }
    let seq = read_sequence(&a.input)?;
    let set = parse_set(&a.set)?;
    let points: Vec<Point> = a.z.iter().map(|s| parse_point(s)).collect::<RunResult<_>>()?;
    let n_max = a.nmax.unwrap_or(seq.len());
    if n_max == 0 || n_max > seq.len() {
        return Err(RunError::Config(format!("--nmax must lie in 1..={}", seq.len())));
    }
    let d = crate::monomials::kappa(n_max, seq.dimension()).degree() as usize;
    check_oversample(a.oversample, "oversample")?;
    check_oversample(a.validation_oversample, "validation-oversample")?;
    let mesh = set.validation_mesh(d, a.oversample, a.validation_oversample)?;
    let mut finals = Vec::new();
    let mut all = Vec::new();
    for z in &points {
        let t = green_trace(&seq, &mesh, z, n_max)?;
        finals.push(t.last().expect("n_max >= 1").running_max);
        all.push(t);
    }
    emit(a.out.as_deref(), |w| {
        if all.len() == 1 {
            write_green_csv(&all[0], w)
        } else {
            let mut cw = csv::Writer::from_writer(w);
            cw.write_record(["z", "n", "value", "running_max"])?;
            for (zs, t) in a.z.iter().zip(&all) {
                for g in t {
                    cw.write_record([zs.clone(), g.n.to_string(), g.value.to_string(), g.running_max.to_string()])?;
                }
            }
            cw.flush()?;
            Ok(())
        }
    })?;
    let shown: Vec<String> = finals.iter().map(|g| format!("{g:.6}")).collect();
    Ok(format!("{} green={}", summary(&seq, max_growth(&seq)), shown.join(",")))
}

fn parse_axis(a: &MeasureArgs, p: usize) -> RunResult<AxisBins> {
    let mut parts = a.axis.splitn(3, ':');
    let kind = parts.next().unwrap_or("");
    let coord = match parts.next() {
        Some(c) => c
            .parse::<usize>()
            .ok()
            .filter(|&c| c >= 1 && c <= p)
            .ok_or_else(|| RunError::Config(format!("coordinate '{c}' out of range 1..={p}")))?
            - 1,
        None => 0,
    };
    let range = || -> RunResult<(f64, f64)> {
        let r = a.range.as_deref().unwrap_or("-1,1");
        let v: Vec<f64> = r
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| RunError::Config(format!("cannot parse --range '{r}'")))?;
        match v.as_slice() {
            [lo, hi] if lo < hi => Ok((*lo, *hi)),
            _ => Err(RunError::Config(format!("--range '{r}' must be lo,hi with lo < hi"))),
        }
    };
    if a.bins == 0 {
        return Err(RunError::Config("--bins must be >= 1".into()));
    }
    match kind {
        "angle" => {
            let center = match parts.next() {
                Some(c) => parse_point(c)?.coords()[0],
                None => Complex64::new(0.0, 0.0),
            };
            Ok(AxisBins::angle(coord, center, a.bins))
        }
        "real" => {
            let (lo, hi) = range()?;
            Ok(AxisBins::new(Projection::Real(coord), lo, hi, a.bins))
        }
        "imag" => {
            let (lo, hi) = range()?;
            Ok(AxisBins::new(Projection::Imag(coord), lo, hi, a.bins))
        }
        other => Err(RunError::Config(format!("unknown axis '{other}'"))),
    }
}

fn run_measure(a: &MeasureArgs) -> RunResult<String> {
    if let Some(o) = &a.out {
        check_paths(&[&a.input], &[o])?;
    }
    let seq = read_sequence(&a.input)?;
    let spec = HistogramSpec {
        axes: vec![parse_axis(a, seq.dimension())?],
    };
    let hist = counting_measure(&seq, a.degree, &spec)?;
    emit(a.out.as_deref(), |w| hist.write_csv(w))?;
    let (lo, hi) = hist
        .masses
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &m| (lo.min(m), hi.max(m)));
    Ok(format!(
        "{} bins={} min_mass={lo:.6} max_mass={hi:.6} outside={:.6}",
        summary(&seq, max_growth(&seq)),
        hist.masses.len(),
        hist.outside
    ))
}

/// Runs one command and returns the one-line summary.
pub fn run(cfg: &RunConfig) -> Result<String, RunError> {
    let body = || match &cfg.command {
        Command::Mesh(a) => run_mesh(a),
        Command::Leja(a) => run_leja(a),
        Command::Intertwine(a) => run_intertwine(a),
        Command::Verify(a) => run_verify(a),
        Command::Diameter(a) => run_diameter(a),
        Command::Green(a) => run_green(a),
        Command::Measure(a) => run_measure(a),
    };
    match cfg.threads {
        Some(0) => Err(RunError::Config("--threads must be >= 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| RunError::Config(e.to_string()))?
            .install(body),
        None => body(),
    }
}

/// Parses `args`, runs the command and reports on standard streams.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
