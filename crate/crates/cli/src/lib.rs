//! The `rspec` command-line workbench.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns
//! the process exit code: 0 on success, 1 for runtime and domain errors,
//! 2 for usage errors.

pub mod args;
pub mod csvfmt;
pub mod manifest;
pub mod reproduce;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use clap::Parser;
use rspec_core::correlation::join_set;
use rspec_core::duality::DualitySeries;
use rspec_core::primes::format_factorization;
use rspec_core::{
    bi_distribution, correlation_matrix, correlation_row, detect_resonances, euclid_generate, find_peaks,
    first_primes, histogram, histogram_entropy, poset_predecessors, pratt_tree, primes_to_zeros_series,
    riemann_vonmangoldt_estimate, sector_sample, zeros_to_primes_series, CorrelationConfig, Histogram,
    IntMatrix2, ResonanceReport, ZeroTable,
};

use crate::args::{Cli, Command, CorrCmd, DualityCmd, GlobalArgs, PeakArgs, PosetCmd, SectorCmd, ZerosCmd};
use crate::csvfmt::{real, Csv};
use crate::manifest::{sidecar_path, RunManifest};

pub const ZEROS_ENV: &str = "RSPEC_ZEROS_FILE";

/// Runs the CLI on `argv` (program name first).
pub fn run<I, T>(argv: I, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            1
        }
    }
}

fn execute(cli: &Cli, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> Result<()> {
    match cli.global.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(k).build()?;
            pool.install(|| dispatch(cli, stdout, stderr))
        }
        None => dispatch(cli, stdout, stderr),
    }
}

/// Resolves `--zeros-file`, then `$RSPEC_ZEROS_FILE`, then the bundled fixture, and applies `--limit`.
pub fn load_zeros(global: &GlobalArgs) -> Result<ZeroTable> {
    let path: Option<PathBuf> = global.zeros_file.clone().or_else(|| std::env::var_os(ZEROS_ENV).map(PathBuf::from));
    let table = match path {
        Some(p) => ZeroTable::from_path(&p).with_context(|| format!("reading zero table {}", p.display()))?,
        None => ZeroTable::fixture(),
    };
    match global.limit {
        Some(0) => bail!("--limit must be at least 1"),
        Some(n) => Ok(table.truncated(n)?),
        None => Ok(table),
    }
}

/// The first `n` zeros, or an error when the table is shorter.
pub fn zeros_prefix(table: &ZeroTable, n: usize) -> Result<ZeroTable> {
    if n == 0 {
        bail!("zero count must be at least 1");
    }
    if n > table.len() {
        bail!("need {n} zeros, table {} has {}", table.source_label(), table.len());
    }
    Ok(table.truncated(n)?)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// CSV goes to `--out` (with its manifest alongside) or stdout.
fn emit(global: &GlobalArgs, stdout: &mut (dyn Write + Send), csv: &str, manifest: &RunManifest) -> Result<()> {
    match &global.out {
        Some(path) => {
            write_file(path, csv)?;
            write_file(&sidecar_path(path), &manifest.to_json())
        }
        None => Ok(stdout.write_all(csv.as_bytes())?),
    }
}

fn emit_svg(global: &GlobalArgs, doc: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = &global.svg {
        write_file(path, &doc())?;
    }
    Ok(())
}

fn dispatch(cli: &Cli, stdout: &mut (dyn Write + Send), stderr: &mut (dyn Write + Send)) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Zeros { cmd } => {
            let table = load_zeros(g)?;
            match cmd {
                ZerosCmd::Info => {
                    writeln!(stdout, "source {}", table.source_label())?;
                    writeln!(stdout, "count {}", table.len())?;
                    writeln!(stdout, "first {}", real(table.first()))?;
                    writeln!(stdout, "last {}", real(table.last()))?;
                }
                ZerosCmd::Count { height } => {
                    if !(*height > 0.0) {
                        bail!("--t must be positive");
                    }
                    let count = table.count_below(*height);
                    let estimate = riemann_vonmangoldt_estimate(*height);
                    let mut csv = Csv::with_header(&["t", "count", "estimate", "difference", "two_log_t"]);
                    csv.row([
                        real(*height),
                        count.to_string(),
                        real(estimate),
                        real(count as f64 - estimate),
                        real(2.0 * height.ln()),
                    ]);
                    if table.last() < *height {
                        writeln!(stderr, "warning: T exceeds the last loaded ordinate {}", real(table.last()))?;
                    }
                    let m = RunManifest::new("zeros count").param("t", real(*height)).zeros(table.source_label(), table.len());
                    emit(g, stdout, &csv.into_string(), &m)?;
                }
            }
        }
        Command::Sector { cmd } => sector(g, cmd, stdout)?,
        Command::Corr { cmd } => corr(g, cmd, stdout)?,
        Command::Resonance(a) => {
            let table = load_zeros(g)?;
            let zeros = zeros_prefix(&table, a.zeros)?;
            let cfg = CorrelationConfig {
                mode: a.mode.into(),
                zero_count: a.zeros,
                small_prime_floor: a.floor,
                resonance_z: a.z,
            };
            let qs = first_primes(a.primes);
            let row = correlation_row(&zeros, a.p, &qs, &cfg)?;
            let report = detect_resonances(&row, a.p, &cfg)?;
            let m = RunManifest::new("resonance")
                .param("p", a.p)
                .param("primes", a.primes)
                .param("zeros", a.zeros)
                .param("floor", a.floor)
                .param("z", real(a.z))
                .param("mode", cfg.mode.name())
                .zeros(table.source_label(), zeros.len());
            emit(g, stdout, &resonance_csv(&report), &m)?;
            emit_svg(g, || row_svg(&format!("X_{} correlations ({})", a.p, cfg.mode.name()), &row, &report))?;
            // keep stdout clean CSV when it carries the table
            let summary = report.summary();
            if g.out.is_some() {
                stdout.write_all(summary.as_bytes())?;
            } else {
                stderr.write_all(summary.as_bytes())?;
            }
        }
        Command::Poset { cmd } => match cmd {
            PosetCmd::Tree { p } => {
                let tree = pratt_tree(*p)?;
                write!(stdout, "{tree}")?;
                let m = RunManifest::new("poset tree").param("p", p);
                match &g.out {
                    Some(_) => emit(g, stdout, &tree.csv_edges(), &m)?,
                    None => {
                        writeln!(stdout)?;
                        stdout.write_all(tree.csv_edges().as_bytes())?;
                    }
                }
            }
            PosetCmd::Preds { p } => {
                let preds = poset_predecessors(*p)?;
                writeln!(stdout, "{p} - 1 = {}", format_factorization(&rspec_core::factorize(p - 1)))?;
                writeln!(stdout, "predecessors {{{}}}", join_set(&preds, ", "))?;
            }
        },
        Command::Euclid(a) => {
            let c = euclid_generate(&a.factors)?;
            writeln!(stdout, "{} prime={}", c.candidate, c.is_prime)?;
        }
        Command::Duality { cmd } => duality(g, cmd, stdout)?,
        Command::Reproduce(a) => {
            let table = load_zeros(g)?;
            let figures: Vec<_> = if a.figure == args::Figure::All { args::Figure::EACH.to_vec() } else { vec![a.figure] };
            for fig in figures {
                let written = reproduce::reproduce(fig, &table, &a.out_dir)?;
                for path in written {
                    writeln!(stdout, "wrote {}", path.display())?;
                }
            }
        }
    }
    Ok(())
}

pub fn histogram_csv(h: &Histogram) -> String {
    let mut csv = Csv::with_header(&["bin_low", "bin_high", "count"]);
    for (k, &c) in h.counts.iter().enumerate() {
        let (lo, hi) = h.edges(k);
        csv.row([real(lo), real(hi), c.to_string()]);
    }
    csv.into_string()
}

pub fn grid_csv(bins: usize, counts: &[u64]) -> String {
    let mut csv = Csv::with_header(&["x_bin", "y_bin", "count"]);
    for x in 0..bins {
        for y in 0..bins {
            csv.row([x.to_string(), y.to_string(), counts[x * bins + y].to_string()]);
        }
    }
    csv.into_string()
}

pub fn row_csv(row: &[(u64, f64)]) -> String {
    let mut csv = Csv::with_header(&["q", "c"]);
    for &(q, c) in row {
        csv.row([q.to_string(), real(c)]);
    }
    csv.into_string()
}

pub fn resonance_csv(report: &ResonanceReport) -> String {
    let mut csv = Csv::with_header(&["q", "c", "z", "flags", "shared_predecessors"]);
    for r in &report.rows {
        csv.row([r.q.to_string(), real(r.c), real(r.z), r.flag_names(), join_set(&r.shared_predecessors, ";")]);
    }
    csv.into_string()
}

pub fn row_svg(title: &str, row: &[(u64, f64)], report: &ResonanceReport) -> String {
    let points: Vec<(f64, f64)> = row.iter().map(|&(q, c)| (q as f64, c)).collect();
    let markers: Vec<(f64, String)> = report.resonances().map(|r| (r.q as f64, r.q.to_string())).collect();
    svg::line_chart(title, &points, &markers)
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix2> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("--matrix {text:?}: expected four integers m11,m12,m21,m22"))?;
    match parts.as_slice() {
        &[a, b, c, d] => Ok(IntMatrix2([[a, b], [c, d]])),
        _ => bail!("--matrix {text:?}: expected four integers m11,m12,m21,m22"),
    }
}

fn sector(g: &GlobalArgs, cmd: &SectorCmd, stdout: &mut (dyn Write + Send)) -> Result<()> {
    let table = load_zeros(g)?;
    match cmd {
        SectorCmd::Hist { p, compression, bins, zeros } => {
            let z = zeros_prefix(&table, zeros.unwrap_or(table.len()))?;
            let s = sector_sample(&z, *p, *compression)?;
            let h = histogram(&s.reduced, *bins)?;
            let m = RunManifest::new("sector hist")
                .param("p", p)
                .param("compression", compression)
                .param("bins", bins)
                .param("zeros", z.len())
                .param("reduction", format!("frac(t*ln(p)/(2*pi*{compression}))"))
                .zeros(table.source_label(), z.len());
            emit(g, stdout, &histogram_csv(&h), &m)?;
            emit_svg(g, || {
                let freqs = h.frequencies();
                let e = histogram_entropy(&h).map(real).unwrap_or_default();
                svg::bar_chart(&format!("p = {p}, compression {compression}, N = {}, entropy {e}", z.len()), &freqs)
            })?;
        }
        SectorCmd::Bihist { p1, p2, matrix, bins, zeros } => {
            let z = zeros_prefix(&table, zeros.unwrap_or(table.len()))?;
            let m = parse_matrix(matrix)?;
            let b = bi_distribution(&z, *p1, *p2, m, *bins)?;
            let man = RunManifest::new("sector bihist")
                .param("p1", p1)
                .param("p2", p2)
                .param("matrix", matrix.replace(' ', ""))
                .param("bins", bins)
                .param("zeros", z.len())
                .param("alpha", format!("{},{}", real(b.alpha[0]), real(b.alpha[1])))
                .zeros(table.source_label(), z.len());
            emit(g, stdout, &grid_csv(b.grid.bins, &b.grid.counts), &man)?;
            emit_svg(g, || svg::heat_map(&format!("p1 = {p1}, p2 = {p2}, M = [{matrix}]"), b.grid.bins, &b.grid.counts))?;
        }
    }
    Ok(())
}

fn corr(g: &GlobalArgs, cmd: &CorrCmd, stdout: &mut (dyn Write + Send)) -> Result<()> {
    let table = load_zeros(g)?;
    match cmd {
        CorrCmd::Row { p, primes, zeros, mode } => {
            let z = zeros_prefix(&table, *zeros)?;
            let cfg = CorrelationConfig { mode: (*mode).into(), zero_count: *zeros, ..Default::default() };
            let row = correlation_row(&z, *p, &first_primes(*primes), &cfg)?;
            let m = RunManifest::new("corr row")
                .param("p", p)
                .param("primes", primes)
                .param("zeros", zeros)
                .param("mode", cfg.mode.name())
                .zeros(table.source_label(), z.len());
            emit(g, stdout, &row_csv(&row), &m)?;
            emit_svg(g, || {
                let points: Vec<(f64, f64)> = row.iter().map(|&(q, c)| (q as f64, c)).collect();
                svg::line_chart(&format!("X_{p} correlations ({})", cfg.mode.name()), &points, &[])
            })?;
        }
        CorrCmd::Matrix { primes, zeros, mode } => {
            let z = zeros_prefix(&table, *zeros)?;
            let cfg = CorrelationConfig { mode: (*mode).into(), zero_count: *zeros, ..Default::default() };
            let ps = first_primes(*primes);
            let mat = correlation_matrix(&z, &ps, &cfg)?;
            let mut header = vec!["p".to_string()];
            header.extend(ps.iter().map(u64::to_string));
            let mut csv = Csv::default();
            csv.row(&header);
            for (i, p) in ps.iter().enumerate() {
                csv.row(std::iter::once(p.to_string()).chain(mat.row(i).iter().map(|&c| real(c))));
            }
            let m = RunManifest::new("corr matrix")
                .param("primes", primes)
                .param("zeros", zeros)
                .param("mode", cfg.mode.name())
                .zeros(table.source_label(), z.len());
            emit(g, stdout, &csv.into_string(), &m)?;
        }
    }
    Ok(())
}

pub fn series_csv(series: &DualitySeries, peaks: Option<&[(f64, f64)]>) -> String {
    let mut csv = Csv::with_header(&["abscissa", "value"]);
    for (x, v) in series.grid.iter().zip(&series.values) {
        csv.row([real(*x), real(*v)]);
    }
    if let Some(peaks) = peaks {
        csv.blank_line();
        csv.row(["peak_abscissa", "peak_value"]);
        for &(x, v) in peaks {
            csv.row([real(x), real(v)]);
        }
    }
    csv.into_string()
}

fn finish_series(
    g: &GlobalArgs,
    stdout: &mut (dyn Write + Send),
    series: &DualitySeries,
    peak_args: &PeakArgs,
    manifest: RunManifest,
    title: &str,
) -> Result<()> {
    let peaks = if peak_args.peaks { Some(find_peaks(series, peak_args.prominence)?) } else { None };
    let manifest = manifest.param("peaks", peak_args.peaks).param("prominence", real(peak_args.prominence));
    emit(g, stdout, &series_csv(series, peaks.as_deref()), &manifest)?;
    emit_svg(g, || {
        let points: Vec<(f64, f64)> = series.grid.iter().copied().zip(series.values.iter().copied()).collect();
        svg::line_chart(title, &points, &[])
    })
}

fn duality(g: &GlobalArgs, cmd: &DualityCmd, stdout: &mut (dyn Write + Send)) -> Result<()> {
    match cmd {
        DualityCmd::ZerosToPrimes { count, xmin, xmax, step, peaks } => {
            let table = load_zeros(g)?;
            let series = zeros_to_primes_series(&table, *count, *xmin, *xmax, *step)?;
            let m = RunManifest::new("duality zeros-to-primes")
                .param("count", count)
                .param("xmin", real(*xmin))
                .param("xmax", real(*xmax))
                .param("step", real(*step))
                .zeros(table.source_label(), *count);
            finish_series(g, stdout, &series, peaks, m, &format!("prime powers from {count} zeros"))
        }
        DualityCmd::PrimesToZeros { xmax, tmin, tmax, step, peaks } => {
            let series = primes_to_zeros_series(*xmax, *tmin, *tmax, *step)?;
            let m = RunManifest::new("duality primes-to-zeros")
                .param("xmax", xmax)
                .param("tmin", real(*tmin))
                .param("tmax", real(*tmax))
                .param("step", real(*step));
            finish_series(g, stdout, &series, peaks, m, &format!("zeros from prime powers up to {xmax}"))
        }
    }
}
