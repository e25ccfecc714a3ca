use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use prolate::bounds::{function_suite, Verdict};
use prolate::harness::config::{default_grid, load_grid, Config, GridEntry};
use prolate::harness::format::{plain, NumberStyle};
use prolate::harness::{reproduce_figure, reproduce_table, verify, ArtifactId, RunOptions};
use prolate::pswf::DEFAULT_TOL;
use prolate::roots::special_points;
use prolate::{ProlateContext, ProlateError, ProlateSpectrum, Result};

#[derive(Parser)]
#[command(name = "prolate", version, about = "Prolate spheroidal wave functions and their bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Relative convergence tolerance for the spectrum.
    #[arg(long)]
    tol: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value file with defaults for tol, heavy, perturb_chi, grid, out, log.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// χ_n for 0 <= n <= nmax, optionally with |λ_n| and μ_n.
    Spectrum {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        lambda: bool,
        #[command(flatten)]
        common: Common,
    },
    /// ψ_n and ψ_n' on a uniform grid of [-1, 1].
    Psi {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Roots of ψ_n, extrema, x_n and the turning point.
    Roots {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Every bound for one ψ_n with its verdict.
    Bounds {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute one reference table.
    Table {
        #[arg(long)]
        id: String,
        /// Allow the c = 10000 table.
        #[arg(long)]
        heavy: bool,
        /// Shortest round-trip decimals instead of 0.xxxxxE+yy.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Recompute the data series of one figure.
    Figure {
        #[arg(long)]
        id: String,
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Every table and figure into a directory, one CSV each.
    Reproduce {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long)]
        heavy: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check every property over a grid of (c, n).
    Verify {
        /// Lines of `c` or `c n_min n_max`.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Add c = 1000 with 630 <= n <= 710.
        #[arg(long)]
        heavy: bool,
        /// Relative perturbation of every χ_n, for fault injection.
        #[arg(long, allow_hyphen_values = true)]
        perturb_chi: Option<f64>,
        /// Log file; stderr when omitted.
        #[arg(long)]
        log: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

struct Settings {
    opts: RunOptions,
    out: Option<PathBuf>,
    log: Option<PathBuf>,
    grid: Option<PathBuf>,
}

fn settings(common: &Common, heavy: bool) -> Result<Settings> {
    let cfg = match &common.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let opts = RunOptions {
        heavy: heavy || cfg.get::<bool>("heavy")?.unwrap_or(false),
        tol: common.tol.or(cfg.get("tol")?).unwrap_or(DEFAULT_TOL),
        perturb_chi: cfg.get("perturb_chi")?.unwrap_or(0.0),
    };
    Ok(Settings {
        opts,
        out: common.out.clone().or(cfg.get::<PathBuf>("out")?),
        log: cfg.get::<PathBuf>("log")?,
        grid: cfg.get::<PathBuf>("grid")?,
    })
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn style(raw: bool) -> NumberStyle {
    if raw {
        NumberStyle::Plain
    } else {
        NumberStyle::Fortran
    }
}

fn spectrum(c: f64, n: usize, tol: f64) -> Result<ProlateSpectrum> {
    ProlateSpectrum::build(&ProlateContext::with_tol(c, n, tol)?)
}

fn opt(x: Option<f64>) -> String {
    x.map(plain).unwrap_or_default()
}

/// Returns whether any check failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Spectrum { c, nmax, lambda, common } => {
            let s = settings(&common, false)?;
            let spec = spectrum(c, nmax, s.opts.tol)?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(sink(s.out.as_deref())?);
            if lambda {
                w.write_record(["n", "chi", "lambda_abs", "mu"])?;
                for ev in spec.integral_eigenvalues()? {
                    w.write_record([ev.n.to_string(), plain(spec.chi(ev.n)), plain(ev.lambda_abs), plain(ev.mu)])?;
                }
            } else {
                w.write_record(["n", "chi"])?;
                for (n, chi) in spec.chis().iter().enumerate() {
                    w.write_record([n.to_string(), plain(*chi)])?;
                }
            }
            w.flush()?;
        }
        Command::Psi { c, n, samples, common } => {
            if samples < 2 {
                return Err(ProlateError::InvalidArgument("samples must be at least 2".into()));
            }
            let s = settings(&common, false)?;
            let spec = spectrum(c, n, s.opts.tol)?;
            let f = spec.function(n);
            let mut w = sink(s.out.as_deref())?;
            writeln!(w, "t,psi,dpsi")?;
            for k in 0..samples {
                let t = -1.0 + 2.0 * k as f64 / (samples - 1) as f64;
                let j = f.jet(t);
                writeln!(w, "{},{},{}", plain(t), plain(j.value), plain(j.d1))?;
            }
            w.flush()?;
        }
        Command::Roots { c, n, common } => {
            let s = settings(&common, false)?;
            let spec = spectrum(c, n, s.opts.tol)?;
            let sp = special_points(spec.function(n))?;
            let mut w = sink(s.out.as_deref())?;
            writeln!(w, "kind,index,t")?;
            for (i, t) in sp.t.iter().enumerate() {
                writeln!(w, "root,{},{}", i + 1, plain(*t))?;
            }
            for (i, x) in sp.x.iter().enumerate() {
                writeln!(w, "extremum,{},{}", i + 1, plain(*x))?;
            }
            writeln!(w, "x_n,{},{}", n, plain(sp.x_n))?;
            writeln!(w, "turning,0,{}", plain(sp.turning))?;
            writeln!(w, "regime,0,{}", sp.regime.as_str())?;
            w.flush()?;
        }
        Command::Bounds { c, n, common } => {
            let s = settings(&common, false)?;
            let spec = spectrum(c, n, s.opts.tol)?;
            let f = spec.function(n);
            let mut sp = special_points(f)?;
            sp.chi *= 1.0 + s.opts.perturb_chi;
            let reports = function_suite(f, &sp)?;
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(sink(s.out.as_deref())?);
            w.write_record(["name", "aux", "lower", "truth", "upper", "rel_err_lower", "rel_err_upper", "verdict"])?;
            for r in &reports {
                w.write_record([
                    r.name.to_string(),
                    opt(r.aux),
                    opt(r.lower),
                    plain(r.truth),
                    opt(r.upper),
                    opt(r.rel_err_lower),
                    opt(r.rel_err_upper),
                    r.verdict.as_str().to_string(),
                ])?;
            }
            w.flush()?;
            return Ok(reports.iter().any(|r| r.verdict == Verdict::Fail));
        }
        Command::Table { id, heavy, raw, common } => {
            let s = settings(&common, heavy)?;
            let id: ArtifactId = id.parse()?;
            let t = reproduce_table(id, &s.opts)?;
            t.write_csv(sink(s.out.as_deref())?, style(raw))?;
        }
        Command::Figure { id, raw, common } => {
            let s = settings(&common, false)?;
            let id: ArtifactId = id.parse()?;
            let t = reproduce_figure(id, &s.opts)?;
            t.write_csv(sink(s.out.as_deref())?, style(raw))?;
        }
        Command::Reproduce { dir, heavy, tol } => {
            let opts = RunOptions {
                heavy,
                tol: tol.unwrap_or(DEFAULT_TOL),
                ..Default::default()
            };
            fs::create_dir_all(&dir)?;
            for id in ArtifactId::ALL {
                if id.is_heavy() && !heavy {
                    eprintln!("skip {id} (needs --heavy)");
                    continue;
                }
                let t = if id.is_table() { reproduce_table(id, &opts)? } else { reproduce_figure(id, &opts)? };
                let kind = if id.is_table() { "table" } else { "figure" };
                let path = dir.join(format!("{kind}_{id}.csv"));
                t.write_csv(BufWriter::new(File::create(&path)?), NumberStyle::Fortran)?;
                eprintln!("wrote {}", path.display());
            }
        }
        Command::Verify { grid, heavy, perturb_chi, log, common } => {
            let mut s = settings(&common, heavy)?;
            if let Some(p) = perturb_chi {
                s.opts.perturb_chi = p;
            }
            let mut entries = match grid.or(s.grid.take()) {
                Some(p) => load_grid(&p)?,
                None => default_grid(),
            };
            if s.opts.heavy {
                entries.push(GridEntry { c: 1000.0, n_min: 630, n_max: 710 });
            }
            let report = verify(&entries, &s.opts);
            report.write_csv(sink(s.out.as_deref())?)?;
            match log.or(s.log) {
                Some(p) => report.write_log(BufWriter::new(File::create(p)?))?,
                None => report.write_log(io::stderr().lock())?,
            }
            return Ok(report.failures() > 0);
        }
    }
    Ok(false)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
