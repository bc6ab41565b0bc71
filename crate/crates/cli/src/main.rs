//! `mtss`: cohomology, resolutions, charts and table checks from the shell.
//!
//! Exit status is 0 when every requested check passes, 1 when a check
//! fails and 2 on usage, window or I/O errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mtss::charrings::{a_r, CoefficientField, Family};
use mtss::charts::{
    compare_chart_fixture, compute_chart, render, spectrum_module, ChartFixture, ChartWindow, RenderFormat, Spectrum,
};
use mtss::mtmod::{periodicity_check, rational_dimensions, RationalPart, TruncatedModule};
use mtss::par::Exec;
use mtss::resolution::MinimalResolution;
use mtss::tables::{check_sequences, sphere_selftest, verify_fixture_set, ClaimFilter, FixtureSet};

/// Directory searched for fixtures given by bare name.
const FIXTURE_ENV: &str = "MTSS_FIXTURE_DIR";

#[derive(Parser)]
#[command(name = "mtss", version, about = "Adams E2 computations for Madsen-Tillmann type spectra")]
struct Cli {
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Target {
    /// Spectrum: mt, ctheta, bundle or sphere.
    #[arg(long, default_value = "mt")]
    spectrum: Spectrum,
    /// O, SO or Spin.
    #[arg(long, default_value = "SO")]
    family: Family,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
}

impl Target {
    fn d(&self) -> Result<u32> {
        match (self.d, self.spectrum) {
            (Some(d), _) => Ok(d),
            (None, Spectrum::Sphere) => Ok(0),
            (None, _) => bail!("--d is required for {}", self.spectrum),
        }
    }

    fn r(&self) -> Result<u32> {
        match (self.r, self.spectrum) {
            (Some(r), _) => Ok(r),
            (None, Spectrum::Sphere | Spectrum::Bundle) => Ok(0),
            (None, _) => bail!("--r is required for {}", self.spectrum),
        }
    }

    /// Stems shown when none are given.
    fn default_stems(&self) -> Result<(i32, i32)> {
        let d = self.d()? as i32;
        let r = self.r()? as i32;
        Ok(match self.spectrum {
            Spectrum::Mt => (d - r + 1, d + 1),
            Spectrum::Ctheta => (d - r + 1, d - r + 5),
            Spectrum::Bundle => (d, d + 5),
            Spectrum::Sphere => (d, d + 7),
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    /// Mod 2 Steenrod module.
    F2,
    Q,
    F3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    Mt,
    Ctheta,
    V,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a cohomology module, or a rational / mod 3 dimension table.
    Cohomology {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        tmax: u32,
        #[arg(long, value_enum, default_value = "f2")]
        field: Field,
        /// Which piece of MT(d,r) for the Q and F3 tables.
        #[arg(long, value_enum, default_value = "mt")]
        part: Part,
    },
    /// Dump a minimal resolution.
    Resolve {
        /// Resolve F_2 itself.
        #[arg(long, conflicts_with = "module")]
        sphere: bool,
        /// Module dump produced by `cohomology`.
        #[arg(long)]
        module: Option<PathBuf>,
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        tmax: i32,
        #[arg(long, default_value_t = 4)]
        smax: usize,
    },
    /// Compute and render an E2 chart.
    Chart {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 4)]
        smax: usize,
        /// First and last stem.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        stems: Option<Vec<i32>>,
        /// ascii, svg or structured.
        #[arg(long, default_value = "ascii")]
        format: RenderFormat,
    },
    /// Compare computations with a table (.toml) or chart (.chart) fixture.
    Verify {
        /// Fixture file, or a name looked up in $MTSS_FIXTURE_DIR.
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Check the periodicity isomorphism MT(d+k,r) -> MT(d,r) in its window.
    Periodicity {
        #[arg(long, default_value = "SO")]
        family: Family,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        /// Shift; defaults to a_r.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Recompute the 2-primary stable stems as a standing check.
    SphereSelftest {
        #[arg(long, default_value_t = 7)]
        stem_max: i32,
        #[arg(long, default_value_t = 9)]
        smax: usize,
    },
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        Exec::set_current(Exec::Sequential);
    }
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(outcome.text.as_bytes()).context("writing output"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Outcome> {
    let exec = Exec::current();
    match command {
        Command::Cohomology { target, tmax, field, part } => cohomology(target, *tmax, *field, *part),
        Command::Resolve { sphere, module, target, tmax, smax } => {
            let m = if *sphere {
                TruncatedModule::sphere()
            } else if let Some(path) = module {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                TruncatedModule::parse_dump(&text)?
            } else {
                let top = (*tmax).max(0) as u32;
                spectrum_module(target.spectrum, target.family, target.d()?, target.r()?, top)?
            };
            let res = MinimalResolution::with_exec(&m, *smax, *tmax, exec)?;
            Ok(Outcome::ok(res.dump()))
        }
        Command::Chart { target, smax, stems, format } => {
            let (lo, hi) = match stems.as_deref() {
                Some([lo, hi]) => (*lo, *hi),
                _ => target.default_stems()?,
            };
            if lo > hi {
                bail!("empty stem range {lo}..{hi}");
            }
            let chart = compute_chart(target.spectrum, target.family, target.d()?, target.r()?, ChartWindow::new(lo, hi, *smax), exec)?;
            Ok(Outcome::ok(render(&chart, *format)))
        }
        Command::Verify { fixture, d, r } => verify(fixture, *d, *r, exec),
        Command::Periodicity { family, d, r, k } => {
            let k = k.unwrap_or(a_r(*r) as u32);
            let rep = periodicity_check(*family, *d, *r, k)?;
            Ok(Outcome { text: format!("{}\n", rep.summary()), passed: rep.is_isomorphism() })
        }
        Command::SphereSelftest { stem_max, smax } => {
            let checks = sphere_selftest(*stem_max, *smax, exec)?;
            let mut text = String::new();
            let mut passed = true;
            for c in &checks {
                passed &= c.verdict.passed();
                let computed = c.computed.as_ref().map_or("-".to_string(), |g| g.to_string());
                let cert = if c.certified { "certified" } else { "assumed" };
                text.push_str(&format!("stem {} expected {} computed {} [{cert}] {}\n", c.stem, c.expected, computed, c.verdict));
            }
            Ok(Outcome { text, passed })
        }
    }
}

fn cohomology(target: &Target, tmax: u32, field: Field, part: Part) -> Result<Outcome> {
    let (d, r) = (target.d()?, target.r()?);
    let field = match field {
        Field::F2 => {
            let m = spectrum_module(target.spectrum, target.family, d, r, tmax)?;
            return Ok(Outcome::ok(m.dump()));
        }
        Field::Q => CoefficientField::Q,
        Field::F3 => CoefficientField::F3,
    };
    if target.spectrum != Spectrum::Mt {
        bail!("dimension tables are available for --spectrum mt only (use --part)");
    }
    let part = match part {
        Part::Mt => RationalPart::Mt,
        Part::Ctheta => RationalPart::CTheta,
        Part::V => RationalPart::V,
    };
    let table = rational_dimensions(target.family, d, r, tmax, field, part)?;
    Ok(Outcome::ok(table.dump()))
}

/// Resolve a fixture argument: an existing path, or a name (with or
/// without extension) under the fixture directory.
fn find_fixture(name: &str) -> Result<PathBuf> {
    let direct = Path::new(name);
    if direct.is_file() {
        return Ok(direct.to_path_buf());
    }
    let dir = std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures"));
    let stem = direct.file_stem().and_then(|s| s.to_str()).unwrap_or(name);
    for sub in ["", "tables", "charts"] {
        for file in [name.to_string(), format!("{stem}.toml"), format!("{stem}.chart")] {
            let p = dir.join(sub).join(&file);
            if p.is_file() {
                return Ok(p);
            }
        }
    }
    Err(anyhow!("fixture `{name}` not found (looked in {}; set {FIXTURE_ENV} to override)", dir.display()))
}

fn verify(name: &str, d: Option<u32>, r: Option<u32>, exec: Exec) -> Result<Outcome> {
    let path = find_fixture(name)?;
    let mut text = String::new();
    let mut passed = true;
    if path.extension().is_some_and(|e| e == "chart") {
        let src = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let fx = ChartFixture::parse(&src)?;
        if r.is_some_and(|r| r != fx.r) {
            bail!("fixture {} is for r = {}, not r = {}", fx.name, fx.r, r.unwrap_or_default());
        }
        let ds = match d {
            Some(d) if !fx.applies_to(d) => bail!("d = {d} is outside the residue class of fixture {}", fx.name),
            Some(d) => vec![d],
            None => fx.instances.clone(),
        };
        for d in ds {
            let chart = fx.compute(d, exec)?;
            let cmp = compare_chart_fixture(&fx, &chart, d);
            passed &= cmp.passed();
            text.push_str(&format!("{} {} d={d}\n", if cmp.passed() { "PASS" } else { "FAIL" }, fx.name));
            for m in &cmp.mismatches {
                text.push_str(&format!("  {m}\n"));
            }
        }
        return Ok(Outcome { text, passed });
    }
    let set = FixtureSet::load(&path)?;
    let reports = verify_fixture_set(&set, ClaimFilter { d, r }, exec);
    if reports.is_empty() {
        bail!("no claim of {} applies to the requested d and r", path.display());
    }
    for rep in &reports {
        passed &= rep.verdict.passed();
        text.push_str(&format!("{} {rep}\n", if rep.verdict.passed() { "PASS" } else { "FAIL" }));
    }
    if d.is_none() && r.is_none() {
        for s in check_sequences(&set) {
            passed &= s.passed;
            text.push_str(&format!("{} {}: {}\n", if s.passed { "PASS" } else { "FAIL" }, s.source, s.detail));
        }
    }
    Ok(Outcome { text, passed })
}
