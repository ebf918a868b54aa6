//! Command-line front end. `run` returns the exit code with the text for
//! stdout and stderr so it can be driven from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use exact_algebra::{absolutize_simplified, field_adjoin, NumberField, Polynomial, RootSelector};

use crate::center::{center_simples, certify, mult_table, smatrix, Center, CenterSimples, DecomposeOptions};
use crate::error::{FusionError, Result};
use crate::fusion::FusionData;
use crate::ideal::{export_ideal, halfbraiding_ideal, ExportFormat};
use crate::io::{parse_category, render_center, render_matrix, render_mult_table};
use crate::models::{ising, vec_g, CayleyTable};
use crate::morphism::Object;
use crate::splitting::{fpdims, split_all};

pub const SEED_ENV: &str = "FUSION_CENTER_SEED";
pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "fusion-center", version, about = "Drinfeld centers of spherical fusion categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check pentagon, rigidity and sphericality
    Validate(Source),
    /// List the simple central objects with their half-braidings
    Center(Run),
    /// S-matrix of the center
    Smatrix(Run),
    /// Fusion rules of the center
    Multtable(Run),
    /// Extend scalars until every central simple has scalar endomorphisms
    Split {
        #[command(flatten)]
        run: Run,
        /// Split only this central simple (1-based)
        #[arg(long)]
        simple: Option<usize>,
        /// Also print a simplified absolute presentation of the final field
        #[arg(long)]
        absolutize: bool,
    },
    /// Polynomial system for the half-braidings of a fixed object
    Ideal {
        #[command(flatten)]
        source: Source,
        /// Multiplicity vector, e.g. "0,0,0,1,1,1"
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Field, simples, dimensions and center-generating simples
    Info(Source),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Plain,
    Msolve,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Builtin {
    Ising,
    #[value(name = "vec_g", alias = "vecg")]
    VecG,
}

#[derive(clap::Args, Clone, Debug)]
pub struct Source {
    #[arg(long, value_enum, conflicts_with = "file")]
    pub builtin: Option<Builtin>,
    /// Field as a chain of extensions: Q, sqrt2, i, xi3 or name=[c0,...,1], joined by '/'
    #[arg(long, alias = "base-field")]
    pub field: Option<String>,
    /// Group for vec_g: s3, q8, cN, trivial, or a Cayley table file
    #[arg(long)]
    pub group: Option<String>,
    /// Category file
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long)]
    pub no_validate: bool,
}

#[derive(clap::Args, Debug)]
pub struct Run {
    #[command(flatten)]
    pub source: Source,
    /// Seed for the randomized decomposition (default: $FUSION_CENTER_SEED or 1)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Attempts with consecutive seeds before reporting an inconclusive run
    #[arg(long, default_value_t = 5)]
    pub retries: usize,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

/// Builds a field from a chain such as `sqrt2/i`.
pub fn parse_field(spec: &str) -> Result<NumberField> {
    let mut k = NumberField::rationals();
    for part in spec.split('/').map(str::trim) {
        let (name, coeffs, sel): (String, Vec<String>, Option<RootSelector>) = match part {
            "Q" | "q" | "" => continue,
            "sqrt2" => ("sqrt2".into(), vec!["-2".into(), "0".into(), "1".into()], Some(RootSelector::real(1.414))),
            "i" => ("i".into(), vec!["1".into(), "0".into(), "1".into()], None),
            "xi3" => ("xi3".into(), vec!["1".into(), "1".into(), "1".into()], None),
            other => {
                let (name, list) = other
                    .split_once('=')
                    .ok_or_else(|| FusionError::InvalidData(format!("unknown field `{}`", other)))?;
                let list = list.trim().trim_start_matches('[').trim_end_matches(']');
                (name.trim().into(), list.split(',').map(|c| c.trim().to_string()).collect(), None)
            }
        };
        let c = coeffs.iter().map(|c| k.parse(c)).collect::<std::result::Result<Vec<_>, _>>()?;
        k = field_adjoin(&k, &Polynomial::new(&k, c), &name, sel)?.0;
    }
    Ok(k)
}

fn load(source: &Source) -> Result<FusionData> {
    if let Some(path) = &source.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FusionError::InvalidData(format!("{}: {}", path.display(), e)))?;
        return parse_category(&text, !source.no_validate);
    }
    let cat = match source.builtin {
        None => return Err(FusionError::InvalidData("give --builtin or --file".into())),
        Some(Builtin::Ising) => {
            let k = parse_field(source.field.as_deref().unwrap_or("sqrt2"))?;
            let a = k
                .generator_by_name("sqrt2")
                .ok_or_else(|| FusionError::InvalidData("the Ising category needs sqrt2 in the field".into()))?;
            ising(&k, &a)?
        }
        Some(Builtin::VecG) => {
            let k = parse_field(source.field.as_deref().unwrap_or("Q"))?;
            let g = source.group.as_deref().unwrap_or("s3");
            let table = match CayleyTable::by_name(g) {
                Ok(t) => t,
                Err(_) if std::path::Path::new(g).exists() => CayleyTable::parse(
                    &std::fs::read_to_string(g).map_err(|e| FusionError::InvalidGroup(e.to_string()))?,
                )?,
                Err(e) => return Err(e),
            };
            vec_g(&table, &k)?
        }
    };
    if !source.no_validate {
        let v = cat.validate();
        if !v.is_empty() {
            return Err(FusionError::Validation(v));
        }
    }
    Ok(cat)
}

fn seed_of(run: &Run) -> u64 {
    run.seed
        .or_else(|| std::env::var(SEED_ENV).ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_SEED)
}

/// Retries `f` with consecutive seeds while it is inconclusive.
fn with_retries<T>(run: &Run, mut f: impl FnMut(&DecomposeOptions) -> Result<T>) -> Result<T> {
    let seed = seed_of(run);
    let mut last = None;
    for t in 0..run.retries.max(1) {
        let opts = DecomposeOptions { seed: seed.wrapping_add(t as u64), jobs: run.jobs.max(1), ..Default::default() };
        match f(&opts) {
            Err(FusionError::Inconclusive(m)) => last = Some(m),
            other => return other,
        }
    }
    Err(FusionError::Inconclusive(format!("{} (after {} attempts)", last.unwrap_or_default(), run.retries.max(1))))
}

fn compute(run: &Run) -> Result<(Center, CenterSimples)> {
    let cat = load(&run.source)?;
    let center = Center::with_jobs(cat, run.jobs.max(1))?;
    let simples = with_retries(run, |o| {
        let s = center_simples(&center, o)?;
        certify(&center, &s)?;
        Ok(s)
    })?;
    Ok((center, simples))
}

fn execute(cmd: &Command, out: &mut String) -> Result<bool> {
    match cmd {
        Command::Validate(source) => {
            let cat = load(&Source { no_validate: true, ..source.clone() })?;
            let v = cat.validate();
            for line in &v {
                let _ = writeln!(out, "{}", line);
            }
            let _ = writeln!(out, "{} violation(s)", v.len());
            Ok(v.is_empty())
        }
        Command::Center(run) => {
            let (c, s) = compute(run)?;
            let _ = writeln!(out, "{} simple central objects over {}", s.simples.len(), c.field().describe());
            out.push_str(&render_center(&c.cat, &s.simples, &s.end_dims)?);
            for (t, cert) in s.certified.iter().enumerate() {
                if !cert {
                    let _ = writeln!(out, "note: simplicity of [{}] rests on an exhausted search budget", t + 1);
                }
            }
            Ok(true)
        }
        Command::Smatrix(run) => {
            let (c, s) = compute(run)?;
            out.push_str(&render_matrix(c.field(), &smatrix(&c.cat, &s.simples)?));
            Ok(true)
        }
        Command::Multtable(run) => {
            let (c, s) = compute(run)?;
            for (t, z) in s.simples.iter().enumerate() {
                let _ = writeln!(out, "Z{} = {}", t + 1, z.object.render(&c.cat.names));
            }
            out.push_str(&render_mult_table(&mult_table(&c, &s.simples, &s.end_dims)?));
            Ok(true)
        }
        Command::Split { run, simple, absolutize } => {
            let (c, s) = compute(run)?;
            let labels: Vec<usize> = match simple {
                Some(t) => vec![*t],
                None => (1..=s.simples.len()).collect(),
            };
            let chosen = match simple {
                Some(t) if *t >= 1 && *t <= s.simples.len() => vec![s.simples[t - 1].clone()],
                Some(t) => return Err(FusionError::InvalidData(format!("no central simple {}", t))),
                None => s.simples.clone(),
            };
            let res = with_retries(run, |o| split_all(&c, &chosen, o))?;
            let _ = writeln!(out, "tower:");
            for p in &res.tower {
                let _ = writeln!(out, "    {}", p);
            }
            let _ = writeln!(out, "field: {}", res.field().describe());
            if *absolutize {
                let abs = absolutize_simplified(res.field(), "t")?;
                let _ = writeln!(out, "absolute field: {}", abs.field.describe());
            }
            let l = res.field();
            let fp = fpdims(&c.cat)?;
            for (label, d) in labels.iter().zip(&res.parts) {
                let _ = writeln!(out, "simple {}:", label);
                for sm in &d.summands {
                    let _ = writeln!(
                        out,
                        "    {} × {}    dim {}    FPdim {:.6}",
                        sm.multiplicity,
                        sm.object.object.render(&c.cat.names),
                        l.render(&sm.object.dim(&res.center.cat)?),
                        crate::center::fpdim_object(&fp, &sm.object.object)
                    );
                }
            }
            Ok(true)
        }
        Command::Ideal { source, object, format } => {
            let cat = load(source)?;
            let mult = object
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| FusionError::InvalidData(format!("bad object `{}`", object)))?;
            if mult.len() != cat.rank() {
                return Err(FusionError::InvalidData(format!("object needs {} multiplicities", cat.rank())));
            }
            let ideal = halfbraiding_ideal(&cat, &Object(mult))?;
            let f = match format {
                Format::Plain => ExportFormat::Plain,
                Format::Msolve => ExportFormat::Msolve,
            };
            out.push_str(&export_ideal(&ideal, f)?);
            Ok(true)
        }
        Command::Info(source) => {
            let cat = load(source)?;
            let k = &cat.field;
            let _ = writeln!(out, "field: {}", k.describe());
            let fp = fpdims(&cat)?;
            for i in 0..cat.rank() {
                let _ = writeln!(
                    out,
                    "{}: {}    dual {}    dim {}    FPdim {:.6}",
                    i + 1,
                    cat.names[i],
                    cat.dual[i] + 1,
                    k.render(&cat.dim_simple(i)),
                    fp[i]
                );
            }
            let _ = writeln!(out, "dim: {}", k.render(&cat.dim_category()));
            let gens: Vec<String> =
                crate::center::center_generating_simples(&cat).iter().map(|&g| cat.names[g].clone()).collect();
            let _ = writeln!(out, "center-generating simples: {}", gens.join(", "));
            Ok(true)
        }
    }
}

/// Exit code 0 on success, 1 on invalid input or failed validation, 2 when
/// the randomized decomposition stayed inconclusive.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return if code == 0 { (0, e.to_string(), String::new()) } else { (1, String::new(), e.to_string()) };
        }
    };
    let mut out = String::new();
    match execute(&cli.command, &mut out) {
        Ok(true) => (0, out, String::new()),
        Ok(false) => (1, out, String::new()),
        Err(e @ FusionError::Inconclusive(_)) => (2, out, format!("error: {}\nretry with another --seed\n", e)),
        Err(e) => (1, out, format!("error: {}\n", e)),
    }
}
