mod views;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nvcat_core::bounds::{bound_report, replay_report, BoundConfig, CatBoundReport};
use nvcat_core::cocycle::{divisibility, periods, validate_cocycle, IntegralCocycle};
use nvcat_core::complex::{InputDocument, SimplicialComplex};
use nvcat_core::cover::{build_twisted_complex, cover_homology, torsion_summary, CoverHomology, TorsionSummary};
use nvcat_core::local_system::{pick_generic, TwistedCohomology, TwistedDims};
use nvcat_core::{Error, Field, Scalar};

use views::{report_text, CohomView, CoverView, SuppView, ValidateView};

/// Lower bounds for the Lusternik-Schnirelmann category of a cohomology class.
#[derive(Parser)]
#[command(name = "nvcat", version)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Coefficient field: `q` or `fp:P`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 8)]
    max_r: usize,
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    survivor_order: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Monodromy value for the first twisted factor.
    #[arg(long, global = true)]
    a: Option<String>,
    /// Monodromy value for the second twisted factor (default 1/a).
    #[arg(long, global = true)]
    b: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the complex and the cocycle, print the period generator.
    Validate { input: PathBuf },
    /// Homology of the infinite cyclic cover over k[t, 1/t].
    Cover { input: PathBuf },
    /// Torsion of the cover homology and Supp.
    Supp { input: PathBuf },
    /// Twisted cohomology dimensions at given or generic values.
    Cohom { input: PathBuf },
    /// Certified lower bounds for the category of xi.
    Bound { input: PathBuf },
    /// Validation, cover homology, Supp and bounds in one document.
    Report { input: PathBuf },
    /// Re-verify the certificates of a JSON bound report.
    Replay { input: PathBuf, report: PathBuf },
}

struct Input {
    complex: SimplicialComplex,
    xi: IntegralCocycle,
}

fn read_input(path: &Path) -> Result<Input> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc = InputDocument::from_json(&text)?;
    let complex = SimplicialComplex::from_document(&doc)?;
    let xi = IntegralCocycle::from_document(&doc)?;
    Ok(Input { complex, xi })
}

impl Opts {
    fn field(&self) -> Result<Field> {
        Ok(Field::parse(&self.field)?)
    }

    fn scalar(&self, field: Field, s: &Option<String>) -> Result<Option<Scalar>> {
        Ok(match s {
            Some(s) => Some(field.parse_element(s)?),
            None => None,
        })
    }

    fn config(&self) -> Result<BoundConfig> {
        let field = self.field()?;
        Ok(BoundConfig {
            field,
            seed: self.seed,
            max_r: self.max_r,
            survivor_order: self.survivor_order as usize,
            a: self.scalar(field, &self.a)?,
            b: self.scalar(field, &self.b)?,
        })
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", text(value));
    }
    Ok(())
}

fn validate(input: &Input) -> Result<ValidateView> {
    let x = &input.complex;
    let report = validate_cocycle(x, &input.xi)?;
    let (periods_generator, lambda) = if report.ok {
        let p = periods(x, &input.xi)?;
        (Some(p), Some(p))
    } else {
        (None, None)
    };
    Ok(ValidateView {
        vertices: x.vertex_count(),
        f_vector: x.f_vector(),
        euler_characteristic: x.euler_characteristic(),
        cocycle_ok: report.ok,
        violations: report.violations,
        periods_generator,
        lambda,
    })
}

fn cover(input: &Input, field: Field) -> Result<CoverHomology> {
    Ok(cover_homology(&build_twisted_complex(
        &input.complex,
        &input.xi,
        field,
    )?))
}

fn supp(input: &Input, field: Field) -> Result<(CoverHomology, TorsionSummary)> {
    let (lambda, eta) = divisibility(&input.complex, &input.xi)?;
    let h = cover_homology(&build_twisted_complex(&input.complex, &eta, field)?);
    let t = torsion_summary(&h, lambda);
    Ok((h, t))
}

fn cohom(input: &Input, opts: &Opts) -> Result<CohomView> {
    let field = opts.field()?;
    let exact = periods(&input.complex, &input.xi)? == 0;
    let (values, cover_free_ranks) = match (opts.scalar(field, &opts.a)?, exact) {
        (Some(a), _) => (vec![a], None),
        (None, true) => (vec![field.one()], None),
        (None, false) => {
            let (h, t) = supp(input, field)?;
            (pick_generic(&t, field, 5, opts.seed)?, Some(h.free_ranks()))
        }
    };
    let values = values
        .iter()
        .map(|a| {
            let h = TwistedCohomology::compute(&input.complex, &input.xi, a)?;
            Ok(TwistedDims {
                a: a.to_string(),
                dims: h.dims(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(CohomView {
        field: field.to_string(),
        values,
        cover_free_ranks,
    })
}

#[derive(Serialize)]
struct FullReport {
    validate: ValidateView,
    cover: CoverView,
    #[serde(skip_serializing_if = "Option::is_none")]
    supp: Option<SuppView>,
    bound: CatBoundReport,
}

fn run(cli: Cli) -> Result<ExitCode> {
    let opts = &cli.opts;
    let json = opts.json;
    match &cli.command {
        Command::Validate { input } => {
            let view = validate(&read_input(input)?)?;
            emit(json, &view, ValidateView::text)?;
            if !view.cocycle_ok {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Cover { input } => {
            let h = cover(&read_input(input)?, opts.field()?)?;
            emit(json, &CoverView::new(&h), CoverView::text)?;
        }
        Command::Supp { input } => {
            let (h, t) = supp(&read_input(input)?, opts.field()?)?;
            emit(json, &SuppView::new(&h, &t), SuppView::text)?;
        }
        Command::Cohom { input } => {
            emit(json, &cohom(&read_input(input)?, opts)?, CohomView::text)?;
        }
        Command::Bound { input } => {
            let input = read_input(input)?;
            let report = bound_report(&input.complex, &input.xi, &opts.config()?)?;
            emit(json, &report, report_text)?;
        }
        Command::Report { input } => {
            let input = read_input(input)?;
            let field = opts.field()?;
            let v = validate(&input)?;
            if !v.cocycle_ok {
                emit(json, &v, ValidateView::text)?;
                return Ok(ExitCode::from(2));
            }
            let full = FullReport {
                cover: CoverView::new(&cover(&input, field)?),
                supp: if v.periods_generator == Some(0) {
                    None
                } else {
                    let (h, t) = supp(&input, field)?;
                    Some(SuppView::new(&h, &t))
                },
                bound: bound_report(&input.complex, &input.xi, &opts.config()?)?,
                validate: v,
            };
            emit(json, &full, |f| {
                let mut s = f.validate.text();
                s.push_str(&f.cover.text());
                if let Some(supp) = &f.supp {
                    s.push_str(&supp.text());
                }
                s.push_str(&report_text(&f.bound));
                s
            })?;
        }
        Command::Replay { input, report } => {
            let input = read_input(input)?;
            let text = std::fs::read_to_string(report).with_context(|| format!("cannot read {}", report.display()))?;
            let report: CatBoundReport = serde_json::from_str(&text).context("malformed report")?;
            replay_report(&input.complex, &input.xi, &report)?;
            println!(
                "replay ok: {} bound(s), best bound {}",
                report.bounds.len(),
                report.best_bound
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Limit(_) | Error::FieldTooSmall { .. }) => 3,
        _ => 2,
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("NVCAT_THREADS") {
        let n: usize = v
            .parse()
            .with_context(|| format!("NVCAT_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| run(cli)) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
