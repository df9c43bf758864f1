//! cbgon: exact Cayley-Bacharach, secant and gonality computations for
//! complete intersection curves, from the command line.
//!
//! Output is a versioned JSON report (or a plain-text table with
//! `--format text`). Exit code 0 for PASS/REPORT verdicts, 1 for FAIL,
//! 2 for usage errors. Output is byte-identical for identical
//! `(argv, seed)`, independent of the worker count.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cbgon_core::conditions::{
    canonical_twist, cayley_bacharach, cb_with_respect_to_canonical,
    imposes_independent_conditions,
};
use cbgon_core::error::Error;
use cbgon_core::exactalg::FieldTag;
use cbgon_core::geometry::{
    cbconj_scan, dimension_audit, fibers_over_rational_points, gamma_census,
    one_fiber_per_hyperplane, projection_degree, secant_census, CurveOverFp, GonalityReport,
    LinearSubspace, PencilMap, Verdict,
};
use cbgon_core::instances::random_grid;
use cbgon_core::polyring::parse_form;
use cbgon_core::schemes::{parse_instance, CompleteIntersection, Instance};
use cbgon_core::verify;

use report::{write_report, Format, Report};

#[derive(Parser)]
#[command(name = "cbgon", version, about = "Exact toolkit for Cayley-Bacharach conditions and gonality of complete intersection curves")]
struct Cli {
    /// Work over the prime field F_p.
    #[arg(long, global = true, value_name = "P")]
    prime: Option<u64>,
    /// Work over the rationals.
    #[arg(long, global = true)]
    rational: bool,
    /// Seed for randomized constructions; always echoed in the report.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Enumeration/search budget.
    #[arg(long, global = true, value_name = "N", default_value_t = 10_000_000)]
    budget: u64,
    /// Worker threads for parallel searches (default: machine parallelism).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cayley-Bacharach condition for a point set in one degree.
    CbCheck {
        /// Instance file with the points.
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        /// The degree m of the forms.
        #[arg(long)]
        degree: u32,
    },
    /// Independent-conditions test and failure index in one degree.
    IndepCheck {
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Cayley-Bacharach with respect to the canonical system of a curve.
    CbCanonical {
        /// Instance file with the curve forms and the points.
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
    },
    /// Degree of the projection of a curve from a codimension-2 center.
    Project {
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
        /// Linear form cutting the center; pass twice.
        #[arg(long = "center-form", value_name = "FORM", num_args = 1)]
        center_forms: Vec<String>,
    },
    /// Fibers of a projection pencil over the rational points of the line.
    Fibers {
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
        #[arg(long = "center-form", value_name = "FORM", num_args = 1)]
        center_forms: Vec<String>,
    },
    /// Census of (n-2)-planes with secancy at least k.
    SecantCensus {
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
        #[arg(long)]
        k: u64,
    },
    /// Maximum secancy over the census (rational lower bound for gamma).
    Gamma {
        #[arg(long, value_name = "FILE")]
        instance: PathBuf,
    },
    /// Gonality formulas and bounds for a complete intersection type.
    Gonality {
        /// Type degrees, comma separated: e.g. 4,5.
        #[arg(long = "type", value_name = "A1,A2,..")]
        type_degrees: String,
        /// Census value for gamma, if known.
        #[arg(long)]
        gamma: Option<u64>,
        /// Override the surface degree.
        #[arg(long)]
        deg_s: Option<u64>,
        /// Override the surface multiplier alpha.
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Dimension count for the secant incidence correspondences.
    DimAudit {
        #[arg(long = "type", value_name = "A1,A2,..")]
        type_degrees: String,
    },
    /// Monotone subset scan of the Cayley-Bacharach degree bound on a
    /// seeded random grid complete intersection.
    CbconjScan {
        /// Grid type degrees, comma separated: e.g. 2,2,4.
        #[arg(long, value_name = "D1,..,DN")]
        grid: String,
        /// Offset e in [0, d_2 - 1].
        #[arg(long)]
        e: u32,
        /// Ceiling on the number of grid points to scan.
        #[arg(long, default_value_t = 20)]
        max_points: u64,
    },
    /// Run the built-in acceptance battery.
    VerifySuite {
        /// Run a single criterion (1..=8) instead of all of them.
        #[arg(long)]
        criterion: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.budget == 0 {
        eprintln!("cbgon: --budget must be at least 1");
        return ExitCode::from(2);
    }
    if let Some(workers) = cli.workers {
        if rayon::ThreadPoolBuilder::new().num_threads(workers).build_global().is_err() {
            eprintln!("cbgon: could not configure {workers} workers");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(report) => {
            let verdict = report.verdict;
            if let Err(e) = write_report(&report, cli.format, cli.out.as_deref()) {
                eprintln!("cbgon: {e}");
                return ExitCode::from(2);
            }
            match verdict {
                Verdict::Fail => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("cbgon: {e}");
            ExitCode::from(2)
        }
    }
}

fn field_tag(cli: &Cli) -> Result<Option<FieldTag>, Error> {
    match (cli.prime, cli.rational) {
        (Some(_), true) => Err(Error::RangeViolation("choose exactly one of --prime and --rational".into())),
        (Some(p), false) => Ok(Some(FieldTag::prime(p)?)),
        (None, true) => Ok(Some(FieldTag::rational())),
        (None, false) => Ok(None),
    }
}

fn load_instance(cli: &Cli, path: &PathBuf) -> Result<Instance, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InstanceFormat(format!("{}: {e}", path.display())))?;
    parse_instance(&text, field_tag(cli)?)
}

fn parse_degrees(text: &str) -> Result<Vec<u32>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::RangeViolation(format!("bad degree {s:?}")))
        })
        .collect()
}

fn curve_from_instance(cli: &Cli, inst: &Instance) -> Result<CurveOverFp, Error> {
    let ci = CompleteIntersection::new(inst.forms.clone())?;
    CurveOverFp::new(ci, cli.budget)
}

fn center_from_forms(inst: &Instance, forms: &[String]) -> Result<LinearSubspace, Error> {
    if forms.len() != 2 {
        return Err(Error::RangeViolation(format!(
            "a codimension-2 center needs exactly 2 --center-form flags, got {}",
            forms.len()
        )));
    }
    let tag = inst.tag;
    let parsed: Result<Vec<_>, _> = forms
        .iter()
        .map(|t| parse_form(t, inst.ambient_dim, tag))
        .collect();
    LinearSubspace::from_dual_forms(&parsed?)
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::CbCheck { points, degree } => {
            let inst = load_instance(cli, points)?;
            let z = inst
                .subscheme
                .as_ref()
                .ok_or_else(|| Error::InstanceFormat("cb-check needs points".into()))?;
            let cb = cayley_bacharach(z, *degree)?;
            let conditions = imposes_independent_conditions(z, *degree)?;
            Ok(Report::new("cb-check", cli.seed.or(inst.seed))
                .inputs(json!({ "points": points.display().to_string(), "degree": degree, "field": inst.tag.to_string() }))
                .data(json!({ "cb": cb, "conditions": conditions })))
        }
        Command::IndepCheck { points, degree } => {
            let inst = load_instance(cli, points)?;
            let z = inst
                .subscheme
                .as_ref()
                .ok_or_else(|| Error::InstanceFormat("indep-check needs points".into()))?;
            let report = imposes_independent_conditions(z, *degree)?;
            Ok(Report::new("indep-check", cli.seed.or(inst.seed))
                .inputs(json!({ "points": points.display().to_string(), "degree": degree, "field": inst.tag.to_string() }))
                .data(serde_json::to_value(&report).expect("serializable")))
        }
        Command::CbCanonical { instance } => {
            let inst = load_instance(cli, instance)?;
            let ci = CompleteIntersection::new(inst.forms.clone())?;
            let z = inst
                .subscheme
                .as_ref()
                .ok_or_else(|| Error::InstanceFormat("cb-canonical needs points".into()))?;
            let cb = cb_with_respect_to_canonical(&ci, z)?;
            Ok(Report::new("cb-canonical", cli.seed.or(inst.seed))
                .inputs(json!({ "instance": instance.display().to_string(), "field": inst.tag.to_string() }))
                .data(json!({ "cb": cb, "canonical_twist": canonical_twist(&ci) })))
        }
        Command::Project { instance, center_forms } => {
            let inst = load_instance(cli, instance)?;
            let curve = curve_from_instance(cli, &inst)?;
            let center = center_from_forms(&inst, center_forms)?;
            let degree = projection_degree(&curve, &center)?;
            Ok(Report::new("project", cli.seed.or(inst.seed))
                .inputs(json!({ "instance": instance.display().to_string(), "center": center_forms, "field": inst.tag.to_string() }))
                .data(json!({
                    "projection_degree": degree,
                    "curve_degree": curve.degree(),
                    "center_intersection": curve.degree() - degree,
                    "rational_points": curve.points().len(),
                }))
                .caveat("rational census: intersection points counted over F_p only"))
        }
        Command::Fibers { instance, center_forms } => {
            let inst = load_instance(cli, instance)?;
            let curve = curve_from_instance(cli, &inst)?;
            let center = center_from_forms(&inst, center_forms)?;
            let pencil = PencilMap::from_center(center)?;
            let fibration = fibers_over_rational_points(&curve, &pencil)?;
            let hyperplanes = one_fiber_per_hyperplane(&curve, &pencil)?;
            let fibers: Vec<serde_json::Value> = fibration
                .fibers
                .iter()
                .map(|f| {
                    json!({
                        "t": f.t.to_string(),
                        "size": f.points.len(),
                        "full": f.full,
                        "points": f.points.points().iter().map(|p| p.base().to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(Report::new("fibers", cli.seed.or(inst.seed))
                .inputs(json!({ "instance": instance.display().to_string(), "center": center_forms, "field": inst.tag.to_string() }))
                .data(json!({
                    "pencil_degree": fibration.pencil_degree,
                    "center_points": fibration.center_points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "fibers": fibers,
                    "hyperplane_check": hyperplanes,
                })))
        }
        Command::SecantCensus { instance, k } => {
            let inst = load_instance(cli, instance)?;
            let curve = curve_from_instance(cli, &inst)?;
            let census = secant_census(&curve, *k, cli.budget)?;
            Ok(Report::new("secant-census", cli.seed.or(inst.seed))
                .inputs(json!({ "instance": instance.display().to_string(), "k": k, "field": inst.tag.to_string() }))
                .data(json!({ "census": census, "rational_points": curve.points().len() }))
                .caveat("rational census: only planes spanned by rational curve points are searched"))
        }
        Command::Gamma { instance } => {
            let inst = load_instance(cli, instance)?;
            let curve = curve_from_instance(cli, &inst)?;
            let gamma = gamma_census(&curve, cli.budget)?;
            Ok(Report::new("gamma", cli.seed.or(inst.seed))
                .inputs(json!({ "instance": instance.display().to_string(), "field": inst.tag.to_string() }))
                .data(json!({ "gamma": gamma, "rational_points": curve.points().len() }))
                .caveat("rational census: a lower bound for the geometric gamma"))
        }
        Command::Gonality { type_degrees, gamma, deg_s, alpha } => {
            let degrees = parse_degrees(type_degrees)?;
            let surface = match (deg_s, alpha) {
                (Some(s), Some(a)) => Some((*s, *a)),
                (None, None) => None,
                _ => {
                    return Err(Error::RangeViolation(
                        "--deg-s and --alpha must be given together".into(),
                    ))
                }
            };
            let report = GonalityReport::new(&degrees, *gamma, surface)?;
            let caveats: Vec<String> = report.hypothesis_violations.clone();
            let mut out = Report::new("gonality", cli.seed)
                .inputs(json!({ "type": degrees, "gamma": gamma, "deg_s": deg_s, "alpha": alpha }))
                .data(serde_json::to_value(&report).expect("serializable"));
            for c in caveats {
                out = out.caveat(&c);
            }
            Ok(out)
        }
        Command::DimAudit { type_degrees } => {
            let degrees = parse_degrees(type_degrees)?;
            let n = degrees.len() + 1;
            let audit = dimension_audit(&degrees, n)?;
            let caveats = audit.hypothesis_violations.clone();
            let mut out = Report::new("dim-audit", cli.seed)
                .inputs(json!({ "type": degrees, "ambient_dim": n }))
                .data(serde_json::to_value(&audit).expect("serializable"));
            for c in caveats {
                out = out.caveat(&c);
            }
            Ok(out)
        }
        Command::CbconjScan { grid, e, max_points } => {
            let degrees = parse_degrees(grid)?;
            let p = cli
                .prime
                .ok_or_else(|| Error::RangeViolation("cbconj-scan needs --prime".into()))?;
            let seed = cli.seed.unwrap_or(0);
            let (ci, z) = random_grid(&degrees, p, seed)?;
            let report = cbconj_scan(&ci, &z, *e, *max_points)?;
            let verdict = report.verdict;
            let caveats = report.caveats.clone();
            // The caveats move to the envelope.
            let mut data = serde_json::to_value(&report).expect("serializable");
            if let Some(map) = data.as_object_mut() {
                map.remove("caveats");
            }
            let mut out = Report::new("cbconj-scan", Some(seed))
                .inputs(json!({ "grid": degrees, "e": e, "prime": p, "max_points": max_points }))
                .data(data)
                .verdict(verdict);
            for c in caveats {
                out = out.caveat(&c);
            }
            Ok(out)
        }
        Command::VerifySuite { criterion } => {
            let outcomes = match criterion {
                Some(id) => {
                    if !(1..=8).contains(id) {
                        return Err(Error::RangeViolation("criterion ids run 1..=8".into()));
                    }
                    vec![verify::run_criterion(*id)]
                }
                None => verify::run_all(),
            };
            let all_passed = outcomes.iter().all(|o| o.passed);
            let lines: Vec<serde_json::Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "criterion": o.id,
                        "name": o.name,
                        "passed": o.passed,
                        "elapsed_ms": o.elapsed.as_millis() as u64,
                        "details": o.details,
                    })
                })
                .collect();
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            Ok(Report::new("verify-suite", cli.seed)
                .inputs(json!({ "criterion": criterion }))
                .data(json!({ "criteria": lines }))
                .verdict(if all_passed { Verdict::Pass } else { Verdict::Fail }))
        }
    }
}
