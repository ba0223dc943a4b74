//! Command-line surface for the CMV spectral toolkit.
//!
//! Subcommands: spectrum | trace | borg | verify | measure. Input comes from
//! a JSON config (see `--help`); angles are radians in [0, 2π) and complex
//! numbers are encoded as [re, im] pairs. Every command is deterministic for
//! a fixed config. Exit codes: 0 success, 2 configuration or validation
//! error, 3 numerical failure. `CMV_THREADS` caps internal parallelism.

use cmv_core::arc::CircleArc;
use cmv_core::borg::{borg_forward, borg_inverse, check_reflectionless, ReflectionlessOptions};
use cmv_core::config::GeneratorSpec;
use cmv_core::error::Error as CoreError;
use cmv_core::floquet::FloquetData;
use cmv_core::herglotz::{ac_density, CaratheodoryFunction, Orientation, RadialSchedule};
use cmv_core::trace::{l_coeffs, xi_profile, xi_quadrature_check, J_CAP};
use cmv_core::weyl::{m11, MMethod};
use cmv_core::{CmvSection, VerblunskySequence, C64};
use serde::Deserialize;
use serde_json::json;
use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "\
cmv - CMV operator spectral toolkit

USAGE:
    cmv <COMMAND> --config PATH [OPTIONS]

COMMANDS:
    spectrum    band arcs (periodic/geometric generators) and section
                eigenvalue angles
    trace       trace coefficients L_j with quadrature residuals
                CSV columns: j, re_l, im_l, residual
    borg        arc -> geometric sequence (config has \"arc\", optional
                \"phase\"), or geometric generator -> arc
    verify      reflectionless residual report over the spectrum
    measure     boundary data of M_{1,1} at one site
                CSV columns: theta, re_f, im_f, density, xi

OPTIONS:
    --config PATH   JSON run configuration (see below)
    --json          machine-parseable JSON on stdout
    --grid N        circle grid size, power of two
    --section N     finite-section size
    --tol X         verification tolerance
    --out PATH      output path or prefix; spectrum writes PATH.arcs.json,
                    PATH.eigs.csv and (periodic generators) PATH.delta.csv
                    with columns theta, delta; other commands write PATH

CONFIG (all fields optional unless a command needs them):
    {
      \"generator\": {\"type\": \"periodic\",  \"cycle\": [[0.3,0.0],[0.6,0.0]]}
                   | {\"type\": \"geometric\", \"alpha0\": [0.7,0.0], \"ratio\": [0.0,-1.0]}
                   | {\"type\": \"explicit\",  \"values\": [[0.1,0.0]], \"offset\": 0},
      \"arc\": {\"theta0\": 0.0, \"theta1\": 3.14159},
      \"arcs\": [ ... ],            // spectrum override for verify
      \"phase\": 0.0,               // borg forward phase convention
      \"site\": 0, \"sites\": [0, 1],
      \"j_max\": 4, \"grid\": 4096, \"section\": 256,
      \"r_depth\": 12, \"tol\": 1e-4, \"edge_margin\": 1e-3
    }

Angles are radians in [0, 2*pi); complex numbers are [re, im] pairs.
Exit codes: 0 success, 2 config/validation error, 3 numerical failure.
The environment variable CMV_THREADS caps worker threads.
";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    generator: Option<GeneratorSpec>,
    arc: Option<ArcSpec>,
    arcs: Option<Vec<ArcSpec>>,
    phase: Option<f64>,
    site: Option<i64>,
    sites: Option<Vec<i64>>,
    j_max: Option<usize>,
    grid: Option<usize>,
    section: Option<usize>,
    r_depth: Option<u32>,
    tol: Option<f64>,
    edge_margin: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
struct ArcSpec {
    theta0: f64,
    theta1: f64,
}

impl ArcSpec {
    fn build(&self) -> Result<CircleArc, Failure> {
        CircleArc::closed(self.theta0, self.theta1).map_err(Failure::from)
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::Config { .. }
            | CoreError::ArcOrdering { .. }
            | CoreError::InvalidWindow { .. }
            | CoreError::CoefficientOutsideDisk { .. }
            | CoreError::NotUnimodular { .. }
            | CoreError::IndexOutOfRange { .. }
            | CoreError::NotGeometric
            | CoreError::NotPeriodic
            | CoreError::SectionTooSmall { .. } => 2,
            _ => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::config(format!("i/o error: {e}"))
    }
}

#[derive(Debug)]
struct CliArgs {
    command: String,
    config: Option<PathBuf>,
    json: bool,
    grid: Option<usize>,
    section: Option<usize>,
    tol: Option<f64>,
    out: Option<PathBuf>,
}

fn parse_args(mut args: std::env::Args) -> Result<CliArgs, Failure> {
    let _bin = args.next();
    let command = match args.next() {
        Some(c) => c,
        None => return Err(Failure::config(USAGE)),
    };
    if command == "--help" || command == "-h" || command == "help" {
        println!("{USAGE}");
        std::process::exit(0);
    }
    let mut out = CliArgs {
        command,
        config: None,
        json: false,
        grid: None,
        section: None,
        tol: None,
        out: None,
    };
    let next_value = |args: &mut std::env::Args, flag: &str| {
        args.next()
            .ok_or_else(|| Failure::config(format!("flag {flag} needs a value")))
    };
    while let Some(a) = args.next() {
        match a.as_str() {
            "--config" => out.config = Some(PathBuf::from(next_value(&mut args, "--config")?)),
            "--json" => out.json = true,
            "--grid" => {
                out.grid = Some(
                    next_value(&mut args, "--grid")?
                        .parse()
                        .map_err(|e| Failure::config(format!("bad --grid: {e}")))?,
                )
            }
            "--section" => {
                out.section = Some(
                    next_value(&mut args, "--section")?
                        .parse()
                        .map_err(|e| Failure::config(format!("bad --section: {e}")))?,
                )
            }
            "--tol" => {
                out.tol = Some(
                    next_value(&mut args, "--tol")?
                        .parse()
                        .map_err(|e| Failure::config(format!("bad --tol: {e}")))?,
                )
            }
            "--out" => out.out = Some(PathBuf::from(next_value(&mut args, "--out")?)),
            "--help" | "-h" => {
                println!("{USAGE}");
                std::process::exit(0);
            }
            other => return Err(Failure::config(format!("unknown flag {other}"))),
        }
    }
    Ok(out)
}

/// Resolved parameters after config + flag merging and validation.
struct Params {
    seq: Option<VerblunskySequence>,
    config: RunConfig,
    grid: usize,
    section: usize,
    tol: f64,
    r_depth: u32,
}

fn load_params(cli: &CliArgs) -> Result<Params, Failure> {
    let config: RunConfig = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Failure::config(format!("config parse error: {e}")))?
        }
        None => RunConfig::default(),
    };
    let grid = cli.grid.or(config.grid).unwrap_or(4096);
    if grid == 0 || !grid.is_power_of_two() {
        return Err(Failure::config(format!(
            "grid must be a positive power of two, got {grid}"
        )));
    }
    let section = cli.section.or(config.section).unwrap_or(256);
    if section < 8 {
        return Err(Failure::config("section must be at least 8"));
    }
    let tol = cli.tol.or(config.tol).unwrap_or(1e-4);
    if tol <= 0.0 || tol.is_nan() {
        return Err(Failure::config("tol must be positive"));
    }
    let r_depth = config.r_depth.unwrap_or(12);
    if !(1..=30).contains(&r_depth) {
        return Err(Failure::config("r_depth must lie in 1..=30"));
    }
    let seq = match &config.generator {
        Some(g) => Some(g.build().map_err(Failure::from)?),
        None => None,
    };
    Ok(Params {
        seq,
        config,
        grid,
        section,
        tol,
        r_depth,
    })
}

fn need_seq(p: &Params) -> Result<&VerblunskySequence, Failure> {
    p.seq
        .as_ref()
        .ok_or_else(|| Failure::config("this command needs a \"generator\" in the config"))
}

fn write_or_print(path: Option<&PathBuf>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, content)?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

struct Bands {
    arcs: Vec<CircleArc>,
    closed_gaps: Vec<f64>,
}

/// Band arcs for periodic generators (Floquet scan) and geometric ones
/// (gauge reduction); explicit windows have no infinite-volume bands.
fn spectrum_arcs(seq: &VerblunskySequence, grid: usize) -> Result<Option<Bands>, Failure> {
    if seq.periodic_cycle().is_some() {
        let bands = FloquetData::new(seq, 0)
            .map_err(Failure::from)?
            .band_arcs(grid, 1e-10)
            .map_err(Failure::from)?;
        return Ok(Some(Bands {
            arcs: bands.arcs,
            closed_gaps: bands.closed_gaps,
        }));
    }
    if seq.geometric_parameters().is_some() {
        let arc = borg_inverse(seq).map_err(Failure::from)?;
        return Ok(Some(Bands {
            arcs: vec![arc],
            closed_gaps: Vec::new(),
        }));
    }
    Ok(None)
}

fn arcs_json(arcs: &[CircleArc], closed_gaps: &[f64]) -> serde_json::Value {
    json!({
        "arcs": arcs
            .iter()
            .map(|a| json!({"theta0": a.theta0(), "theta1": a.theta1()}))
            .collect::<Vec<_>>(),
        "closed_gaps": closed_gaps,
    })
}

fn cmd_spectrum(cli: &CliArgs, p: &Params) -> Result<(), Failure> {
    let seq = need_seq(p)?;
    let bands = spectrum_arcs(seq, p.grid)?;
    let (arcs, gaps) = match &bands {
        Some(b) => (b.arcs.clone(), b.closed_gaps.clone()),
        None => (Vec::new(), Vec::new()),
    };

    let sec = CmvSection::build(seq, 0, p.section as i64 - 1, 0.0, 0.0).map_err(Failure::from)?;
    let eig = sec.eigendecompose().map_err(Failure::from)?;
    let mut angles: Vec<f64> = eig.values.iter().map(|v| v.arg().rem_euclid(TAU)).collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let arcs_doc = arcs_json(&arcs, &gaps);
    let mut csv = String::from("theta\n");
    for a in &angles {
        csv.push_str(&format!("{a:.16e}\n"));
    }

    match &cli.out {
        Some(prefix) => {
            let arcs_path = prefix.with_extension("arcs.json");
            let eigs_path = prefix.with_extension("eigs.csv");
            std::fs::write(&arcs_path, format!("{arcs_doc}\n"))?;
            std::fs::write(&eigs_path, &csv)?;
            // discriminant scan for periodic generators
            if let Ok(f) = FloquetData::new(seq, 0) {
                let delta_path = prefix.with_extension("delta.csv");
                let mut dcsv = String::from("theta,delta\n");
                for m in 0..p.grid {
                    let th = TAU * m as f64 / p.grid as f64;
                    let d = f.discriminant_theta(th).map_err(Failure::from)?;
                    dcsv.push_str(&format!("{th:.16e},{d:.16e}\n"));
                }
                std::fs::write(&delta_path, &dcsv)?;
            }
            if cli.json {
                println!(
                    "{}",
                    json!({"arcs": arcs_doc["arcs"], "closed_gaps": arcs_doc["closed_gaps"],
                           "arcs_file": arcs_path, "eigenvalues_file": eigs_path})
                );
            } else {
                println!("wrote {} and {}", arcs_path.display(), eigs_path.display());
            }
        }
        None => {
            if cli.json {
                println!(
                    "{}",
                    json!({"arcs": arcs_doc["arcs"], "closed_gaps": arcs_doc["closed_gaps"],
                           "eigenvalue_angles": angles})
                );
            } else {
                if arcs.is_empty() {
                    println!("band arcs: (not available for this generator)");
                } else {
                    println!("band arcs:");
                    for a in &arcs {
                        println!("  [{:.10}, {:.10}]", a.theta0(), a.theta1());
                    }
                }
                println!("section eigenvalue angles ({}):", angles.len());
                print!("{csv}");
            }
        }
    }
    Ok(())
}

fn cmd_trace(cli: &CliArgs, p: &Params) -> Result<(), Failure> {
    let seq = need_seq(p)?;
    let site = p.config.site.unwrap_or(0);
    let mut j_max = p.config.j_max.unwrap_or(4);
    if j_max > J_CAP {
        eprintln!("warning: j_max {j_max} capped at {J_CAP}");
        j_max = J_CAP;
    }
    let sched = RadialSchedule::new(4, p.r_depth);
    let l = l_coeffs(seq, site, j_max, None).map_err(Failure::from)?;
    let res = xi_quadrature_check(seq, site, j_max, p.grid, sched, MMethod::Auto)
        .map_err(Failure::from)?;
    if cli.json {
        let rows: Vec<_> = l
            .iter()
            .zip(res.iter())
            .enumerate()
            .map(|(i, (lj, rj))| json!({"j": i + 1, "l": [lj.re, lj.im], "residual": rj}))
            .collect();
        let doc = json!({"site": site, "rows": rows});
        match &cli.out {
            Some(path) => {
                std::fs::write(path, format!("{doc}\n"))?;
                println!("wrote {}", path.display());
            }
            None => println!("{doc}"),
        }
    } else {
        let mut csv = String::from("j,re_l,im_l,residual\n");
        for (i, (lj, rj)) in l.iter().zip(res.iter()).enumerate() {
            csv.push_str(&format!(
                "{},{:.16e},{:.16e},{:.3e}\n",
                i + 1,
                lj.re,
                lj.im,
                rj
            ));
        }
        write_or_print(cli.out.as_ref(), &csv)?;
        if let Some(path) = &cli.out {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_borg(cli: &CliArgs, p: &Params) -> Result<(), Failure> {
    let doc = if let Some(arc_spec) = &p.config.arc {
        let arc = arc_spec.build()?;
        let phase = p.config.phase.unwrap_or(0.0);
        let (seq, result) = borg_forward(&arc, phase);
        let (a0, g) = seq.geometric_parameters().expect("forward is geometric");
        json!({
            "result": result,
            "generator": {
                "type": "geometric",
                "alpha0": [a0.re, a0.im],
                "ratio": [g.re, g.im],
            },
        })
    } else {
        let seq = need_seq(p)?;
        if seq.geometric_parameters().is_none() {
            return Err(Failure::config(
                "borg needs an \"arc\" (forward) or a geometric generator (inverse)",
            ));
        }
        let arc = borg_inverse(seq).map_err(Failure::from)?;
        json!({"theta0": arc.theta0(), "theta1": arc.theta1()})
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, format!("{doc}\n"))?;
            println!("wrote {}", path.display());
        }
        None => println!("{doc}"),
    }
    Ok(())
}

fn cmd_verify(cli: &CliArgs, p: &Params) -> Result<(), Failure> {
    let seq = need_seq(p)?;
    let arcs: Vec<CircleArc> = match &p.config.arcs {
        Some(list) => list
            .iter()
            .map(|a| a.build())
            .collect::<Result<Vec<_>, _>>()?,
        None => match spectrum_arcs(seq, p.grid)? {
            Some(b) => b.arcs,
            None => {
                return Err(Failure::config(
                    "explicit generators need \"arcs\" in the config for verify",
                ))
            }
        },
    };
    let sites = p.config.sites.clone().unwrap_or_else(|| vec![0, 1]);
    let opts = ReflectionlessOptions {
        tol: p.tol,
        edge_margin: p.config.edge_margin.unwrap_or(1e-3),
        grid_per_arc: 96,
        schedule: RadialSchedule::new(4, p.r_depth),
        method: MMethod::Auto,
    };
    let report = check_reflectionless(seq, &arcs, &sites, &opts).map_err(Failure::from)?;

    let doc = serde_json::to_value(&report).expect("report serializes");
    if cli.json {
        println!("{doc}");
    } else {
        println!("reflectionless verification (tol {:.1e}):", report.tol);
        println!(
            "site | phi_product |    m_sum    |     xi      |   im_m11    |  im_phi11   | verdict"
        );
        for s in &report.sites {
            println!(
                "{:4} | {:>11.3e} | {:>11.3e} | {:>11.3e} | {:>11.3e} | {:>11.3e} | {}",
                s.site, s.phi_product, s.m_sum, s.xi, s.im_m11, s.im_phi11, s.verdict
            );
        }
        println!("overall verdict: {}", report.verdict);
    }
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{doc}\n"))?;
        if !cli.json {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn cmd_measure(cli: &CliArgs, p: &Params) -> Result<(), Failure> {
    let seq = need_seq(p)?;
    let site = p.config.site.unwrap_or(0);
    let sched = RadialSchedule::new(4, p.r_depth);
    let r_fixed = 1.0 - 2f64.powi(-(p.r_depth as i32));
    let grid = p.grid;

    let xi = xi_profile(seq, site, grid, sched, MMethod::Auto).map_err(Failure::from)?;
    let seq_f = seq.clone();
    let f = CaratheodoryFunction::from_fn(Orientation::Caratheodory, move |z| {
        m11(&seq_f, site, z, MMethod::Auto)
    });
    let mut csv = String::from("theta,re_f,im_f,density,xi\n");
    for m in 0..grid {
        let theta = TAU * m as f64 / grid as f64;
        let fv = f
            .eval(C64::from_polar(r_fixed, theta))
            .map_err(Failure::from)?;
        let dens = ac_density(&f, C64::from_polar(1.0, theta), sched).map_err(Failure::from)?;
        csv.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            theta, fv.re, fv.im, dens.value, xi.xi[m]
        ));
    }
    write_or_print(cli.out.as_ref(), &csv)?;
    if let Some(path) = &cli.out {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run() -> Result<(), Failure> {
    let cli = parse_args(std::env::args())?;
    let params = load_params(&cli)?;
    match cli.command.as_str() {
        "spectrum" => cmd_spectrum(&cli, &params),
        "trace" => cmd_trace(&cli, &params),
        "borg" => cmd_borg(&cli, &params),
        "verify" => cmd_verify(&cli, &params),
        "measure" => cmd_measure(&cli, &params),
        other => Err(Failure::config(format!(
            "unknown command {other}; commands are spectrum | trace | borg | verify | measure"
        ))),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
