//! Command-line front end: exit 0 on success, 1 on a failed check, 2 on a usage or input error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use coble_core::catalog::{catalog, verify_example};
use coble_core::classify::{is_k3_type, log_enriques_shape, match_rational_case, terminal_shape, RationalTypeInput};
use coble_core::config::{recognize_fiber_support, CurveConfiguration, Multiset};
use coble_core::cremona::{noether_reduce, MultiplicityVector};
use coble_core::negcurves::{enumerate_negative_classes, SearchMode};
use coble_core::{BaseKind, IntersectionLattice};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "coble", version, about = "Picard lattice arithmetic and Coble surface checks")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a multiplicity vector "(d;m1,m2,...)" by quadratic transformations.
    Reduce {
        vector: String,
        /// Reduce even when the genus proxy is not zero.
        #[arg(long)]
        force: bool,
    },
    /// Arithmetic genus of a plane curve with the given multiplicities.
    Genus { vector: String },
    /// Match a rational-type configuration (JSON) against the sixteen cases.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Print every logged constraint.
        #[arg(long)]
        verbose: bool,
    },
    /// Enumerate numerical (-n)-classes on a blow-up lattice.
    Enumerate {
        /// P2, P1xP1 or Fb with b an integer (e.g. F3).
        #[arg(long, default_value = "P2")]
        base: String,
        #[arg(long)]
        points: usize,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        selfint: i64,
        #[arg(long)]
        cap: i64,
        /// Allow every lattice solution, not only effective shapes, in degree 0.
        #[arg(long)]
        lattice_only: bool,
    },
    /// Verify every claim of a catalog entry.
    VerifyExample {
        name: String,
        /// Parameter override, as key=value.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, i64)>,
    },
    /// Analyse a curve configuration (JSON).
    CheckConfig {
        file: PathBuf,
        /// Divisor as label=mult pairs separated by commas; defaults to all nodes with their multiplicities.
        #[arg(long)]
        divisor: Option<String>,
    },
    /// List catalog entries.
    Catalog,
}

fn parse_param(s: &str) -> std::result::Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v = v.trim().parse().map_err(|_| format!("parameter value `{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_base(s: &str) -> Result<BaseKind> {
    match s {
        "P2" => Ok(BaseKind::P2),
        "P1xP1" => Ok(BaseKind::Hirzebruch(0)),
        _ => {
            let b = s
                .strip_prefix("Fb")
                .or_else(|| s.strip_prefix('F'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| anyhow!("unknown base `{s}`; use P2, P1xP1 or F<b>"))?;
            Ok(BaseKind::Hirzebruch(b))
        }
    }
}

fn parse_divisor(s: &str) -> Result<Multiset> {
    s.split(',')
        .map(|item| {
            let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("expected label=mult, got `{item}`"))?;
            Ok((k.trim().to_string(), v.trim().parse().with_context(|| format!("bad multiplicity in `{item}`"))?))
        })
        .collect()
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(json_mode: bool, value: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
    } else {
        print!("{}", text());
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Ok(true) for success, Ok(false) for a failed check, Err for usage and input errors.
fn run(cli: Cli) -> Result<bool> {
    let js = cli.json;
    match cli.command {
        Command::Reduce { vector, force } => {
            let v: MultiplicityVector = vector.parse()?;
            match noether_reduce(&v, force) {
                Ok(r) => {
                    let ok = r.result.degree() <= 3;
                    emit(js, &json!({"vector": vector, "force": force, "reduction": to_value(&r), "reached_degree_3": ok}), || {
                        let mut out = format!("{}\n", r.input);
                        for s in &r.steps {
                            out += &format!(
                                "  quadratic at multiplicities {:?} ({} general) -> {}\n",
                                s.center_mults, s.general_points, s.after
                            );
                        }
                        out += &format!("result {} (degree {})\n", r.result, r.result.degree());
                        out
                    });
                    Ok(ok)
                }
                Err(e) => {
                    emit(js, &json!({"vector": vector, "force": force, "error": e.to_string(), "steps": to_value(&e.steps)}), || {
                        format!("reduction failed: {e}\n")
                    });
                    Ok(false)
                }
            }
        }
        Command::Genus { vector } => {
            let v: MultiplicityVector = vector.parse()?;
            let g = v.to_class()?.arithmetic_genus()?;
            let warning = v.irreducible_rational_warning();
            emit(js, &json!({"vector": vector, "genus": g, "warning": warning}), || {
                let mut out = format!("p_a = {g}\n");
                if let Some(w) = &warning {
                    out += &format!("warning: {w}\n");
                }
                out
            });
            Ok(true)
        }
        Command::Classify { input, verbose } => {
            let inp: RationalTypeInput = read_json(&input)?;
            let report = match_rational_case(&inp)?;
            emit(js, &json!({"input": to_value(&inp), "report": to_value(&report)}), || {
                let mut out = format!("matched cases: {:?}\n", report.matched_cases);
                for log in &report.cases {
                    if verbose {
                        out += &format!("case {}: {}\n", log.case, if log.matched { "match" } else { "no match" });
                        for c in &log.constraints {
                            out += &format!("  [{}] {}: {} vs {}\n", if c.pass { "ok" } else { "FAIL" }, c.name, c.lhs, c.rhs);
                        }
                        for a in &log.assumed {
                            out += &format!("  assumed: {a}\n");
                        }
                        for n in &log.notes {
                            out += &format!("  note: {n}\n");
                        }
                    } else if let Some(f) = log.failures().next() {
                        out += &format!("case {}: fails {} ({} vs {})\n", log.case, f.name, f.lhs, f.rhs);
                    }
                }
                out
            });
            Ok(!report.matched_cases.is_empty())
        }
        Command::Enumerate { base, points, selfint, cap, lattice_only } => {
            if selfint >= 0 {
                bail!("--selfint must be negative, got {selfint}");
            }
            let lat = IntersectionLattice::new(parse_base(&base)?, points);
            let mode = if lattice_only { SearchMode::LatticeOnly } else { SearchMode::EffectiveShape };
            let classes = enumerate_negative_classes(&lat, -selfint, cap, mode)?;
            let items: Vec<Value> =
                classes.iter().map(|c| json!({"class": c.to_string(), "coeffs": c.coeffs()})).collect();
            emit(
                js,
                &json!({"base": base, "points": points, "selfint": selfint, "cap": cap, "mode": to_value(&mode), "count": classes.len(), "classes": items}),
                || {
                    let mut out: String = classes.iter().map(|c| format!("{c}\n")).collect();
                    out += &format!("{} classes\n", classes.len());
                    out
                },
            );
            Ok(true)
        }
        Command::VerifyExample { name, params } => {
            let params: BTreeMap<String, i64> = params.into_iter().collect();
            let report = verify_example(&name, &params)?;
            emit(js, &to_value(&report), || {
                let mut out = String::new();
                for c in &report.claims {
                    out += &format!(
                        "{} {}: {} [{}] expected {} got {}{}\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.id,
                        c.description,
                        c.origin,
                        c.expected,
                        c.actual,
                        c.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
                    );
                }
                let passed = report.claims.iter().filter(|c| c.pass).count();
                out += &format!("{} {:?}: {passed}/{} claims pass\n", report.name, report.params, report.claims.len());
                out
            });
            Ok(report.passed)
        }
        Command::CheckConfig { file, divisor } => {
            let cfg: CurveConfiguration = read_json(&file)?;
            let d = match divisor {
                Some(s) => parse_divisor(&s)?,
                None => cfg.full_multiset(),
            };
            let pa = cfg.divisor_pa(&d)?;
            let snc = cfg.check_snc();
            let k3 = is_k3_type(&cfg);
            let terminal = terminal_shape(&cfg);
            let log_enriques = log_enriques_shape(&cfg);
            let fiber = recognize_fiber_support(&cfg).map(|(t, scale)| json!({"type": t.to_string(), "scale": scale}));
            let value = json!({
                "divisor": d,
                "self_intersection": cfg.intersect(&d, &d)?,
                "canonical_degree": cfg.canonical_degree(&d)?,
                "pa": to_value(&pa),
                "snc": to_value(&snc),
                "k3_type": k3.k3_type,
                "terminal": terminal,
                "log_enriques": to_value(&log_enriques),
                "fiber": fiber,
            });
            emit(js, &value, || {
                format!(
                    "divisor {}\n  D^2 = {}, K.D = {}, p_a = {}\n  snc: {}\n  k3 type: {}\n  terminal: {}\n  log Enriques: {}\n  fibre: {}\n",
                    value["divisor"],
                    value["self_intersection"],
                    value["canonical_degree"],
                    match pa.value() {
                        Some(v) => v.to_string(),
                        None => "undetermined".into(),
                    },
                    if snc.passes { "yes".to_string() } else { format!("no {:?}", snc.violations) },
                    k3.k3_type,
                    terminal,
                    log_enriques.log_enriques,
                    match recognize_fiber_support(&cfg) {
                        Some((t, 1)) => t.to_string(),
                        Some((t, k)) => format!("{k} x {t}"),
                        None => "none".into(),
                    },
                )
            });
            Ok(snc.passes)
        }
        Command::Catalog => {
            let entries: Vec<Value> = catalog()
                .iter()
                .map(|e| json!({"name": e.name, "title": e.title, "description": e.description, "params": e.params, "claims": e.claims.len()}))
                .collect();
            emit(js, &Value::Array(entries), || {
                catalog()
                    .iter()
                    .map(|e| {
                        let params = if e.params.is_empty() { String::new() } else { format!(" {:?}", e.params) };
                        format!("{:<28} {} ({} claims){params}\n", e.name, e.title, e.claims.len())
                    })
                    .collect()
            });
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
