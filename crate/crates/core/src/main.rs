use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hopf_g_tqft::eval::link::evaluate_link;
use hopf_g_tqft::eval::{flat_index, Evaluator, GradedMap};
use hopf_g_tqft::hopf::checks::{check_all, scalar_json, CheckConfig};
use hopf_g_tqft::hopf::{FactorizableHopfG, HopfGAlgebra, RibbonHopfG};
use hopf_g_tqft::label::Label;
use hopf_g_tqft::scalar::CycScalar;
use hopf_g_tqft::tangle::diagram::LinkDiagram;
use hopf_g_tqft::tangle::{parse_expr, show_object, GenKind, MorphExpr};
use hopf_g_tqft::uqsl2::{Sl2, Sl2Params};
use hopf_g_tqft::Error;

#[derive(Parser)]
#[command(name = "hgtqft", version, about = "Exact computations with quantum sl2 at odd roots of unity as a Hopf G-bialgebra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Config {
    /// Order of the root of unity (odd, at least 3).
    #[arg(long, default_value_t = 3)]
    r: u32,
    /// Labels live in (1/denominator)Z/2Z.
    #[arg(long, default_value_t = 2)]
    denominator: u32,
    /// Comma-separated labels, e.g. "0,1/2".
    #[arg(long)]
    labels: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the Hopf, ribbon and integral identities.
    Check {
        #[command(flatten)]
        cfg: Config,
    },
    /// Evaluate a generator word (s-expression) or a link diagram (JSON).
    Eval {
        input: PathBuf,
        #[command(flatten)]
        cfg: Config,
    },
    /// Invariant of a labeled link diagram.
    Invariant {
        input: PathBuf,
        #[command(flatten)]
        cfg: Config,
    },
    /// Matrix of one generator, labels given by --labels.
    Rep {
        generator: String,
        #[command(flatten)]
        cfg: Config,
    },
    /// Parameters and distinguished elements of the instance.
    Info {
        #[command(flatten)]
        cfg: Config,
    },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams(m) => Failure::Usage(m),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn build(cfg: &Config) -> std::result::Result<Sl2, Failure> {
    if cfg.denominator == 0 {
        return Err(Failure::Usage("denominator must be positive".into()));
    }
    let params = Sl2Params::new(cfg.r, cfg.denominator).map_err(|e| Failure::Usage(e.to_string()))?;
    Sl2::new(params).map_err(|e| Failure::Usage(e.to_string()))
}

fn labels(cfg: &Config) -> std::result::Result<Option<Vec<Label>>, Failure> {
    let Some(text) = &cfg.labels else { return Ok(None) };
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let l: Label = part.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
        if !l.fits_denominator(cfg.denominator) {
            return Err(Failure::Usage(format!("label {l} needs a denominator dividing {}", cfg.denominator)));
        }
        out.push(l);
    }
    Ok(Some(out))
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn header(cfg: &Config, h: &Sl2) -> Value {
    json!({ "r": cfg.r, "denominator": cfg.denominator, "conductor": h.field().conductor() })
}

fn check_labels_fit(labels: &[Label], d: u32) -> std::result::Result<(), Failure> {
    match labels.iter().find(|l| !l.fits_denominator(d)) {
        Some(l) => Err(Failure::Input(format!("label {l} needs a denominator dividing {d}; raise --denominator"))),
        None => Ok(()),
    }
}

fn map_json(h: &Sl2, m: &GradedMap) -> Value {
    let mut entries = Vec::new();
    for (j, col) in m.columns.iter().enumerate() {
        let mut col: Vec<(usize, &CycScalar)> = col.coeffs.iter().map(|(idx, c)| (flat_index(idx, m.dim), c)).collect();
        col.sort_by_key(|e| e.0);
        for (i, c) in col {
            if !c.is_zero() {
                entries.push(json!([i, j, scalar_json(c)]));
            }
        }
    }
    json!({
        "source": show_object(&m.source),
        "target": show_object(&m.target),
        "rows": m.n_rows(),
        "cols": m.n_columns(),
        "basis": (0..h.dim()).map(|i| h.basis_name(i)).collect::<Vec<_>>(),
        "entries": entries,
    })
}

fn invariant_json(cfg: &Config, h: &Sl2, text: &str) -> Outcome {
    let d = LinkDiagram::from_json(text)?;
    let labels: Vec<Label> = d.components.iter().map(|c| c.label).collect();
    check_labels_fit(&labels, cfg.denominator)?;
    let v = evaluate_link(h, &d)?;
    let mut out = header(cfg, h);
    out["components"] = json!(d.components.len());
    out["linking_matrix"] = json!(d.linking_matrix()?);
    out["value"] = scalar_json(&v);
    Ok((out, true))
}

fn expr_json(cfg: &Config, h: &Sl2, text: &str) -> Outcome {
    let e: MorphExpr = parse_expr(text)?;
    check_labels_fit(&e.labels(), cfg.denominator)?;
    let m = Evaluator::new(h).evaluate(&e)?;
    let mut out = header(cfg, h);
    out["expression"] = json!(e.to_string());
    out["matrix"] = map_json(h, &m);
    Ok((out, true))
}

fn run(cmd: &Cmd) -> (Outcome, Option<PathBuf>) {
    let cfg = match cmd {
        Cmd::Check { cfg } | Cmd::Info { cfg } | Cmd::Eval { cfg, .. } | Cmd::Invariant { cfg, .. } | Cmd::Rep { cfg, .. } => cfg,
    };
    let result = (|| -> Outcome {
        let h = build(cfg)?;
        let sample = labels(cfg)?;
        match cmd {
            Cmd::Check { .. } => {
                let mut cc = CheckConfig::new(sample.unwrap_or_else(|| Label::all_with_denominator(cfg.denominator)));
                cc.seed = cfg.seed;
                let report = check_all(&h, &cc);
                let mut out = header(cfg, &h);
                out["labels"] = json!(cc.labels);
                out["passed"] = json!(report.passed());
                out["results"] = serde_json::to_value(&report.results).expect("report serializes");
                let ok = report.passed();
                Ok((out, ok))
            }
            Cmd::Eval { input, .. } => {
                let text = read(input)?;
                if text.trim_start().starts_with('{') {
                    invariant_json(cfg, &h, &text)
                } else {
                    expr_json(cfg, &h, &text)
                }
            }
            Cmd::Invariant { input, .. } => invariant_json(cfg, &h, &read(input)?),
            Cmd::Rep { generator, .. } => {
                let kind = GenKind::from_name(generator).ok_or_else(|| Failure::Usage(format!("unknown generator {generator}")))?;
                let p = sample.unwrap_or_default();
                if p.len() != kind.arity() {
                    return Err(Failure::Usage(format!("{} takes {} labels, got {}", kind.name(), kind.arity(), p.len())));
                }
                let m = Evaluator::new(&h).generator(kind, &p)?;
                let mut out = header(cfg, &h);
                out["generator"] = json!(kind.name());
                out["labels"] = json!(p);
                out["matrix"] = map_json(&h, &m);
                Ok((out, true))
            }
            Cmd::Info { .. } => {
                let a = Label::ZERO;
                let mut out = header(cfg, &h);
                out["dimension"] = json!(h.dim());
                out["labels"] = json!(sample.unwrap_or_else(|| Label::all_with_denominator(cfg.denominator)));
                out["basis"] = json!((0..h.dim()).map(|i| h.basis_name(i)).collect::<Vec<_>>());
                let elems = [("pivotal", h.pivotal(a)?), ("ribbon", h.ribbon(a)?), ("cointegral", h.cointegral(a)?)];
                for (name, x) in elems {
                    out[name] = hopf_g_tqft::hopf::checks::elem_json(&h, &x);
                }
                out["integral_of_cointegral"] = scalar_json(&h.integral(&h.cointegral(a)?)?);
                Ok((out, true))
            }
        }
    })();
    (result, cfg.out.clone())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = run(&cli.cmd);
    match result {
        Ok((value, ok)) => {
            let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
