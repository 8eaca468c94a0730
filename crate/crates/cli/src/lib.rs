//! Command-line front end for the `fvh` library.
//!
//! Exit codes: 0 on success, 1 when a requested check fails or an internal
//! verification error occurs (with a JSON diagnostic), 2 on usage errors.

pub mod errata;
pub mod render;
pub mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fvh::algebra::{fmt_q, partitions, RatFunc, Var, Q};
use fvh::expr::{parse_selector, Selector};
use fvh::gap::{c_k_closed, c_k_series, r_g_polynomial, r_g_value, sigma_pair, solve_v};
use fvh::hierarchy::{
    flow_coeff_cj, flow_two_route, m_coeffs_via_tau_symmetry, omega, residue_normal_form, TauScalars,
};
use fvh::shift::{Lambda, LaxParams};
use fvh::Error;
use render::*;
use serde_json::{json, Value};
use suites::{CheckItem, Status};

/// Environment variable holding the worker count for parallel stages.
pub const WORKERS_ENV: &str = "FVH_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "fvh", version, about = "Exact computations for the fractional Volterra hierarchy")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Genus coefficients `P_g` of the string-equation solution.
    Pg {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        genus: usize,
    },
    /// `C_k` from the generating function and the Bernoulli closed form.
    Ck {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// `R_g` at one pair.
    RgValue {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        genus: usize,
    },
    /// `R_g` as a polynomial in `σ₁, σ₃`.
    RgPoly {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 200)]
        pair_budget: usize,
    },
    /// Normal-form coefficients `M_λ^{[g]}`.
    Mcoef {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 2)]
        genus: usize,
    },
    /// Flow right-hand side and its `C̄_J` table.
    Flow {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
    },
    /// Two-point function `Ω_{λ,μ}`.
    Omega {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[arg(long, default_value = "1")]
        mu: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
    },
    /// Runs a verification suite.
    Check {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        genus: usize,
        /// T-degree for the genus-0 suite.
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 200)]
        pair_budget: usize,
        /// Count printed forms with a documented correction as passing.
        #[arg(long)]
        accept_errata: bool,
    },
}

/// Rendered result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Artifact {
    json: Value,
    text: String,
    latex: String,
    ok: bool,
}

impl Artifact {
    fn render(&self, format: Format) -> String {
        let mut s = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("plain data"),
            Format::Text => self.text.trim_end().to_string(),
            Format::Latex => self.latex.trim_end().to_string(),
        };
        s.push('\n');
        s
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn numeric_pair(p: &Pair) -> fvh::Result<LaxParams> {
    match (p.m, p.n) {
        (Some(m), Some(n)) => LaxParams::new(m, n),
        _ => Err(usage("--m and --n are required")),
    }
}

/// `None` means symbolic in `m, n`.
fn optional_pair(p: &Pair) -> fvh::Result<Option<LaxParams>> {
    match (p.m, p.n) {
        (None, None) => Ok(None),
        _ => numeric_pair(p).map(Some),
    }
}

fn lambda_of(params: &LaxParams, src: &str) -> fvh::Result<Lambda> {
    let sel: Selector = parse_selector(src)?;
    Lambda::new(params, sel.value(params.m, params.n))
}

fn scalar_entry(value: ScalarOut) -> (Value, String, String) {
    match value {
        ScalarOut::Num(q) => (q_json(&q), fmt_q(&q), latex_q(&q)),
        ScalarOut::Sym(r) => (json!({"expr": r.to_string()}), r.to_string(), latex_ratfunc(&r)),
    }
}

enum ScalarOut {
    Num(Q),
    Sym(RatFunc),
}

fn cmd_pg(pair: &Pair, genus: usize) -> fvh::Result<Artifact> {
    let vals: Vec<ScalarOut> = match optional_pair(pair)? {
        Some(p) => solve_v(&p.mq(), &p.nq(), genus)?.into_iter().map(ScalarOut::Num).collect(),
        None => solve_v(&RatFunc::var(Var::M), &RatFunc::var(Var::N), genus)?
            .into_iter()
            .map(ScalarOut::Sym)
            .collect(),
    };
    let mut js = Vec::new();
    let (mut text, mut latex) = (String::new(), String::new());
    for (i, v) in vals.into_iter().enumerate() {
        let g = i + 1;
        let (j, t, l) = scalar_entry(v);
        let mut entry = json!({"g": g});
        for (k, val) in j.as_object().expect("object").iter() {
            entry[k] = val.clone();
        }
        js.push(entry);
        text.push_str(&format!("P_{g} = {t}\n"));
        latex.push_str(&format!("P_{{{g}}} = {l}\n"));
    }
    Ok(Artifact {
        json: json!({"P": js}),
        text,
        latex,
        ok: true,
    })
}

fn cmd_ck(pair: &Pair, order: usize) -> fvh::Result<Artifact> {
    let rows: Vec<(ScalarOut, bool)> = match optional_pair(pair)? {
        Some(p) => {
            let (m, n) = (p.mq(), p.nq());
            c_k_series(&m, &n, order)
                .into_iter()
                .enumerate()
                .map(|(k, s)| {
                    let agree = c_k_closed(&m, &n, k) == s;
                    (ScalarOut::Num(s), agree)
                })
                .collect()
        }
        None => {
            let (m, n) = (RatFunc::var(Var::M), RatFunc::var(Var::N));
            c_k_series(&m, &n, order)
                .into_iter()
                .enumerate()
                .map(|(k, s)| {
                    let agree = c_k_closed(&m, &n, k) == s;
                    (ScalarOut::Sym(s), agree)
                })
                .collect()
        }
    };
    let ok = rows.iter().all(|(_, a)| *a);
    let mut js = Vec::new();
    let (mut text, mut latex) = (String::new(), String::new());
    for (k, (v, agree)) in rows.into_iter().enumerate() {
        let (j, t, l) = scalar_entry(v);
        js.push(json!({"k": k, "value": j, "closed_form_agrees": agree}));
        text.push_str(&format!("C_{k} = {t}{}\n", if agree { "" } else { "  [closed form disagrees]" }));
        latex.push_str(&format!("C_{{{k}}} = {l}\n"));
    }
    Ok(Artifact {
        json: json!({"C": js, "agree": ok}),
        text,
        latex,
        ok,
    })
}

fn cmd_rg_value(pair: &Pair, genus: usize) -> fvh::Result<Artifact> {
    let p = numeric_pair(pair)?;
    let v = r_g_value(&p, genus)?;
    let (s1, s3) = sigma_pair(p.m, p.n);
    Ok(Artifact {
        json: json!({"m": p.m, "n": p.n, "g": genus, "sigma1": q_json(&s1), "sigma3": q_json(&s3), "R": q_json(&v)}),
        text: format!("R_{genus}({}, {}) = {}\nsigma1 = {}, sigma3 = {}\n", p.m, p.n, fmt_q(&v), fmt_q(&s1), fmt_q(&s3)),
        latex: format!("R_{{{genus}}} = {}\n", latex_q(&v)),
        ok: true,
    })
}

fn cmd_rg_poly(genus: usize, budget: usize) -> fvh::Result<Artifact> {
    let (poly, d) = r_g_polynomial(genus, budget)?;
    let coeffs: Vec<Value> = poly
        .coeffs
        .iter()
        .map(|(&(k, l), c)| json!({"k": k, "l": l, "coeff": q_json(c)}))
        .collect();
    let pairs: Vec<Value> = d.pairs_used.iter().map(|(m, n)| json!([m, n])).collect();
    Ok(Artifact {
        json: json!({
            "g": genus,
            "coeffs": coeffs,
            "diagnostics": {"pairs_used": pairs, "rank": d.rank, "unknowns": d.unknowns, "surplus_rows": d.surplus_rows, "residual": "zero"}
        }),
        text: format!(
            "R_{genus} = {}\n# {} pairs, rank {}/{}, {} surplus rows, zero residual\n",
            text_sigma_poly(&poly.coeffs),
            d.pairs_used.len(),
            d.rank,
            d.unknowns,
            d.surplus_rows
        ),
        latex: format!("R_{{{genus}}} = {}\n", latex_sigma_poly(&poly.coeffs)),
        ok: true,
    })
}

fn cmd_mcoef(pair: &Pair, lambda: &str, genus: usize) -> fvh::Result<Artifact> {
    let (mut js, mut text, mut latex) = (Vec::new(), String::new(), String::new());
    match optional_pair(pair)? {
        Some(p) => {
            let l = lambda_of(&p, lambda)?;
            let r = residue_normal_form(&p, &l, genus)?;
            text.push_str(&format!("c_lambda = {}\n", fmt_q(&r.c)));
            for (i, mg) in r.m.iter().enumerate() {
                let g = i + 1;
                js.push(json!({"g": g, "terms": diffpoly_json(mg)}));
                text.push_str(&format!("M^[{g}] = {}\n", mg.render()));
                latex.push_str(&format!("M_{{\\lambda}}^{{[{g}]}} = {}\n", latex_diffpoly_q(mg)));
            }
            Ok(Artifact {
                json: json!({"m": p.m, "n": p.n, "lambda": fmt_q(l.value()), "c": q_json(&r.c), "M": js}),
                text,
                latex,
                ok: true,
            })
        }
        None => {
            let sel = parse_selector(lambda)?;
            let ms = m_coeffs_via_tau_symmetry(&TauScalars::<RatFunc>::symbolic(sel.symbolic()), genus)?;
            for (i, mg) in ms.iter().enumerate() {
                let g = i + 1;
                let terms: Vec<Value> = mg
                    .terms()
                    .map(|(k, c)| json!({"kappa": q_json(&k.kappa), "jets": k.jets, "coeff": c.to_string()}))
                    .collect();
                js.push(json!({"g": g, "terms": terms}));
                text.push_str(&format!("M^[{g}] = {}\n", mg.render()));
                latex.push_str(&format!("M_{{\\lambda}}^{{[{g}]}} = {}\n", latex_diffpoly_rf(mg)));
            }
            Ok(Artifact {
                json: json!({"lambda": sel.to_string(), "M": js}),
                text,
                latex,
                ok: true,
            })
        }
    }
}

fn cmd_flow(pair: &Pair, lambda: &str, genus: usize) -> fvh::Result<Artifact> {
    let p = numeric_pair(pair)?;
    let l = lambda_of(&p, lambda)?;
    let flow = flow_two_route(&p, &l, genus)?;
    let mut table = Vec::new();
    let mut text = text_series(&flow);
    let mut latex = format!("\\partial_{{T_{{{}}}}} u = {}\n", fmt_q(l.value()), latex_series(&flow));
    for w in (1..=2 * genus as u32 + 1).step_by(2) {
        for jets in partitions(w) {
            let c = flow_coeff_cj(&p, &l, &flow, &jets);
            let name: String = jets.iter().map(|j| j.to_string()).collect();
            table.push(json!({"J": jets, "value": q_json(&c)}));
            text.push_str(&format!("Cbar_{name} = {}\n", fmt_q(&c)));
            latex.push_str(&format!("\\bar C_{{{name}}} = {}\n", latex_q(&c)));
        }
    }
    Ok(Artifact {
        json: json!({"m": p.m, "n": p.n, "lambda": fmt_q(l.value()), "flow": series_json(&flow), "cbar": table}),
        text,
        latex,
        ok: true,
    })
}

fn cmd_omega(pair: &Pair, lambda: &str, mu: &str, genus: usize) -> fvh::Result<Artifact> {
    let p = numeric_pair(pair)?;
    let (l, u) = (lambda_of(&p, lambda)?, lambda_of(&p, mu)?);
    let om = omega(&p, &l, &u, genus)?;
    Ok(Artifact {
        json: json!({"m": p.m, "n": p.n, "lambda": fmt_q(l.value()), "mu": fmt_q(u.value()), "omega": series_json(&om)}),
        text: text_series(&om),
        latex: format!("\\Omega_{{{},{}}} = {}\n", fmt_q(l.value()), fmt_q(u.value()), latex_series(&om)),
        ok: true,
    })
}

fn default_pairs(suite: &str) -> Vec<(u64, u64)> {
    match suite {
        "difference-equation" => vec![(1, 2), (1, 3), (2, 3)],
        _ => vec![(1, 2), (2, 3)],
    }
}

fn cmd_check(
    suite: &str,
    pair: &Pair,
    genus: usize,
    degree: u32,
    budget: usize,
    accept_errata: bool,
) -> fvh::Result<Artifact> {
    let pairs: Vec<LaxParams> = match optional_pair(pair)? {
        Some(p) => vec![p],
        None => default_pairs(suite).into_iter().map(|(m, n)| LaxParams::new(m, n)).collect::<fvh::Result<_>>()?,
    };
    let items: Vec<CheckItem> = match suite {
        "evenness" => suites::evenness(&pairs, genus)?,
        "two-route" => suites::two_route(&pairs, genus)?,
        "difference-equation" => suites::difference_equation(&pairs, genus)?,
        "genus0" => suites::genus0(&pairs, degree)?,
        "fixtures" => suites::fixtures_suite(budget)?,
        other => return Err(usage(format!("unknown suite {other}"))),
    };
    let failing = |s: Status| s == Status::Fail || (s == Status::Erratum && !accept_errata);
    let ok = !items.iter().any(|i| failing(i.status));
    let mut text = String::new();
    for i in &items {
        let tag = serde_json::to_value(i.status).expect("enum").as_str().expect("string").to_uppercase();
        text.push_str(&format!("[{tag}] {} {}", i.suite, i.name));
        if let Some(d) = &i.detail {
            text.push_str(&format!(" — {d}"));
        }
        text.push('\n');
    }
    text.push_str(if ok { "suite passed\n" } else { "suite FAILED\n" });
    Ok(Artifact {
        json: json!({"suite": suite, "passed": ok, "accept_errata": accept_errata, "items": items}),
        latex: text.clone(),
        text,
        ok,
    })
}

fn dispatch(cli: &Cli) -> fvh::Result<Artifact> {
    match &cli.command {
        Command::Pg { pair, genus } => cmd_pg(pair, *genus),
        Command::Ck { pair, order } => cmd_ck(pair, *order),
        Command::RgValue { pair, genus } => cmd_rg_value(pair, *genus),
        Command::RgPoly { genus, pair_budget } => cmd_rg_poly(*genus, *pair_budget),
        Command::Mcoef { pair, lambda, genus } => cmd_mcoef(pair, lambda, *genus),
        Command::Flow { pair, lambda, genus } => cmd_flow(pair, lambda, *genus),
        Command::Omega { pair, lambda, mu, genus } => cmd_omega(pair, lambda, mu, *genus),
        Command::Check {
            suite,
            pair,
            genus,
            degree,
            pair_budget,
            accept_errata,
        } => cmd_check(suite, pair, *genus, *degree, *pair_budget, *accept_errata),
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidParams(_) | Error::Parse { .. } | Error::NotInIndexSet(_) | Error::GenusTooSmall(_)
    )
}

/// Parses `args` (including the program name) and runs the command.
/// Output for `--output` is written to the file; `stdout` is then empty.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Ok(w) = std::env::var(WORKERS_ENV) {
        match w.parse::<usize>() {
            Ok(k) if k > 0 => {
                // a pool configured earlier in this process stays in place
                let _ = fvh::gap::configure_workers(k);
            }
            _ => {
                return Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("{WORKERS_ENV} must be a positive integer, got {w:?}\n"),
                }
            }
        }
    }
    let (code, body) = match dispatch(&cli) {
        Ok(a) => (if a.ok { 0 } else { 1 }, a.render(cli.format)),
        Err(e) => {
            let code = if is_usage_error(&e) { 2 } else { 1 };
            let diag = serde_json::to_string_pretty(&json!({"error": e.to_string(), "exit": code})).expect("plain data");
            return Outcome {
                code,
                stdout: String::new(),
                stderr: diag + "\n",
            };
        }
    };
    match &cli.output {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome { code, stdout: body, stderr: String::new() },
    }
}
