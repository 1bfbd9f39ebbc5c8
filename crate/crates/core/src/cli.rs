//! The `prm` command line.
//!
//! Exit codes: 0 success, 1 internal failure, 2 a measured value disagrees
//! with its closed form (or with the embedded reference), 3 enumeration
//! budget exceeded, 64 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analyze::{
    design_lambda, distribution_and_supports, DesignCheck, EnumOptions, DEFAULT_BUDGET,
};
use crate::error::Error;
use crate::prm::{
    check_hull_basis, classify_with, construct, described_dual, dim_mr, dim_sorensen,
    dual_description, hull_dim_predicted, min_dist_formula, HullPrediction, PrmParams, Regime,
};
use crate::selftest::{run_selftest, SelftestOptions, C333};
use crate::sweep::{csv_line, run_sweep, SweepSpec, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "prm",
    version,
    about = "Projective Reed-Muller codes: parameters, duals, hulls, weight enumerators, designs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Projective dimension (comma-separated list for sweep)
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Degree (comma-separated list for sweep; default there is every proper k)
    #[arg(long, global = true, value_delimiter = ',')]
    pub k: Vec<u32>,
    /// Field size, a prime power (comma-separated list for sweep)
    #[arg(long, global = true, value_delimiter = ',')]
    pub q: Vec<u32>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Largest number of messages an enumeration may visit
    #[arg(long, global = true)]
    pub budget: Option<u128>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Reserved; every computation is deterministic
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also print the relevant matrix in `q rows cols` text form
    #[arg(long, global = true)]
    pub emit_matrix: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Length, dimension (both formulas), distance and regime
    Params,
    /// Predicted against constructed self-duality, self-orthogonality, LCD and hull dimension
    Classify,
    /// Hull dimension by construction and by closed form
    Hull {
        /// Check the predicted monomial basis of the hull
        #[arg(long)]
        basis: bool,
    },
    /// Verify the dual against C(n, n(q-1)-k, q), plus 1 when k ≡ 0 mod q-1
    DualCheck,
    /// Exact weight distribution by exhaustive enumeration
    Wenum {
        /// Compare with the embedded C(3,3,3) enumerator
        #[arg(long)]
        check_paper: bool,
    },
    /// Supports of weight-w codewords and their t-design parameters
    Design {
        /// Weight (default: the minimum distance)
        #[arg(long)]
        w: Option<usize>,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
    /// Classify every point of a parameter grid
    Sweep {
        /// Exhaustive distance is checked where q^K is at most this
        #[arg(long, default_value_t = 10_000_000)]
        distance_budget: u128,
    },
    /// Run the built-in checks
    Selftest {
        /// Include the 3^20 enumeration of C(3,3,3)
        #[arg(long)]
        full: bool,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NotPrimePower(_) | Error::OutOfRange(_) | Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Command output and exit code.
type Outcome = std::result::Result<(String, i32), Failure>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Csv,
}

impl Cli {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Table
        }
    }

    fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }

    fn enum_options(&self) -> EnumOptions {
        EnumOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            workers: self.workers(),
            ..Default::default()
        }
    }

    /// Exactly one value each of n, k, q.
    fn point(&self) -> std::result::Result<PrmParams, Failure> {
        fn one<T: Copy>(name: &str, v: &[T]) -> std::result::Result<T, Failure> {
            match v {
                [x] => Ok(*x),
                [] => Err(usage(format!("--{name} is required"))),
                _ => Err(usage(format!("--{name} takes a single value here"))),
            }
        }
        Ok(PrmParams::new(
            one("n", &self.n)?,
            one("k", &self.k)?,
            one("q", &self.q)?,
        )?)
    }

    fn proper_point(&self) -> std::result::Result<PrmParams, Failure> {
        let p = self.point()?;
        if p.regime() != Regime::Proper {
            return Err(usage(format!("{p}: needs 1 ≤ k ≤ n(q-1) = {}", p.top())));
        }
        Ok(p)
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn with_matrix(mut v: Value, key: &str, text: Option<String>) -> Value {
    if let (Some(t), Value::Object(m)) = (text, &mut v) {
        m.insert(key.to_string(), Value::String(t));
    }
    v
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_params(cli: &Cli) -> Outcome {
    let p = cli.point()?;
    let n_len = p.length();
    let (k_s, k_mr, d) = match p.regime() {
        Regime::SpanOfOnes => (1, 1, n_len),
        Regime::FullSpace => (n_len, n_len, 1),
        Regime::Proper => (dim_sorensen(&p)?, dim_mr(&p)?, min_dist_formula(&p)?),
    };
    let matrix = if cli.emit_matrix {
        Some(construct(&p)?.code.generator().to_text())
    } else {
        None
    };
    let code = if k_s == k_mr { EXIT_OK } else { EXIT_DISAGREE };
    let out = match cli.format() {
        Format::Json => to_json(&with_matrix(
            json!({
                "n": p.n, "k": p.k, "q": p.q, "regime": p.regime(),
                "N": n_len, "K_sorensen": k_s, "K_mr": k_mr, "D_formula": d,
            }),
            "generator",
            matrix,
        )),
        Format::Csv => format!(
            "n,k,q,regime,N,K_sorensen,K_mr,D_formula\n{},{},{},{},{n_len},{k_s},{k_mr},{d}\n",
            p.n,
            p.k,
            p.q,
            p.regime()
        ),
        Format::Table => {
            let mut s = format!("{p}\nregime      {}", p.regime());
            match p.regime() {
                Regime::FullSpace => {
                    let _ = write!(s, " (all of F_{}^{n_len})", p.q);
                }
                Regime::SpanOfOnes => s.push_str(" (span of the all-ones vector)"),
                Regime::Proper => {}
            }
            let _ = write!(s, "\nN           {n_len}\nK           {k_s} (alternative formula {k_mr})\nD           {d}\n");
            if let Some(m) = matrix {
                s.push_str(&m);
            }
            s
        }
    };
    Ok((out, code))
}

fn cmd_classify(cli: &Cli) -> Outcome {
    let p = cli.proper_point()?;
    let c = construct(&p)?;
    let hull = c.code.hull()?;
    let r = classify_with(&p, &c.code, &hull)?;
    let matrix = cli.emit_matrix.then(|| c.code.generator().to_text());
    let code = if r.agree { EXIT_OK } else { EXIT_DISAGREE };
    let pred_hull = match r.predicted.hull_dim {
        HullPrediction::ClosedForm { dim, .. } => dim.to_string(),
        HullPrediction::NoClosedForm => "no-closed-form".into(),
    };
    let out = match cli.format() {
        Format::Json => to_json(&with_matrix(
            serde_json::to_value(&r).expect("serializable"),
            "generator",
            matrix,
        )),
        Format::Csv => {
            let (pr, me) = (&r.predicted, &r.constructed);
            format!(
                "n,k,q,N,K,D_formula,pred_self_dual,pred_self_orthogonal,pred_lcd,pred_hull_dim,self_dual,self_orthogonal,lcd,hull_dim,agree\n\
                 {},{},{},{},{},{},{},{},{},{pred_hull},{},{},{},{},{}\n",
                r.n, r.k, r.q, r.length, r.dimension, r.d_formula, pr.self_dual, pr.self_orthogonal, pr.lcd,
                me.self_dual, me.self_orthogonal, me.lcd, me.hull_dim, r.agree
            )
        }
        Format::Table => {
            let (pr, me) = (&r.predicted, &r.constructed);
            let mut s = format!("{p}  [{}, {}, {}]\n", r.length, r.dimension, r.d_formula);
            let _ = writeln!(s, "{:<16} {:>12} {:>12}", "", "predicted", "constructed");
            let _ = writeln!(
                s,
                "{:<16} {:>12} {:>12}",
                "self-dual",
                yes(pr.self_dual),
                yes(me.self_dual)
            );
            let _ = writeln!(
                s,
                "{:<16} {:>12} {:>12}",
                "self-orthogonal",
                yes(pr.self_orthogonal),
                yes(me.self_orthogonal)
            );
            let _ = writeln!(s, "{:<16} {:>12} {:>12}", "LCD", yes(pr.lcd), yes(me.lcd));
            let _ = writeln!(
                s,
                "{:<16} {:>12} {:>12}",
                "hull dimension", pred_hull, me.hull_dim
            );
            if let Some(case) = r.hull_case {
                let _ = writeln!(s, "hull case        {}", case.label());
            }
            let _ = writeln!(s, "agree            {}", yes(r.agree));
            if let Some(m) = matrix {
                s.push_str(&m);
            }
            s
        }
    };
    Ok((out, code))
}

#[derive(Serialize)]
struct HullOutput {
    n: usize,
    k: u32,
    q: u32,
    hull_dim: usize,
    gram_rank: usize,
    closed_form: HullPrediction,
    case: Option<&'static str>,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<crate::prm::BasisCheck>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    basis_spans_hull: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hull_basis_matrix: Option<String>,
}

fn cmd_hull(cli: &Cli, basis: bool) -> Outcome {
    let p = cli.proper_point()?;
    let c = construct(&p)?;
    let hull = c.code.hull()?;
    let pred = hull_dim_predicted(&p)?;
    let case = match pred {
        HullPrediction::ClosedForm { case, .. } => Some(case.label()),
        HullPrediction::NoClosedForm => None,
    };
    let checked = if basis {
        check_hull_basis(&c, &hull)?
    } else {
        None
    };
    let agree = pred.dim().is_none_or(|d| d == hull.hull_dim as u64)
        && checked.as_ref().is_none_or(|b| b.1);
    let o = HullOutput {
        n: p.n,
        k: p.k,
        q: p.q,
        hull_dim: hull.hull_dim,
        gram_rank: hull.gram_rank,
        closed_form: pred,
        case,
        agree,
        basis_spans_hull: checked.as_ref().map(|b| b.1),
        basis: checked.map(|b| b.0),
        hull_basis_matrix: cli.emit_matrix.then(|| hull.hull_basis.matrix().to_text()),
    };
    let code = if agree { EXIT_OK } else { EXIT_DISAGREE };
    let closed = match pred {
        HullPrediction::ClosedForm { dim, .. } => dim.to_string(),
        HullPrediction::NoClosedForm => "no-closed-form".into(),
    };
    let out =
        match cli.format() {
            Format::Json => to_json(&o),
            Format::Csv => {
                format!(
            "n,k,q,hull_dim,gram_rank,closed_form,case,agree\n{},{},{},{},{},{closed},{},{}\n",
            o.n, o.k, o.q, o.hull_dim, o.gram_rank, o.case.unwrap_or(""), o.agree
        )
            }
            Format::Table => {
                let mut s = format!(
                    "{p}\nhull dimension   {}\ngram rank        {}\nclosed form      {closed}",
                    o.hull_dim, o.gram_rank
                );
                if let Some(case) = o.case {
                    let _ = write!(s, " ({case})");
                }
                s.push('\n');
                if let Some(b) = &o.basis {
                    let _ = writeln!(s, "predicted basis  {} monomials", b.len());
                    for m in b {
                        let _ = writeln!(
                            s,
                            "  x^({})  {}",
                            m.monomial,
                            if m.in_hull { "in hull" } else { "NOT in hull" }
                        );
                    }
                    let _ = writeln!(
                        s,
                        "spans hull       {}",
                        yes(o.basis_spans_hull.unwrap_or(false))
                    );
                } else if basis {
                    s.push_str("predicted basis  none for these parameters\n");
                }
                let _ = writeln!(s, "agree            {}", yes(agree));
                if let Some(m) = &o.hull_basis_matrix {
                    s.push_str(m);
                }
                s
            }
        };
    Ok((out, code))
}

fn cmd_dual_check(cli: &Cli) -> Outcome {
    let p = cli.proper_point()?;
    let d = dual_description(&p)?;
    let code = construct(&p)?.code;
    let dual = code.dual()?;
    let described = described_dual(&p)?;
    let verified = crate::code::equal_codes(&dual, &described)?;
    let matrix = cli.emit_matrix.then(|| dual.generator().to_text());
    let exit = if verified { EXIT_OK } else { EXIT_DISAGREE };
    let out = match cli.format() {
        Format::Json => to_json(&with_matrix(
            json!({
                "n": p.n, "k": p.k, "q": p.q, "ell": d.ell, "adjoin_ones": d.adjoin_ones,
                "dual_dim": dual.dimension(), "described_dim": described.dimension(), "verified": verified,
            }),
            "dual_generator",
            matrix,
        )),
        Format::Csv => format!(
            "n,k,q,ell,adjoin_ones,dual_dim,described_dim,verified\n{},{},{},{},{},{},{},{verified}\n",
            p.n, p.k, p.q, d.ell, d.adjoin_ones, dual.dimension(), described.dimension()
        ),
        Format::Table => {
            let plus = if d.adjoin_ones { " + span(1)" } else { "" };
            let mut s = format!(
                "{p}\ndual             C(n={},k={},q={}){plus}\ndual dimension   {}\nverified         {}\n",
                p.n, d.ell, p.q, dual.dimension(), yes(verified)
            );
            if let Some(m) = matrix {
                s.push_str(&m);
            }
            s
        }
    };
    Ok((out, exit))
}

fn cmd_wenum(cli: &Cli, check_paper: bool) -> Outcome {
    let p = cli.point()?;
    if check_paper && p != C333.params() {
        return Err(usage(format!(
            "--check-paper applies to {} only",
            C333.params()
        )));
    }
    let code = construct(&p)?.code;
    let (dist, _) = distribution_and_supports(&code, None, &cli.enum_options())?;
    let check = check_paper.then(|| C333.check_enumerator(&dist));
    let exit = match &check {
        Some(Err(_)) => EXIT_DISAGREE,
        _ => EXIT_OK,
    };
    let status = check
        .as_ref()
        .map(|c| if c.is_ok() { "PASS" } else { "FAIL" });
    let out = match cli.format() {
        Format::Json => to_json(&json!({
            "n": p.n, "k": p.k, "q": p.q, "N": code.length(), "K": code.dimension(),
            "distribution": dist, "polynomial": dist.polynomial(),
            "min_distance": dist.min_distance(), "check": status,
        })),
        Format::Csv => {
            let mut s = String::from("w,A_w\n");
            for (w, a) in dist.pairs() {
                let _ = writeln!(s, "{w},{a}");
            }
            s
        }
        Format::Table => {
            let mut s = format!(
                "{p}  [{}, {}]\n{}\n",
                code.length(),
                code.dimension(),
                dist.polynomial()
            );
            if let Some(d) = dist.min_distance() {
                let _ = writeln!(s, "minimum distance {d}");
            }
            match &check {
                Some(Ok(())) => s.push_str("reference enumerator: PASS\n"),
                Some(Err(e)) => {
                    let _ = writeln!(s, "reference enumerator: FAIL ({e})");
                }
                None => {}
            }
            s
        }
    };
    Ok((out, exit))
}

fn cmd_design(cli: &Cli, w: Option<usize>, t: usize) -> Outcome {
    let p = cli.proper_point()?;
    if t == 0 {
        return Err(usage("--t must be at least 1"));
    }
    let w = match w {
        Some(w) => w,
        None => min_dist_formula(&p)? as usize,
    };
    let code = construct(&p)?.code;
    let (dist, family) = distribution_and_supports(&code, Some(w), &cli.enum_options())?;
    let check = design_lambda(&family, t);
    let words = dist.count(w);
    let out = match cli.format() {
        Format::Json => to_json(&json!({
            "n": p.n, "k": p.k, "q": p.q, "w": w, "t": t,
            "codewords": words, "blocks": family.len(), "design": check,
        })),
        Format::Csv => {
            let lambda = match check {
                DesignCheck::Design { lambda, .. } => lambda.to_string(),
                DesignCheck::NotADesign => "not-a-design".into(),
            };
            format!(
                "n,k,q,w,t,codewords,blocks,lambda\n{},{},{},{w},{t},{words},{},{lambda}\n",
                p.n,
                p.k,
                p.q,
                family.len()
            )
        }
        Format::Table => {
            let mut s = format!(
                "{p}  weight {w}: {words} codewords, {} distinct supports\n",
                family.len()
            );
            match check {
                DesignCheck::Design {
                    t,
                    v,
                    block_size,
                    lambda,
                } => {
                    let _ = writeln!(s, "{t}-({v},{block_size},{lambda}) design");
                }
                DesignCheck::NotADesign => s.push_str("not a design\n"),
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

fn cmd_sweep(cli: &Cli, distance_budget: u128) -> Outcome {
    let defaults = SweepSpec::default();
    let spec = SweepSpec {
        n_values: if cli.n.is_empty() {
            defaults.n_values
        } else {
            cli.n.clone()
        },
        q_values: if cli.q.is_empty() {
            defaults.q_values
        } else {
            cli.q.clone()
        },
        k_values: if cli.k.is_empty() {
            None
        } else {
            Some(cli.k.clone())
        },
        distance_budget,
        workers: cli.workers(),
    };
    let report = run_sweep(&spec)?;
    let s = report.summary;
    let summary = format!(
        "{} points: {} agree, {} disagree, {} no-closed-form, {} exhaustive distances, {} errors",
        s.points, s.agree, s.disagree, s.no_closed_form, s.distance_checked, s.errors
    );
    let exit = if report.all_ok() {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    };
    let out = match cli.format() {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in &report.rows {
                out.push_str(&csv_line(r));
                out.push('\n');
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "{:>2} {:>3} {:>2} {:>5} {:>5} {:>5} {:>5}  {:<5} {:<5} {:<5} {:>14} {:>5}  {:<22} {}\n",
                "n", "k", "q", "N", "K", "D", "D_ex", "SD", "SO", "LCD", "hull(pred)", "hull", "case", "ok"
            );
            for r in &report.rows {
                let rep = &r.report;
                let pred = match rep.predicted.hull_dim {
                    HullPrediction::ClosedForm { dim, .. } => dim.to_string(),
                    HullPrediction::NoClosedForm => "no-closed-form".into(),
                };
                let _ = writeln!(
                    out,
                    "{:>2} {:>3} {:>2} {:>5} {:>5} {:>5} {:>5}  {:<5} {:<5} {:<5} {:>14} {:>5}  {:<22} {}",
                    rep.n,
                    rep.k,
                    rep.q,
                    rep.length,
                    rep.dimension,
                    rep.d_formula,
                    r.min_distance.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                    yes(rep.constructed.self_dual),
                    yes(rep.constructed.self_orthogonal),
                    yes(rep.constructed.lcd),
                    pred,
                    rep.constructed.hull_dim,
                    r.hull_case.unwrap_or("constructive"),
                    yes(r.ok)
                );
            }
            for f in &report.failures {
                let _ = writeln!(
                    out,
                    "error at (n={}, k={}, q={}): {}",
                    f.n, f.k, f.q, f.error
                );
            }
            let _ = writeln!(out, "{summary}");
            out
        }
    };
    Ok((out, exit))
}

fn cmd_selftest(cli: &Cli, full: bool) -> Outcome {
    let checks = run_selftest(&SelftestOptions {
        full,
        workers: cli.workers(),
        reference: C333,
    });
    let passed = checks.iter().all(|c| c.passed);
    let out = match cli.format() {
        Format::Json => to_json(&json!({ "passed": passed, "checks": checks })),
        Format::Csv => {
            let mut s = String::from("check,passed\n");
            for c in &checks {
                let _ = writeln!(s, "{},{}", c.name, c.passed);
            }
            s
        }
        Format::Table => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(
                    s,
                    "{} {:<15} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            let _ = writeln!(s, "selftest: {}", if passed { "PASS" } else { "FAIL" });
            s
        }
    };
    Ok((out, if passed { EXIT_OK } else { EXIT_INTERNAL }))
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Params => cmd_params(cli),
        Command::Classify => cmd_classify(cli),
        Command::Hull { basis } => cmd_hull(cli, *basis),
        Command::DualCheck => cmd_dual_check(cli),
        Command::Wenum { check_paper } => cmd_wenum(cli, *check_paper),
        Command::Design { w, t } => cmd_design(cli, *w, *t),
        Command::Sweep { distance_budget } => cmd_sweep(cli, *distance_budget),
        Command::Selftest { full } => cmd_selftest(cli, *full),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_INTERNAL;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
