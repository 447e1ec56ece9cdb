//! Command-line surface: argument parsing, dispatch and text rendering.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::verify_lemma_comb;
use crate::determinacy::{certify_k_determined, d_bound, Criterion, DeterminacyVerdict};
use crate::error::{Error, Result};
use crate::frontend::parser::{infer_variables, parse_poly, parse_rational, PolySource};
use crate::frontend::report::*;
use crate::invariants::{grading_for, hilbert_function_of, Grading, HilbertReport, LocalAlgebra};
use crate::jetspace::CertifyOptions;
use crate::poly::{default_vars, WeightSystem};
use crate::sharpness::sharpness_report;

#[derive(Debug, Parser)]
#[command(
    name = "hypersing",
    version,
    about = "Finite determinacy and Milnor algebra invariants of isolated hypersurface singularities"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct VarArgs {
    /// Variable names in order, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "nvars")]
    vars: Option<Vec<String>>,
    /// Number of variables, named x,y,z,w (n <= 4) or x1..xn
    #[arg(long)]
    nvars: Option<usize>,
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// Weights w1,..,wn
    #[arg(long, value_delimiter = ',', requires = "wdegree")]
    weights: Option<Vec<u32>>,
    /// Weighted degree d of f
    #[arg(long, requires = "weights")]
    wdegree: Option<u32>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionArg {
    Fdt,
    Corollary,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: regularity, mu, tau, Hilbert function, Saito test, determinacy bounds
    Analyze {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        weights: WeightArgs,
        /// Starting jet order for certification
        #[arg(long)]
        order: Option<u32>,
        /// Also check k-determinacy at these k
        #[arg(long)]
        k: Vec<u32>,
        #[command(flatten)]
        vars: VarArgs,
    },
    /// D(n,m) and the case that produced it
    Dbound { n: u64, m: u64 },
    /// Check a sufficient condition for k-determinacy
    Certify {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "fdt")]
        criterion: CriterionArg,
        #[command(flatten)]
        vars: VarArgs,
    },
    /// Empirical and predicted Hilbert function of the Milnor algebra
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        weights: WeightArgs,
        #[command(flatten)]
        vars: VarArgs,
    },
    /// Counterexample to (n(m-2)-1)-determinacy for the Fermat form
    Sharpness {
        n: usize,
        m: u32,
        /// Nonzero rational deformation parameter
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        t: String,
    },
    /// Table of the alternating binomial identity
    VerifyLemma {
        #[arg(long, default_value_t = 10)]
        max_n: i64,
        #[arg(long, default_value_t = 10)]
        max_m: i64,
    },
    /// Membership of g in the Jacobian ideal of f, with a witness
    Member {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(long = "jacobian-of", allow_hyphen_values = true)]
        jacobian_of: String,
        #[command(flatten)]
        vars: VarArgs,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn variables(args: &VarArgs, texts: &[&str]) -> Result<Vec<String>> {
    match (&args.vars, args.nvars) {
        (Some(v), _) => Ok(v.clone()),
        (None, Some(0)) => Err(Error::Hypothesis("--nvars must be positive".into())),
        (None, Some(n)) => Ok(default_vars(n)),
        (None, None) => infer_variables(texts),
    }
}

fn weight_system(args: &WeightArgs) -> Result<Option<WeightSystem>> {
    match (&args.weights, args.wdegree) {
        (Some(w), Some(d)) => Ok(Some(WeightSystem::new(w.clone(), d)?)),
        _ => Ok(None),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Analyze { poly, weights, order, k, vars } => {
            let src = PolySource::new(poly.clone(), variables(vars, &[poly])?);
            let opts = AnalyzeOptions {
                weights: weight_system(weights)?,
                order: *order,
                k: k.clone(),
            };
            let report = analyze(&src, &opts)?;
            Ok(if cli.json { to_json(&report) } else { render_analysis(&report) })
        }
        Command::Dbound { n, m } => {
            let (schema_version, kind) = envelope("dbound");
            let out = DBoundOutput { schema_version, kind, bound: d_bound(*n, *m)? };
            Ok(if cli.json {
                to_json(&out)
            } else {
                format!("D({}, {}) = {}\ncase: {}\n", n, m, out.bound.value, out.bound.case)
            })
        }
        Command::Certify { poly, k, criterion, vars } => {
            let src = PolySource::new(poly.clone(), variables(vars, &[poly])?);
            let f = parse_poly(&src)?;
            let criterion = match criterion {
                CriterionArg::Fdt => Criterion::Fdt,
                CriterionArg::Corollary => Criterion::Corollary,
            };
            let mut verdict = certify_k_determined(&f, *k, criterion)?;
            verdict.obstruction = verdict.obstruction.take().map(|o| {
                parse_poly(&PolySource::with_nvars(o.clone(), f.nvars()))
                    .map(|p| p.to_string_with(&src.variables))
                    .unwrap_or(o)
            });
            let (schema_version, kind) = envelope("certify");
            let out = CertifyOutput { schema_version, kind, input: InputEcho::new(&src, &f), verdict };
            Ok(if cli.json {
                to_json(&out)
            } else {
                let mut s = format!("f = {}\n", out.input.canonical);
                s.push_str(&render_verdict(&out.verdict));
                s
            })
        }
        Command::Hilbert { poly, weights, vars } => {
            let src = PolySource::new(poly.clone(), variables(vars, &[poly])?);
            let f = parse_poly(&src)?;
            let grading = grading_for(&f, weight_system(weights)?.as_ref())?;
            let alg = LocalAlgebra::certify(&f, CertifyOptions::default())?;
            let hilbert = hilbert_function_of(&alg, grading.as_ref())?;
            let (schema_version, kind) = envelope("hilbert");
            let out = HilbertOutput { schema_version, kind, input: InputEcho::new(&src, &f), hilbert };
            Ok(if cli.json {
                to_json(&out)
            } else {
                let mut s = format!("f = {}\n", out.input.canonical);
                s.push_str(&render_hilbert(&out.hilbert));
                s
            })
        }
        Command::Sharpness { n, m, t } => {
            let t = parse_rational(t)?;
            let report = sharpness_report(*n, *m, &t)?;
            let (schema_version, kind) = envelope("sharpness");
            let out = SharpnessOutput { schema_version, kind, report };
            Ok(if cli.json { to_json(&out) } else { render_sharpness(&out) })
        }
        Command::VerifyLemma { max_n, max_m } => {
            let rows = verify_lemma_comb(*max_n, *max_m);
            let (schema_version, kind) = envelope("lemma");
            let out = LemmaOutput {
                schema_version,
                kind,
                max_n: *max_n,
                max_m: *max_m,
                all_equal: rows.iter().all(|r| r.equal),
                rows,
            };
            Ok(if cli.json { to_json(&out) } else { render_lemma(&out) })
        }
        Command::Member { g, jacobian_of, vars } => {
            let names = variables(vars, &[g, jacobian_of])?;
            let gsrc = PolySource::new(g.clone(), names.clone());
            let fsrc = PolySource::new(jacobian_of.clone(), names.clone());
            let gp = parse_poly(&gsrc)?;
            let fp = parse_poly(&fsrc)?;
            let alg = LocalAlgebra::certify(&fp, CertifyOptions::default())?;
            let m = alg.jacobian_membership(&gp)?;
            let (schema_version, kind) = envelope("member");
            let out = MemberOutput {
                schema_version,
                kind,
                g: InputEcho::new(&gsrc, &gp),
                f: InputEcho::new(&fsrc, &fp),
                member: m.member,
                witness: m.witness.map(|w| w.iter().map(|p| p.to_string_with(&names)).collect()),
                certification_order: alg.order(),
            };
            Ok(if cli.json { to_json(&out) } else { render_member(&out) })
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn render_verdict(v: &DeterminacyVerdict) -> String {
    let mut s = format!(
        "{}: k = {} {} (order {}{})\n",
        v.criterion,
        v.k,
        if v.certified { "certified" } else { "not certified" },
        v.certificate_order,
        match v.filtration {
            crate::determinacy::Filtration::Weighted => ", weighted",
            crate::determinacy::Filtration::Ordinary => "",
        }
    );
    if let Some(o) = &v.obstruction {
        let _ = writeln!(s, "  obstruction: {o}");
    }
    if let Some(b) = v.ordinary_degree_bound {
        let _ = writeln!(s, "  derived ordinary-degree bound: {b}");
    }
    if let Some(note) = &v.note {
        let _ = writeln!(s, "  note: {note}");
    }
    if !v.certified {
        s.push_str("  (sufficient condition only; this does not show f is not k-determined)\n");
    }
    s
}

fn render_hilbert(h: &HilbertReport) -> String {
    let mut s = String::new();
    match &h.grading {
        Grading::Weighted { weights, degree } => {
            let _ = writeln!(s, "grading: weights ({}) degree {}", join(weights, ", "), degree);
        }
        Grading::Local => s.push_str("grading: local (Hilbert-Samuel)\n"),
    }
    let _ = writeln!(s, "empirical: [{}] total {}", join(&h.empirical.values, ", "), h.empirical.total);
    match &h.empirical.socle_degree {
        Some(d) => {
            let _ = writeln!(s, "socle degree: {d}");
        }
        None => s.push_str("socle degree: none\n"),
    }
    match &h.predicted {
        Some(p) => {
            let _ = writeln!(
                s,
                "predicted: [{}] agrees: {}",
                join(&p.values, ", "),
                yes(h.agrees.unwrap_or(false))
            );
        }
        None => s.push_str("predicted: none\n"),
    }
    let _ = writeln!(s, "certified at jet order {}", h.certification_order);
    s
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f = {}", r.input.canonical);
    let _ = writeln!(s, "variables: {}", r.input.variables.join(", "));
    match &r.weights {
        Some(w) => {
            let src = match w.source {
                WeightSource::Given => "given",
                WeightSource::Unit => "homogeneous",
                WeightSource::Detected => "detected",
            };
            let _ = writeln!(s, "type: ({}; {}) [{src}]", join(&w.weights, ", "), w.degree);
        }
        None => s.push_str("type: not quasihomogeneous\n"),
    }
    match r.regular {
        Some(b) => {
            let _ = writeln!(s, "regular: {}", yes(b));
        }
        None => s.push_str("regular: n/a\n"),
    }
    if let (Some(mu), Some(tau)) = (&r.mu, &r.tau) {
        let _ = writeln!(s, "mu = {}, tau = {} (jet order {})", mu.value, tau.value, mu.order);
    } else {
        s.push_str("mu, tau: not certified\n");
    }
    if let Some(h) = &r.hilbert {
        s.push_str(&render_hilbert(h));
    }
    if let Some(so) = &r.socle {
        let _ = writeln!(
            s,
            "socle: dimension {}, Hess = {}, generates socle: {}",
            so.socle_dimension,
            so.hessian,
            yes(so.hessian_in_socle)
        );
    }
    if let Some(v) = &r.saito {
        let _ = writeln!(
            s,
            "saito: f in J(f): {}, mu = tau: {}, criteria agree: {}",
            yes(v.is_quasihomogeneous_type),
            yes(v.mu == v.tau),
            yes(v.criteria_agree)
        );
        if let Some(w) = &v.witness {
            let _ = writeln!(s, "  f = sum a_i df/dx_i with a = ({})", w.join(", "));
        }
    }
    for v in &r.determinacy {
        s.push_str(&render_verdict(v));
    }
    if let Some(d) = &r.d_bound {
        let _ = writeln!(s, "D({}, {}) = {} [{}]", d.n, d.m, d.value, d.case);
    }
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

fn render_sharpness(out: &SharpnessOutput) -> String {
    let r = &out.report;
    let mut s = String::new();
    let _ = writeln!(s, "(n, m) = ({}, {}), t = {}", r.n, r.m, r.t);
    let _ = writeln!(s, "f = {}", r.f);
    let _ = writeln!(s, "g = {}", r.g);
    let _ = writeln!(s, "mu(f) = {}, mu(g) = {}, tau(g) = {}", r.mu_f, r.mu_g, r.tau_g);
    let _ = writeln!(s, "g in J(g): {}", yes(r.saito_g));
    let _ = writeln!(
        s,
        "obstruction {} in J(f): {} (divisible: {})",
        r.obstruction_monomial,
        yes(r.obstruction_monomial_in_jf),
        yes(r.obstruction_divisible)
    );
    let _ = writeln!(
        s,
        "(1/m) sum x_i dg/dx_i - g = {} [coefficient {}, identity holds: {}]",
        r.euler_combination,
        r.euler_coefficient,
        yes(r.euler_identity_holds)
    );
    let _ = writeln!(s, "jets of f and g agree below degree {}: {}", r.n as u32 * (r.m - 2), yes(r.jets_agree));
    let _ = writeln!(s, "conclusion: {}", r.conclusion);
    s
}

fn render_lemma(out: &LemmaOutput) -> String {
    let mut s = String::from("n\tm\tsum\tclosed\tsubsets\tequal\n");
    for r in &out.rows {
        let brute = r.brute_force.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", r.n, r.m, r.lhs, r.rhs, brute, yes(r.equal));
    }
    let _ = writeln!(s, "all equal: {}", yes(out.all_equal));
    s
}

fn render_member(out: &MemberOutput) -> String {
    let mut s = format!(
        "{} in J({}): {} (jet order {})\n",
        out.g.canonical,
        out.f.canonical,
        yes(out.member),
        out.certification_order
    );
    if let Some(w) = &out.witness {
        let _ = writeln!(s, "witness: ({})", w.join(", "));
    }
    s
}
