//! JSON-serializable outputs of every subcommand.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::LemmaRow;
use crate::determinacy::{
    certify_k_determined, d_bound, is_regular, main_bound, tougeron_bound, Criterion, DBound,
    DeterminacyVerdict,
};
use crate::error::{Error, Result};
use crate::frontend::parser::{parse_poly, PolySource};
use crate::invariants::{
    grading_for, hilbert_function_of, saito_test_of, socle_report_of, Certified, HilbertReport,
    LocalAlgebra, SaitoVerdict, SocleReport,
};
use crate::jetspace::CertifyOptions;
use crate::poly::{Poly, WeightSystem};
use crate::sharpness::SharpnessReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub text: String,
    pub variables: Vec<String>,
    /// the parsed polynomial in canonical form
    pub canonical: String,
}

impl InputEcho {
    pub fn new(src: &PolySource, f: &Poly) -> Self {
        InputEcho {
            text: src.text.clone(),
            variables: src.variables.clone(),
            canonical: f.to_string_with(&src.variables),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSource {
    Given,
    Unit,
    Detected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsEcho {
    pub weights: Vec<u32>,
    pub degree: u32,
    pub source: WeightSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub kind: String,
    pub input: InputEcho,
    pub n: usize,
    pub weights: Option<WeightsEcho>,
    pub regular: Option<bool>,
    pub mu: Option<Certified>,
    pub tau: Option<Certified>,
    pub hilbert: Option<HilbertReport>,
    pub socle: Option<SocleReport>,
    pub saito: Option<SaitoVerdict>,
    pub determinacy: Vec<DeterminacyVerdict>,
    pub d_bound: Option<DBound>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct AnalyzeOptions {
    pub weights: Option<WeightSystem>,
    /// starting jet order for certification
    pub order: Option<u32>,
    /// extra `k` values checked with the fdt criterion (and the corollary when it applies)
    pub k: Vec<u32>,
}

/// Errors that leave the rest of an analysis meaningful.
fn recoverable(e: &Error) -> bool {
    matches!(
        e,
        Error::NotCertified { .. } | Error::ResourceCap { .. } | Error::NotRegular(_) | Error::Hypothesis(_)
    )
}

fn soft<T>(r: Result<T>, warnings: &mut Vec<String>, context: &str) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if recoverable(&e) => {
            warnings.push(format!("{context}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn analyze(src: &PolySource, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let f = parse_poly(src)?;
    let vars = &src.variables;
    if f.is_zero() {
        return Err(Error::Hypothesis("f is identically zero".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Hypothesis(
            "f must vanish at the origin (no constant term)".into(),
        ));
    }
    let mut warnings = Vec::new();

    let grading = grading_for(&f, opts.weights.as_ref())?;
    let weights = grading.as_ref().map(|w| WeightsEcho {
        weights: w.weights().to_vec(),
        degree: w.degree(),
        source: if opts.weights.is_some() {
            WeightSource::Given
        } else if w.is_unit() {
            WeightSource::Unit
        } else {
            WeightSource::Detected
        },
    });
    if grading.is_none() {
        warnings.push(
            "no weight system makes f quasihomogeneous; the Hilbert function is the local Hilbert-Samuel function"
                .into(),
        );
    }

    let regular = match &grading {
        Some(w) => soft(is_regular(&f, Some(w)), &mut warnings, "regularity")?,
        None => None,
    };

    let certify_opts = CertifyOptions {
        start: opts.order,
        ..CertifyOptions::default()
    };
    let alg = soft(
        LocalAlgebra::certify(&f, certify_opts),
        &mut warnings,
        "milnor algebra",
    )?;

    let (mut mu, mut tau, mut hilbert, mut socle, mut saito) = (None, None, None, None, None);
    if let Some(alg) = &alg {
        mu = Some(Certified {
            value: alg.milnor(),
            order: alg.order(),
        });
        tau = Some(Certified {
            value: alg.tyurina()?,
            order: alg.order(),
        });
        hilbert = Some(hilbert_function_of(alg, grading.as_ref())?);
        if let Some(w) = &grading {
            let mut s = socle_report_of(alg, w)?;
            s.hessian = f.hessian_det().primitive().to_string_with(vars);
            socle = Some(s);
        }
        let mut v = saito_test_of(alg)?;
        v.witness = v
            .membership_witness
            .take()
            .map(|ws| ws.iter().map(|p| p.to_string_with(vars)).collect());
        if !v.criteria_agree {
            warnings.push("f ∈ J(f) and μ = τ disagree: implementation fault".into());
        }
        saito = Some(v);
    }

    let mut determinacy = Vec::new();
    if grading.is_some() {
        if let Some(v) = soft(main_bound(&f, grading.as_ref()), &mut warnings, "main bound")? {
            determinacy.push(v);
        }
    }
    if alg.is_some() {
        if let Some(v) = soft(tougeron_bound(&f), &mut warnings, "tougeron bound")? {
            determinacy.push(v);
        }
    }
    for &k in &opts.k {
        if let Some(v) = soft(certify_k_determined(&f, k, Criterion::Fdt), &mut warnings, "fdt")? {
            determinacy.push(v);
        }
        if f.homogeneous_degree().is_some_and(|m| k >= m) {
            let v = certify_k_determined(&f, k, Criterion::Corollary)?;
            determinacy.push(v);
        }
    }
    for v in &mut determinacy {
        v.obstruction = v.obstruction.take().map(|o| rename(&o, vars));
    }
    let main_k = determinacy
        .iter()
        .find(|v| v.criterion == Criterion::Main && v.certified)
        .map(|v| v.k);
    if let (Some(k), Some(mu)) = (main_k, &mu) {
        if (mu.value as u64) + 1 < k {
            warnings.push(format!("μ + 1 = {} is below the main bound {k}", mu.value + 1));
        }
    }

    let d_bound = match f.homogeneous_degree() {
        Some(m) if m >= 2 && f.nvars() >= 2 => Some(d_bound(f.nvars() as u64, m as u64)?),
        _ => None,
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        kind: "analysis".into(),
        input: InputEcho::new(src, &f),
        n: f.nvars(),
        weights,
        regular,
        mu,
        tau,
        hilbert,
        socle,
        saito,
        determinacy,
        d_bound,
        warnings,
    })
}

/// Rewrites a monomial printed with default names into `vars`.
fn rename(text: &str, vars: &[String]) -> String {
    let n = vars.len();
    let src = PolySource::with_nvars(text, n);
    match parse_poly(&src) {
        Ok(p) => p.to_string_with(vars),
        Err(_) => text.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DBoundOutput {
    pub schema_version: u32,
    pub kind: String,
    #[serde(flatten)]
    pub bound: DBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyOutput {
    pub schema_version: u32,
    pub kind: String,
    pub input: InputEcho,
    pub verdict: DeterminacyVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertOutput {
    pub schema_version: u32,
    pub kind: String,
    pub input: InputEcho,
    pub hilbert: HilbertReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessOutput {
    pub schema_version: u32,
    pub kind: String,
    #[serde(flatten)]
    pub report: SharpnessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutput {
    pub schema_version: u32,
    pub kind: String,
    pub max_n: i64,
    pub max_m: i64,
    pub all_equal: bool,
    pub rows: Vec<LemmaRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberOutput {
    pub schema_version: u32,
    pub kind: String,
    pub g: InputEcho,
    pub f: InputEcho,
    pub member: bool,
    /// `a_i` with `g = sum a_i ∂f/∂x_i` modulo a power of `m` contained in `J(f)`
    pub witness: Option<Vec<String>>,
    pub certification_order: u32,
}

pub fn envelope(kind: &str) -> (u32, String) {
    (SCHEMA_VERSION, kind.to_string())
}
