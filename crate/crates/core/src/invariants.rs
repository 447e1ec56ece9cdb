//! Milnor and Tyurina numbers, Hilbert functions of the Milnor algebra, socle
//! analysis and the quasihomogeneity test `f ∈ J(f)`.
//!
//! All dimensions are taken at a jet order `N` where `m^N ⊆ J(f)` has been
//! certified first, so they are exact rather than truncation artifacts.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::koszul_hilbert_value;
use crate::error::{Error, Result};
use crate::exactla::{ColumnSpan, RatMatrix};
use crate::jetspace::{
    certify_jacobian, ideal_image, jet_membership, CertifyOptions, IdealImage, JetSpace,
    Membership,
};
use crate::poly::{Monomial, Poly, Rational, WeightSystem};

/// `f` together with a certified Jacobian image.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    f: Poly,
    order: u32,
    jacobian: IdealImage,
}

impl LocalAlgebra {
    /// Certifies `m^N ⊆ J(f)` for some jet order `N`; fails for non-isolated input.
    pub fn certify(f: &Poly, opts: CertifyOptions) -> Result<Self> {
        if !f.constant_term().is_zero() {
            return Err(Error::Hypothesis(
                "f must vanish at the origin (no constant term)".into(),
            ));
        }
        let cert = certify_jacobian(f, opts)?;
        Ok(LocalAlgebra {
            f: f.clone(),
            order: cert.order,
            jacobian: cert.image,
        })
    }

    pub fn poly(&self) -> &Poly {
        &self.f
    }

    /// Jet order at which `m^N ⊆ J(f)` was certified.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn jacobian(&self) -> &IdealImage {
        &self.jacobian
    }

    /// `dim O_n / J(f)`.
    pub fn milnor(&self) -> usize {
        self.jacobian.codimension()
    }

    /// `dim O_n / (f, J(f))`.
    pub fn tyurina(&self) -> Result<usize> {
        let mut gens = self.f.gradient();
        gens.push(self.f.clone());
        let js = JetSpace::shared(self.f.nvars(), self.order)?;
        Ok(ideal_image(&gens, js, 0)?.codimension())
    }

    /// Membership in `J(f)`; conclusive because `m^{N+1} ⊆ J(f)`.
    pub fn jacobian_membership(&self, g: &Poly) -> Result<Membership> {
        jet_membership(g, &self.jacobian)
    }
}

/// A Milnor number with the jet order that certified it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub value: usize,
    pub order: u32,
}

pub fn milnor_number(f: &Poly) -> Result<Certified> {
    milnor_number_with(f, CertifyOptions::default())
}

pub fn milnor_number_with(f: &Poly, opts: CertifyOptions) -> Result<Certified> {
    let alg = LocalAlgebra::certify(f, opts)?;
    Ok(Certified {
        value: alg.milnor(),
        order: alg.order(),
    })
}

pub fn tyurina_number(f: &Poly) -> Result<Certified> {
    let alg = LocalAlgebra::certify(f, CertifyOptions::default())?;
    Ok(Certified {
        value: alg.tyurina()?,
        order: alg.order(),
    })
}

/// Dimensions of the graded pieces of a Milnor algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    /// `values[d]` is the dimension in (weighted) degree `d`; trailing zeros trimmed
    pub values: Vec<u64>,
    /// largest degree with a nonzero value; `None` for the zero algebra
    pub socle_degree: Option<usize>,
    pub total: u64,
}

impl HilbertFunction {
    pub fn from_values(mut values: Vec<u64>) -> Self {
        while values.last() == Some(&0) {
            values.pop();
        }
        let total = values.iter().sum();
        let socle_degree = values.len().checked_sub(1);
        HilbertFunction {
            values,
            socle_degree,
            total,
        }
    }

    pub fn value(&self, d: usize) -> u64 {
        self.values.get(d).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.values.iter().eq(self.values.iter().rev())
    }
}

/// How the degrees of a [`HilbertReport`] are measured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Grading {
    /// graded by the given weights (unit weights for forms)
    Weighted { weights: Vec<u32>, degree: u32 },
    /// Hilbert-Samuel function of the local algebra by order of vanishing
    Local,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertReport {
    pub grading: Grading,
    pub empirical: HilbertFunction,
    /// closed form from the Koszul complex; only for graded input
    pub predicted: Option<HilbertFunction>,
    pub agrees: Option<bool>,
    pub certification_order: u32,
}

/// Weights under which `f` is graded: `w` itself (checked), unit weights for
/// forms, or weights detected from the support.
pub fn grading_for(f: &Poly, w: Option<&WeightSystem>) -> Result<Option<WeightSystem>> {
    match w {
        Some(w) => {
            if w.nvars() != f.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: f.nvars(),
                    found: w.nvars(),
                });
            }
            if !f.is_quasihomogeneous(w) {
                return Err(Error::Hypothesis(format!(
                    "f is not quasihomogeneous of type ({:?}; {})",
                    w.weights(),
                    w.degree()
                )));
            }
            Ok(Some(w.clone()))
        }
        None => Ok(detect_weights(f)),
    }
}

/// Empirical Hilbert function, with the Koszul prediction for graded input.
pub fn hilbert_function(f: &Poly, w: Option<&WeightSystem>) -> Result<HilbertReport> {
    let grading = grading_for(f, w)?;
    let alg = LocalAlgebra::certify(f, CertifyOptions::default())?;
    hilbert_function_of(&alg, grading.as_ref())
}

/// As [`hilbert_function`] for an already certified algebra.
pub fn hilbert_function_of(alg: &LocalAlgebra, w: Option<&WeightSystem>) -> Result<HilbertReport> {
    let f = alg.poly();
    match w {
        Some(w) => {
            // every monomial of ordinary degree >= N lies in J(f), so nothing
            // of weighted degree >= N * max_weight survives
            let bound = alg.order() as u64 * w.max_weight() as u64;
            let values = graded_values(f, w, bound)?;
            let empirical = HilbertFunction::from_values(values);
            let predicted = predicted_hilbert(w);
            let agrees = Some(predicted.as_ref() == Some(&empirical));
            Ok(HilbertReport {
                grading: Grading::Weighted {
                    weights: w.weights().to_vec(),
                    degree: w.degree(),
                },
                empirical,
                predicted,
                agrees,
                certification_order: alg.order(),
            })
        }
        None => Ok(HilbertReport {
            grading: Grading::Local,
            empirical: local_hilbert_samuel(f, alg.order())?,
            predicted: None,
            agrees: None,
            certification_order: alg.order(),
        }),
    }
}

/// `dim (M_f)_e` for `e < bound`, by per-degree rank of `J(f)`.
pub(crate) fn graded_values(f: &Poly, w: &WeightSystem, bound: u64) -> Result<Vec<u64>> {
    let weights = w.weights();
    let grad = f.gradient();
    let gen_degrees: Vec<Option<u64>> = grad
        .iter()
        .map(|g| g.degree_range(weights).map(|r| r.map(|(lo, _)| lo)))
        .collect::<Result<_>>()?;
    let mut values = Vec::new();
    for e in 0..bound {
        let monos = Monomial::all_of_weighted_degree(weights, e);
        if monos.is_empty() {
            values.push(0);
            continue;
        }
        let index: std::collections::HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = ColumnSpan::new(monos.len());
        for (g, dg) in grad.iter().zip(&gen_degrees) {
            let Some(dg) = *dg else { continue };
            if dg > e {
                continue;
            }
            for mult in Monomial::all_of_weighted_degree(weights, e - dg) {
                let mut v: Vec<(usize, Rational)> = g
                    .mul_monomial(&mult)
                    .terms()
                    .map(|(m, c)| (index[m], c.clone()))
                    .collect();
                v.sort_by_key(|x| x.0);
                span.push(&v);
                if span.dim() == monos.len() {
                    break;
                }
            }
        }
        values.push((monos.len() - span.dim()) as u64);
    }
    Ok(values)
}

/// Hilbert-Samuel function `dim (m^d + J) / (m^{d+1} + J)` for `d < order`.
fn local_hilbert_samuel(f: &Poly, order: u32) -> Result<HilbertFunction> {
    let grad = f.gradient();
    let mut values = Vec::new();
    let mut prev_codim = 0usize;
    for d in 0..order {
        let js = JetSpace::shared(f.nvars(), d)?;
        let codim = ideal_image(&grad, js, 0)?.codimension();
        values.push((codim - prev_codim) as u64);
        prev_codim = codim;
    }
    Ok(HilbertFunction::from_values(values))
}

/// Closed-form Hilbert function of the Milnor algebra of a regular form of
/// type `w`: `prod (1 - t^{d - w_i}) / prod (1 - t^{w_i})`. Unit weights use
/// the alternating Koszul sum directly. `None` when the quotient is not a
/// polynomial with non-negative coefficients (no regular form of this type).
pub fn predicted_hilbert(w: &WeightSystem) -> Option<HilbertFunction> {
    let n = w.nvars() as i64;
    let d = w.degree() as i64;
    if w.weights().iter().any(|&wi| wi as i64 > d) {
        return None;
    }
    if w.is_unit() {
        let top = (n * (d - 2)).max(0);
        let values = (0..=top)
            .map(|e| koszul_hilbert_value(n, d, e).to_u64())
            .collect::<Option<Vec<_>>>()?;
        return Some(HilbertFunction::from_values(values));
    }
    // numerator prod (1 - t^{d - w_i}), as dense integer coefficients
    let mut num: Vec<BigInt> = vec![BigInt::from(1)];
    for &wi in w.weights() {
        let s = (d - wi as i64) as usize;
        let mut next = vec![BigInt::zero(); num.len() + s];
        for (i, c) in num.iter().enumerate() {
            next[i] += c;
            next[i + s] -= c;
        }
        num = next;
    }
    // exact division by each (1 - t^{w_i})
    for &wi in w.weights() {
        let s = wi as usize;
        let mut q = vec![BigInt::zero(); num.len().saturating_sub(s)];
        let mut rem = num.clone();
        for i in 0..q.len() {
            q[i] = rem[i].clone();
            let c = rem[i].clone();
            rem[i + s] += &c;
            rem[i] = BigInt::zero();
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        num = q;
    }
    if num.iter().any(Signed::is_negative) {
        return None;
    }
    let values = num.iter().map(ToPrimitive::to_u64).collect::<Option<Vec<_>>>()?;
    Some(HilbertFunction::from_values(values))
}

/// Positive integer weights making `f` quasihomogeneous, if any are found.
///
/// Forms get unit weights. Otherwise the isobaric condition is a linear
/// system on the weights; a one-dimensional solution space is scaled to
/// primitive integers, and larger ones fall back to a small search.
pub fn detect_weights(f: &Poly) -> Option<WeightSystem> {
    let n = f.nvars();
    if f.is_zero() {
        return None;
    }
    if let Some(m) = f.homogeneous_degree() {
        return (m > 0).then(|| WeightSystem::unit(n, m).unwrap());
    }
    let monos: Vec<&Monomial> = f.terms().map(|(m, _)| m).collect();
    let base = monos[0].exponents();
    let rows: Vec<Vec<Rational>> = monos[1..]
        .iter()
        .map(|m| {
            m.exponents()
                .iter()
                .zip(base)
                .map(|(&a, &b)| Rational::from_integer(BigInt::from(a as i64 - b as i64)))
                .collect()
        })
        .collect();
    let kernel = RatMatrix::from_dense(&rows).kernel_basis();
    let finish = |weights: Vec<u32>| {
        let g = weights.iter().fold(0u32, |acc, &x| acc.gcd(&x));
        let weights: Vec<u32> = weights.iter().map(|x| x / g).collect();
        let degree = monos[0].weighted_degree(&weights) as u32;
        WeightSystem::new(weights, degree).ok()
    };
    if kernel.len() == 1 {
        let v = &kernel[0];
        let lcm = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let sign = if ints.iter().all(Signed::is_positive) {
            BigInt::from(1)
        } else if ints.iter().all(Signed::is_negative) {
            BigInt::from(-1)
        } else {
            return None;
        };
        let weights = ints
            .iter()
            .map(|x| (x * &sign).to_u32())
            .collect::<Option<Vec<_>>>()?;
        return finish(weights);
    }
    if kernel.len() > 1 && n <= 4 {
        const MAX_WEIGHT: u32 = 12;
        let mut best: Option<Vec<u32>> = None;
        let mut w = vec![1u32; n];
        loop {
            let d0 = monos[0].weighted_degree(&w);
            if monos.iter().all(|m| m.weighted_degree(&w) == d0)
                && best.as_ref().is_none_or(|b| {
                    w.iter().sum::<u32>() < b.iter().sum::<u32>()
                })
            {
                best = Some(w.clone());
            }
            // odometer over [1, MAX_WEIGHT]^n
            let mut i = 0;
            while i < n && w[i] == MAX_WEIGHT {
                w[i] = 1;
                i += 1;
            }
            if i == n {
                break;
            }
            w[i] += 1;
        }
        return best.and_then(finish);
    }
    None
}

/// Top graded piece of the Milnor algebra and the role of the Hessian in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleReport {
    pub socle_degree: Option<usize>,
    pub socle_dimension: u64,
    /// `Hess(f) ∉ J(f)` while `x_i Hess(f) ∈ J(f)` for every `i`
    pub hessian_in_socle: bool,
    pub hessian: String,
    pub hessian_weighted_degree: Option<u64>,
    pub hessian_in_jacobian: bool,
    pub multiples_in_jacobian: Vec<bool>,
}

pub fn socle_report(f: &Poly, w: Option<&WeightSystem>) -> Result<SocleReport> {
    let grading = grading_for(f, w)?.ok_or_else(|| {
        Error::Hypothesis("socle analysis needs a (quasi)homogeneous input".into())
    })?;
    let alg = LocalAlgebra::certify(f, CertifyOptions::default())?;
    socle_report_of(&alg, &grading)
}

pub fn socle_report_of(alg: &LocalAlgebra, w: &WeightSystem) -> Result<SocleReport> {
    let f = alg.poly();
    let hilbert = hilbert_function_of(alg, Some(w))?;
    let socle_degree = hilbert.empirical.socle_degree;
    let socle_dimension = socle_degree.map_or(0, |d| hilbert.empirical.value(d));
    // membership is projective, so the normalization constant is irrelevant
    let hessian = f.hessian_det().primitive();
    let hessian_in_jacobian = alg.jacobian_membership(&hessian)?.member;
    let multiples_in_jacobian = (0..f.nvars())
        .map(|i| {
            let xh = &hessian * &Poly::var(f.nvars(), i);
            alg.jacobian_membership(&xh).map(|m| m.member)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SocleReport {
        socle_degree,
        socle_dimension,
        hessian_in_socle: !hessian_in_jacobian && multiples_in_jacobian.iter().all(|&b| b),
        hessian_weighted_degree: hessian.degree_range(w.weights())?.map(|(_, hi)| hi),
        hessian: hessian.to_string(),
        hessian_in_jacobian,
        multiples_in_jacobian,
    })
}

/// Both quasihomogeneity criteria: `f ∈ J(f)` and `μ = τ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaitoVerdict {
    pub is_quasihomogeneous_type: bool,
    pub mu: usize,
    pub tau: usize,
    pub certification_order: u32,
    /// multipliers `a_i` with `f ≡ sum a_i ∂f/∂x_i` modulo `m^{N+1}`
    #[serde(skip)]
    pub membership_witness: Option<Vec<Poly>>,
    pub witness: Option<Vec<String>>,
    pub criteria_agree: bool,
}

pub fn saito_test(f: &Poly) -> Result<SaitoVerdict> {
    let alg = LocalAlgebra::certify(f, CertifyOptions::default())?;
    saito_test_of(&alg)
}

pub fn saito_test_of(alg: &LocalAlgebra) -> Result<SaitoVerdict> {
    let membership = alg.jacobian_membership(alg.poly())?;
    let mu = alg.milnor();
    let tau = alg.tyurina()?;
    let criteria_agree = membership.member == (mu == tau);
    Ok(SaitoVerdict {
        is_quasihomogeneous_type: membership.member,
        mu,
        tau,
        certification_order: alg.order(),
        witness: membership
            .witness
            .as_ref()
            .map(|w| w.iter().map(Poly::to_string).collect()),
        membership_witness: membership.witness,
        criteria_agree,
    })
}

/// Shared jet space helper for callers outside this module.
pub fn jacobian_image(f: &Poly, order: u32) -> Result<IdealImage> {
    let js: Arc<JetSpace> = JetSpace::shared(f.nvars(), order)?;
    ideal_image(&f.gradient(), js, 0)
}
