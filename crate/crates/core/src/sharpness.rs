//! Counterexample families showing the general bound `n(m-2)` cannot be lowered.
//!
//! For admissible `(n, m)` the germ `g = f + t * x_1^{m-2}...x_n^{m-2}` has the
//! same `(n(m-2)-1)`-jet as the Fermat form `f`, yet fails Saito's test. Since
//! `f` is quasihomogeneous, `g` is not equivalent to it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{saito_test_of, LocalAlgebra};
use crate::jetspace::CertifyOptions;
use crate::poly::{power_sum, Monomial, Poly, Rational};

/// `x_1^m + ... + x_n^m`.
pub fn fermat(n: usize, m: u32) -> Result<Poly> {
    if n < 2 || m < 2 {
        return Err(Error::Hypothesis(format!(
            "the Fermat family needs n >= 2 and m >= 2, got ({n}, {m})"
        )));
    }
    Ok(power_sum(n, m))
}

/// Every violated hypothesis for the deformation family, empty when admissible.
pub fn admissibility_violations(n: usize, m: u32) -> Vec<String> {
    let mut violated = Vec::new();
    if n < 2 {
        violated.push("n >= 2 required".to_string());
    }
    if m < 3 {
        violated.push("m >= 3 required".to_string());
    }
    if m == 3 && n < 4 {
        violated.push("n >= 4 required when m = 3".to_string());
    }
    if m == 4 && n < 3 {
        violated.push("n >= 3 required when m = 4".to_string());
    }
    if n == 2 && m < 5 {
        violated.push("n = 2 requires m >= 5 so that n(m-2) > m".to_string());
    }
    if (n as i64) * (m as i64) - 2 * (n as i64) - (m as i64) == 0 {
        violated.push("nm-2n-m = 0 (must be nonzero)".to_string());
    }
    violated
}

fn check_admissible(n: usize, m: u32) -> Result<()> {
    let violated = admissibility_violations(n, m);
    if violated.is_empty() {
        Ok(())
    } else {
        Err(Error::Inadmissible { n, m, violated })
    }
}

/// `x_1^{m-2} ... x_n^{m-2}`.
pub fn obstruction_monomial(n: usize, m: u32) -> Monomial {
    Monomial::new(vec![m.saturating_sub(2); n])
}

/// `f_{n,m} + t * x_1^{m-2} ... x_n^{m-2}`.
pub fn deformed_fermat(n: usize, m: u32, t: &Rational) -> Result<Poly> {
    check_admissible(n, m)?;
    let f = fermat(n, m)?;
    Ok(f + Poly::term(obstruction_monomial(n, m), t.clone()))
}

/// `f + t * Hess(f)` with the Hessian made primitive.
pub fn hessian_deformation(f: &Poly, t: &Rational) -> Result<Poly> {
    let m = f
        .homogeneous_degree()
        .ok_or_else(|| Error::Hypothesis("hessian_deformation needs a homogeneous f".into()))?;
    check_admissible(f.nvars(), m)?;
    if !crate::determinacy::is_regular(f, None)? {
        return Err(Error::NotRegular("hessian_deformation needs a regular form".into()));
    }
    Ok(f + &f.hessian_det().primitive().scale(t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub n: usize,
    pub m: u32,
    pub t: String,
    pub f: String,
    pub g: String,
    pub mu_f: usize,
    pub mu_g: usize,
    pub tau_g: usize,
    pub saito_g: bool,
    pub certification_order: u32,
    pub obstruction_monomial: String,
    #[serde(rename = "obstruction_monomial_in_Jf")]
    pub obstruction_monomial_in_jf: bool,
    /// whether some `x_i^{m-1}` divides the obstruction monomial
    pub obstruction_divisible: bool,
    /// `(1/m) sum x_i dg/dx_i - g`
    pub euler_combination: String,
    /// `t (n(m-2)/m - 1)`
    pub euler_coefficient: String,
    pub euler_identity_holds: bool,
    /// the `(n(m-2)-1)`-jets of f and g agree
    pub jets_agree: bool,
    pub conclusion: String,
}

/// `(1/m) sum_i x_i dg/dx_i - g`.
pub fn euler_combination(g: &Poly, m: u32) -> Result<Poly> {
    let field = g.euler_field(&vec![1; g.nvars()])?;
    Ok(&field.scale(&Rational::new(BigInt::one(), BigInt::from(m))) - g)
}

pub fn sharpness_report(n: usize, m: u32, t: &Rational) -> Result<SharpnessReport> {
    if t.is_zero() {
        return Err(Error::Hypothesis("the deformation parameter t must be nonzero".into()));
    }
    let g = deformed_fermat(n, m, t)?;
    let f = fermat(n, m)?;
    let alg_f = LocalAlgebra::certify(&f, CertifyOptions::default())?;
    let alg_g = LocalAlgebra::certify(&g, CertifyOptions::default())?;
    let saito = saito_test_of(&alg_g)?;

    let obstruction = obstruction_monomial(n, m);
    let obstruction_poly = Poly::monomial(obstruction.clone());
    let in_jf = alg_f.jacobian_membership(&obstruction_poly)?.member;
    let obstruction_divisible = (0..n).any(|i| {
        let mut e = vec![0; n];
        e[i] = m - 1;
        obstruction.is_divisible_by(&Monomial::new(e))
    });

    let coefficient = t * Rational::new(
        BigInt::from(n as i64 * (m as i64 - 2) - m as i64),
        BigInt::from(m),
    );
    let combination = euler_combination(&g, m)?;
    let euler_identity_holds = combination == obstruction_poly.scale(&coefficient);

    let low = n as u32 * (m - 2);
    let jets_agree = f.truncate(low - 1) == g.truncate(low - 1);

    let conclusion = if saito.is_quasihomogeneous_type {
        format!("g lies in J(g) at t = {t}: no conclusion at this witness")
    } else {
        format!(
            "g_t is not quasihomogeneous-equivalent; hence f_{{{n},{m}}} is not {}-determined at this witness",
            low - 1
        )
    };
    Ok(SharpnessReport {
        n,
        m,
        t: t.to_string(),
        f: f.to_string(),
        g: g.to_string(),
        mu_f: alg_f.milnor(),
        mu_g: saito.mu,
        tau_g: saito.tau,
        saito_g: saito.is_quasihomogeneous_type,
        certification_order: alg_g.order(),
        obstruction_monomial: obstruction_poly.to_string(),
        obstruction_monomial_in_jf: in_jf,
        obstruction_divisible,
        euler_combination: combination.to_string(),
        euler_coefficient: coefficient.to_string(),
        euler_identity_holds,
        jets_agree,
        conclusion,
    })
}

/// Parameters at which `f + t Hess(f)` is tested for a "general" `t`.
pub fn sweep_parameters() -> Vec<Rational> {
    [(1, 1), (-1, 1), (1, 2), (2, 1), (-1, 3), (5, 7)]
        .iter()
        .map(|&(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub t: String,
    pub g: String,
    pub mu: usize,
    pub tau: usize,
    pub saito: bool,
}

/// Saito verdicts for `f + t Hess(f)` at each listed `t`; nothing is claimed
/// about parameters outside the list.
pub fn parameter_sweep(f: &Poly, ts: &[Rational]) -> Result<Vec<SweepRow>> {
    ts.iter()
        .map(|t| {
            let g = hessian_deformation(f, t)?;
            let alg = LocalAlgebra::certify(&g, CertifyOptions::default())?;
            let v = saito_test_of(&alg)?;
            Ok(SweepRow {
                t: t.to_string(),
                g: g.to_string(),
                mu: v.mu,
                tau: v.tau,
                saito: v.is_quasihomogeneous_type,
            })
        })
        .collect()
}
