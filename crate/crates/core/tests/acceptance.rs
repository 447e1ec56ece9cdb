//! Acceptance run: one PASS/FAIL line per criterion, with the time limit each
//! criterion must meet.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use hypersing::combinatorics::{binomial, m_closed_form, m_sum, n_dim, verify_lemma_comb};
use hypersing::determinacy::{
    certify_k_determined, is_regular, main_bound, multiplication_map, tougeron_bound, Criterion,
};
use hypersing::frontend::run;
use hypersing::invariants::{
    detect_weights, hilbert_function, milnor_number, saito_test, socle_report,
};
use hypersing::jetspace::{ideal_image, jet_membership, JetSpace};
use hypersing::poly::{int, power_sum, rat, Monomial, Poly, WeightSystem};
use hypersing::sharpness::sharpness_report;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEED: u64 = 0x5eed_2024;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(1 + t + ... + t^{m-2})^n` by repeated convolution.
fn geometric_power(n: usize, m: u32) -> Vec<u64> {
    let mut coeffs = vec![1u64];
    for _ in 0..n {
        let mut next = vec![0u64; coeffs.len() + (m - 2) as usize];
        for (i, c) in coeffs.iter().enumerate() {
            for j in 0..=(m - 2) as usize {
                next[i + j] += c;
            }
        }
        coeffs = next;
    }
    coeffs
}

fn c1_dbound_table() -> Check {
    let mut count = 0;
    for n in 2..=8u64 {
        for m in 2..=8u64 {
            let expected = match (n, m) {
                (_, 2) => 3,
                (2, 3) | (3, 3) => 4,
                (2, 4) => 5,
                _ => n * (m - 2) + 1,
            };
            let out = run(["hypersing", "dbound", &n.to_string(), &m.to_string(), "--json"]);
            ensure(out.code == 0, || format!("dbound {n} {m} exited {}", out.code))?;
            let v: Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
            ensure(v["value"] == expected, || format!("D({n},{m}) = {} != {expected}", v["value"]))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs exact"))
}

fn c2_main_bound() -> Check {
    for (n, m) in [(2usize, 4u32), (2, 5), (2, 6), (3, 3), (3, 4), (4, 3)] {
        let k = n as u32 * (m - 2);
        let v = certify_k_determined(&power_sum(n, m), k, Criterion::Corollary)
            .map_err(|e| format!("({n},{m}): {e}"))?;
        ensure(v.certified, || format!("({n},{m}) k={k} not certified: {:?}", v.obstruction))?;
    }
    Ok("6 Fermat forms certified at k = n(m-2)".into())
}

fn c3_sharpness() -> Check {
    let ts = [int(1), int(-1), rat(1, 2)];
    let mut count = 0;
    for (n, m) in [(2usize, 5u32), (3, 4), (4, 3), (3, 5)] {
        for t in &ts {
            let r = sharpness_report(n, m, t).map_err(|e| format!("({n},{m},{t}): {e}"))?;
            let tag = format!("({n},{m},t={t})");
            ensure(!r.saito_g, || format!("{tag}: g in J(g)"))?;
            ensure(r.tau_g < r.mu_g, || format!("{tag}: tau {} >= mu {}", r.tau_g, r.mu_g))?;
            ensure(r.mu_f == ((m - 1) as usize).pow(n as u32), || format!("{tag}: mu(f) = {}", r.mu_f))?;
            ensure(!r.obstruction_monomial_in_jf, || format!("{tag}: obstruction in J(f)"))?;
            let coefficient = t * hypersing::poly::Rational::new(
                BigInt::from(n as i64 * (m as i64 - 2) - m as i64),
                BigInt::from(m),
            );
            ensure(r.euler_identity_holds && r.euler_coefficient == coefficient.to_string(), || {
                format!("{tag}: Euler identity {} / {}", r.euler_combination, r.euler_coefficient)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} (n,m,t) witnesses"))
}

fn c4_lemma() -> Check {
    for n in 2..=10i64 {
        for m in 2..=10i64 {
            ensure(m_sum(n, m) == binomial(n * (m - 1), n - 1), || format!("({n},{m}) sum"))?;
            ensure(m_closed_form(n, m) == binomial(n * (m - 1), n - 1), || format!("({n},{m}) closed"))?;
        }
    }
    let rows = verify_lemma_comb(10, 10);
    let mut brute = 0;
    for r in &rows {
        let small = r.n * (r.m - 1) <= 20;
        ensure(r.brute_force.is_some() == small, || format!("({},{}) enumeration coverage", r.n, r.m))?;
        if let Some(b) = r.brute_force {
            ensure(b.to_string() == r.rhs, || format!("({},{}) enumeration {b} != {}", r.n, r.m, r.rhs))?;
            brute += 1;
        }
        ensure(r.equal, || format!("({},{}) row not equal", r.n, r.m))?;
    }
    Ok(format!("81 pairs exact, {brute} by enumeration"))
}

fn check_graded_regular(f: &Poly, n: usize, m: u32) -> std::result::Result<(), String> {
    let tag = f.to_string();
    let h = hilbert_function(f, None).map_err(|e| format!("{tag}: {e}"))?;
    let expected = geometric_power(n, m);
    ensure(h.empirical.values == expected, || format!("{tag}: {:?} != {expected:?}", h.empirical.values))?;
    let top = (n as u32 * (m - 2)) as usize;
    ensure(h.empirical.socle_degree == Some(top), || format!("{tag}: socle degree"))?;
    let s = socle_report(f, None).map_err(|e| format!("{tag}: {e}"))?;
    ensure(s.socle_dimension == 1, || format!("{tag}: socle dimension {}", s.socle_dimension))?;
    ensure(!s.hessian_in_jacobian, || format!("{tag}: Hess in J"))?;
    ensure(s.multiples_in_jacobian.iter().all(|&b| b), || format!("{tag}: x_i Hess not in J"))?;
    Ok(())
}

fn c5_hilbert_socle() -> Check {
    let mut count = 0;
    for n in 2..=3usize {
        for m in 2..=5u32 {
            check_graded_regular(&power_sum(n, m), n, m)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..20 {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(2..=5);
        let f = common::random_regular_form(&mut rng, n, m);
        check_graded_regular(&f, n, m)?;
        count += 1;
    }
    Ok(format!("{count} forms (8 Fermat, 20 random)"))
}

fn c6_saito() -> Check {
    let mut qh = 0;
    for e in common::CORPUS {
        let f = common::parse(e.text);
        let v = saito_test(&f).map_err(|err| format!("{}: {err}", e.label))?;
        ensure(v.criteria_agree, || format!("{}: f in J(f) = {} but mu={} tau={}", e.label, v.is_quasihomogeneous_type, v.mu, v.tau))?;
        ensure(v.is_quasihomogeneous_type == e.quasihomogeneous, || {
            format!("{}: expected {}, got {}", e.label, e.quasihomogeneous, v.is_quasihomogeneous_type)
        })?;
        qh += usize::from(e.quasihomogeneous);
    }
    for (text, weights, degree) in [("x^3 + y^2", vec![2, 3], 6), ("x^3 + x*y^3", vec![3, 2], 9)] {
        let f = common::parse(text);
        let w = detect_weights(&f).ok_or(format!("{text}: no weights detected"))?;
        ensure(w.weights() == weights.as_slice() && w.degree() == degree, || format!("{text}: detected {w:?}"))?;
    }
    Ok(format!("{} corpus members, 0 discrepancies, {qh} quasihomogeneous", common::CORPUS.len()))
}

fn c7_plane_cubics() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut forms = vec![power_sum(2, 3)];
    for _ in 0..5 {
        forms.push(common::random_regular_form(&mut rng, 2, 3));
    }
    for f in &forms {
        let v = certify_k_determined(f, 3, Criterion::Fdt).map_err(|e| format!("{f}: {e}"))?;
        ensure(v.certified, || format!("{f}: fdt k=3 not certified"))?;
        let rank = multiplication_map(f, 2).map_err(|e| e.to_string())?.rank();
        ensure(rank == 5, || format!("{f}: multiplication map rank {rank}"))?;
    }
    Ok("6 plane cubics certified, rank 3*2-1 = 5".into())
}

fn c8_weighted() -> Check {
    for (text, weights, degree) in [("x^3 + y^2", vec![2u32, 3], 6u32), ("x^3 + y^4 + z^2", vec![4, 3, 6], 12)] {
        let f = common::parse(text);
        let w = WeightSystem::new(weights.clone(), degree).map_err(|e| e.to_string())?;
        ensure(f.euler_defect(&w).map_err(|e| e.to_string())?.is_zero(), || format!("{text}: Euler defect"))?;
        let n = weights.len() as i64;
        let delta = n * degree as i64 - 2 * weights.iter().map(|&x| x as i64).sum::<i64>();
        let h = hilbert_function(&f, Some(&w)).map_err(|e| e.to_string())?;
        ensure(h.empirical.socle_degree == Some(delta as usize), || {
            format!("{text}: socle degree {:?} != {delta}", h.empirical.socle_degree)
        })?;
        let v = main_bound(&f, Some(&w)).map_err(|e| format!("{text}: {e}"))?;
        ensure(v.certified && v.k == delta as u64, || format!("{text}: weighted certificate {v:?}"))?;
    }
    Ok("socle degrees 2 and 10 match, both certified".into())
}

fn c9_tougeron() -> Check {
    let mut compared = 0;
    for e in common::CORPUS {
        let f = common::parse(e.text);
        let mu = milnor_number(&f).map_err(|err| format!("{}: {err}", e.label))?.value as u64;
        let t = tougeron_bound(&f).map_err(|err| format!("{}: {err}", e.label))?;
        ensure(t.k == mu + 1, || format!("{}: tougeron k = {} != mu+1 = {}", e.label, t.k, mu + 1))?;
        if let Some(w) = detect_weights(&f) {
            if is_regular(&f, Some(&w)).map_err(|err| err.to_string())? {
                let main = main_bound(&f, Some(&w)).map_err(|err| format!("{}: {err}", e.label))?;
                // a weighted k lives in another filtration; compare its ordinary-degree bound
                let k = match main.criterion {
                    Criterion::Weighted => main.ordinary_degree_bound.ok_or("missing ordinary bound")?,
                    _ => main.k,
                };
                ensure(mu + 1 >= k, || format!("{}: mu+1 = {} < main k = {k}", e.label, mu + 1))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{} members, {compared} compared with the main bound", common::CORPUS.len()))
}

fn c10_oracles() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let mut queries = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3usize);
        let order = rng.gen_range(2..=8u32);
        let gens: Vec<Monomial> = (0..rng.gen_range(1..=4))
            .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=4)).collect()))
            .collect();
        let polys: Vec<Poly> = gens.iter().cloned().map(Poly::monomial).collect();
        let img = ideal_image(&polys, Arc::new(JetSpace::new(n, order).map_err(|e| e.to_string())?), 0)
            .map_err(|e| e.to_string())?;
        for d in 0..=order {
            for mono in Monomial::all_of_degree(n, d) {
                let divisible = gens.iter().any(|g| mono.is_divisible_by(g));
                let member = jet_membership(&Poly::monomial(mono.clone()), &img).map_err(|e| e.to_string())?.member;
                ensure(member == divisible, || format!("{gens:?} vs {mono:?}"))?;
                queries += 1;
            }
        }
    }
    for _ in 0..20 {
        let n = rng.gen_range(2..=3usize);
        let m = rng.gen_range(2..=4u32);
        let f = common::random_regular_form(&mut rng, n, m);
        let order = n as u32 * (m - 2) + 1;
        let img = ideal_image(&f.gradient(), JetSpace::shared(n, order).map_err(|e| e.to_string())?, 0)
            .map_err(|e| e.to_string())?;
        let a = img.span_matrix();
        let top: Vec<_> = img
            .columns()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.multiplier.degree() + m - 1 == order)
            .map(|(i, _)| a.column(i).to_vec())
            .collect();
        let rank = hypersing::exactla::RatMatrix::from_columns(a.rows(), top).rank();
        let hilbert = geometric_power(n, m);
        let predicted = n_dim(n as i64, order as i64) - BigInt::from(*hilbert.get(order as usize).unwrap_or(&0));
        ensure(BigInt::from(rank) == predicted, || format!("{f}: top-degree image {rank} != {predicted}"))?;
    }
    Ok(format!("50 monomial ideals ({queries} queries), 20 regular forms"))
}

type Entry = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Entry; 10] = [
        ("D(n,m) table", c1_dbound_table, Duration::from_secs(1)),
        ("main-bound certification", c2_main_bound, Duration::from_secs(60)),
        ("sharpness", c3_sharpness, Duration::from_secs(120)),
        ("binomial lemma", c4_lemma, Duration::from_secs(5)),
        ("Hilbert function and socle", c5_hilbert_socle, Duration::from_secs(300)),
        ("Saito cross-validation", c6_saito, Duration::from_secs(300)),
        ("plane cubics at k=3", c7_plane_cubics, Duration::from_secs(1)),
        ("weighted determinacy", c8_weighted, Duration::from_secs(60)),
        ("Tougeron bound", c9_tougeron, Duration::from_secs(300)),
        ("oracle equivalence", c10_oracles, Duration::from_secs(300)),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {status}: {name}: {detail} [{:.2} s, limit {} s]",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
