//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! Run with `cargo test -p sos-cert-cli --test acceptance`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sos_cert::certificate::{deserialize, verify, Certificate};
use sos_cert::exactify::{
    check_positive_definite, gram_of_poly, gram_to_sos, lift_from_rounded, project, round_matrix, SOSDecomposition,
};
use sos_cert::factor::factor_over_q;
use sos_cert::lifting::{certify_nonnegative, crt_combine_sos, hensel_iterates, hensel_lift_sos, CertifyError};
use sos_cert::numeric::{find_roots, mp};
use sos_cert::ratpoly::{gcd, norm2_squared, rat, squarefree_decompose, Poly, RatMatrix, Rational};
use sos_cert::{parse_poly, CertifyOptions};
use std::ops::RangeInclusive;
use std::process::Command;
use std::time::{Duration, Instant};

const SEED: u64 = 20240611;
const INSTANCES: usize = 200;

fn p(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn mat(rows: &[&[(i64, i64)]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect()).collect())
}

fn decimals(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|s| decimal(s)).collect()).collect()
}

fn decimal(s: &str) -> Rational {
    let neg = s.starts_with('-');
    let s = s.trim_start_matches('-');
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let den = 10i64.pow(frac.len() as u32);
    let num: i64 = format!("{int}{frac}").parse().unwrap();
    rat(if neg { -num } else { num }, den)
}

fn toy_sos() -> SOSDecomposition {
    SOSDecomposition {
        weights: vec![rat(3, 5), rat(23, 60), rat(137, 460)],
        polys: vec![p("1 + 1/6*x - 1/3*x^2"), p("x - 7/23*x^2"), p("x^2")],
        modulus: p("x^3-2"),
    }
}

type Property = fn(&mut ChaCha8Rng) -> Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn ac1() -> Outcome {
    let f = p("x^3-2");
    let g = p("x");
    let qbar = round_matrix(&decimals(&[&["0.6", "0.1", "-0.2"], &["0.1", "0.4", "-0.1"], &["-0.2", "-0.1", "0.4"]]), 1);
    let q = Poly::from_coeffs(vec![decimal("0.3"), decimal("-0.4")]);
    let lift = match lift_from_rounded(&f, &g, &qbar, &q) {
        Ok(l) => l,
        Err(e) => return check(false, e.to_string()),
    };
    let want = mat(&[&[(3, 5), (1, 10), (-1, 5)], &[(1, 10), (2, 5), (-3, 20)], &[(-1, 5), (-3, 20), (2, 5)]]);
    if lift.q != want {
        return check(false, "projected matrix differs");
    }
    match gram_to_sos(&lift) {
        Ok(sos) if sos.weights == toy_sos().weights && sos.polys == toy_sos().polys => {
            check(true, "projection and weights/squares exact")
        }
        Ok(_) => check(false, "decomposition differs"),
        Err(e) => check(false, e.to_string()),
    }
}

fn ac2() -> Outcome {
    let qstar = decimals(&[
        &["0.6322063", "-0.0167531", "-0.2295612"],
        &["-0.0167531", "0.4591225", "-0.1580516"],
        &["-0.2295612", "-0.1580516", "0.5167531"],
    ]);
    let qbar = round_matrix(&qstar, 1);
    let target = &p("x") - &(&p("-1/2*x + 3/10") * &p("x^3-2"));
    let projected = match project(&qbar, &target) {
        Ok(m) => m,
        Err(e) => return check(false, e.to_string()),
    };
    let want = mat(&[&[(3, 5), (0, 1), (-7, 30)], &[(0, 1), (7, 15), (-3, 20)], &[(-7, 30), (-3, 20), (1, 2)]]);
    let pd = check_positive_definite(&projected).is_ok();
    check(projected == want && pd, format!("matrix exact: {}, positive definite: {pd}", projected == want))
}

fn ac3() -> Outcome {
    let lifted = match hensel_lift_sos(&toy_sos(), &p("x^3-2"), 2, &p("x")) {
        Ok(s) => s,
        Err(e) => return check(false, e.to_string()),
    };
    let h3 = lifted.polys[2] == p("-46/137*x^5 + 69/274*x^4 + 229/137*x^2 - 69/137*x");
    let div = (&lifted.sum() - &p("x")).is_divisible_by(&p("(x^3-2)^2")).unwrap();
    check(h3 && div, format!("third square exact: {h3}, divisible by (x^3-2)^2: {div}"))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sos-cert"))
}

fn ac4() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = bin()
        .args(["certify", "--f", "x*(x^3-2)^2", "--g", "x^3", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    if out.status.code() != Some(0) {
        return check(false, format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    let cert = deserialize(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let degrees_ok = cert.polys.iter().all(|h| h.deg().unwrap_or(0) < 7);
    let valid = verify(&cert).is_valid();
    check(
        degrees_ok && valid,
        format!("exit 0, {} terms, all deg h < 7: {degrees_ok}, verifies: {valid}", cert.len()),
    )
}

fn ac5() -> Outcome {
    let out = bin().args(["certify", "--f", "x^2", "--g", "x"]).output().unwrap();
    let code = out.status.code();
    check(code == Some(2), format!("exit {code:?}"))
}

fn rand_poly(rng: &mut ChaCha8Rng, degs: RangeInclusive<usize>, bound: i64) -> Poly {
    let deg = rng.gen_range(degs);
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[deg] == 0 {
        c[deg] = 1;
    }
    Poly::from_ints(&c)
}

fn rand_monic(rng: &mut ChaCha8Rng, degs: RangeInclusive<usize>, bound: i64) -> Poly {
    let deg = rng.gen_range(degs);
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    c.push(1);
    Poly::from_ints(&c)
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-100..=100), rng.gen_range(1..=12))
}

fn rand_sym(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let x = rand_rat(rng);
            m[(i, j)] = x.clone();
            m[(j, i)] = x;
        }
    }
    m
}

fn max_abs_coeff(f: &Poly) -> Rational {
    f.coeffs().iter().map(|c| if c < &rat(0, 1) { -c.clone() } else { c.clone() }).max().unwrap_or(rat(0, 1))
}

/// (a) projection lands in the affine space and is idempotent.
fn prop_projection(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..INSTANCES {
        let n = rng.gen_range(1..=6);
        let q = rand_sym(rng, n);
        let target = rand_poly(rng, 0..=(2 * n - 2).min(10), 100);
        let pq = project(&q, &target).map_err(|e| e.to_string())?;
        if pq.quadratic_form() != target {
            return Err(format!("membership fails for n = {n}"));
        }
        if project(&pq, &target).map_err(|e| e.to_string())? != pq {
            return Err("projection is not idempotent".into());
        }
    }
    Ok(())
}

/// (b) the canonical Gram matrix is no larger than the coefficient vector.
fn prop_norm_bound(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..INSTANCES {
        let n = rng.gen_range(1..=6);
        let target = rand_poly(rng, 0..=(2 * n - 2).min(10), 100);
        let qp = gram_of_poly(&target, n).map_err(|e| e.to_string())?;
        if qp.quadratic_form() != target || qp.frobenius_norm_squared() > norm2_squared(&target) {
            return Err(format!("bound fails for {}", target.to_pretty()));
        }
    }
    Ok(())
}

/// (c) LDL reconstructs positive definite matrices exactly; leading minors decide definiteness.
fn prop_ldl(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut definite = 0;
    for k in 0..INSTANCES {
        let n = rng.gen_range(1..=10);
        let q = if k % 2 == 0 {
            let mut m = RatMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] = rat(rng.gen_range(-10..=10), 1);
                }
            }
            let mut g = m.matmul(&m.transpose());
            for i in 0..n {
                g[(i, i)] += rat(1, rng.gen_range(1..=100));
            }
            g
        } else {
            rand_sym(rng, n)
        };
        let minors_positive = (1..=n).all(|i| q.leading(i).determinant() > rat(0, 1));
        match check_positive_definite(&q) {
            Ok(ldl) => {
                definite += 1;
                if ldl.reconstruct() != q || !minors_positive {
                    return Err(format!("LDL accepted a bad matrix (n = {n})"));
                }
            }
            Err(_) if minors_positive => return Err(format!("LDL rejected a definite matrix (n = {n})")),
            Err(_) => {}
        }
    }
    if definite < INSTANCES / 2 {
        return Err(format!("only {definite} definite instances"));
    }
    Ok(())
}

/// (d) the factorization multiplies back to the input.
fn prop_factor(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut done = 0;
    while done < INSTANCES {
        let f = if done % 2 == 0 {
            rand_poly(rng, 1..=10, 100)
        } else {
            let mut f = Poly::from_ints(&[rng.gen_range(1..=5)]);
            while f.deg().unwrap() < 4 {
                let d = rng.gen_range(1..=3);
                f = &f * &rand_monic(rng, d..=d, 4).pow(rng.gen_range(1..=2));
            }
            f
        };
        if f.deg().unwrap() > 10 || max_abs_coeff(&f) > rat(100, 1) {
            continue;
        }
        let r = factor_over_q(&f).map_err(|e| e.to_string())?;
        if r.reconstruct() != f {
            return Err(format!("reconstruction fails for {}", f.to_pretty()));
        }
        done += 1;
    }
    Ok(())
}

/// (e) every Newton iterate is a square root modulo p^(2^k).
fn prop_hensel(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut done = 0;
    while done < INSTANCES {
        let dp = rng.gen_range(1..=3);
        let e = rng.gen_range(2..=10 / dp as u32);
        let modp = rand_monic(rng, dp..=dp, 20);
        let h0 = rand_poly(rng, dp - 1..=dp - 1, 20);
        if h0.is_zero() || !gcd(&h0, &modp).unwrap().is_one() {
            continue;
        }
        let gbar = &(&h0 * &h0) + &(&modp * &rand_poly(rng, 3..=3, 20));
        let its = hensel_iterates(&h0, &gbar, &modp, e).map_err(|e| e.to_string())?;
        for (k, h) in its.iter().enumerate() {
            let m = modp.pow(1 << k);
            if !(&(h * h) - &gbar).is_divisible_by(&m).unwrap() {
                return Err(format!("iterate {k} fails modulo ({})^{}", modp.to_pretty(), 1 << k));
            }
        }
        if (1u32 << (its.len() - 1)) < e {
            return Err("iterates stop short of the target exponent".into());
        }
        done += 1;
    }
    Ok(())
}

/// (f) CRT output is congruent to g modulo every factor; g is known by construction.
fn prop_crt(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut done = 0;
    while done < INSTANCES {
        let k = rng.gen_range(1..=4);
        let mut mods: Vec<Poly> = Vec::new();
        for _ in 0..k {
            let m = rand_monic(rng, 1..=3, 20);
            if mods.iter().all(|o| gcd(o, &m).unwrap().is_one()) {
                mods.push(m);
            }
        }
        let total: usize = mods.iter().map(|m| m.deg().unwrap()).sum();
        if total > 10 {
            continue;
        }
        let terms = rng.gen_range(1..=3);
        let weights: Vec<Rational> = (0..terms).map(|_| rat(rng.gen_range(1..=100), rng.gen_range(1..=12))).collect();
        let hs: Vec<Poly> = (0..terms).map(|_| rand_poly(rng, 0..=4, 100)).collect();
        let big = mods.iter().fold(Poly::one(), |a, m| &a * m);
        let mut g = &big * &rand_poly(rng, 2..=2, 100);
        for (w, h) in weights.iter().zip(&hs) {
            g = &g + &(h * h).scale(w);
        }
        let parts: Vec<(Poly, SOSDecomposition)> = mods
            .iter()
            .map(|m| {
                let polys = hs.iter().map(|h| h.rem(m).unwrap()).collect();
                (m.clone(), SOSDecomposition { weights: weights.clone(), polys, modulus: m.clone() })
            })
            .collect();
        let out = crt_combine_sos(&parts, &g).map_err(|e| e.to_string())?;
        let residual = &out.sum() - &g;
        for m in &mods {
            if !residual.is_divisible_by(m).unwrap() {
                return Err(format!("not congruent modulo {}", m.to_pretty()));
            }
        }
        done += 1;
    }
    Ok(())
}

/// (g) emitted certificates verify and g is non-negative at the numerically found real roots.
fn prop_certificates(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let opts = CertifyOptions::default();
    let (mut emitted, mut refused) = (0, 0);
    while emitted + refused < INSTANCES {
        let a = rand_monic(rng, 1..=4, 9);
        let b = rand_monic(rng, 1..=3, 9);
        let f = &a * &b.pow(rng.gen_range(1..=2));
        if f.deg().unwrap() > 10 || max_abs_coeff(&f) > rat(100, 1) {
            continue;
        }
        let s = rand_poly(rng, 0..=3, 7);
        let positive = &(&s * &s) + &Poly::from_ints(&[rng.gen_range(1..=50)]);
        // half the targets vanish on the roots of a
        let g = if rng.gen_bool(0.5) { &(&a * &a) * &positive } else { positive };
        match certify_nonnegative(&f, &g, &opts) {
            Ok(cert) => {
                check_certificate(&f, &g, &cert)?;
                emitted += 1;
            }
            Err(CertifyError::HypothesisViolated { d, cofactor }) => {
                if gcd(&d, &cofactor).unwrap().is_one() {
                    return Err("hypothesis reported violated but holds".into());
                }
                refused += 1;
            }
            Err(e) => return Err(format!("f = {}, g = {}: {e}", f.to_pretty(), g.to_pretty())),
        }
    }
    Ok(format!("{emitted} certificates, {refused} hypothesis refusals"))
}

fn check_certificate(f: &Poly, g: &Poly, cert: &Certificate) -> Result<(), String> {
    if !verify(cert).is_valid() || &cert.f != f || &cert.g != g {
        return Err(format!("certificate for f = {} fails verification", f.to_pretty()));
    }
    let radical = squarefree_decompose(f).unwrap().radical();
    if radical.is_constant() {
        return Ok(());
    }
    let roots = find_roots(&radical, 106).map_err(|e| format!("roots of {}: {e}", radical.to_pretty()))?;
    let coeffs: Vec<mp::Float> = g.coeffs().iter().map(|c| mp::from_rational(c, roots.precision_bits)).collect();
    for xi in &roots.real_roots {
        let value = mp::to_f64(&mp::eval(&coeffs, xi));
        if value < -1e-9 {
            return Err(format!("g({}) = {value} for f = {}", mp::to_f64(xi), f.to_pretty()));
        }
    }
    Ok(())
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    let props: [(&str, Property); 6] = [
        ("a projection", prop_projection),
        ("b norm bound", prop_norm_bound),
        ("c LDL", prop_ldl),
        ("d factorization", prop_factor),
        ("e Hensel", prop_hensel),
        ("f CRT", prop_crt),
    ];
    for (name, prop) in props {
        let t = Instant::now();
        match prop(&mut rng) {
            Ok(()) => lines.push(format!("({name}: ok {:.0} ms)", t.elapsed().as_secs_f64() * 1e3)),
            Err(e) => {
                ok = false;
                lines.push(format!("({name}: {e})"));
            }
        }
    }
    let t = Instant::now();
    match prop_certificates(&mut rng) {
        Ok(s) => lines.push(format!("(g certificates: {s}, {:.0} ms)", t.elapsed().as_secs_f64() * 1e3)),
        Err(e) => {
            ok = false;
            lines.push(format!("(g certificates: {e})"));
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(60);
    check(ok && in_time, format!("{INSTANCES} instances each {}", lines.join(" ")))
}

/// A pair where g is negative at a chosen real root of f, coprime to f.
fn negative_pair(rng: &mut ChaCha8Rng) -> (Poly, Poly) {
    loop {
        // a rational root r or an irrational root sqrt(m)
        let root_factor = if rng.gen_bool(0.5) {
            Poly::from_ints(&[-rng.gen_range(-10..=10), 1])
        } else {
            Poly::from_ints(&[-rng.gen_range(2..=30), 0, 1])
        };
        let s = rand_poly(rng, 0..=5, 100);
        // subtracting the interpolant of s on the roots leaves g = -depth there
        let depth = Poly::from_ints(&[rng.gen_range(1..=100)]);
        let g = &(&s - &s.rem(&root_factor).unwrap()) - &depth;
        let other = rand_poly(rng, 0..=4, 100);
        if other.is_zero() {
            continue;
        }
        let f = &root_factor * &other;
        if f.deg().unwrap() > 10 || !gcd(&f, &g).unwrap().is_one() {
            continue;
        }
        return (f, g);
    }
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xf00d);
    let mut counts = [0usize; 5];
    let mut other = Vec::new();
    let mut first_bad = None;
    for _ in 0..100 {
        let (f, g) = negative_pair(&mut rng);
        let out = bin()
            .args(["certify", &format!("--f={}", f.to_pretty()), &format!("--g={}", g.to_pretty())])
            .output()
            .unwrap();
        match out.status.code() {
            Some(c @ 0..=4) => counts[c as usize] += 1,
            c => other.push(format!("{c:?}")),
        }
        if !matches!(out.status.code(), Some(3 | 4)) && first_bad.is_none() {
            first_bad = Some(format!(
                "f = {}, g = {}: {}",
                f.to_pretty(),
                g.to_pretty(),
                String::from_utf8_lossy(&out.stderr).trim()
            ));
        }
    }
    let ok = counts[0] == 0 && counts[1] == 0 && counts[2] == 0 && other.is_empty();
    check(
        ok,
        format!(
            "100 pairs: exit 3 x{}, exit 4 x{}, exit 0 x{}, other x{}",
            counts[3],
            counts[4],
            counts[0],
            counts[1] + counts[2] + other.len()
        ) + &first_bad.map(|b| format!("; first unexpected: {b}")).unwrap_or_default(),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1 rounded Gram projection and LDL decomposition", ac1, Some(Duration::from_millis(10))),
        ("AC2 one-digit rounding, projection, definiteness", ac2, Some(Duration::from_millis(10))),
        ("AC3 Hensel lift of the last square", ac3, Some(Duration::from_millis(10))),
        ("AC4 end-to-end certify x*(x^3-2)^2, x^3", ac4, Some(Duration::from_secs(1))),
        ("AC5 counterexample f = x^2, g = x", ac5, None),
        ("AC6 property suite", ac6, Some(Duration::from_secs(60))),
        ("AC7 fuzz soundness", ac7, None),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let limit_txt = limit.map(|l| format!(" (limit {l:?})")).unwrap_or_default();
        println!(
            "{} {name}: {} [{:.3} ms{limit_txt}]",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64() * 1e3
        );
    }
    if failed > 0 {
        println!("{failed} of 7 criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
