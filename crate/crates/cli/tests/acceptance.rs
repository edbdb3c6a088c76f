//! End-to-end acceptance checks. Each test writes one `criterion N: PASS` or
//! `criterion N: FAIL` line to standard error (bypassing output capture, so
//! the lines appear in every test log).

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use dashu_float::FBig;
use lehmer_cli::report::{Report, Status};
use lehmer_cli::suites::{self, Settings, Suite};
use lehmer_core::algnum::DEFAULT_MAX_BITS as MB;
use lehmer_core::corpus::{first_root, random_divisible_member, random_non_member, random_rational};
use lehmer_core::cyclotomic::cyclotomic;
use lehmer_core::fields::{in_k_div, v_lower, v_upper_norm_trick, w_height, NumberField};
use lehmer_core::heights::{default_tol, weil_height};
use lehmer_core::interval::ComplexBox;
use lehmer_core::poly::IntPoly;
use lehmer_core::relheight::{dirichlet_approx, f_eval, hgamma_upper_search, remond_constant, ExponentVector};
use lehmer_core::subgroup::make_subgroup;
use lehmer_core::AlgebraicNumber;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(n: u32, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "criterion {n}: {verdict} ({detail})");
}

fn settings() -> Settings {
    Settings::new(1, default_tol(), MB)
}

fn clean(r: &Report) -> bool {
    let s = r.summary();
    s.fail == 0 && s.indeterminate == 0 && s.total() > 0
}

fn int(n: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_i64(n, 1).unwrap()
}

fn root(c: &[i64], b: &str) -> AlgebraicNumber {
    AlgebraicNumber::from_poly_root(&IntPoly::from_i64s(c), &ComplexBox::parse(b).unwrap(), MB).unwrap()
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[test]
fn criterion_01_height_axioms() {
    let start = Instant::now();
    let r = suites::run(Suite::Axioms, &settings()).unwrap();
    let elapsed = start.elapsed();
    let ok = clean(&r) && r.checks.len() == 800 && elapsed < Duration::from_secs(120);
    line(1, ok, &format!("{}, {:.1}s", r.summary(), elapsed.as_secs_f64()));
    assert!(ok);
}

#[test]
fn criterion_02_spot_heights() {
    let t = default_tol();
    let h = |a: &AlgebraicNumber| weil_height(a, &t, MB).unwrap().mid_f64();
    // Independent values: log of integers, and phi = (1 + sqrt 5) / 2 in closed form.
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut errs = vec![
        (h(&int(2)) - 2f64.ln()).abs(),
        (h(&AlgebraicNumber::from_i64(3, 2).unwrap()) - 3f64.ln()).abs(),
        (h(&root(&[-1, -1, 1], "1,2,0,0")) - 0.5 * phi.ln()).abs(),
    ];
    for n in 1..=30 {
        errs.push(h(&first_root(&cyclotomic(n), MB).unwrap()));
    }
    let worst = errs.iter().cloned().fold(0.0, f64::max);
    let ok = worst <= 1e-10;
    line(2, ok, &format!("largest deviation {worst:.2e} nats over 33 values"));
    assert!(ok);
}

#[test]
fn criterion_03_sandwich() {
    let r = suites::run(Suite::Thma, &settings()).unwrap();
    let corpus_ok = clean(&r) && r.checks.len() == 300;
    let (q, t) = (NumberField::rationals(), default_tol());
    let a = root(&[-1, -2, 1], "2,3,0,0");
    let w = w_height(&a, &q, &t, MB).unwrap().mid_f64();
    let lo = v_lower(&a, &q, &t, MB).unwrap().mid_f64();
    let up = v_upper_norm_trick(&a, &q, &t, MB).unwrap().mid_f64();
    let w_ok = (w - 0.881374).abs() < 1e-6 && (2.0 * lo - 0.881374).abs() < 1e-6;
    // (1/2) h(alpha^2 / N) with N = -1 is (1/2) log(3 + 2 sqrt 2) / 2.
    let up_exact = 0.25 * (3.0 + 2.0 * 2f64.sqrt()).ln();
    assert!((up - up_exact).abs() < 1e-10, "norm-trick value {up}");
    let up_ok = (up - 0.881374).abs() < 1e-6;
    let ok = corpus_ok && w_ok && up_ok;
    line(
        3,
        ok,
        &format!(
            "corpus {}; W = {w:.6}, 2 v_lower = {:.6}, norm-trick upper = {up:.6} (expected 0.881374)",
            r.summary(),
            2.0 * lo
        ),
    );
    assert!(corpus_ok && w_ok);
}

#[test]
fn criterion_04_divisible_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (q, t) = (NumberField::rationals(), default_tol());
    let mut bad = 0;
    for i in 0..100 {
        let (a, member) = if i < 50 {
            (random_divisible_member(&mut rng, 20, MB).unwrap().0, true)
        } else {
            (random_non_member(&mut rng, 6, 20, MB).unwrap(), false)
        };
        let div = in_k_div(&a, &q, MB).unwrap();
        let zero = w_height(&a, &q, &t, MB).unwrap().is_exact_zero();
        if div != member || zero != member {
            bad += 1;
        }
    }
    line(4, bad == 0, &format!("50 members, 50 non-members, {bad} disagreements"));
    assert_eq!(bad, 0);
}

#[test]
fn criterion_05_voutier() {
    let r = suites::run(Suite::Voutier, &settings()).unwrap();
    let vout = r.checks.iter().filter(|c| c.paper_tag == "vout").count();
    let ok = clean(&r) && vout == 100;
    line(5, ok, &format!("{} ({vout} height checks)", r.summary()));
    assert!(ok);
}

#[test]
fn criterion_06_dirichlet() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let start = Instant::now();
    let mut bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=3usize);
        let a: Vec<BigRational> = (0..n)
            .map(|_| if rng.gen_bool(0.1) { rat(0, 1) } else { random_rational(&mut rng, 60) })
            .collect();
        let qv = rng.gen_range(2..=10i64);
        let qr = rat(qv, 1);
        let (m, b) = dirichlet_approx(&a, &qr).unwrap();
        let bound = (qr * rat(m as i64, 1)).recip();
        let within = b.to_rationals().iter().zip(&a).all(|(x, y)| {
            let d = x - y;
            (if d < rat(0, 1) { -d } else { d }) <= bound
        });
        if !(m >= 1 && m <= qv.pow(n as u32) as u64 && b.denom == m && within) {
            bad += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = bad == 0 && elapsed < Duration::from_secs(30);
    line(6, ok, &format!("1000 vectors, {bad} failures, {:.2}s", elapsed.as_secs_f64()));
    assert!(ok);
}

#[test]
fn criterion_07_grid_search() {
    let t = default_tol();
    let g = make_subgroup(vec![int(2)], 20, &t, MB).unwrap();
    let r3 = hgamma_upper_search(&int(3), &g, 4, 8, &t, MB).unwrap();
    let r2 = hgamma_upper_search(&int(2), &g, 4, 8, &t, MB).unwrap();
    let dev = (r3.best_value.hi().to_f64() - 3f64.ln()).abs();
    let ok = dev < 1e-9 && r3.best_at.is_zero() && r2.best_value.is_exact_zero();
    line(7, ok, &format!("alpha=3: deviation {dev:.2e} at {}; alpha=2: {}", r3.best_at, r2.best_value));
    assert!(ok);
}

type Big = FBig;

/// `(1/4) (log log d / log d)^3 d^(3/4)` at 128 bits.
fn inner_128(d: u64) -> f64 {
    let x = Big::from(d).with_precision(128).value();
    let l = x.ln();
    let r = &l.ln() / &l;
    let p = (l * Big::from(3u8) / Big::from(4u8)).exp();
    (&r * &r * &r * p / Big::from(4u8)).to_f64().value()
}

#[test]
fn criterion_08_constant_and_doubleweak() {
    // Scan the whole range in double precision, then re-evaluate every value
    // within 1e-9 of the minimum at 128 bits.
    let f = |d: f64| (d.ln().ln() / d.ln()).powi(3) * d.powf(0.75) / 4.0;
    let scan: Vec<(u64, f64)> = (3..=1_000_000u64).map(|d| (d, f(d as f64))).collect();
    let fmin = scan.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let (oracle_d, oracle) = scan
        .iter()
        .filter(|p| p.1 <= fmin * (1.0 + 1e-9))
        .map(|&(d, _)| (d, inner_128(d)))
        .fold((0, f64::INFINITY), |acc, p| if p.1 < acc.1 { p } else { acc });
    let big_c = (oracle / (1.0 + 2f64.ln())).powi(2);

    let t = default_tol();
    let g = make_subgroup(vec![int(2)], 20, &t, MB).unwrap();
    let c = remond_constant(&g, 1, &rat(3, 2)).unwrap();
    let same3 = |x: f64, y: f64| format!("{x:.2e}") == format!("{y:.2e}");
    let const_ok = same3(c.inner.to_f64(), oracle) && same3(c.value.to_f64(), big_c) && c.argmin == oracle_d;

    let r = suites::run(Suite::Doubleweak, &settings()).unwrap();
    let dw_ok = clean(&r) && r.checks.len() == 25;
    let ok = const_ok && dw_ok;
    line(
        8,
        ok,
        &format!(
            "c = {:.4e} at d = {} (scan {oracle:.4e} at d = {oracle_d}), C = {:.4e} (scan {big_c:.4e}); doubleweak {}",
            c.inner.to_f64(),
            c.argmin,
            c.value.to_f64(),
            r.summary()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_09_lipschitz() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let t = default_tol();
    let bases: [&[i64]; 6] = [&[2], &[3], &[5], &[2, 3], &[6, 5], &[10]];
    let subgroups: Vec<_> = bases
        .iter()
        .map(|b| make_subgroup(b.iter().map(|&n| int(n)).collect(), 20, &t, MB).unwrap())
        .collect();
    let mut bad = 0;
    for _ in 0..500 {
        let alpha = loop {
            let d = rng.gen_range(1..=3);
            if let Some(a) = lehmer_core::corpus::random_number(&mut rng, d, 10, MB).unwrap() {
                break a;
            }
        };
        let g = &subgroups[rng.gen_range(0..subgroups.len())];
        let exp = |rng: &mut ChaCha8Rng| {
            let m = rng.gen_range(1..=3u64);
            let r = 3 * m as i64;
            ExponentVector::new((0..g.gens.len()).map(|_| rng.gen_range(-r..=r)).collect(), m).unwrap()
        };
        let (a, b) = (exp(&mut rng), exp(&mut rng));
        let fa = f_eval(&alpha, g, &a, &t, MB).unwrap();
        let fb = f_eval(&alpha, g, &b, &t, MB).unwrap();
        let dist: f64 = ratio_f64(&a.sup_distance(&b));
        let lhs = (fa.mid_f64() - fb.mid_f64()).abs();
        if lhs > g.l_gamma.hi().to_f64() * dist + 4.0 * t.to_f64() {
            bad += 1;
        }
    }
    line(9, bad == 0, &format!("500 triples, {bad} violations"));
    assert_eq!(bad, 0);
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap()
}

#[test]
fn criterion_10_determinism() {
    let dir = std::env::temp_dir().join(format!("lehmer-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("report-{run}.jsonl"));
        let status = Command::new(env!("CARGO_BIN_EXE_lehmer"))
            .args(["--seed", "1", "verify", "all", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0), "verify all exit status");
        outputs.push(std::fs::read(&path).unwrap());
    }
    let _ = std::fs::remove_dir_all(&dir);
    let lines = outputs[0].iter().filter(|&&b| b == b'\n').count();
    let ok = outputs[0] == outputs[1] && lines > 0;
    line(10, ok, &format!("two runs of verify all, {lines} lines each, identical = {}", outputs[0] == outputs[1]));
    assert!(ok);
    assert!(String::from_utf8_lossy(&outputs[0]).lines().all(|l| l.contains(&format!("\"status\":\"{}\"", Status::Pass))));
}
