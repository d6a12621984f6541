//! Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion, then
//! fails if any criterion failed.

use std::process::Command;
use std::time::{Duration, Instant};

use spinorlab::clifford::{self, omega_word, omega_words};
use spinorlab::fock::{self, binomial};
use spinorlab::hypercube::{self, ASYM_GRID};
use spinorlab::linalg::random;
use spinorlab::projections::{self, clifford_a_domain, proj_r_diagonal_domain};
use spinorlab::schatten;
use spinorlab::{OptimizerConfig, PExponent, C64};
use spinorlab_cli::config::RunConfig;
use spinorlab_cli::suites::{asym_expected_zero, multiplier_cross_deviation};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;

type Criterion = (&'static str, fn(&mut Outcome));

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn pe(p: f64) -> PExponent {
    PExponent::new(p).unwrap()
}

fn opt() -> OptimizerConfig {
    RunConfig {
        seed: SEED,
        ..RunConfig::default()
    }
    .optimizer()
}

fn criterion_1(o: &mut Outcome) {
    let start = Instant::now();
    for big_n in 1..=5 {
        let ws: Vec<_> = (1..=big_n).map(|j| omega_word(big_n, &[j]).unwrap()).collect();
        let r = clifford::is_spin_system(&ws, 0.0).unwrap();
        o.check(r.passes && r.max_residual == 0.0, format!("spin system N={big_n}: {}", r.max_residual));
        let car = fock::car_residual(big_n).unwrap();
        o.check(car == 0.0, format!("CAR n={big_n}: {car}"));
    }
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(1), format!("runtime {elapsed:?}"));
}

fn criterion_2(o: &mut Outcome) {
    for big_n in 1..=5 {
        let scale = 1.0 / (1u64 << big_n) as f64;
        for (mask, w) in omega_words(big_n).unwrap().iter().enumerate() {
            let lhs = clifford::normalized_trace(w);
            let rhs = w.trace() * scale;
            o.check((lhs - rhs).norm() <= 1e-12, format!("N={big_n} A={mask:b}: {lhs} vs {rhs}"));
        }
    }
}

fn criterion_3(o: &mut Outcome) {
    for n in 1..=5 {
        let r = clifford::parity_identity_residual(n).unwrap();
        o.check(r <= 1e-12, format!("n={n}: {r:e}"));
    }
}

fn criterion_4(o: &mut Outcome) {
    let start = Instant::now();
    for n in 1..=3 {
        for p in [1.0, 1.5, 2.0, 3.0, 4.0] {
            let dev = multiplier_cross_deviation(n, pe(p), 100, SEED).unwrap();
            o.check(dev <= 1e-10, format!("n={n} p={p}: {dev:e}"));
        }
    }
    let elapsed = start.elapsed();
    o.check(elapsed < Duration::from_secs(10), format!("runtime {elapsed:?}"));
}

fn criterion_5(o: &mut Outcome) {
    for n in 1..=4 {
        let b = clifford::tau_cb_bound(n).unwrap();
        o.check(b.minus_norm == 2 * n as i64, format!("n={n}: minus {}", b.minus_norm));
        o.check(b.plus_norm == 2 * n as i64 + 2, format!("n={n}: plus {}", b.plus_norm));
        let target = (n + 1) as f64 / n as f64;
        o.check((b.ratio() - target).abs() <= 1e-15, format!("n={n}: ratio {}", b.ratio()));
    }
    for n in 1..=3 {
        let w = clifford::wittstock_factorization(n).unwrap();
        let target = (n + 1) as f64 / n as f64;
        o.check(w.residual() <= 1e-10, format!("Wittstock n={n}: residual {:e}", w.residual()));
        o.check(
            (w.bound() - target).abs() <= 1e-10,
            format!("Wittstock n={n}: bound {} vs {target}", w.bound()),
        );
    }
}

fn criterion_6(o: &mut Outcome) {
    for n in 1..=6 {
        let r = hypercube::fg_identity_check(n).unwrap();
        let lhs = 2 * n as i64 * r.g_sum;
        let rhs = (2 * n as i64 + 2) * r.f_sum;
        o.check(lhs == rhs, format!("n={n}: {lhs} != {rhs}"));
    }
    let r = hypercube::fg_identity_check(1).unwrap();
    // Sums over the 4 points of D_2.
    o.check(r.f_sum == 4 && r.g_sum == 8, format!("n=1: sums {} {}", r.f_sum, r.g_sum));
    o.check(r.ratio == 2.0, format!("n=1: ratio {}", r.ratio));
}

fn criterion_7(o: &mut Outcome) {
    for n in 1..=3 {
        for q in 1..=n {
            let p = 2.0 * q as f64;
            assert!(asym_expected_zero(n, p));
            for t in ASYM_GRID {
                let v = hypercube::asym_probe(n, p, t).unwrap();
                o.check(v.abs() <= 1e-10, format!("asym n={n} p={p} t={t}: {v:e}"));
            }
        }
    }
    for (n, p) in [(1, 4.0), (2, 6.0), (1, 3.0), (2, 3.0)] {
        let best = ASYM_GRID
            .iter()
            .map(|&t| hypercube::asym_probe(n, p, t).unwrap().abs())
            .fold(0.0, f64::max);
        o.check(best > 1e-6, format!("asym n={n} p={p}: max {best:e}"));
    }
    let good = schatten::tensor_equality_check(2, 4.0, 20, SEED).unwrap().max_relative_deviation;
    o.check(good <= 1e-9, format!("tensor n=2 p=4: {good:e}"));
    let bad = schatten::tensor_equality_check(1, 4.0, 20, SEED).unwrap().max_relative_deviation;
    o.check(bad > 1e-3, format!("tensor n=1 p=4: {bad:e}"));
}

fn criterion_8(o: &mut Outcome) {
    for p in [1.0, 1.5, 4.0] {
        let r = projections::witness_rect(p, 0.5, 0.3).unwrap();
        o.check(r > 1.0 + 1e-4, format!("witness_rect p={p} t=0.5 theta=0.3: {r:.6}"));
    }
    let sym = projections::proj_sym(2).unwrap();
    for p in [1.0, 4.0] {
        let v = sym.level_lower_bound(2, pe(p), &opt(), None).unwrap().value;
        o.check(v > 1.0 + 1e-4, format!("P_s level 2 p={p}: {v}"));
    }
    let at_two = [
        ("P_s", sym.clone()),
        ("rect", projections::proj_rect(2, 1, 0.5).unwrap()),
        ("orth_E", projections::proj_orth_e(2).unwrap()),
    ]
    .map(|(name, spec)| (name, spec.level_lower_bound(2, pe(2.0), &opt(), None).unwrap().value));
    for (name, v) in at_two {
        o.check((v - 1.0).abs() <= 1e-6, format!("{name} level 2 p=2: {v}"));
    }
}

fn criterion_9(o: &mut Outcome) {
    for n in 2..=3 {
        let r = clifford::verify_relation_tau_kappa(n, 1e-10).unwrap();
        o.check(r.residual <= 1e-10, format!("relation n={n}: {:e}", r.residual));
        for p in [1.0, 3.0, 4.0] {
            let dev = clifford::kappa_isometry_deviation(n, pe(p), 50, SEED).unwrap();
            o.check(dev <= 1e-10, format!("kappa n={n} p={p}: {dev:e}"));
        }
    }
    let low = projections::orth_e_min_eigenvalue(2, 100, SEED).unwrap();
    o.check(low >= -1e-10, format!("orth_E positivity: {low:e}"));

    let e = projections::proj_orth_e(2).unwrap();
    let f = projections::proj_orth_f(2).unwrap();
    let r = projections::proj_r(2, 0.5).unwrap();
    let r_domain = proj_r_diagonal_domain(&r, 2).unwrap();
    for p in [1.0, 3.0, 4.0] {
        let ve = e.level_lower_bound(2, pe(p), &opt(), None).unwrap().value;
        let vf = f
            .level_lower_bound(2, pe(p), &opt(), Some(clifford_a_domain(4).unwrap()))
            .unwrap()
            .value;
        let vr = r.level_lower_bound(2, pe(p), &opt(), Some(r_domain.clone())).unwrap().value;
        o.check(ve > 1.0, format!("orth_E level 2 p={p}: {ve}"));
        o.check(vf > 1.0, format!("orth_F level 2 p={p}: {vf}"));
        o.check(vr > 1.0, format!("R level 2 p={p}: {vr}"));
    }
}

fn criterion_10(o: &mut Outcome) {
    for n in 1..=5 {
        for k in 1..=n {
            for j in 1..=n {
                let c = fock::creation_restricted(n, j, k).unwrap();
                let hs: f64 = c.as_slice().iter().map(|z| z.norm_sqr()).sum();
                o.check(
                    hs == binomial(n - 1, k - 1) as f64,
                    format!("|c_{{{n},{j},{k}}}|_2^2 = {hs}"),
                );
            }
        }
        for p in [1.0, 4.0] {
            let r = fock::creation_norm_residual(n, pe(p)).unwrap();
            o.check(r <= 1e-12, format!("n={n} p={p}: creation norm residual {r:e}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 3..=5 {
        for k in 1..=n {
            let (s1, s2): (C64, C64) = (random::complex_gaussian(&mut rng), random::complex_gaussian(&mut rng));
            let r = projections::hnk_block_check(n, k, s1, s2).unwrap();
            let want = binomial(n - 2, k - 1) + if k >= 2 { binomial(n - 2, k - 2) } else { 0 };
            o.check(
                r.observed_multiplicity == want && r.max_deviation <= 1e-9,
                format!("hnk n={n} k={k}: {} of {want}, dev {:e}", r.observed_multiplicity, r.max_deviation),
            );
        }
    }
    let u = random::unitary(&mut rng, 3);
    let res = fock::quantization_intertwining_residual(3, 2, &u).unwrap();
    o.check(res <= 1e-10, format!("intertwining: {res:e}"));
}

fn criterion_11(o: &mut Outcome) {
    let dir = std::env::temp_dir().join(format!("spinorlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let out = dir.join(format!("run{i}.json"));
        let start = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_spinorlab"))
            .args(["verify", "all", "--seed", "7", "--out"])
            .arg(&out)
            .env_remove("SPINORLAB_SEED")
            .status()
            .unwrap();
        let elapsed = start.elapsed();
        o.check(status.code().is_some(), "verify all terminated by a signal");
        o.check(elapsed < Duration::from_secs(120), format!("run {i}: {elapsed:?}"));
        reports.push(std::fs::read(&out).unwrap_or_default());
    }
    o.check(!reports[0].is_empty(), "empty report");
    o.check(reports[0] == reports[1], "reports differ");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("fermion and CAR identities", criterion_1),
        ("trace coherence", criterion_2),
        ("parity projection identity", criterion_3),
        ("multiplier / Rademacher cross-oracle", criterion_4),
        ("exact cb values of tau and Wittstock factorization", criterion_5),
        ("f/g integer identity", criterion_6),
        ("asymmetry pattern and tensor equality", criterion_7),
        ("rectangular and symmetric witnesses", criterion_8),
        ("Clifford structure and projections", criterion_9),
        ("Hilbertian data", criterion_10),
        ("determinism and runtime", criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut o = Outcome::new();
        run(&mut o);
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name}", i + 1);
        for f in &o.failures {
            println!("    {f}");
        }
        if !o.failures.is_empty() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
