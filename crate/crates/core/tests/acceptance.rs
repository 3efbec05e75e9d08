//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary so the lines reach the console under `cargo test`.
//! Criteria listed in `KNOWN_FAILING` are reported as failures but do not fail
//! the run; any other failure, or a known failure that starts passing, does.

use std::time::{Duration, Instant};

use chaoslab::chaos::{
    averaged_sup_growth, clt_sharp, clt_star, khintchine_check, normalized_sum_cdf, rud_average,
    sign_concentration_check, AverageMode,
};
use chaoslab::combdim::{
    estimate_dimension, gen_sum_set, gen_triangle, max_density, BlockChoice, SearchStrategy, StructuredSet,
};
use chaoslab::symspace::{
    fubini_orlicz_check, fundamental_function, norm, ConcaveWeight, OrliczFunction, SpaceSpec, StepDistribution,
};
use chaoslab::walsh::{chaos_sum, distribution_exact, CoefficientMap, IndexSet, MultiIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that cannot hold as stated; see the README.
const KNOWN_FAILING: &[u32] = &[6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let started = Instant::now();
    let (ok, detail) = f();
    let elapsed = started.elapsed();
    let in_time = elapsed < limit;
    Outcome {
        pass: ok && in_time,
        detail: format!(
            "{detail}; {:.2}s (limit {}s{})",
            elapsed.as_secs_f64(),
            limit.as_secs(),
            if in_time { "" } else { ", exceeded" }
        ),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &IndexSet, max_terms: usize) -> CoefficientMap {
    let items: Vec<&MultiIndex> = pool.iter().collect();
    let want = rng.gen_range(1..=max_terms.min(items.len()));
    let mut coeffs = CoefficientMap::new();
    while coeffs.len() < want {
        let e = items[rng.gen_range(0..items.len())];
        coeffs.insert(e.clone(), rng.gen_range(-1.0..1.0)).unwrap();
    }
    coeffs
}

fn c1_khintchine() -> Outcome {
    timed(Duration::from_secs(10), || {
        let mut r = rng(1);
        let mut failures = 0;
        let mut checks = 0;
        for _ in 0..100 {
            let k = r.gen_range(1..=12);
            let a: Vec<f64> = (0..k).map(|_| r.gen_range(-1.0..1.0)).collect();
            for p in [1.0, 2.0, 3.0, 4.0, 8.0, 16.0] {
                checks += 1;
                if !khintchine_check(&a, p).unwrap().passed() {
                    failures += 1;
                }
            }
        }
        (failures == 0, format!("{checks} checks, {failures} failures"))
    })
}

fn c2_orthonormality() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut r = rng(2);
        let pool = gen_triangle(3, 12).unwrap();
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let coeffs = random_subset(&mut r, &pool, 40);
            let dist = distribution_exact(&chaos_sum(&coeffs).unwrap(), 24).unwrap();
            let l2 = dist.abs_moment(2.0).sqrt();
            worst = worst.max((l2 - coeffs.l2_norm()).abs());
        }
        (worst <= 1e-12, format!("max |‖S‖₂ − ‖a‖₂| = {worst:.3e}"))
    })
}

fn random_distribution(r: &mut ChaCha8Rng) -> StepDistribution {
    let k = r.gen_range(1..=12);
    let atoms: Vec<(f64, f64)> = (0..k).map(|_| (r.gen_range(-5.0..5.0), r.gen_range(0.01..1.0))).collect();
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    StepDistribution::new(atoms.into_iter().map(|(v, w)| (v, w / total)).collect()).unwrap()
}

fn c3_norms() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut r = rng(3);
        let weights = [
            ConcaveWeight::log_power(0.5).unwrap(),
            ConcaveWeight::log_power(1.0).unwrap(),
            ConcaveWeight::power(0.5).unwrap(),
        ];
        let mut worst_rel: f64 = 0.0;
        let mut embedding_failures = 0;
        for _ in 0..100 {
            let d = random_distribution(&mut r);
            let p = r.gen_range(1.0..8.0);
            let lp = norm(&d, &SpaceSpec::Lp(p), 1e-12).unwrap();
            let orl = norm(&d, &SpaceSpec::Orlicz(OrliczFunction::power(p).unwrap()), 1e-12).unwrap();
            worst_rel = worst_rel.max((lp - orl).abs() / lp);
            for w in &weights {
                let m = norm(&d, &SpaceSpec::Marcinkiewicz(w.clone()), 1e-12).unwrap();
                let l = norm(&d, &SpaceSpec::Lorentz(w.clone()), 1e-12).unwrap();
                if m > l + 1e-9 {
                    embedding_failures += 1;
                }
            }
        }
        let mut worst_phi: f64 = 0.0;
        for w in &weights {
            for i in 1..=64 {
                let t = i as f64 / 64.0;
                for space in [SpaceSpec::Lorentz(w.clone()), SpaceSpec::Marcinkiewicz(w.clone())] {
                    worst_phi = worst_phi.max((fundamental_function(&space, t, 1e-12).unwrap() - w.eval(t)).abs());
                }
            }
        }
        (
            worst_rel <= 1e-9 && embedding_failures == 0 && worst_phi <= 1e-9,
            format!(
                "Orlicz/L_p rel err {worst_rel:.2e}, M ≤ Λ failures {embedding_failures}, φ err {worst_phi:.2e}"
            ),
        )
    })
}

fn c4_sum_set() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut sizes_ok = true;
        for n in 3..=60u32 {
            let mut brute = 0u64;
            for i in 1..=n {
                for j in i + 1..=n {
                    if i + j <= n {
                        brute += 1;
                    }
                }
            }
            let a = gen_sum_set(n).unwrap();
            sizes_ok &= a.len() as u64 == brute && brute == ((n - 1) * (n - 1) / 4) as u64;
        }
        let big = gen_sum_set(100).unwrap();
        let star_ok = (3..=100).all(|n| clt_star(&big, n).unwrap().max_count <= 3 * n as u64);
        let sharp_ok = (3..=40).all(|n| clt_sharp(&big, n).unwrap().is_empty());
        let contrast = clt_sharp(&gen_triangle(3, 6).unwrap(), 6).unwrap().len();
        (
            sizes_ok && star_ok && sharp_ok && contrast > 0,
            format!(
                "sizes {sizes_ok}, star ≤ 3N {star_ok}, A♯ empty {sharp_ok}, Δ³ at N=6 has {contrast} pairs"
            ),
        )
    })
}

fn c5_clt() -> Outcome {
    timed(Duration::from_secs(180), || {
        let a = gen_sum_set(20).unwrap();
        let ks: Vec<f64> = [8, 14, 20].iter().map(|&n| normalized_sum_cdf(&a, n, 24).unwrap().kolmogorov).collect();
        (
            ks[0] > ks[1] && ks[1] > ks[2] && ks[2] < 0.1,
            format!("KS distances {:.6} > {:.6} > {:.6}", ks[0], ks[1], ks[2]),
        )
    })
}

fn c6_dimension() -> Outcome {
    timed(Duration::from_secs(10), || {
        let ns = [64, 128, 256, 512, 1024];
        let sum = estimate_dimension(&StructuredSet::sum_set(2100).unwrap(), &ns, 2100, SearchStrategy::IdentityBlocks)
            .unwrap()
            .alpha_hat;
        let tri = estimate_dimension(&StructuredSet::triangle(3, 1100).unwrap(), &ns, 1100, SearchStrategy::IdentityBlocks)
            .unwrap()
            .alpha_hat;
        let (best, _) = max_density(&gen_triangle(2, 4).unwrap(), 2, 4, SearchStrategy::Exhaustive).unwrap();
        let sum_ok = (1.95..=2.05).contains(&sum);
        let tri_ok = (2.90..=3.00).contains(&tri);
        (
            sum_ok && tri_ok && best == 4,
            format!(
                "sum set {sum:.6} ({}), Δ³ {tri:.6} ({}; ln C(n,3) has slope > 3 on this range), exhaustive {best}",
                if sum_ok { "in range" } else { "OUT of range" },
                if tri_ok { "in range" } else { "OUT of [2.90, 3.00]" }
            ),
        )
    })
}

fn c7_rud_gap() -> Outcome {
    timed(Duration::from_secs(120), || {
        let r = averaged_sup_growth(2, &[6, 9, 12], 1000, 7, 24).unwrap();
        let g = r.get("growth").unwrap();
        let se = r.get("growth_stderr").unwrap();
        (
            g + 3.0 * se >= 1.2,
            format!("R(12)/R(6) = {g:.4} ± {se:.4}, R(6) = {:.4}, R(12) = {:.4}", r.get("R[6]").unwrap(), r.get("R[12]").unwrap()),
        )
    })
}

fn c8_concentration() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut instances = 0;
        let mut failures = 0;
        let mut nonzero = 0;
        for d in 1..=20usize {
            for n in (d.max(2))..=(20 / d) {
                let r = sign_concentration_check(
                    &gen_triangle(d, n as u32).unwrap(),
                    &BlockChoice::identity(d, n as u32).unwrap(),
                    24,
                )
                .unwrap();
                instances += 1;
                if !r.passed() {
                    failures += 1;
                }
                if r.get("exceedance").unwrap() > 0.0 {
                    nonzero += 1;
                }
            }
        }
        (
            failures == 0,
            format!("{instances} instances, {failures} failures, {nonzero} with nonzero exceedance"),
        )
    })
}

fn c9_sign_invariance() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut r = rng(9);
        let pool = gen_triangle(3, 9).unwrap();
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let k = r.gen_range(1..=8);
            let a: Vec<f64> = (0..k).map(|_| r.gen_range(-2.0..2.0)).collect();
            let lin = CoefficientMap::linear(&a);
            for space in [SpaceSpec::Lp(1.0), SpaceSpec::Lp(2.0), SpaceSpec::Lp(4.0), SpaceSpec::Linf] {
                let ratio = rud_average(&lin, &space, AverageMode::Exact, 24, 1e-12).unwrap().ratio;
                worst = worst.max((ratio - 1.0).abs());
            }
            let chaos = random_subset(&mut r, &pool, 10);
            let ratio = rud_average(&chaos, &SpaceSpec::Lp(2.0), AverageMode::Exact, 24, 1e-12).unwrap().ratio;
            worst = worst.max((ratio - 1.0).abs());
        }
        (worst <= 1e-9, format!("max |ratio − 1| = {worst:.3e} over 250 cases"))
    })
}

fn c10_fubini() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut r = rng(10);
        let ms = [
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::exponential(1.0).unwrap(),
        ];
        let mut failures = 0;
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let z: Vec<Vec<f64>> = (0..8).map(|_| (0..8).map(|_| r.gen_range(-2.0..2.0)).collect()).collect();
            for m in &ms {
                let rep = fubini_orlicz_check(&z, m, 1e-12).unwrap();
                worst = worst.max(rep.get("lhs").unwrap() / rep.get("rhs").unwrap());
                if !rep.passed() {
                    failures += 1;
                }
            }
        }
        (failures == 0, format!("300 checks, {failures} failures, max lhs/rhs {worst:.4}"))
    })
}

fn main() {
    chaoslab::init_thread_pool();
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "Khintchine suite", c1_khintchine),
        (2, "orthonormality", c2_orthonormality),
        (3, "norm consistency", c3_norms),
        (4, "sum-set combinatorics", c4_sum_set),
        (5, "CLT trend", c5_clt),
        (6, "dimension estimation", c6_dimension),
        (7, "RUD-gap growth", c7_rud_gap),
        (8, "concentration", c8_concentration),
        (9, "sign-invariance exactness", c9_sign_invariance),
        (10, "Fubini-type Orlicz inequality", c10_fubini),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        let known = KNOWN_FAILING.contains(&id);
        let tag = match (o.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {name:<30} {tag}: {}", o.detail);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
