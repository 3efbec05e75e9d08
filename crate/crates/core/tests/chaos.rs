use chaoslab::chaos::{
    clt_sharp, khintchine_check, moment_table, normalized_sum_cdf, rud_average, sign_concentration_check,
    AverageMode,
};
use chaoslab::combdim::{gen_sum_set, gen_triangle, BlockChoice};
use chaoslab::symspace::SpaceSpec;
use chaoslab::walsh::{chaos_sum, CoefficientMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn khintchine_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        let k = rng.gen_range(1..=10);
        let a: Vec<f64> = (0..k).map(|_| rng.gen_range(-4.0..4.0)).collect();
        for p in [1.0, 2.5, 6.0] {
            let r = khintchine_check(&a, p).unwrap();
            assert!(r.passed(), "{a:?} p={p}");
        }
    }
}

#[test]
fn linear_rud_ratio_is_one() {
    let c = CoefficientMap::linear(&[3.0, -1.0, 0.5, 0.25, 2.0]);
    for s in [SpaceSpec::Lp(1.0), SpaceSpec::Lp(3.0), SpaceSpec::Linf] {
        let r = rud_average(&c, &s, AverageMode::Exact, 24, 1e-12).unwrap();
        assert!((r.ratio - 1.0).abs() < 1e-12);
    }
}

#[test]
fn chaos_rud_ratio_is_one_in_l2() {
    let mut c = CoefficientMap::new();
    for (i, e) in gen_triangle(2, 6).unwrap().iter().enumerate() {
        c.insert(e.clone(), 1.0 + i as f64 / 7.0).unwrap();
    }
    let r = rud_average(&c, &SpaceSpec::Lp(2.0), AverageMode::Exact, 24, 1e-12).unwrap();
    assert!((r.ratio - 1.0).abs() < 1e-12);
}

#[test]
fn concentration_bounds_hold() {
    for (d, n) in [(1, 8), (2, 3), (2, 6), (3, 4), (4, 4)] {
        let r = sign_concentration_check(
            &gen_triangle(d, n).unwrap(),
            &BlockChoice::identity(d, n).unwrap(),
            24,
        )
        .unwrap();
        assert!(r.passed(), "d={d} n={n}");
    }
}

#[test]
fn sum_set_has_no_sharp_pairs() {
    let a = gen_sum_set(40).unwrap();
    for n in [3, 10, 25, 40] {
        assert!(clt_sharp(&a, n).unwrap().is_empty());
    }
}

#[test]
fn normalized_sum_is_symmetric() {
    let a = gen_sum_set(12).unwrap();
    let s = normalized_sum_cdf(&a, 12, 24).unwrap();
    let atoms = s.distribution.atoms();
    for (x, y) in atoms.iter().zip(atoms.iter().rev()) {
        assert!((x.0 + y.0).abs() < 1e-12 && (x.1 - y.1).abs() < 1e-12);
    }
    assert!((s.distribution.abs_moment(2.0) - 1.0).abs() < 1e-12);
}

#[test]
fn moments_grow_with_p() {
    let c = CoefficientMap::unit(&gen_triangle(2, 7).unwrap());
    let t = moment_table(&chaos_sum(&c).unwrap(), &[1.0, 2.0, 4.0, 8.0, 16.0], 24).unwrap();
    assert!(t.rows.windows(2).all(|w| w[1].1 >= w[0].1));
    assert!(t.rows.last().unwrap().1 <= t.sup_norm);
    assert!(t.theta.unwrap() > 0.0);
}
