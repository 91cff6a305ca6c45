use cpwlab::cs::{apply_hamiltonian, bc1_series, cone_points, hc_series, CsError, ExpSeries, HcCombination, MultiplicitySet};
use cpwlab::exact::{q, qint, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_q(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(-30..=30), rng.gen_range(1..=12))
}

fn residual(s: &ExpSeries, k: &MultiplicitySet, order: usize) -> ExpSeries {
    let hs = apply_hamiltonian(s, k, order).unwrap();
    hs.sub_scaled(&s.eigenvalue(), s)
}

/// Draws `(λ, k)` until the series is non-resonant.
fn draw(rng: &mut ChaCha8Rng, order: usize) -> (MultiplicitySet, ExpSeries) {
    loop {
        let k = MultiplicitySet::new(random_q(rng), random_q(rng), random_q(rng));
        let lambda = (random_q(rng), random_q(rng));
        match hc_series(lambda, &k, order) {
            Ok(s) => return (k, s),
            Err(CsError::Resonance(..)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn residual_vanishes_for_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (k, s) = draw(&mut rng, 6);
        assert_eq!(s.coeff((0, 0)), qint(1));
        let r = residual(&s, &k, 6);
        assert!(r.is_zero(), "nonzero residual {r:?}");
    }
}

#[test]
fn residual_vanishes_for_cft_multiplicities() {
    let k = MultiplicitySet::from_cft([q(3, 2), q(11, 5), q(7, 3), q(1, 2)], 3);
    let s = hc_series((q(13, 4), q(5, 7)), &k, 7).unwrap();
    assert!(residual(&s, &k, 7).is_zero());
    assert!(s.iter().count() > 10);
}

#[test]
fn residual_is_sensitive_to_coefficient_errors() {
    let k = MultiplicitySet::new(q(1, 3), q(5, 2), q(-2, 3));
    let s = hc_series((q(7, 3), q(2, 9)), &k, 4).unwrap();
    let mut broken = s.clone();
    broken.set((1, 0), s.coeff((1, 0)) + qint(1));
    assert!(!residual(&broken, &k, 4).is_zero());
}

#[test]
fn decoupled_middle_roots_factorize() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let order = 6;
    let mut checked = 0;
    for k_m in [qint(0), qint(1)] {
        for _ in 0..5 {
            let k = MultiplicitySet::new(random_q(&mut rng), k_m.clone(), random_q(&mut rng));
            let lambda = (random_q(&mut rng), random_q(&mut rng));
            let (c_long, c_short) = (k.long_coupling(), k.short_coupling());
            let (Ok(s), Ok(f1), Ok(f2)) = (
                hc_series(lambda.clone(), &k, order),
                bc1_series(&lambda.0, &c_long, &c_short, order),
                bc1_series(&lambda.1, &c_long, &c_short, order),
            ) else {
                continue;
            };
            for (k1, k2) in cone_points(order) {
                let expected = if k2 < 0 { Q::zero() } else { &f1.coeffs[k1 as usize] * &f2.coeffs[k2 as usize] };
                assert_eq!(s.coeff((k1, k2)), expected, "kappa = ({k1}, {k2})");
            }
            checked += 1;
        }
    }
    assert!(checked >= 8, "too many resonant draws");
}

#[test]
fn weyl_images_share_the_eigenvalue() {
    let k = MultiplicitySet::new(q(3, 4), q(-1, 3), q(5, 6));
    let (l1, l2) = (q(9, 7), q(-2, 5));
    let images = [
        (l1.clone(), l2.clone()),
        (-l1.clone(), l2.clone()),
        (l1.clone(), -l2.clone()),
        (l2.clone(), l1.clone()),
        (-l2.clone(), -l1.clone()),
    ];
    let base = hc_series(images[0].clone(), &k, 5).unwrap();
    for lambda in images {
        let s = hc_series(lambda, &k, 5).unwrap();
        assert_eq!(s.eigenvalue(), base.eigenvalue());
        assert!(residual(&s, &k, 5).is_zero());
    }
}

#[test]
fn higher_order_reproduces_lower_coefficients() {
    let k = MultiplicitySet::new(q(2, 3), q(7, 4), q(1, 5));
    let lambda = (q(17, 6), q(3, 8));
    let low = hc_series(lambda.clone(), &k, 4).unwrap();
    let high = hc_series(lambda, &k, 8).unwrap();
    assert_eq!(high.truncated(4), low);
}

#[test]
fn two_dimensional_specialization() {
    let k = MultiplicitySet::from_cft([q(1, 3), q(5, 2), q(2, 7), q(9, 4)], 2);
    assert_eq!(k.k_l, qint(0));
    assert!(k.long_coupling().is_zero());
    assert_eq!(k.short_coupling(), &k.k_s * (&k.k_s - qint(1)) / qint(4));
    let s = hc_series((q(5, 3), q(1, 7)), &k, 6).unwrap();
    assert!(residual(&s, &k, 6).is_zero());
}

#[test]
fn permuted_multiplicities_still_solve_their_equation() {
    let k = MultiplicitySet::new(q(1, 2), q(3, 2), q(5, 2));
    let p = k.permuted([2, 1, 0]);
    assert_eq!(p, MultiplicitySet::new(q(5, 2), q(3, 2), q(1, 2)));
    let s = hc_series((q(11, 5), q(4, 9)), &p, 5).unwrap();
    assert!(residual(&s, &p, 5).is_zero());
}

#[test]
fn combination_evaluates_linearly() {
    let k = MultiplicitySet::new(q(1, 2), q(1, 3), q(1, 4));
    let a = hc_series((q(7, 5), q(1, 3)), &k, 6).unwrap();
    let b = hc_series((q(-7, 5), q(1, 3)), &k, 6).unwrap();
    let mut comb = HcCombination::default();
    comb.push(q(2, 3), a.clone());
    comb.push(q(-1, 5), b.clone());
    let u = (2.5, 1.25);
    let direct = 2.0 / 3.0 * a.evaluate(u) - 0.2 * b.evaluate(u);
    assert!((comb.evaluate(u) - direct).abs() < 1e-12 * direct.abs().max(1.0));
}
