use proptest::prelude::*;
use spherical::exact_linalg::*;

fn rational_matrix(rows: usize, cols: usize, vals: &[(i64, i64)]) -> Mat {
    Mat::from_fn(rows, cols, |i, j| {
        let (n, d) = vals[(i * cols + j) % vals.len()];
        GaussRational::real(qf(n, d))
    })
}

#[test]
fn rank_examples() {
    assert_eq!(rank(&Mat::identity(5)), 5);
    assert_eq!(rank(&Mat::zeros(3, 4)), 0);
    assert_eq!(rank(&Mat::from_ints(&[&[1, 2], &[2, 4]])), 1);
}

#[test]
fn rank_mod_p_examples() {
    assert_eq!(rank_mod_p(&Mat::identity(4), 7).unwrap(), 4);
    assert_eq!(
        rank_mod_p(&Mat::from_ints(&[&[1, 2], &[2, 4]]), 5).unwrap(),
        1
    );
    let m = Mat::from_ints(&[&[5, 0], &[0, 1]]);
    assert_eq!(rank_mod_p(&m, 5).unwrap(), 1);
    assert_eq!(rank(&m), 2);
}

#[test]
fn rank_mod_p_rejects_bad_denominator() {
    let m = Mat::from_fn(1, 1, |_, _| GaussRational::real(qf(1, 7)));
    assert_eq!(rank_mod_p(&m, 7), Err(LinalgError::BadPrime(7)));
}

#[test]
fn kernel_examples() {
    assert_eq!(kernel(&Mat::identity(3)).dim(), 0);
    assert_eq!(kernel(&Mat::zeros(2, 3)).dim(), 3);
    let k = kernel(&Mat::from_ints(&[&[1, 1, 0]]));
    assert_eq!(k.dim(), 2);
    assert!(k.contains(&[q(1), q(-1), q(0)]));
    assert!(k.contains(&[q(0), q(0), q(1)]));
}

#[test]
fn gaussian_rank_is_over_q_i() {
    // [[1, i], [i, -1]] has rank 1 over Q(i)
    let i = GaussRational::i();
    let m = Mat::from_fn(2, 2, |r, c| match (r, c) {
        (0, 0) => GaussRational::one(),
        (1, 1) => GaussRational::int(-1),
        _ => i.clone(),
    });
    assert_eq!(rank(&m), 1);
}

#[test]
fn subspace_examples() {
    let e = |k: usize, n: usize| -> Vec<Rational> { (0..n).map(|i| q((i == k) as i64)).collect() };
    let u = Subspace::span(3, &[e(0, 3)]);
    let w = Subspace::span(3, &[e(1, 3)]);
    assert_eq!(u.sum(&w).unwrap().dim(), 2);
    assert_eq!(u.intersect(&w).unwrap().dim(), 0);
    assert_eq!(u.sum(&u).unwrap(), u);
    assert_eq!(u.intersect(&u).unwrap(), u);

    let e1_e2: Vec<Rational> = vec![q(1), q(1), q(0), q(0)];
    let u = Subspace::span(4, &[e1_e2, e(2, 4)]);
    let w = Subspace::span(4, &[e(1, 4), e(2, 4)]);
    let i = u.intersect(&w).unwrap();
    assert_eq!(i.dim(), 1);
    assert_eq!(i, Subspace::span(4, &[e(2, 4)]));
    assert_eq!(
        Subspace::span(4, &[e(0, 4)]).intersect(&Subspace::span(3, &[e(0, 3)])),
        Err(LinalgError::AmbientMismatch(4, 3))
    );
}

#[test]
fn signature_examples() {
    let s = signature(&Mat::diag_ints(&[1, 1, -1])).unwrap();
    assert_eq!((s.pos, s.neg, s.zero), (2, 1, 0));
    let s = signature(&Mat::zeros(2, 2)).unwrap();
    assert_eq!((s.pos, s.neg, s.zero), (0, 0, 2));
    // antidiagonal pair plus a unit diagonal entry
    let j = Mat::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let s = signature(&j).unwrap();
    assert_eq!((s.pos, s.neg, s.zero), (2, 1, 0));
    assert_eq!(
        signature(&Mat::from_ints(&[&[0, 1], &[0, 0]])),
        Err(LinalgError::NotSymmetric)
    );
}

#[test]
fn inverse_roundtrip() {
    let m = Mat::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
    let inv = m.inverse().unwrap();
    assert_eq!(m.mul(&inv), Mat::identity(3));
    assert_eq!(
        Mat::from_ints(&[&[1, 2], &[2, 4]]).inverse(),
        Err(LinalgError::Singular)
    );
}

#[test]
fn bareiss_agrees_on_deficient_matrix() {
    // third row = first + second
    let rows = vec![
        vec![qf(1, 2), q(3), q(-1)],
        vec![q(2), qf(-1, 3), q(5)],
        vec![qf(5, 2), qf(8, 3), q(4)],
    ];
    assert_eq!(elim::bareiss_rank(&rows), 2);
    assert_eq!(rank_rows(&rows), 2);
}

fn small_entries() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-7i64..=7, 1i64..=7), 1..40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(r in 1usize..6, c in 1usize..6, vals in small_entries(), zero_row in any::<bool>()) {
        let mut m = rational_matrix(r, c, &vals);
        if zero_row {
            for j in 0..c { m[(0, j)] = GaussRational::zero(); }
        }
        let rk = rank(&m);
        prop_assert_eq!(rk + kernel(&m).dim(), c);
        prop_assert_eq!(rk + kernel(&m.transpose()).dim(), r);
        prop_assert_eq!(rk, elim::bareiss_rank(&m.real_rows().unwrap()));
    }

    #[test]
    fn zassenhaus_identity(a in small_entries(), b in small_entries(), du in 0usize..5, dw in 0usize..5) {
        let n = 5;
        let u: Vec<Vec<Rational>> = (0..du).map(|i| (0..n).map(|j| { let (x, y) = a[(i * n + j) % a.len()]; qf(x, y) }).collect()).collect();
        let w: Vec<Vec<Rational>> = (0..dw).map(|i| (0..n).map(|j| { let (x, y) = b[(i * n + j) % b.len()]; qf(x, y) }).collect()).collect();
        let (u, w) = (Subspace::span(n, &u), Subspace::span(n, &w));
        let s = u.sum(&w).unwrap();
        let i = u.intersect(&w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn modular_rank_is_a_lower_bound(r in 1usize..6, c in 1usize..6, vals in small_entries(), pi in 0usize..3) {
        let m = rational_matrix(r, c, &vals);
        let p = [1_000_000_007u64, 998_244_353, 11][pi];
        if let Ok(rp) = rank_mod_p(&m, p) {
            prop_assert!(rp <= rank(&m));
        }
    }

    #[test]
    fn signature_congruence_invariant(d in prop::collection::vec(-3i64..=3, 4), a in small_entries()) {
        let s = Mat::diag_ints(&d);
        let mut t = rational_matrix(4, 4, &a);
        for i in 0..4 { t[(i, i)] = &t[(i, i)] + &GaussRational::int(40); }
        prop_assume!(rank(&t) == 4);
        let c = t.transpose().mul(&s).mul(&t);
        prop_assert_eq!(signature(&c).unwrap(), signature(&s).unwrap());
    }
}

#[test]
fn full_rank_inputs_are_certified_by_some_random_prime() {
    let mut rng = spherical::genericity::rng::SplitMix64::new(11);
    for trial in 0..20 {
        let m = Mat::from_fn(6, 6, |i, j| {
            GaussRational::real(if i == j { q(50) } else { rng.rational(7) })
        });
        assert_eq!(rank(&m), 6, "trial {trial}");
        let primes: Vec<u64> = (0..3).map(|_| modp::random_prime(&mut rng)).collect();
        assert!(primes.iter().any(|&p| rank_mod_p(&m, p) == Ok(6)));
    }
}
