use proptest::prelude::*;
use spherical::exact_linalg::{signature, Mat};
use spherical::real_forms::quaternion::{quaternionic_structure, Quat, QuatMat};
use spherical::real_forms::{
    complexify_as_real, construct, paper_j, FormError, FormFamily, FormModel,
};

use FormFamily::*;

fn sweep() -> Vec<FormFamily> {
    vec![
        Su(1, 1),
        Su(1, 2),
        Su(2, 1),
        Su(2, 2),
        Su(1, 3),
        Su(2, 3),
        SlR(2),
        SlR(3),
        SlR(4),
        SlH(2),
        SlH(3),
        So(1, 2),
        So(2, 2),
        So(2, 3),
        So(1, 4),
        So(3, 3),
        So(2, 5),
        So(3, 4),
        SoStar(3),
        SoStar(4),
        SoStar(5),
        SpR(1),
        SpR(2),
        SpR(3),
        Sp(1, 1),
        Sp(1, 2),
        Sp(2, 2),
        SuCompact(3),
        SoCompact(5),
        SpCompact(2),
        ComplexSl(3),
        ComplexSo(5),
        ComplexSo(6),
        ComplexSp(2),
    ]
}

#[test]
fn smallest_and_spec_examples() {
    let g = construct(Su(1, 1)).unwrap();
    assert_eq!((g.alg.dim(), g.parabolic.real_rank()), (3, 1));
    let g = construct(So(2, 3)).unwrap();
    assert_eq!(
        (g.alg.dim(), g.parabolic.real_rank(), g.parabolic.dim_n()),
        (10, 2, 4)
    );
    let g = construct(SlH(3)).unwrap();
    assert_eq!(
        (g.alg.dim(), g.parabolic.real_rank(), g.parabolic.dim_n()),
        (35, 2, 12)
    );
}

#[test]
fn dims_ranks_and_quasi_split_match_closed_forms() {
    for f in sweep() {
        let g = construct(f).unwrap();
        assert_eq!(g.alg.dim(), f.expected_dim(), "dim {f}");
        assert_eq!(g.parabolic.real_rank(), f.expected_real_rank(), "rank {f}");
        assert_eq!(
            g.parabolic.quasi_split,
            f.expected_quasi_split(),
            "quasi-split {f}"
        );
        assert!(
            g.alg
                .is_closed(&spherical::exact_linalg::Subspace::full(g.alg.dim())),
            "{f}"
        );
    }
}

#[test]
fn defining_form_is_preserved() {
    for f in sweep() {
        let g = construct(f).unwrap();
        for x in g.alg.basis() {
            let ok = match &g.model {
                FormModel::Hermitian(h) => x.adjoint().mul(h).add(&h.mul(x)).is_zero(),
                FormModel::RealSymmetric(s) => {
                    x.is_real() && x.transpose().mul(s).add(&s.mul(x)).is_zero()
                }
                FormModel::ComplexSymmetric(s) => x.transpose().mul(s).add(&s.mul(x)).is_zero(),
                FormModel::Skew { omega, complex } => {
                    (*complex || x.is_real())
                        && x.transpose().mul(omega).add(&omega.mul(x)).is_zero()
                }
                FormModel::QuatHermitian(m) | FormModel::QuatSkewHermitian(m) => {
                    let c = m.to_complex();
                    let j = quaternionic_structure(m.rows);
                    x.adjoint().mul(&c).add(&c.mul(x)).is_zero() && x.mul(&j) == j.mul(&x.conj())
                }
                FormModel::None(_) => x.trace().is_zero(),
            };
            assert!(ok, "{f}");
        }
    }
}

#[test]
fn paper_j_signature() {
    let s = signature(&paper_j(1, 2)).unwrap();
    assert_eq!((s.pos, s.neg, s.zero), (2, 1, 0));
    assert_eq!(
        paper_j(1, 2),
        Mat::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])
    );
    let g = construct(So(3, 4)).unwrap();
    let s = g.form.as_ref().unwrap().signature.unwrap();
    assert_eq!((s.pos, s.neg), (3, 4));
    let g = construct(Sp(1, 2)).unwrap();
    let s = g.form.as_ref().unwrap().signature.unwrap();
    assert_eq!((s.pos, s.neg), (2, 4));
}

#[test]
fn complexification() {
    let g = construct(SuCompact(2)).unwrap();
    let c = complexify_as_real(&g.alg).unwrap();
    assert_eq!(c.dim(), 6);
    assert!(matches!(
        complexify_as_real(&c),
        Err(FormError::AlreadyComplex(_))
    ));
    let g = construct(SoCompact(7)).unwrap();
    let c = complexify_as_real(&g.alg).unwrap();
    assert_eq!(c.dim(), 42);
    assert!(c.is_closed(&spherical::exact_linalg::Subspace::full(42)));
    assert!(complexify_as_real(&construct(ComplexSl(2)).unwrap().alg).is_err());
}

#[test]
fn bad_parameters() {
    assert!(matches!(construct(Su(1, 0)), Err(FormError::BadParams(_))));
    assert!(matches!(construct(SlR(1)), Err(FormError::BadParams(_))));
    assert!(matches!(
        construct(SoCompact(1)),
        Err(FormError::BadParams(_))
    ));
}

fn quat() -> impl Strategy<Value = Quat> {
    (-4i64..5, -4i64..5, -4i64..5, -4i64..5).prop_map(|(a, b, c, d)| Quat::ints(a, b, c, d))
}

fn quat_mat(n: usize) -> impl Strategy<Value = QuatMat> {
    proptest::collection::vec(quat(), n * n).prop_map(move |data| QuatMat {
        rows: n,
        cols: n,
        data,
    })
}

proptest! {
    #[test]
    fn complex_image_is_a_star_homomorphism(a in quat_mat(2), b in quat_mat(2)) {
        prop_assert_eq!(a.mul(&b).to_complex(), a.to_complex().mul(&b.to_complex()));
        prop_assert_eq!(a.adjoint().to_complex(), a.to_complex().adjoint());
        let j = quaternionic_structure(2);
        let c = a.to_complex();
        prop_assert_eq!(c.mul(&j), j.mul(&c.conj()));
        prop_assert_eq!(QuatMat::from_complex(&c), a);
    }

    #[test]
    fn quaternion_norm_is_multiplicative(x in quat(), y in quat()) {
        prop_assert_eq!((&x * &y).norm_sq(), x.norm_sq() * y.norm_sq());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), Quat::one());
        }
    }
}
