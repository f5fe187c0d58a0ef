use spherical::embeddings::forms::{normalize, unit_matrix, FormSpec, Kind, Unit};
use spherical::embeddings::octonion::{spin9_generators, OctonionAlgebra, Signature};
use spherical::embeddings::{
    block_embed, center_piece, diagonal_embed, embed, octonion_derivations, realify_embed,
    spin_clifford, tensor_embed, CenterKind, Emb, EmbError, Term, TermAlg,
};
use spherical::exact_linalg::{q, signature, GaussRational, Mat};
use spherical::lie_core::{real_rank_with, Subalg};
use spherical::real_forms::quaternion::{Quat, QuatMat};
use spherical::real_forms::{construct, Field, FormFamily, FormFamily::*};

fn fam(f: FormFamily) -> Term {
    Term::plain(TermAlg::Family(f))
}

fn at(f: FormFamily, e: Emb) -> Term {
    Term::new(TermAlg::Family(f), Some(e))
}

fn build(g: FormFamily, terms: &[Term]) -> Subalg {
    let g = construct(g).unwrap();
    embed(&g, terms).unwrap_or_else(|e| panic!("{g:?} ⊃ {terms:?}: {e}"))
}

fn assert_closed(h: &Subalg) {
    assert!(h.parent.is_closed(&h.coords));
}

#[test]
fn block_examples() {
    let g = construct(Su(2, 2)).unwrap();
    let h = block_embed(&g, &[Su(1, 1), Su(1, 1)]).unwrap();
    assert_eq!(h.dim(), 6);
    assert_closed(&h);
    let g = construct(Sp(1, 2)).unwrap();
    assert_eq!(
        block_embed(&g, &[SpCompact(1), Sp(1, 1)]).unwrap().dim(),
        13
    );
    let g = construct(Su(2, 2)).unwrap();
    assert_eq!(block_embed(&g, &[Su(2, 2)]).unwrap().dim(), 15);
}

#[test]
fn block_rejects_wrong_signature() {
    let g = construct(Su(2, 2)).unwrap();
    let e = block_embed(&g, &[Su(3, 1)]).unwrap_err();
    assert!(matches!(e, EmbError::SignatureMismatch(_)), "{e}");
    let e = block_embed(&g, &[SuCompact(3), SuCompact(2)]).unwrap_err();
    assert!(matches!(e, EmbError::BadTarget(_)), "{e}");
}

#[test]
fn tensor_examples() {
    let g = construct(Su(2, 2)).unwrap();
    assert_eq!(tensor_embed(&g, SuCompact(2), Su(1, 1)).unwrap().dim(), 6);
    let g = construct(So(4, 4)).unwrap();
    assert_eq!(tensor_embed(&g, SpR(1), SpR(2)).unwrap().dim(), 13);
    assert_eq!(tensor_embed(&g, SpCompact(1), Sp(1, 1)).unwrap().dim(), 13);
}

/// (p1 p2 + q1 q2, p1 q2 + p2 q1): signature of the tensor of two symmetric forms.
#[test]
fn tensor_signature_rule() {
    for (p1, q1, p2, q2) in [(1, 1, 2, 1), (2, 0, 1, 2), (3, 1, 1, 1), (1, 2, 2, 2)] {
        let a = Mat::diag_ints(&[vec![1; p1], vec![-1; q1]].concat());
        let b = Mat::diag_ints(&[vec![1; p2], vec![-1; q2]].concat());
        let s = signature(&a.kron(&b)).unwrap();
        assert_eq!((s.pos, s.neg), (p1 * p2 + q1 * q2, p1 * q2 + p2 * q1));
    }
    // the so(p,q) ⊗ so(r,s) embedding lands in the ambient with the composed signature
    let g = construct(So(3, 3)).unwrap();
    assert_eq!(tensor_embed(&g, So(2, 1), So(1, 1)).unwrap().dim(), 4);
    let g = construct(So(4, 2)).unwrap();
    assert!(matches!(
        tensor_embed(&g, So(2, 1), So(1, 1)),
        Err(EmbError::SignatureMismatch(_))
    ));
}

#[test]
fn realify_examples() {
    let g = construct(So(2, 4)).unwrap();
    let h = realify_embed(&g, Su(1, 2)).unwrap();
    assert_eq!((g.alg.dim(), h.dim()), (15, 8));
    assert_eq!(
        build(
            Sp(1, 1),
            &[Term::new(TermAlg::U(1, 1), Some(Emb::Quaternionify))]
        )
        .dim(),
        4
    );
    let g = construct(Su(2, 2)).unwrap();
    assert_eq!(realify_embed(&g, Sp(1, 1)).unwrap().dim(), 10);
}

fn embed_derivation(d: &Mat) -> Mat {
    let mut m = Mat::zeros(8, 8);
    m.set_block(1, 1, d);
    m
}

#[test]
fn octonion_algebra_laws() {
    for sig in [Signature::Compact, Signature::Split] {
        let o = OctonionAlgebra::new(sig);
        let n = o.norm_diag();
        let e = |i: usize| (0..8).map(|k| q((k == i) as i64)).collect::<Vec<_>>();
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (e(i), e(j));
                // alternativity (x x) y = x (x y) and y (x x) = (y x) x
                assert_eq!(o.mul(&o.mul(&x, &x), &y), o.mul(&x, &o.mul(&x, &y)));
                assert_eq!(o.mul(&o.mul(&y, &x), &x), o.mul(&y, &o.mul(&x, &x)));
                // N(e_i e_j) = N(e_i) N(e_j) on basis elements
                let (_, k) = o.mul_basis(i, j);
                assert_eq!(n[k], n[i] * n[j]);
            }
        }
    }
}

#[test]
fn octonion_derivations_g2() {
    for (sig, target, p) in [
        (Signature::Compact, SoCompact(7), 7),
        (Signature::Split, So(3, 4), 3),
    ] {
        let o = OctonionAlgebra::new(sig);
        let ders = o.derivations();
        assert_eq!(ders.len(), 14);
        // as derivations of all of O: D(1) = 0 and D(xy) = D(x) y + x D(y)
        for d in &ders {
            let full = embed_derivation(d);
            assert!(full.column(0).iter().all(GaussRational::is_zero));
            let apply = |v: &[spherical::exact_linalg::Rational]| -> Vec<_> {
                let c: Vec<GaussRational> =
                    v.iter().map(|x| GaussRational::real(x.clone())).collect();
                full.apply(&c).into_iter().map(|z| z.re).collect()
            };
            for i in 0..8 {
                for j in 0..8 {
                    let e = |k: usize| (0..8).map(|t| q((t == k) as i64)).collect::<Vec<_>>();
                    let lhs = apply(&o.mul(&e(i), &e(j)));
                    let r1 = o.mul(&apply(&e(i)), &e(j));
                    let r2 = o.mul(&e(i), &apply(&e(j)));
                    let rhs: Vec<_> = r1.iter().zip(&r2).map(|(a, b)| a + b).collect();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        let h = octonion_derivations(&o).unwrap();
        assert_eq!(h.dim(), 14);
        assert_eq!(h.parent.label(), target.to_string());
        let norm = Mat::diag_ints(&o.norm_diag()[1..]);
        let s = signature(&norm).unwrap();
        assert_eq!((s.pos, s.neg), (p, 7 - p));
        // split rank 2 for the split form, compact otherwise
        let theta = h.theta.clone().expect("theta-stable");
        let alg = h.to_lie_alg().unwrap();
        let expected_rank = if sig == Signature::Split { 2 } else { 0 };
        assert_eq!(real_rank_with(&alg, &theta).unwrap(), expected_rank);
        assert!(
            alg.centralizer_of(&spherical::exact_linalg::Subspace::full(14))
                .dim()
                == 0
        );
    }
}

#[test]
fn spin_examples() {
    let h = spin_clifford(7, 0, SoCompact(8)).unwrap();
    assert_eq!((h.parent.dim(), h.dim()), (28, 21));
    assert_eq!(spin_clifford(3, 4, So(4, 4)).unwrap().dim(), 21);
    let h = spin_clifford(9, 0, SoCompact(16)).unwrap();
    assert_eq!((h.parent.dim(), h.dim()), (120, 36));
    assert!(matches!(
        spin_clifford(2, 2, So(2, 2)),
        Err(EmbError::UnsupportedSignature(_))
    ));
}

#[test]
fn spin7_classes_differ() {
    let g = construct(SoCompact(8)).unwrap();
    let plus = embed(&g, &[Term::new(TermAlg::Spin(7, 0), Some(Emb::Spin(0)))]).unwrap();
    let minus = embed(&g, &[Term::new(TermAlg::Spin(7, 0), Some(Emb::Spin(1)))]).unwrap();
    assert_eq!(minus.dim(), 21);
    assert_ne!(plus.coords, minus.coords);
    // both meet in G2 after fixing the first basis vector
    let both = plus.coords.intersect(&minus.coords).unwrap();
    assert_eq!(both.dim(), 14);
}

#[test]
fn clifford_generators() {
    let g = spin9_generators();
    assert_eq!(g.len(), 9);
    let id = Mat::identity(16);
    for a in 0..9 {
        assert_eq!(g[a].mul(&g[a]), id);
        assert_eq!(g[a], g[a].transpose());
        for b in a + 1..9 {
            assert!(g[a].mul(&g[b]).add(&g[b].mul(&g[a])).is_zero());
        }
    }
    for sig in [Signature::Compact, Signature::Split] {
        let o = OctonionAlgebra::new(sig);
        let n = o.norm_diag();
        for a in 1..8 {
            let l = o.left_mul(a);
            let sq = l.mul(&l);
            assert_eq!(sq, Mat::identity(8).scale_q(&q(-n[a])));
            for b in a + 1..8 {
                assert!(l.mul(&o.left_mul(b)).add(&o.left_mul(b).mul(&l)).is_zero());
            }
        }
    }
}

#[test]
fn center_examples() {
    let h = build(Su(2, 1), &[fam(SpCompact(1)), Term::plain(TermAlg::U1)]);
    assert_eq!(h.dim(), 4);
    assert_closed(&h);
    // the centralizer of sl(2,H) in sl(3,H) contains a 2-dimensional abelian piece
    let g = construct(SlH(3)).unwrap();
    let base = block_embed(&g, &[SlH(2)]).unwrap();
    let z = g.alg.centralizer_of(&base.coords);
    assert_eq!(z.dim(), 4);
    let f = build(
        SlH(3),
        &[
            fam(SlH(2)),
            Term::new(TermAlg::U1, Some(Emb::Center(Some(0)))),
            Term::plain(TermAlg::Gl1),
        ],
    );
    assert_eq!(f.dim(), 17);
    let extra = spherical::embeddings::forms::unit_matrix(&[]); // no-op use of the re-export
    assert_eq!(extra.rows, 0);
    let gl = g.alg.centralizer_of(&f.coords);
    assert!(gl.dim() >= 2);
    // f = 0 leaves h unchanged
    let same = center_piece(&g, &base, CenterKind::FullCentralizer, None).unwrap();
    assert_eq!(same.dim(), base.dim() + 4);
    assert!(matches!(
        embed(&g, &[fam(SlH(2)), Term::plain(TermAlg::U1)]),
        Err(EmbError::Ambiguous(3))
    ));
    assert!(matches!(
        embed(
            &construct(SuCompact(3)).unwrap(),
            &[fam(SuCompact(3)), Term::plain(TermAlg::U1)]
        ),
        Err(EmbError::CentralizerTooSmall { .. })
    ));
}

#[test]
fn diagonal_examples() {
    let g = construct(Su(2, 2)).unwrap();
    let h = diagonal_embed(&g, SuCompact(2), 2).unwrap();
    assert_eq!(h.dim(), 3);
    assert_closed(&h);
    let g = construct(Sp(1, 1)).unwrap();
    assert_eq!(diagonal_embed(&g, SpCompact(1), 2).unwrap().dim(), 3);
    let g = construct(Su(2, 1)).unwrap();
    assert_eq!(diagonal_embed(&g, Su(2, 1), 1).unwrap().dim(), 8);
}

fn check_instance(g: FormFamily, terms: &[Term], dim: usize) {
    let h = build(g, terms);
    assert_eq!(h.dim(), dim, "{g} ⊃ {terms:?}");
    assert_closed(&h);
    assert!(
        h.theta.is_some(),
        "no verified Cartan involution for {g} ⊃ {}",
        h.provenance
    );
}

#[test]
fn minimal_instances_of_the_classification() {
    let u1c = Term::new(TermAlg::U1, Some(Emb::Center(Some(0))));
    let cases: Vec<(FormFamily, Vec<Term>, usize)> = vec![
        (
            Su(3, 1),
            vec![at(Su(2, 0), Emb::Block(0)), at(Su(1, 1), Emb::Block(1))],
            6,
        ),
        (
            Su(2, 1),
            vec![fam(SpCompact(1)), Term::plain(TermAlg::U1)],
            4,
        ),
        (SlH(3), vec![fam(SlH(2))], 15),
        (SlH(3), vec![at(ComplexSl(3), Emb::Realify)], 16),
        (Sp(2, 1), vec![fam(Su(2, 1))], 8),
        (Sp(1, 1), vec![fam(Sp(0, 1))], 3),
        (So(6, 2), vec![fam(Su(3, 1))], 15),
        (So(5, 2), vec![fam(Su(2, 1))], 8),
        (
            So(6, 1),
            vec![fam(So(2, 1)), fam(SuCompact(2)), u1c.clone()],
            7,
        ),
        (So(8, 1), vec![fam(SpCompact(2))], 10),
        (
            So(16, 1),
            vec![Term::new(TermAlg::Spin(9, 0), Some(Emb::Spin(0)))],
            36,
        ),
        (
            So(7, 1),
            vec![Term::new(TermAlg::G2 { split: false }, Some(Emb::DerOct))],
            14,
        ),
        (
            So(8, 1),
            vec![Term::new(TermAlg::Spin(7, 0), Some(Emb::Spin(0)))],
            21,
        ),
        (
            So(6, 3),
            vec![fam(SoCompact(2)), Term::plain(TermAlg::G2 { split: true })],
            15,
        ),
        (
            So(7, 4),
            vec![fam(SoCompact(3)), Term::plain(TermAlg::Spin(4, 3))],
            24,
        ),
        (SoStar(5), vec![fam(SoStar(4))], 28),
        (SoStar(5), vec![Term::plain(TermAlg::Spin(6, 1))], 21),
    ];
    for (g, t, d) in cases {
        check_instance(g, &t, d);
    }
}

#[test]
fn symmetric_instances() {
    let cases: Vec<(FormFamily, Vec<Term>, usize)> = vec![
        (Su(1, 3), vec![fam(So(1, 3))], 6),
        (SlH(3), vec![fam(SoStar(3))], 15),
        (Su(2, 4), vec![fam(Sp(1, 2))], 21),
        (SlH(2), vec![fam(Sp(1, 1))], 10),
        (
            Su(1, 3),
            vec![Term::plain(TermAlg::U(0, 1)), Term::plain(TermAlg::U(1, 2))],
            9,
        ),
        (
            SlH(3),
            vec![
                Term::plain(TermAlg::Gl(2, Field::H)),
                Term::plain(TermAlg::Gl(1, Field::H)),
            ],
            19,
        ),
        (
            SlH(3),
            vec![fam(ComplexSl(3)), Term::plain(TermAlg::U1)],
            17,
        ),
        (So(2, 6), vec![Term::plain(TermAlg::U(1, 3))], 16),
        (SoStar(4), vec![Term::plain(TermAlg::U(4, 0))], 16),
        (
            SoStar(4),
            vec![Term::new(TermAlg::Gl(2, Field::H), Some(Emb::Dual))],
            16,
        ),
        (So(1, 6), vec![fam(So(1, 3)), fam(SoCompact(3))], 9),
        (SoStar(5), vec![fam(SoStar(4)), fam(SoStar(1))], 29),
        (SoStar(4), vec![fam(ComplexSo(4))], 12),
        (Sp(1, 2), vec![Term::plain(TermAlg::U(1, 2))], 9),
        (Sp(1, 2), vec![fam(SpCompact(1)), fam(Sp(0, 2))], 13),
        (Sp(1, 1), vec![fam(ComplexSp(1))], 6),
    ];
    for (g, t, d) in cases {
        check_instance(g, &t, d);
    }
}

#[test]
fn complex_instances() {
    let cases: Vec<(FormFamily, Vec<Term>, usize)> = vec![
        (
            ComplexSl(4),
            vec![
                fam(ComplexSl(3)),
                Term::new(TermAlg::Gl(1, Field::C), Some(Emb::Center(None))),
            ],
            18,
        ),
        (ComplexSl(4), vec![fam(ComplexSp(2))], 20),
        (ComplexSo(8), vec![fam(ComplexSo(7))], 42),
        (
            ComplexSo(8),
            vec![Term::new(TermAlg::Gl(4, Field::C), Some(Emb::Dual))],
            32,
        ),
        (
            ComplexSo(7),
            vec![
                fam(ComplexSo(5)),
                Term::plain(TermAlg::U1),
                Term::plain(TermAlg::Gl1),
            ],
            22,
        ),
        (ComplexSo(7), vec![Term::plain(TermAlg::G2C)], 28),
        (ComplexSo(7), vec![fam(ComplexSo(6))], 30),
        (ComplexSo(8), vec![Term::plain(TermAlg::SpinC(7))], 42),
    ];
    for (g, t, d) in cases {
        check_instance(g, &t, d);
    }
}

#[test]
fn normalizer_reaches_units() {
    let f = |field, sesqui, kind, m: QuatMat| FormSpec::new(field, sesqui, kind, m);
    let cases = vec![
        f(
            Field::R,
            true,
            Kind::Sym,
            QuatMat::from_mat(&Mat::from_ints(&[&[0, 1], &[1, 0]])),
        ),
        f(
            Field::R,
            true,
            Kind::Sym,
            QuatMat::from_mat(&Mat::diag_ints(&[4, -9, 2, 2])),
        ),
        f(
            Field::C,
            false,
            Kind::Sym,
            QuatMat::from_mat(&Mat::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
        ),
        f(
            Field::R,
            true,
            Kind::Skew,
            QuatMat::from_mat(&Mat::from_ints(&[&[0, 2], &[-2, 0]])),
        ),
        f(
            Field::H,
            true,
            Kind::Sym,
            QuatMat::from_mat(&Mat::diag_ints(&[7, -1])),
        ),
        f(
            Field::H,
            true,
            Kind::SkewHerm,
            spherical::real_forms::quat_skew_form(3),
        ),
        f(
            Field::H,
            true,
            Kind::SkewHerm,
            QuatMat::identity(2).scale_left(&Quat::ints(0, 1, 1, 0)),
        ),
    ];
    for spec in cases {
        let (t, units) = normalize(&spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
        assert_eq!(spec.congruent(&t), unit_matrix(&units), "{spec:?}");
        if spec.kind == Kind::SkewHerm {
            assert!(units.iter().all(|u| *u == Unit::J));
        }
    }
    let irrational = f(
        Field::R,
        true,
        Kind::Sym,
        QuatMat::from_mat(&Mat::diag_ints(&[3])),
    );
    assert!(matches!(
        normalize(&irrational),
        Err(EmbError::FormIncompatible(_))
    ));
    let zero = f(Field::R, true, Kind::Sym, QuatMat::zeros(2, 2));
    assert!(matches!(normalize(&zero), Err(EmbError::DegenerateForm)));
    let hyp = f(
        Field::R,
        true,
        Kind::Sym,
        QuatMat::from_mat(&Mat::from_ints(&[&[0, 1], &[1, 0]])),
    );
    assert_eq!(hyp.inertia().unwrap(), (1, 1));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn block_dims_add(p1 in 0usize..3, q1 in 0usize..2, p2 in 0usize..2, q2 in 0usize..2) {
            prop_assume!(p1 + q1 >= 2 && p2 + q2 >= 2);
            let g = construct(Su(p1 + p2, q1 + q2)).unwrap();
            let h = block_embed(&g, &[Su(p1, q1), Su(p2, q2)]).unwrap();
            let dim = |n: usize| n * n - 1;
            prop_assert_eq!(h.dim(), dim(p1 + q1) + dim(p2 + q2));
            prop_assert!(h.parent.is_closed(&h.coords));
            prop_assert!(h.theta.is_some());
        }

        #[test]
        fn so_tensor_signature(p1 in 0usize..3, q1 in 0usize..2, p2 in 1usize..3, q2 in 0usize..2) {
            prop_assume!(p1 + q1 >= 2 && p2 + q2 >= 2);
            let (p, q) = (p1 * p2 + q1 * q2, p1 * q2 + p2 * q1);
            let g = construct(if q == 0 { SoCompact(p) } else { So(p, q) }).unwrap();
            let f = |a: usize, b: usize| if b == 0 { SoCompact(a) } else { So(a, b) };
            let h = tensor_embed(&g, f(p1, q1), f(p2, q2)).unwrap();
            let so = |n: usize| n * (n - 1) / 2;
            prop_assert_eq!(h.dim(), so(p1 + q1) + so(p2 + q2));
        }
    }
}
