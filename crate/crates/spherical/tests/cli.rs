use spherical::catalog::Filter;
use spherical::checks::Outcome;
use spherical::cli::report::{strip_timing, validate, Report, Status, SCHEMA};
use spherical::cli::run::{check_factor, check_preh, info, verify_pair, verify_table};
use spherical::cli::{parse_family, parse_spec, parse_terms, PairSpec, SpecError};
use spherical::embeddings::{Emb, Term, TermAlg};
use spherical::genericity::SampleConfig;
use spherical::real_forms::{Field, FormFamily};

fn cfg() -> SampleConfig {
    SampleConfig::default()
}

fn json(r: &Report) -> serde_json::Value {
    serde_json::from_str(&r.to_json()).unwrap()
}

#[test]
fn spec_examples() {
    let s = parse_spec("g = su(3,1); h = su(2,0)@block(0) + su(1,1)@block(1)").unwrap();
    assert_eq!(s.g, FormFamily::Su(3, 1));
    assert_eq!(
        s.h,
        vec![
            Term::new(TermAlg::Family(FormFamily::Su(2, 0)), Some(Emb::Block(0))),
            Term::new(TermAlg::Family(FormFamily::Su(1, 1)), Some(Emb::Block(1))),
        ]
    );

    let s = parse_spec("g = so(4,4); h = sp(1,R)@tensor + sp(2,R)@tensor").unwrap();
    assert_eq!(s.g, FormFamily::So(4, 4));
    assert_eq!(s.h.len(), 2);
    assert_eq!(s.h[1].alg, TermAlg::Family(FormFamily::SpR(2)));
    assert_eq!(s.h[1].emb, Some(Emb::Tensor));

    let s = parse_spec("g = so*(10);\nh = spin(6,1) + u1").unwrap();
    assert_eq!(s.g, FormFamily::SoStar(5));
    assert_eq!(s.h[1].alg, TermAlg::U1);
    assert_eq!(s.raw_text, "g = so*(10);\nh = spin(6,1) + u1");
}

#[test]
fn malformed_spec_column() {
    let e = parse_spec("g = su(2,)").unwrap_err();
    assert!(matches!(e, SpecError::Parse { .. }), "{e:?}");
    assert_eq!(e.position(), (1, 10));
}

#[test]
fn unknown_and_arity() {
    let e = parse_spec("g = su(2,1); h = e8(1)").unwrap_err();
    assert!(matches!(e, SpecError::UnknownFamily { ref name, .. } if name == "e8"));
    assert_eq!(e.position(), (1, 18));
    let e = parse_spec("g = su(2,1,3)").unwrap_err();
    assert!(matches!(e, SpecError::Arity { .. }), "{e:?}");
    let e = parse_spec("g = su(2,1); h = su(1,1)@block").unwrap_err();
    assert!(matches!(e, SpecError::Arity { .. }), "{e:?}");
    let e = parse_spec("g = so*(7)").unwrap_err();
    assert!(matches!(e, SpecError::Arity { .. }), "{e:?}");
    let e = parse_spec("g = su(2,1);\n h = su(1,1)@twist").unwrap_err();
    assert_eq!(e.position(), (2, 14));
    assert!(parse_spec("g = su(0,1)").is_err());
    assert!(parse_spec("h = su(2)").is_err());
    assert!(parse_spec("g = su(2,1) extra").is_err());
}

#[test]
fn partial_parsers() {
    assert_eq!(parse_family("g = sl(3,H)").unwrap(), FormFamily::SlH(3));
    assert_eq!(parse_family("sp(2,C)").unwrap(), FormFamily::ComplexSp(2));
    let t = parse_terms("h1 = gl(2,C)@dual").unwrap();
    assert_eq!(
        t,
        vec![Term::new(TermAlg::Gl(2, Field::C), Some(Emb::Dual))]
    );
    let t = parse_terms("spin(7,C)@spin(1) + g2(C) + g2split").unwrap();
    assert_eq!(t[0].alg, TermAlg::SpinC(7));
    assert_eq!(t[1].alg, TermAlg::G2C);
    assert_eq!(t[2].alg, TermAlg::G2 { split: true });
}

#[test]
fn info_su23() {
    let r = info(&parse_spec("g = su(2,3)").unwrap(), &cfg());
    let c = &r.results[0];
    assert_eq!(c.dims["dim_g"], 24);
    assert_eq!(c.dims["rank_g"], 2);
    assert_eq!(c.dims["dim_n"], 10);
    assert_eq!(c.status, Status::Info);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn info_with_subalgebra_reports_bounds() {
    let r = info(
        &parse_spec("g = su(2,1); h = su(1,1)@block(0)").unwrap(),
        &cfg(),
    );
    let c = &r.results[0];
    let names: Vec<&str> = c.verdicts.iter().map(|v| v.check.as_str()).collect();
    assert_eq!(names, ["dimension_bound", "rank_inequality"]);
    assert_eq!(c.dims["dim_h"], 3);
}

#[test]
fn catalog_pair_carries_citation() {
    let r = verify_pair(
        &parse_spec("g = sl(3,H); h = sl(3,C)@realify").unwrap(),
        &cfg(),
    );
    let c = &r.results[0];
    assert_eq!(c.status, Status::Met);
    assert_eq!(c.id.as_deref(), Some("T1.4(3)"));
    assert_eq!(c.citation.as_ref().unwrap().table, "T1");
    assert_eq!(c.main().unwrap().outcome, Outcome::Spherical);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn uncatalogued_pair_is_informational() {
    let r = verify_pair(
        &parse_spec("g = su(2,1); h = su(1,1)@block(0) + u1").unwrap(),
        &cfg(),
    );
    let c = &r.results[0];
    assert!(c.citation.is_none());
    assert_eq!(c.status, Status::Info);
    assert!(c.main().is_some());
}

#[test]
fn embedding_errors_are_reported() {
    let r = verify_pair(
        &parse_spec("g = sp(2,C); h = sp(1,C)@block(0) + sp(1)@block(1)").unwrap(),
        &cfg(),
    );
    assert_eq!(r.results[0].status, Status::Error);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn factor_and_preh_commands() {
    let g = parse_family("so(7,C)").unwrap();
    let r = check_factor(
        g,
        &parse_terms("so(6,C)").unwrap(),
        &parse_terms("g2(C)").unwrap(),
        &cfg(),
    );
    assert_eq!(r.results[0].status, Status::Met);
    assert_eq!(r.results[0].id.as_deref(), Some("T3.5"));

    let r = check_preh("T2.6(3)", &cfg());
    let c = &r.results[0];
    assert_eq!(c.status, Status::Met);
    assert_eq!(
        c.main().unwrap().outcome,
        Outcome::NotPrehomogeneousProbable
    );
}

#[test]
fn reports_validate_and_are_stable() {
    let f = Filter {
        table: Some("T3".into()),
        max_dim: Some(60),
        ..Filter::default()
    };
    let a = verify_table(&f, &cfg());
    let b = verify_table(&f, &cfg());
    let (mut ja, mut jb) = (json(&a), json(&b));
    validate(&ja).unwrap();
    assert_eq!(ja["schema"], SCHEMA);
    strip_timing(&mut ja);
    strip_timing(&mut jb);
    assert_eq!(ja, jb);
    let ids: Vec<&str> = a.results.iter().filter_map(|c| c.id.as_deref()).collect();
    for want in ["T3.1(2)", "T3.2(4)", "T3.4", "T3.5", "T3.8"] {
        assert!(ids.contains(&want), "{ids:?}");
    }
    assert!(!ids.contains(&"T3.10"));
    assert_eq!(a.summary.met, a.results.len());
}

#[test]
fn text_output_mentions_every_verdict() {
    let r = verify_pair(&parse_spec("g = su(2,1); h = sp(1) + u1").unwrap(), &cfg());
    let text = r.to_text();
    for v in &r.results[0].verdicts {
        assert!(text.contains(v.outcome.as_str()));
        assert!(text.contains(&v.check));
    }
}

#[test]
fn validation_rejects_broken_documents() {
    let r = info(&parse_spec("g = sl(2,R)").unwrap(), &cfg());
    let good = json(&r);
    validate(&good).unwrap();
    let mut bad = good.clone();
    bad["schema"] = "other".into();
    assert!(validate(&bad).is_err());
    let mut bad = good.clone();
    bad["results"][0]["status"] = "great".into();
    assert!(validate(&bad).is_err());
    let mut bad = good;
    bad.as_object_mut().unwrap().remove("summary");
    assert!(validate(&bad).is_err());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn family() -> impl Strategy<Value = FormFamily> {
        use FormFamily::*;
        prop_oneof![
            (1usize..5, 1usize..5).prop_map(|(p, q)| Su(p, q)),
            (2usize..6).prop_map(SlR),
            (1usize..4).prop_map(SlH),
            (1usize..6, 1usize..6).prop_map(|(p, q)| So(p, q)),
            (2usize..6).prop_map(SoStar),
            (1usize..4).prop_map(SpR),
            (1usize..3, 1usize..3).prop_map(|(p, q)| Sp(p, q)),
            (2usize..6).prop_map(SuCompact),
            (3usize..8).prop_map(SoCompact),
            (1usize..4).prop_map(SpCompact),
            (2usize..5).prop_map(ComplexSl),
            (3usize..8).prop_map(ComplexSo),
            (1usize..4).prop_map(ComplexSp),
        ]
    }

    fn field() -> impl Strategy<Value = Field> {
        prop_oneof![Just(Field::R), Just(Field::C), Just(Field::H)]
    }

    fn term() -> impl Strategy<Value = Term> {
        let alg = prop_oneof![
            family().prop_map(TermAlg::Family),
            (0usize..4, 0usize..4)
                .prop_filter("nonzero", |(p, q)| p + q > 0)
                .prop_map(|(p, q)| TermAlg::U(p, q)),
            (1usize..4, field()).prop_map(|(n, k)| TermAlg::Gl(n, k)),
            any::<bool>().prop_map(|split| TermAlg::G2 { split }),
            Just(TermAlg::G2C),
            Just(TermAlg::Spin(7, 0)),
            Just(TermAlg::Spin(4, 3)),
            Just(TermAlg::SpinC(7)),
            Just(TermAlg::U1),
            Just(TermAlg::Gl1),
        ];
        let emb = prop_oneof![
            Just(None),
            (0usize..3).prop_map(|i| Some(Emb::Block(i))),
            Just(Some(Emb::Tensor)),
            Just(Some(Emb::Realify)),
            Just(Some(Emb::Quaternionify)),
            (1usize..4).prop_map(|k| Some(Emb::Diag(k))),
            (0usize..2).prop_map(|i| Some(Emb::Spin(i))),
            Just(Some(Emb::DerOct)),
            Just(Some(Emb::Center(None))),
            (0usize..3).prop_map(|i| Some(Emb::Center(Some(i)))),
            Just(Some(Emb::Dual)),
        ];
        (alg, emb).prop_map(|(a, e)| Term::new(a, e))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(g in family(), h in prop::collection::vec(term(), 0..4)) {
            let spec = PairSpec::new(g, h);
            let text = spec.to_string();
            let back = parse_spec(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(back.raw_text, text);
        }

        #[test]
        fn garbage_never_panics(s in "[a-z0-9(),;=@+* ]{0,30}") {
            let _ = parse_spec(&s);
        }
    }
}
