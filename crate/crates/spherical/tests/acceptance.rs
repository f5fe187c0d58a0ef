//! Acceptance suite: one line per criterion, non-zero exit when any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use spherical::catalog::{all_cases, find_case, list_cases, Filter, Instance, Recipe, Role};
use spherical::checks::reps::table2_rep;
use spherical::checks::{
    check_adapted_levi, invariant_form_verdict, is_factorization_in, is_prehomogeneous,
    is_spherical, Evidence, Outcome, Verdict,
};
use spherical::cli::report::strip_timing;
use spherical::cli::run::verify_table;
use spherical::embeddings::embed;
use spherical::exact_linalg::{rank, signature, GaussRational, Mat, Rational, Subspace};
use spherical::genericity::{verify_witness, Ambient, SampleConfig, Witness, DEFAULT_SEED};
use spherical::lie_core::Subalg;
use spherical::real_forms::quaternion::quaternionic_structure;
use spherical::real_forms::{construct, FormFamily, FormModel, RealForm};

use FormFamily::*;

type Line = Result<String, String>;

fn cfg() -> SampleConfig {
    let seed = std::env::var("SPH_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    SampleConfig {
        seed,
        ..SampleConfig::default()
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let e = t.elapsed();
    ensure(e < limit, || {
        format!("{what} took {e:.1?}, limit {limit:?}")
    })
}

/// Parameter tuples of the seven classical families whose defining matrices have size <= 10.
fn classical_upto(size: usize) -> Vec<FormFamily> {
    let mut out = Vec::new();
    for n in 0..=size {
        out.push(SlR(n));
        out.push(SlH(n));
        out.push(SoStar(n));
        out.push(SpR(n));
        for q in 0..=n {
            out.push(Su(n - q, q));
            out.push(So(n - q, q));
            out.push(Sp(n - q, q));
        }
    }
    out.retain(|f| f.validate().is_ok() && f.ambient_size() <= size);
    out
}

fn form_preserved(g: &RealForm, x: &Mat) -> bool {
    match &g.model {
        FormModel::Hermitian(h) => x.adjoint().mul(h).add(&h.mul(x)).is_zero(),
        FormModel::RealSymmetric(s) => x.is_real() && x.transpose().mul(s).add(&s.mul(x)).is_zero(),
        FormModel::ComplexSymmetric(s) => x.transpose().mul(s).add(&s.mul(x)).is_zero(),
        FormModel::Skew { omega, complex } => {
            (*complex || x.is_real()) && x.transpose().mul(omega).add(&omega.mul(x)).is_zero()
        }
        FormModel::QuatHermitian(m) | FormModel::QuatSkewHermitian(m) => {
            let c = m.to_complex();
            let j = quaternionic_structure(m.rows);
            x.adjoint().mul(&c).add(&c.mul(x)).is_zero() && x.mul(&j) == j.mul(&x.conj())
        }
        FormModel::None(_) => x.trace().is_zero(),
    }
}

/// Re tr(XY) on a subspace; a positive multiple of the Killing form on a simple algebra.
fn trace_gram(g: &RealForm, s: &Subspace) -> Mat {
    let mats = g.alg.matrices_of(s);
    Mat::from_fn(mats.len(), mats.len(), |i, j| {
        GaussRational::real(mats[i].mul(&mats[j]).trace().re.clone())
    })
}

fn c1_construction() -> Line {
    let t = Instant::now();
    let families = classical_upto(10);
    for &f in &families {
        let g = construct(f).map_err(|e| format!("{f}: {e}"))?;
        let (alg, pd) = (&g.alg, &g.parabolic);
        let full = Subspace::full(alg.dim());
        ensure(alg.is_closed(&full), || format!("{f}: bracket not closed"))?;
        ensure(alg.basis().iter().all(|x| form_preserved(&g, x)), || {
            format!("{f}: defining form not preserved")
        })?;
        ensure(pd.k.dim() + pd.s.dim() == alg.dim(), || {
            format!("{f}: k + s != g")
        })?;
        ensure(
            pd.k.contains_subspace(&alg.bracket_space(&pd.k, &pd.k)),
            || format!("{f}: [k,k] not in k"),
        )?;
        ensure(
            pd.s.contains_subspace(&alg.bracket_space(&pd.k, &pd.s)),
            || format!("{f}: [k,s] not in s"),
        )?;
        ensure(
            pd.k.contains_subspace(&alg.bracket_space(&pd.s, &pd.s)),
            || format!("{f}: [s,s] not in k"),
        )?;
        let sk = signature(&trace_gram(&g, &pd.k)).map_err(|e| e.to_string())?;
        let ss = signature(&trace_gram(&g, &pd.s)).map_err(|e| e.to_string())?;
        ensure(sk.neg == pd.k.dim() && ss.pos == pd.s.dim(), || {
            format!("{f}: Cartan signs k {sk:?}, s {ss:?}")
        })?;
        ensure(pd.dim_n() == pd.s.dim() - pd.real_rank(), || {
            format!(
                "{f}: dim n {} != dim g/k - rank {}",
                pd.dim_n(),
                pd.s.dim() - pd.real_rank()
            )
        })?;
    }
    within(t, Duration::from_secs(60), "construction suite")?;
    Ok(format!("{} algebras, {:.1?}", families.len(), t.elapsed()))
}

fn c2_bound_formulas() -> Line {
    let mut cases: Vec<(FormFamily, usize)> = Vec::new();
    for p in 1..=8usize {
        for q in p..=8 - p {
            cases.push((Su(p, q), 2 * p * q - p));
            cases.push((So(p, q), p * q - p));
            cases.push((Sp(p, q), 4 * p * q - p));
        }
    }
    for m in 1..=8usize {
        cases.push((SlH(m), 2 * m * m - 2 * m));
        if m >= 2 {
            // m² − (3/2)m for even m; the real rank is ⌊m/2⌋ in general.
            cases.push((SoStar(m), m * m - m - m / 2));
        }
    }
    cases.retain(|(f, _)| f.validate().is_ok());
    for (f, want) in &cases {
        let g = construct(*f).map_err(|e| format!("{f}: {e}"))?;
        let got = g.parabolic.dim_n();
        ensure(got == *want, || format!("{f}: dim n {got}, formula {want}"))?;
    }
    Ok(format!("{} forms", cases.len()))
}

fn helgason_rank(f: FormFamily) -> usize {
    match f {
        Su(p, q) | So(p, q) | Sp(p, q) => p.min(q),
        SlR(n) => n - 1,
        SlH(n) => n - 1,
        SoStar(n) => n / 2,
        SpR(n) => n,
        _ => 0,
    }
}

fn c3_real_ranks() -> Line {
    let mut fams = Vec::new();
    for p in 0..=8usize {
        for q in 0..=8 - p {
            fams.extend([Su(p, q), So(p, q), Sp(p, q)]);
        }
    }
    for m in 1..=8 {
        fams.extend([SlH(m), SoStar(m), SlR(m), SpR(m)]);
    }
    fams.retain(|f| f.validate().is_ok());
    for &f in &fams {
        let got = construct(f)
            .map_err(|e| format!("{f}: {e}"))?
            .parabolic
            .real_rank();
        let want = helgason_rank(f);
        ensure(got == want, || {
            format!("{f}: real rank {got}, expected {want}")
        })?;
    }
    Ok(format!("{} forms", fams.len()))
}

fn pair(inst: &Instance) -> Result<(std::sync::Arc<RealForm>, Subalg), String> {
    let Recipe::Pair { spec } = &inst.recipe else {
        return Err(format!("{} is not a pair", inst.label()));
    };
    let g = construct(spec.g).map_err(|e| e.to_string())?;
    let h = embed(&g, &spec.h).map_err(|e| format!("{}: {e}", inst.label()))?;
    Ok((g, h))
}

fn witness_of(v: &Verdict) -> Option<Witness> {
    let Evidence::Witness {
        cell, index, z, y, ..
    } = &v.evidence
    else {
        return None;
    };
    let parse = |s: &[String]| {
        s.iter()
            .map(|x| x.parse::<Rational>().ok())
            .collect::<Option<Vec<_>>>()
    };
    Some(Witness {
        cell: *cell,
        index: *index,
        z: parse(z)?,
        y: parse(y)?,
    })
}

/// Exact dim(fixed + Ad(x) moving) at the recorded witness.
fn recheck(
    amb: &Ambient,
    fixed: &Subspace,
    moving: &Subspace,
    v: &Verdict,
) -> Result<usize, String> {
    let w = witness_of(v).ok_or_else(|| format!("{}: no witness", v.check))?;
    verify_witness(amb, fixed, moving, &w).map_err(|e| e.to_string())
}

fn spherical_with_certificate(inst: &Instance, cfg: &SampleConfig) -> Result<Verdict, String> {
    let (g, h) = pair(inst)?;
    let v = is_spherical(&g, &h, cfg).map_err(|e| e.to_string())?;
    if v.outcome == Outcome::Spherical {
        let r = recheck(&Ambient::of_form(&g), &h.coords, &g.parabolic.p, &v)?;
        ensure(r == g.alg.dim(), || {
            format!("{}: witness rank {r}", inst.label())
        })?;
    }
    Ok(v)
}

fn c4_berger() -> Line {
    let t = Instant::now();
    let cfg = cfg();
    let cases = list_cases(&Filter {
        table: Some("T4".into()),
        ..Filter::default()
    });
    ensure(cases.len() >= 15, || {
        format!("only {} Berger pairs", cases.len())
    })?;
    for c in &cases {
        let inst = &c.instances().map_err(|e| e.to_string())?[0];
        let v = spherical_with_certificate(inst, &cfg)?;
        ensure(v.outcome == Outcome::Spherical, || {
            format!("{}: {}", inst.label(), v.outcome.as_str())
        })?;
        let used = v.get("samples_used").unwrap_or(usize::MAX);
        ensure(used <= 20, || format!("{}: {used} samples", inst.label()))?;
    }
    within(t, Duration::from_secs(300), "Berger suite")?;
    Ok(format!("{} pairs, {:.1?}", cases.len(), t.elapsed()))
}

fn c5_table1() -> Line {
    let cfg = SampleConfig {
        samples: 20,
        weyl_cells: 2,
        ..cfg()
    };
    let mut pos = 0;
    let mut flips = Vec::new();
    for row in 1..=17 {
        let c = find_case(&format!("T1.{row}")).ok_or("missing row")?;
        for inst in c.instances().map_err(|e| e.to_string())? {
            let v = spherical_with_certificate(&inst, &cfg)?;
            ensure(v.outcome == inst.expect, || {
                format!(
                    "{}: {} expected {}",
                    inst.label(),
                    v.outcome.as_str(),
                    inst.expect.as_str()
                )
            })?;
            match inst.role {
                Role::Minimal => pos += 1,
                Role::Flip => {
                    let (defect, used, cells) = (
                        v.get("defect").unwrap_or(0),
                        v.get("samples_used").unwrap_or(0),
                        v.get("cells_used").unwrap_or(0),
                    );
                    ensure(defect >= 1 && used >= 20 && cells == 2, || {
                        format!(
                            "{}: defect {defect}, {used} samples, {cells} cells",
                            inst.label()
                        )
                    })?;
                    let dim_g = v.get("dim_g").unwrap_or(0);
                    let max_rank = v.get("max_rank").unwrap_or(0);
                    ensure(dim_g - max_rank == defect, || {
                        format!("{}: defect inconsistent", inst.label())
                    })?;
                    flips.push(inst.label());
                }
                _ => {}
            }
        }
    }
    for want in ["T1.1(1,1,1,1)", "T1.4(4)", "T1.8(1,2)"] {
        ensure(flips.iter().any(|f| f == want), || {
            format!("flip {want} missing")
        })?;
    }
    Ok(format!("{pos} rows spherical, flips {}", flips.join(" ")))
}

fn c6_onishchik() -> Line {
    let cfg = cfg();
    let mut done = Vec::new();
    for id in ["T3.1", "T3.2", "T3.4", "T3.5", "T3.8"] {
        let inst = &find_case(id)
            .ok_or("missing")?
            .instances()
            .map_err(|e| e.to_string())?[0];
        let Recipe::Factor { g, h1, h2 } = &inst.recipe else {
            return Err(format!("{id} is not a factorization"));
        };
        let g = construct(*g).map_err(|e| e.to_string())?;
        let a = embed(&g, h1).map_err(|e| format!("{id}: {e}"))?;
        let b = embed(&g, h2).map_err(|e| format!("{id}: {e}"))?;
        let v = is_factorization_in(&g, &a, &b, &cfg).map_err(|e| e.to_string())?;
        ensure(v.outcome == Outcome::Factorization, || {
            format!("{id}: {}", v.outcome.as_str())
        })?;
        let r = recheck(&Ambient::of_form(&g), &a.coords, &b.coords, &v)?;
        ensure(r == g.alg.dim(), || format!("{id}: witness rank {r}"))?;
        let inter = (a.dim() + b.dim() - r) / 2;
        let want = inst.expected_numbers["intersection"] as usize;
        ensure(inter == want, || {
            format!("{id}: intersection {inter}, table {want}")
        })?;
        done.push(format!("{id}:{inter}"));
    }
    for c in all_cases().iter().filter(|c| c.table == "R3.5") {
        let inst = &c.instances().map_err(|e| e.to_string())?[0];
        let Recipe::Factor { g, h1, h2 } = &inst.recipe else {
            return Err(format!("{} is not a factorization", c.id));
        };
        ensure(*g == ComplexSp(2), || format!("{}: ambient {g}", c.id))?;
        let g = construct(*g).map_err(|e| e.to_string())?;
        let a = embed(&g, h1).map_err(|e| e.to_string())?;
        let b = embed(&g, h2).map_err(|e| e.to_string())?;
        let v = is_factorization_in(&g, &a, &b, &cfg).map_err(|e| e.to_string())?;
        ensure(v.outcome == Outcome::NoFactorizationProbable, || {
            format!("{}: {}", c.id, v.outcome.as_str())
        })?;
        done.push(format!("{}:none", c.id));
    }
    Ok(done.join(" "))
}

fn c7_table2() -> Line {
    let t = Instant::now();
    let cfg = cfg();
    let rows = [2, 3, 4, 5, 6, 7, 8, 9, 13, 14, 20];
    for row in rows {
        let c = find_case(&format!("T2.{row}")).ok_or("missing row")?;
        let inst = &c.instances().map_err(|e| e.to_string())?[0];
        let n = inst.values.first().copied().unwrap_or(0) as usize;
        let rep = table2_rep(row, n).map_err(|e| e.to_string())?;
        ensure(rep.dim_v() <= 64, || {
            format!("T2.{row}: dim V {}", rep.dim_v())
        })?;
        let v = is_prehomogeneous(&rep, &cfg).map_err(|e| e.to_string())?;
        ensure(v.outcome == inst.expect, || {
            format!(
                "T2.{row}: {} expected {}",
                v.outcome.as_str(),
                inst.expect.as_str()
            )
        })?;
        let form = inst.expected_numbers["form"] as u8;
        let f = invariant_form_verdict(&rep, Some(form));
        ensure(f.outcome == Outcome::Pass, || {
            format!("T2.{row}: form type {:?}, table {form}", f.get("type"))
        })?;
        if row == 6 {
            let dim = v.sub("prehomogeneity_dimension").map(|d| d.outcome);
            ensure(
                dim == Some(Outcome::Pass) && v.outcome == Outcome::NotPrehomogeneousProbable,
                || format!("T2.6: dimension {dim:?}, preh {}", v.outcome.as_str()),
            )?;
        }
    }
    within(t, Duration::from_secs(300), "Table 2 replay")?;
    Ok(format!("{} rows, {:.1?}", rows.len(), t.elapsed()))
}

fn c8_adapted_levi() -> Line {
    let cfg = cfg();
    let mut out = Vec::new();
    for id in ["T4.3", "T4.4", "T4.7"] {
        let inst = &find_case(id)
            .ok_or("missing")?
            .instances()
            .map_err(|e| e.to_string())?[0];
        let (g, h) = pair(inst)?;
        let want = inst.expected_numbers["levi"] as usize;
        let v = check_adapted_levi(&g, &h, Some(want), &cfg).map_err(|e| e.to_string())?;
        let (dl, dlh) = (v.get("dim_l").unwrap(), v.get("dim_l_cap_h").unwrap());
        ensure(dlh == want, || format!("{id}: dim l∩h {dlh}, table {want}"))?;
        ensure(2 * (h.dim() - dlh) == g.alg.dim() - dl, || {
            format!(
                "{id}: identity fails (dim h {}, dim g {}, dim l {dl})",
                h.dim(),
                g.alg.dim()
            )
        })?;
        out.push(format!("{}:{dlh}", inst.label()));
    }
    Ok(out.join(" "))
}

fn c9_determinism() -> Line {
    let cfg = cfg();
    let all = Filter {
        table: Some("all".into()),
        ..Filter::default()
    };
    let run = || {
        let r = verify_table(&all, &cfg);
        let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        strip_timing(&mut v);
        (serde_json::to_string_pretty(&v).unwrap(), r.summary)
    };
    let (a, s) = run();
    let (b, _) = run();
    ensure(a == b, || "reports differ between runs".into())?;
    Ok(format!(
        "{} bytes, seed {}, {} met / {} skipped / {} mismatch / {} error",
        a.len(),
        cfg.seed,
        s.met,
        s.skipped,
        s.mismatch,
        s.error
    ))
}

fn c10_kernel() -> Line {
    let cfg = cfg();
    let data = cfg.rationals(&[0xbe_4c], 255 * 512);
    let m = Mat::from_fn(255, 512, |i, j| {
        GaussRational::real(data[512 * i + j].clone())
    });
    let t = Instant::now();
    let r = rank(&m);
    within(t, Duration::from_secs(30), "255x512 rank")?;
    ensure(r == 255, || format!("rank {r}"))?;
    Ok(format!("rank {r} in {:.1?}", t.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Line); 10] = [
        ("construction suite", c1_construction),
        ("bound formulas", c2_bound_formulas),
        ("real ranks", c3_real_ranks),
        ("symmetric positive suite", c4_berger),
        ("Table 1 replay", c5_table1),
        ("Onishchik factorizations", c6_onishchik),
        ("Table 2 replay", c7_table2),
        ("adapted Levi", c8_adapted_levi),
        ("determinism", c9_determinism),
        ("exact-kernel microbench", c10_kernel),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        match f() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", i + 1)
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
