//! The commands behind the `sph` binary, as library functions returning reports.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::catalog::{self, CatalogCase, CheckKind, Filter, Instance, Recipe};
use crate::checks::reps::parse_rep;
use crate::checks::{
    check_adapted_levi, check_dimension_bound, check_rank_inequality, invariant_form_verdict,
    is_factorization_in, is_prehomogeneous, is_spherical, Outcome, Verdict,
};
use crate::embeddings::{embed, terms_to_string, Term};
use crate::genericity::SampleConfig;
use crate::real_forms::{construct, FormFamily, RealForm};

use super::report::{CaseReport, Citation, Expected, Report, Status};
use super::spec::PairSpec;

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn citation(c: &CatalogCase) -> Citation {
    Citation {
        case: c.id.clone(),
        table: c.table.clone(),
        row: c.row.clone(),
        quote: c.quote.clone(),
    }
}

fn form_dims(g: &RealForm, out: &mut BTreeMap<String, i64>) {
    let p = &g.parabolic;
    out.insert("dim_g".into(), g.alg.dim() as i64);
    out.insert("dim_k".into(), p.k.dim() as i64);
    out.insert("dim_s".into(), p.s.dim() as i64);
    out.insert("rank_g".into(), p.real_rank() as i64);
    out.insert("dim_m".into(), p.m.dim() as i64);
    out.insert("dim_n".into(), p.dim_n() as i64);
}

fn spherical_verdicts(
    spec: &PairSpec,
    levi: Option<i64>,
    cfg: &SampleConfig,
    dims: &mut BTreeMap<String, i64>,
) -> Result<Vec<Verdict>, String> {
    let g = construct(spec.g).map_err(|e| e.to_string())?;
    form_dims(&g, dims);
    let h = embed(&g, &spec.h).map_err(|e| e.to_string())?;
    dims.insert("dim_h".into(), h.dim() as i64);
    let v = is_spherical(&g, &h, cfg).map_err(|e| e.to_string())?;
    if let Some(r) = v.sub("rank_inequality").and_then(|r| r.get("rank_h")) {
        dims.insert("rank_h".into(), r as i64);
    }
    let mut out = vec![v];
    if let Some(e) = levi {
        let l = check_adapted_levi(&g, &h, Some(e as usize), cfg).map_err(|e| e.to_string())?;
        out.push(l);
    }
    Ok(out)
}

fn factor_verdicts(
    g: FormFamily,
    h1: &[Term],
    h2: &[Term],
    cfg: &SampleConfig,
    dims: &mut BTreeMap<String, i64>,
) -> Result<Vec<Verdict>, String> {
    let gf = construct(g).map_err(|e| e.to_string())?;
    dims.insert("dim_g".into(), gf.alg.dim() as i64);
    let a = embed(&gf, h1).map_err(|e| e.to_string())?;
    let b = embed(&gf, h2).map_err(|e| e.to_string())?;
    dims.insert("dim_h1".into(), a.dim() as i64);
    dims.insert("dim_h2".into(), b.dim() as i64);
    Ok(vec![
        is_factorization_in(&gf, &a, &b, cfg).map_err(|e| e.to_string())?
    ])
}

fn preh_verdicts(
    name: &str,
    form: Option<i64>,
    cfg: &SampleConfig,
    dims: &mut BTreeMap<String, i64>,
) -> Result<Vec<Verdict>, String> {
    let rep = parse_rep(name).map_err(|e| e.to_string())?;
    dims.insert("dim_v".into(), rep.dim_v() as i64);
    dims.insert("dim_g".into(), rep.dim_g() as i64);
    let v = is_prehomogeneous(&rep, cfg).map_err(|e| e.to_string())?;
    Ok(vec![v, invariant_form_verdict(&rep, form.map(|f| f as u8))])
}

/// Compares verdicts with an expectation. Positive verdicts must not fail a necessary bound.
fn judge(verdicts: &[Verdict], exp: &Expected, messages: &mut Vec<String>) -> Status {
    let Some(main) = verdicts.first() else {
        return Status::Error;
    };
    let mut ok = true;
    if main.outcome != exp.outcome {
        messages.push(format!(
            "expected {}, got {}",
            exp.outcome.as_str(),
            main.outcome.as_str()
        ));
        ok = false;
    }
    if main.outcome == Outcome::Spherical {
        for sub in main.also.iter().filter(|s| s.outcome == Outcome::Fail) {
            messages.push(format!("{} fails for a spherical verdict", sub.check));
            ok = false;
        }
    }
    if let Some(&want) = exp.numbers.get("intersection") {
        let got = main
            .get("intersection_complex")
            .or_else(|| main.get("intersection"));
        if main.outcome == Outcome::Factorization && got != Some(want as usize) {
            messages.push(format!("intersection dimension {got:?}, expected {want}"));
            ok = false;
        }
    }
    for v in &verdicts[1..] {
        if v.outcome == Outcome::Fail {
            messages.push(format!("{} check failed", v.check));
            ok = false;
        }
    }
    if ok {
        Status::Met
    } else {
        Status::Mismatch
    }
}

fn finish(
    mut rep: CaseReport,
    res: Result<Vec<Verdict>, String>,
    exp: Option<Expected>,
    t0: Instant,
) -> CaseReport {
    match res {
        Ok(v) => {
            rep.status = match &exp {
                Some(e) => judge(&v, e, &mut rep.messages),
                None => Status::Info,
            };
            rep.verdicts = v;
        }
        Err(e) => {
            rep.status = Status::Error;
            rep.messages.push(e);
        }
    }
    rep.expected = exp;
    rep.elapsed_ms = ms(t0);
    rep
}

fn recipe_text(r: &Recipe) -> (String, &'static str) {
    match r {
        Recipe::Pair { spec } => (spec.to_string(), "spherical"),
        Recipe::Factor { g, h1, h2 } => (
            format!(
                "g = {g}; h1 = {}; h2 = {}",
                terms_to_string(h1),
                terms_to_string(h2)
            ),
            "factorization",
        ),
        Recipe::Rep { name } => (name.clone(), "prehomogeneity"),
    }
}

/// Runs one catalog instance against its expectation.
pub fn run_instance(inst: &Instance, cfg: &SampleConfig) -> CaseReport {
    let t0 = Instant::now();
    let (text, check) = recipe_text(&inst.recipe);
    let mut rep = CaseReport::new(check, text);
    rep.id = Some(inst.label());
    rep.citation = catalog::find_case(&inst.case).map(citation);
    let exp = Expected {
        outcome: inst.expect,
        numbers: inst.expected_numbers.clone(),
        failed_sides: inst.failed_sides.clone(),
    };
    let n = |k: &str| inst.expected_numbers.get(k).copied();
    let res = match &inst.recipe {
        Recipe::Pair { spec } => spherical_verdicts(spec, n("levi"), cfg, &mut rep.dims),
        Recipe::Factor { g, h1, h2 } => factor_verdicts(*g, h1, h2, cfg, &mut rep.dims),
        Recipe::Rep { name } => preh_verdicts(name, n("form"), cfg, &mut rep.dims),
    };
    finish(rep, res, Some(exp), t0)
}

fn skipped(c: &CatalogCase) -> CaseReport {
    let spec = match c.check {
        CheckKind::Spherical => format!("g = {}; h = {}", c.g, c.h.as_deref().unwrap_or("")),
        CheckKind::Factorization => format!(
            "g = {}; h1 = {}; h2 = {}",
            c.g,
            c.h1.as_deref().unwrap_or(""),
            c.h2.as_deref().unwrap_or("")
        ),
        CheckKind::Prehomogeneity => c.rep.clone().unwrap_or_default(),
    };
    let check = match c.check {
        CheckKind::Spherical => "spherical",
        CheckKind::Factorization => "factorization",
        CheckKind::Prehomogeneity => "prehomogeneity",
    };
    let mut rep = CaseReport::new(check, spec);
    rep.id = Some(c.id.clone());
    rep.citation = Some(citation(c));
    rep.status = Status::Skipped;
    rep.expected = Some(Expected {
        outcome: c.expect,
        numbers: BTreeMap::new(),
        failed_sides: Vec::new(),
    });
    rep.messages
        .push("not executable: exceptional ambient or construction".into());
    rep
}

/// The instance with this exact recipe, if the catalog has one.
fn catalog_match(pred: impl Fn(&Recipe) -> bool) -> Option<Instance> {
    catalog::all_cases()
        .iter()
        .flat_map(|c| c.instances().unwrap_or_default())
        .find(|i| pred(&i.recipe))
}

pub fn verify_pair(spec: &PairSpec, cfg: &SampleConfig) -> Report {
    let t0 = Instant::now();
    let found = catalog_match(|r| matches!(r, Recipe::Pair { spec: s } if s == spec));
    let case = match found {
        Some(inst) => run_instance(&inst, cfg),
        None => {
            let mut rep = CaseReport::new("spherical", spec.to_string());
            let res = spherical_verdicts(spec, None, cfg, &mut rep.dims);
            finish(rep, res, None, Instant::now())
        }
    };
    let mut r = Report::new("verify pair", cfg.clone(), vec![case]);
    r.elapsed_ms = ms(t0);
    r
}

/// Every executable instance of the selected cases, in catalog order; exceptional rows are listed as skipped.
pub fn verify_table(filter: &Filter, cfg: &SampleConfig) -> Report {
    let t0 = Instant::now();
    enum Job {
        Run(Instance),
        Skip(&'static CatalogCase),
        Broken(&'static CatalogCase, String),
    }
    let mut jobs = Vec::new();
    for c in catalog::list_cases(filter) {
        if !c.executable {
            jobs.push(Job::Skip(c));
            continue;
        }
        match c.instances() {
            Ok(v) => jobs.extend(v.into_iter().map(Job::Run)),
            Err(e) => jobs.push(Job::Broken(c, e.to_string())),
        }
    }
    let results = crate::par::map(&jobs, |j| match j {
        Job::Run(i) => run_instance(i, cfg),
        Job::Skip(c) => skipped(c),
        Job::Broken(c, e) => {
            let mut r = skipped(c);
            r.status = Status::Error;
            r.messages = vec![e.clone()];
            r
        }
    });
    let name = format!(
        "verify table {}{}",
        filter.table.as_deref().unwrap_or("all"),
        filter
            .max_dim
            .map_or(String::new(), |d| format!(" --max-dim {d}"))
    );
    let mut r = Report::new(name, cfg.clone(), results);
    r.elapsed_ms = ms(t0);
    r
}

pub fn check_factor(g: FormFamily, h1: &[Term], h2: &[Term], cfg: &SampleConfig) -> Report {
    let t0 = Instant::now();
    let found = catalog_match(
        |r| matches!(r, Recipe::Factor { g: a, h1: b, h2: c } if *a == g && b == h1 && c == h2),
    );
    let case = match found {
        Some(inst) => run_instance(&inst, cfg),
        None => {
            let text = format!(
                "g = {g}; h1 = {}; h2 = {}",
                terms_to_string(h1),
                terms_to_string(h2)
            );
            let mut rep = CaseReport::new("factorization", text);
            let res = factor_verdicts(g, h1, h2, cfg, &mut rep.dims);
            finish(rep, res, None, Instant::now())
        }
    };
    let mut r = Report::new("check factor", cfg.clone(), vec![case]);
    r.elapsed_ms = ms(t0);
    r
}

/// `T2.<row>` or `T2.<row>(<n>)`, compared with the catalog row when in range.
pub fn check_preh(name: &str, cfg: &SampleConfig) -> Report {
    let t0 = Instant::now();
    let name = name.trim();
    let inst = name.strip_prefix("T2.").and_then(|rest| {
        let (row, args) = match rest.split_once('(') {
            Some((r, a)) => (
                r,
                a.strip_suffix(')')?
                    .trim()
                    .parse::<i64>()
                    .ok()
                    .map(|n| vec![n])?,
            ),
            None => (rest, Vec::new()),
        };
        catalog::find_case(&format!("T2.{row}"))?
            .instantiate(&args)
            .ok()
    });
    let case = match inst {
        Some(i) => run_instance(&i, cfg),
        None => {
            let mut rep = CaseReport::new("prehomogeneity", name);
            let res = preh_verdicts(name, None, cfg, &mut rep.dims);
            finish(rep, res, None, Instant::now())
        }
    };
    let mut r = Report::new("check preh", cfg.clone(), vec![case]);
    r.elapsed_ms = ms(t0);
    r
}

/// Structure data of g, and the two necessary bounds when h is given.
pub fn info(spec: &PairSpec, cfg: &SampleConfig) -> Report {
    let t0 = Instant::now();
    let mut rep = CaseReport::new("info", spec.to_string());
    let res = (|| -> Result<Vec<Verdict>, String> {
        let g = construct(spec.g).map_err(|e| e.to_string())?;
        form_dims(&g, &mut rep.dims);
        rep.dims
            .insert("quasi_split".into(), g.parabolic.quasi_split as i64);
        if spec.h.is_empty() {
            return Ok(Vec::new());
        }
        let h = embed(&g, &spec.h).map_err(|e| e.to_string())?;
        rep.dims.insert("dim_h".into(), h.dim() as i64);
        let mut out = vec![check_dimension_bound(&g, &h)];
        match check_rank_inequality(&g, &h) {
            Ok(v) => {
                if let Some(r) = v.get("rank_h") {
                    rep.dims.insert("rank_h".into(), r as i64);
                }
                out.push(v)
            }
            Err(e) => rep.messages.push(format!("rank inequality skipped: {e}")),
        }
        Ok(out)
    })();
    let case = finish(rep, res, None, t0);
    let mut r = Report::new("info", cfg.clone(), vec![case]);
    r.elapsed_ms = ms(t0);
    r
}
