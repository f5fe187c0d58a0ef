//! The classification tables as instantiable test cases.
//!
//! The data lives in `data/catalog.txt`; its format is described in
//! `docs/catalog-format.md`.

pub mod expr;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::checks::Outcome;
use crate::cli::spec::{parse_family, parse_terms, PairSpec, SpecError};
use crate::embeddings::Term;
use crate::real_forms::FormFamily;
use expr::Env;

pub const CATALOG_TEXT: &str = include_str!("../../data/catalog.txt");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("{id}: parameters {params:?} violate `{constraint}`")]
    OutOfRange {
        id: String,
        params: Vec<i64>,
        constraint: String,
    },
    #[error("{id}: expected {expected} parameters, got {got}")]
    Arity {
        id: String,
        expected: usize,
        got: usize,
    },
    #[error("{0} is not executable")]
    NotExecutable(String),
    #[error("{id}: {msg}")]
    Expr { id: String, msg: String },
    #[error("{id}: {err}")]
    Spec { id: String, err: SpecError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Spherical,
    Factorization,
    Prehomogeneity,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct CatalogCase {
    pub id: String,
    pub table: String,
    pub row: String,
    pub check: CheckKind,
    pub params: Vec<String>,
    pub ranges: Vec<String>,
    pub sides: Vec<String>,
    pub g: String,
    pub h: Option<String>,
    pub h1: Option<String>,
    pub h2: Option<String>,
    pub rep: Option<String>,
    pub expect: Outcome,
    /// Expected numbers as expressions in the parameters: `form`, `intersection`, `levi`.
    pub numbers: BTreeMap<String, String>,
    pub minimal: Option<Vec<i64>>,
    pub flips: Vec<Vec<i64>>,
    pub also: Vec<Vec<i64>>,
    pub executable: bool,
    pub dim: Option<usize>,
    pub quote: String,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    Pair {
        spec: PairSpec,
    },
    Factor {
        g: FormFamily,
        h1: Vec<Term>,
        h2: Vec<Term>,
    },
    Rep {
        name: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Minimal,
    Flip,
    Also,
    Given,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Instance {
    pub case: String,
    pub role: Role,
    pub params: BTreeMap<String, i64>,
    /// Parameter values in declaration order.
    pub values: Vec<i64>,
    pub recipe: Recipe,
    pub expect: Outcome,
    pub expected_numbers: BTreeMap<String, i64>,
    /// Side conditions that fail at these parameters.
    pub failed_sides: Vec<String>,
}

impl Instance {
    pub fn label(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(i64::to_string).collect();
        if vals.is_empty() {
            self.case.clone()
        } else {
            format!("{}({})", self.case, vals.join(","))
        }
    }
}

pub fn negate(o: Outcome) -> Outcome {
    match o {
        Outcome::Spherical => Outcome::NotSphericalProbable,
        Outcome::NotSphericalProbable => Outcome::Spherical,
        Outcome::Factorization => Outcome::NoFactorizationProbable,
        Outcome::NoFactorizationProbable => Outcome::Factorization,
        Outcome::Prehomogeneous => Outcome::NotPrehomogeneousProbable,
        Outcome::NotPrehomogeneousProbable => Outcome::Prehomogeneous,
        Outcome::Pass => Outcome::Fail,
        Outcome::Fail => Outcome::Pass,
    }
}

fn parse_outcome(s: &str) -> Option<Outcome> {
    use Outcome::*;
    [
        Spherical,
        NotSphericalProbable,
        Factorization,
        NoFactorizationProbable,
        Prehomogeneous,
        NotPrehomogeneousProbable,
        Pass,
        Fail,
    ]
    .into_iter()
    .find(|o| o.as_str() == s)
}

#[derive(Clone, Debug, PartialEq)]
enum Item {
    Atom(String),
    List(Vec<Item>),
}

fn parse_list(s: &str) -> Result<Item, String> {
    fn go(b: &[u8], i: &mut usize) -> Result<Item, String> {
        while *i < b.len() && b[*i] == b' ' {
            *i += 1;
        }
        if *i < b.len() && b[*i] == b'[' {
            *i += 1;
            let mut items = Vec::new();
            loop {
                while *i < b.len() && b[*i] == b' ' {
                    *i += 1;
                }
                if *i < b.len() && b[*i] == b']' {
                    *i += 1;
                    return Ok(Item::List(items));
                }
                items.push(go(b, i)?);
                while *i < b.len() && b[*i] == b' ' {
                    *i += 1;
                }
                match b.get(*i) {
                    Some(b',') => *i += 1,
                    Some(b']') => {}
                    _ => return Err("expected `,` or `]`".into()),
                }
            }
        }
        let st = *i;
        while *i < b.len() && !matches!(b[*i], b',' | b']' | b'[') {
            *i += 1;
        }
        let atom = std::str::from_utf8(&b[st..*i]).unwrap().trim();
        if atom.is_empty() {
            return Err("empty list item".into());
        }
        Ok(Item::Atom(atom.to_string()))
    }
    let b = s.as_bytes();
    let mut i = 0;
    let v = go(b, &mut i)?;
    if s[i..].trim().is_empty() {
        Ok(v)
    } else {
        Err("trailing text after list".into())
    }
}

fn atoms(it: &Item) -> Result<Vec<String>, String> {
    match it {
        Item::List(xs) => xs
            .iter()
            .map(|x| match x {
                Item::Atom(a) => Ok(a.clone()),
                Item::List(_) => Err("unexpected nested list".to_string()),
            })
            .collect(),
        Item::Atom(_) => Err("expected a list".into()),
    }
}

fn ints(it: &Item) -> Result<Vec<i64>, String> {
    atoms(it)?
        .iter()
        .map(|a| {
            a.parse::<i64>()
                .map_err(|_| format!("`{a}` is not an integer"))
        })
        .collect()
}

fn int_lists(it: &Item) -> Result<Vec<Vec<i64>>, String> {
    match it {
        Item::List(xs) => xs.iter().map(ints).collect(),
        Item::Atom(_) => Err("expected a list of lists".into()),
    }
}

const REPEATABLE: &[&str] = &["range", "side", "note"];
const KEYS: &[&str] = &[
    "id",
    "table",
    "row",
    "check",
    "params",
    "range",
    "side",
    "g",
    "h",
    "h1",
    "h2",
    "rep",
    "expect",
    "form",
    "intersection",
    "levi",
    "minimal",
    "flips",
    "also",
    "executable",
    "dim",
    "note",
    "quote",
];

fn build(fields: &[(usize, String, String)], start: usize) -> Result<CatalogCase, CatalogError> {
    let err = |line: usize, msg: String| CatalogError::Format { line, msg };
    let mut one: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    let mut many: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (line, k, v) in fields {
        let key = KEYS
            .iter()
            .find(|x| **x == k.as_str())
            .ok_or_else(|| err(*line, format!("unknown key `{k}`")))?;
        if REPEATABLE.contains(key) {
            many.entry(key).or_default().push(v.clone());
        } else if one.insert(key, (*line, v.as_str())).is_some() {
            return Err(err(*line, format!("duplicate key `{k}`")));
        }
    }
    let need = |k: &str| {
        one.get(k)
            .map(|(_, v)| v.to_string())
            .ok_or_else(|| err(start, format!("missing key `{k}`")))
    };
    let list = |k: &str| -> Result<Option<Item>, CatalogError> {
        match one.get(k) {
            Some((line, v)) => parse_list(v).map(Some).map_err(|m| err(*line, m)),
            None => Ok(None),
        }
    };
    let line_of = |k: &str| one.get(k).map_or(start, |(l, _)| *l);
    let id = need("id")?;
    let check = match need("check")?.as_str() {
        "spherical" => CheckKind::Spherical,
        "factorization" => CheckKind::Factorization,
        "prehomogeneity" => CheckKind::Prehomogeneity,
        other => return Err(err(line_of("check"), format!("unknown check `{other}`"))),
    };
    let expect_s = need("expect")?;
    let expect = parse_outcome(&expect_s)
        .ok_or_else(|| err(line_of("expect"), format!("unknown verdict `{expect_s}`")))?;
    let executable = match one.get("executable").map(|(_, v)| *v) {
        None | Some("yes") => true,
        Some("no") => false,
        Some(o) => return Err(err(line_of("executable"), format!("bad flag `{o}`"))),
    };
    let params = match list("params")? {
        Some(it) => atoms(&it).map_err(|m| err(line_of("params"), m))?,
        None => Vec::new(),
    };
    let minimal = match list("minimal")? {
        Some(it) => Some(ints(&it).map_err(|m| err(line_of("minimal"), m))?),
        None => None,
    };
    let flips = match list("flips")? {
        Some(it) => int_lists(&it).map_err(|m| err(line_of("flips"), m))?,
        None => Vec::new(),
    };
    let also = match list("also")? {
        Some(it) => int_lists(&it).map_err(|m| err(line_of("also"), m))?,
        None => Vec::new(),
    };
    let dim = match one.get("dim") {
        Some((l, v)) => Some(v.parse().map_err(|_| err(*l, format!("bad dim `{v}`")))?),
        None => None,
    };
    let opt = |k: &str| one.get(k).map(|(_, v)| v.to_string());
    let numbers = ["form", "intersection", "levi"]
        .iter()
        .filter_map(|k| opt(k).map(|v| (k.to_string(), v)))
        .collect();
    let quote = need("quote")?;
    if executable && minimal.is_none() {
        return Err(err(
            start,
            format!("{id}: executable case without `minimal`"),
        ));
    }
    Ok(CatalogCase {
        id,
        table: need("table")?,
        row: need("row")?,
        check,
        params,
        ranges: many.remove("range").unwrap_or_default(),
        sides: many.remove("side").unwrap_or_default(),
        g: opt("g").or_else(|| opt("rep")).unwrap_or_default(),
        h: opt("h"),
        h1: opt("h1"),
        h2: opt("h2"),
        rep: opt("rep"),
        expect,
        numbers,
        minimal,
        flips,
        also,
        executable,
        dim,
        quote,
        notes: many.remove("note").unwrap_or_default(),
    })
}

/// Parses catalog text. Lines are `[case]`, `key = value`, comments (`#`) or blank.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogCase>, CatalogError> {
    let mut cases = Vec::new();
    let mut cur: Option<(usize, Vec<(usize, String, String)>)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim_end();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if t == "[case]" {
            if let Some((s, f)) = cur.take() {
                cases.push(build(&f, s)?);
            }
            cur = Some((line, Vec::new()));
            continue;
        }
        let (k, v) = t.split_once(" = ").ok_or_else(|| CatalogError::Format {
            line,
            msg: format!("expected `key = value`, found `{t}`"),
        })?;
        match cur.as_mut() {
            Some((_, f)) => f.push((line, k.trim().to_string(), v.to_string())),
            None => {
                return Err(CatalogError::Format {
                    line,
                    msg: "field outside a [case] block".into(),
                })
            }
        }
    }
    if let Some((s, f)) = cur {
        cases.push(build(&f, s)?);
    }
    let mut seen = std::collections::BTreeSet::new();
    for c in &cases {
        if !seen.insert(c.id.clone()) {
            return Err(CatalogError::Format {
                line: 0,
                msg: format!("duplicate id {}", c.id),
            });
        }
    }
    Ok(cases)
}

pub fn all_cases() -> &'static [CatalogCase] {
    static CASES: OnceLock<Vec<CatalogCase>> = OnceLock::new();
    CASES.get_or_init(|| parse_catalog(CATALOG_TEXT).expect("bundled catalog parses"))
}

/// Minimum ranges for ambient algebras that avoid duplicate rows at small parameters.
pub fn redundancy_ok(g: FormFamily) -> bool {
    use FormFamily::*;
    match g {
        Su(p, q) | Sp(p, q) => p + q >= 2,
        SlH(n) => n >= 2,
        So(p, q) => p + q >= 5,
        SoStar(n) => n >= 5,
        _ => true,
    }
}

impl CatalogCase {
    fn env(&self, params: &[i64]) -> Result<Env, CatalogError> {
        if params.len() != self.params.len() {
            return Err(CatalogError::Arity {
                id: self.id.clone(),
                expected: self.params.len(),
                got: params.len(),
            });
        }
        Ok(self
            .params
            .iter()
            .cloned()
            .zip(params.iter().copied())
            .collect())
    }

    fn expr_err(&self, msg: String) -> CatalogError {
        CatalogError::Expr {
            id: self.id.clone(),
            msg,
        }
    }

    fn spec_err(&self, err: SpecError) -> CatalogError {
        CatalogError::Spec {
            id: self.id.clone(),
            err,
        }
    }

    fn terms(&self, template: &str, env: &Env) -> Result<Vec<Term>, CatalogError> {
        let text = expr::expand(template, env).map_err(|m| self.expr_err(m))?;
        let terms = parse_terms(&text).map_err(|e| self.spec_err(e))?;
        Ok(terms.into_iter().filter(|t| t.alg.dim() > 0).collect())
    }

    /// Ambient real dimension at the minimal instance, or the recorded one.
    pub fn ambient_dim(&self) -> Option<usize> {
        if let Some(d) = self.dim {
            return Some(d);
        }
        let inst = self.instantiate(self.minimal.as_ref()?).ok()?;
        match &inst.recipe {
            Recipe::Pair { spec } => Some(spec.g.expected_dim()),
            Recipe::Factor { g, .. } => Some(g.expected_dim()),
            Recipe::Rep { name } => crate::checks::reps::parse_rep(name).ok().map(|r| r.dim_v()),
        }
    }

    pub fn family(&self) -> &str {
        self.g.split('(').next().unwrap_or("").trim()
    }

    pub fn instantiate(&self, params: &[i64]) -> Result<Instance, CatalogError> {
        self.instantiate_as(params, Role::Given)
    }

    fn instantiate_as(&self, params: &[i64], role: Role) -> Result<Instance, CatalogError> {
        if !self.executable {
            return Err(CatalogError::NotExecutable(self.id.clone()));
        }
        let env = self.env(params)?;
        for r in &self.ranges {
            if !expr::eval_bool(r, &env).map_err(|m| self.expr_err(m))? {
                return Err(CatalogError::OutOfRange {
                    id: self.id.clone(),
                    params: params.to_vec(),
                    constraint: r.clone(),
                });
            }
        }
        let mut failed_sides = Vec::new();
        for s in &self.sides {
            if !expr::eval_bool(s, &env).map_err(|m| self.expr_err(m))? {
                failed_sides.push(s.clone());
            }
        }
        let expect = if failed_sides.is_empty() {
            self.expect
        } else {
            negate(self.expect)
        };
        let recipe = match self.check {
            CheckKind::Prehomogeneity => Recipe::Rep {
                name: expr::expand(self.rep.as_deref().unwrap_or(""), &env)
                    .map_err(|m| self.expr_err(m))?,
            },
            _ => {
                let gtext = expr::expand(&self.g, &env).map_err(|m| self.expr_err(m))?;
                let g = parse_family(&gtext).map_err(|e| self.spec_err(e))?;
                if self.table == "T1" && !redundancy_ok(g) {
                    return Err(CatalogError::OutOfRange {
                        id: self.id.clone(),
                        params: params.to_vec(),
                        constraint: format!("redundancy range for {g}"),
                    });
                }
                if self.check == CheckKind::Factorization {
                    let h1 = self.h1.as_deref().unwrap_or("");
                    let h2 = self.h2.as_deref().unwrap_or("");
                    Recipe::Factor {
                        g,
                        h1: self.terms(h1, &env)?,
                        h2: self.terms(h2, &env)?,
                    }
                } else {
                    let h = self.terms(self.h.as_deref().unwrap_or(""), &env)?;
                    Recipe::Pair {
                        spec: PairSpec::new(g, h),
                    }
                }
            }
        };
        let mut expected_numbers = BTreeMap::new();
        for (k, e) in &self.numbers {
            expected_numbers.insert(
                k.clone(),
                expr::eval_int(e, &env).map_err(|m| self.expr_err(m))?,
            );
        }
        Ok(Instance {
            case: self.id.clone(),
            role,
            params: env,
            values: params.to_vec(),
            recipe,
            expect,
            expected_numbers,
            failed_sides,
        })
    }

    /// Minimal instance, boundary flips, then additional instances.
    pub fn instances(&self) -> Result<Vec<Instance>, CatalogError> {
        if !self.executable {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        if let Some(m) = &self.minimal {
            out.push(self.instantiate_as(m, Role::Minimal)?);
        }
        for f in &self.flips {
            out.push(self.instantiate_as(f, Role::Flip)?);
        }
        for a in &self.also {
            out.push(self.instantiate_as(a, Role::Also)?);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub table: Option<String>,
    pub family: Option<String>,
    pub max_dim: Option<usize>,
}

/// Cases in file order matching every given criterion.
pub fn list_cases(filter: &Filter) -> Vec<&'static CatalogCase> {
    all_cases()
        .iter()
        .filter(|c| {
            filter
                .table
                .as_deref()
                .is_none_or(|t| t.eq_ignore_ascii_case("all") || c.table == t)
        })
        .filter(|c| filter.family.as_deref().is_none_or(|f| c.family() == f))
        .filter(|c| {
            filter
                .max_dim
                .is_none_or(|m| c.ambient_dim().is_some_and(|d| d <= m))
        })
        .collect()
}

pub fn find_case(id: &str) -> Option<&'static CatalogCase> {
    all_cases().iter().find(|c| c.id == id)
}
