//! The pair-spec language.
//!
//! ```text
//! spec := "g" "=" alg [";" "h" "=" term ("+" term)*] [";"]
//! alg  := IDENT ["(" arg ("," arg)* ")"]      arg := INT | R | C | H
//! term := alg ["@" emb]
//! emb  := IDENT ["(" INT ")"]
//! ```

use std::fmt;

use crate::embeddings::{terms_to_string, Emb, Term, TermAlg};
use crate::real_forms::{Field, FormFamily};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("{line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownFamily {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("{line}:{col}: `{name}` does not take ({got})")]
    Arity {
        name: String,
        got: String,
        line: usize,
        col: usize,
    },
}

impl SpecError {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            SpecError::Parse { line, col, .. }
            | SpecError::UnknownFamily { line, col, .. }
            | SpecError::Arity { line, col, .. } => (line, col),
        }
    }
}

/// A parsed pair (g, h). An empty `h` is allowed for commands that only need g.
#[derive(Clone, Debug, Eq, serde::Serialize)]
pub struct PairSpec {
    pub g: FormFamily,
    pub h: Vec<Term>,
    #[serde(skip)]
    pub raw_text: String,
}

impl PartialEq for PairSpec {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.h == other.h
    }
}

impl PairSpec {
    pub fn new(g: FormFamily, h: Vec<Term>) -> Self {
        let mut s = PairSpec {
            g,
            h,
            raw_text: String::new(),
        };
        s.raw_text = s.to_string();
        s
    }
}

impl fmt::Display for PairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g = {}", self.g)?;
        if !self.h.is_empty() {
            write!(f, "; h = {}", terms_to_string(&self.h))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(usize),
    LParen,
    RParen,
    Comma,
    At,
    Plus,
    Semi,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::At => f.write_str("`@`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, SpecError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '@' => Some(Tok::At),
            '+' => Some(Tok::Plus),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            col += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| SpecError::Parse {
                line,
                col,
                msg: format!("integer `{s}` out of range"),
            })?;
            col += i - start;
            out.push((Tok::Int(n), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            if i < chars.len() && chars[i] == '*' {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(SpecError::Parse {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push((Tok::End, Pos { line, col }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Arg {
    Int(usize),
    Field(Field),
}

fn show_args(args: &[Arg]) -> String {
    args.iter()
        .map(|a| match a {
            Arg::Int(n) => n.to_string(),
            Arg::Field(k) => format!("{k:?}"),
        })
        .collect::<Vec<_>>()
        .join(",")
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> SpecError {
        let p = self.pos();
        SpecError::Parse {
            line: p.line,
            col: p.col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), SpecError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {t}, found {}", self.peek())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos), SpecError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let (_, p) = self.bump();
                Ok((s, p))
            }
            t => Err(self.error(format!("expected {what}, found {t}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SpecError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            t => Err(self.error(format!("expected `{kw}`, found {t}"))),
        }
    }

    fn args(&mut self) -> Result<Option<Vec<Arg>>, SpecError> {
        if *self.peek() != Tok::LParen {
            return Ok(None);
        }
        self.bump();
        let mut out = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Int(n) => {
                    self.bump();
                    out.push(Arg::Int(n));
                }
                Tok::Ident(s) if matches!(s.as_str(), "R" | "C" | "H") => {
                    self.bump();
                    out.push(Arg::Field(match s.as_str() {
                        "R" => Field::R,
                        "C" => Field::C,
                        _ => Field::H,
                    }));
                }
                t => return Err(self.error(format!("expected an integer or R, C, H, found {t}"))),
            }
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(Some(out));
                }
                t => return Err(self.error(format!("expected `,` or `)`, found {t}"))),
            }
        }
    }

    fn alg(&mut self) -> Result<TermAlg, SpecError> {
        let (name, p) = self.ident("an algebra name")?;
        let args = self.args()?;
        resolve_alg(&name, args.as_deref(), p)
    }

    fn emb(&mut self) -> Result<Emb, SpecError> {
        let (name, p) = self.ident("an embedding name")?;
        let args = self.args()?;
        resolve_emb(&name, args.as_deref(), p)
    }

    fn term(&mut self) -> Result<Term, SpecError> {
        let alg = self.alg()?;
        let emb = if *self.peek() == Tok::At {
            self.bump();
            Some(self.emb()?)
        } else {
            None
        };
        Ok(Term { alg, emb })
    }

    fn terms(&mut self) -> Result<Vec<Term>, SpecError> {
        let mut out = vec![self.term()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            out.push(self.term()?);
        }
        Ok(out)
    }

    fn family(&mut self) -> Result<FormFamily, SpecError> {
        let p = self.pos();
        match self.alg()? {
            TermAlg::Family(f) => f.validate().map(|_| f).map_err(|e| SpecError::Parse {
                line: p.line,
                col: p.col,
                msg: e.to_string(),
            }),
            other => Err(SpecError::Parse {
                line: p.line,
                col: p.col,
                msg: format!("`{other}` is not a classical real form"),
            }),
        }
    }

    fn finish(&mut self) -> Result<(), SpecError> {
        if *self.peek() == Tok::Semi {
            self.bump();
        }
        match self.peek() {
            Tok::End => Ok(()),
            t => Err(self.error(format!("unexpected {t}"))),
        }
    }
}

fn arity(name: &str, args: Option<&[Arg]>, p: Pos) -> SpecError {
    SpecError::Arity {
        name: name.to_string(),
        got: args.map(show_args).unwrap_or_default(),
        line: p.line,
        col: p.col,
    }
}

fn resolve_alg(name: &str, args: Option<&[Arg]>, p: Pos) -> Result<TermAlg, SpecError> {
    use Arg::{Field as F, Int as I};
    use FormFamily::*;
    let fam = |f: FormFamily| Ok(TermAlg::Family(f));
    match (name, args) {
        ("su", Some(&[I(a), I(b)])) => fam(Su(a, b)),
        ("su", Some(&[I(n)])) => fam(SuCompact(n)),
        ("sl", Some(&[I(n), F(Field::R)])) => fam(SlR(n)),
        ("sl", Some(&[I(n), F(Field::H)])) => fam(SlH(n)),
        ("sl", Some(&[I(n), F(Field::C)])) => fam(ComplexSl(n)),
        ("so", Some(&[I(a), I(b)])) => fam(So(a, b)),
        ("so", Some(&[I(n)])) => fam(SoCompact(n)),
        ("so", Some(&[I(n), F(Field::C)])) => fam(ComplexSo(n)),
        ("so*", Some(&[I(m)])) if m % 2 == 0 => fam(SoStar(m / 2)),
        ("sp", Some(&[I(n), F(Field::R)])) => fam(SpR(n)),
        ("sp", Some(&[I(a), I(b)])) => fam(Sp(a, b)),
        ("sp", Some(&[I(n)])) => fam(SpCompact(n)),
        ("sp", Some(&[I(n), F(Field::C)])) => fam(ComplexSp(n)),
        ("u", Some(&[I(a), I(b)])) => Ok(TermAlg::U(a, b)),
        ("u", Some(&[I(n)])) => Ok(TermAlg::U(n, 0)),
        ("gl", Some(&[I(n), F(k)])) => Ok(TermAlg::Gl(n, k)),
        ("g2", None) => Ok(TermAlg::G2 { split: false }),
        ("g2split", None) => Ok(TermAlg::G2 { split: true }),
        ("g2", Some(&[F(Field::C)])) => Ok(TermAlg::G2C),
        ("spin", Some(&[I(a)])) => Ok(TermAlg::Spin(a, 0)),
        ("spin", Some(&[I(a), I(b)])) => Ok(TermAlg::Spin(a, b)),
        ("spin", Some(&[I(n), F(Field::C)])) => Ok(TermAlg::SpinC(n)),
        ("u1", None) => Ok(TermAlg::U1),
        ("gl1", None) => Ok(TermAlg::Gl1),
        (
            "su" | "sl" | "so" | "so*" | "sp" | "u" | "gl" | "g2" | "g2split" | "spin" | "u1"
            | "gl1",
            _,
        ) => Err(arity(name, args, p)),
        _ => Err(SpecError::UnknownFamily {
            name: name.to_string(),
            line: p.line,
            col: p.col,
        }),
    }
}

fn resolve_emb(name: &str, args: Option<&[Arg]>, p: Pos) -> Result<Emb, SpecError> {
    use Arg::Int as I;
    match (name, args) {
        ("block", Some(&[I(i)])) => Ok(Emb::Block(i)),
        ("tensor", None) => Ok(Emb::Tensor),
        ("realify", None) => Ok(Emb::Realify),
        ("quaternionify", None) => Ok(Emb::Quaternionify),
        ("diag", Some(&[I(k)])) => Ok(Emb::Diag(k)),
        ("spin", Some(&[I(i)])) => Ok(Emb::Spin(i)),
        ("der_oct", None) => Ok(Emb::DerOct),
        ("center", None) => Ok(Emb::Center(None)),
        ("center", Some(&[I(i)])) => Ok(Emb::Center(Some(i))),
        ("dual", None) => Ok(Emb::Dual),
        (
            "block" | "tensor" | "realify" | "quaternionify" | "diag" | "spin" | "der_oct"
            | "center" | "dual",
            _,
        ) => Err(arity(name, args, p)),
        _ => Err(SpecError::UnknownFamily {
            name: name.to_string(),
            line: p.line,
            col: p.col,
        }),
    }
}

fn parser(text: &str) -> Result<Parser, SpecError> {
    Ok(Parser {
        toks: lex(text)?,
        at: 0,
    })
}

pub fn parse_spec(text: &str) -> Result<PairSpec, SpecError> {
    let mut p = parser(text)?;
    p.keyword("g")?;
    p.expect(Tok::Eq)?;
    let g = p.family()?;
    let mut h = Vec::new();
    if *p.peek() == Tok::Semi {
        p.bump();
        if *p.peek() != Tok::End {
            p.keyword("h")?;
            p.expect(Tok::Eq)?;
            h = p.terms()?;
        }
    }
    p.finish()?;
    Ok(PairSpec {
        g,
        h,
        raw_text: text.to_string(),
    })
}

/// A bare algebra such as `so(8,C)`, optionally written `g = so(8,C)`.
pub fn parse_family(text: &str) -> Result<FormFamily, SpecError> {
    let mut p = parser(text)?;
    if matches!(p.peek(), Tok::Ident(s) if s == "g") && p.toks[1].0 == Tok::Eq {
        p.bump();
        p.bump();
    }
    let g = p.family()?;
    p.finish()?;
    Ok(g)
}

/// A term list such as `so(7,C) + u1`, optionally prefixed by `NAME =`.
pub fn parse_terms(text: &str) -> Result<Vec<Term>, SpecError> {
    let mut p = parser(text)?;
    if matches!(p.peek(), Tok::Ident(_)) && p.toks.get(1).map(|t| &t.0) == Some(&Tok::Eq) {
        p.bump();
        p.bump();
    }
    let t = p.terms()?;
    p.finish()?;
    Ok(t)
}
