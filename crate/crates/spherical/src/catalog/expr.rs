//! Integer expressions over row parameters.
//!
//! ```text
//! or   := and ("or" and)*
//! and  := not ("and" not)*
//! not  := "not" not | cmp
//! cmp  := sum (("==" | "!=" | "<=" | ">=" | "<" | ">") sum)*
//! sum  := prod (("+" | "-") prod)*
//! prod := unary (("*" | "/" | "%") unary)*
//! unary:= "-" unary | atom
//! atom := INT | NAME | ("odd" | "even") "(" or ")" | "(" or ("," or)* ")"
//! ```
//!
//! Division floors. Chained comparisons `a <= b <= c` mean `a <= b and b <= c`.

use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Tuple(Vec<Value>),
}

pub type Env = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Op(&'static str),
}

const OPS: &[&str] = &[
    "==", "!=", "<=", ">=", "<", ">", "+", "-", "*", "/", "%", "(", ")", ",",
];

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    'outer: while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Int(s[st..i].parse().map_err(|e| format!("{e}"))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Name(s[st..i].to_string()));
        } else {
            for op in OPS {
                if s[i..].starts_with(op) {
                    out.push(Tok::Op(op));
                    i += op.len();
                    continue 'outer;
                }
            }
            return Err(format!("unexpected `{c}` in `{s}`"));
        }
    }
    Ok(out)
}

struct P<'a> {
    t: Vec<Tok>,
    i: usize,
    env: &'a Env,
}

impl P<'_> {
    fn peek_op(&self, op: &str) -> bool {
        matches!(self.t.get(self.i), Some(Tok::Op(o)) if *o == op)
    }

    fn peek_name(&self, n: &str) -> bool {
        matches!(self.t.get(self.i), Some(Tok::Name(x)) if x == n)
    }

    fn eat(&mut self, op: &str) -> Result<(), String> {
        if self.peek_op(op) {
            self.i += 1;
            Ok(())
        } else {
            Err(format!("expected `{op}`"))
        }
    }

    fn or(&mut self) -> Result<Value, String> {
        let mut v = self.and()?;
        while self.peek_name("or") {
            self.i += 1;
            let r = self.and()?;
            v = Value::Bool(bool_of(&v)? | bool_of(&r)?);
        }
        Ok(v)
    }

    fn and(&mut self) -> Result<Value, String> {
        let mut v = self.not()?;
        while self.peek_name("and") {
            self.i += 1;
            let r = self.not()?;
            v = Value::Bool(bool_of(&v)? & bool_of(&r)?);
        }
        Ok(v)
    }

    fn not(&mut self) -> Result<Value, String> {
        if self.peek_name("not") {
            self.i += 1;
            return Ok(Value::Bool(!bool_of(&self.not()?)?));
        }
        self.cmp()
    }

    fn cmp(&mut self) -> Result<Value, String> {
        let mut left = self.sum()?;
        let mut acc: Option<bool> = None;
        loop {
            let op = match self.t.get(self.i) {
                Some(Tok::Op(o)) if ["==", "!=", "<=", ">=", "<", ">"].contains(o) => *o,
                _ => break,
            };
            self.i += 1;
            let right = self.sum()?;
            let r = match op {
                "==" => left == right,
                "!=" => left != right,
                _ => {
                    let (a, b) = (int_of(&left)?, int_of(&right)?);
                    match op {
                        "<=" => a <= b,
                        ">=" => a >= b,
                        "<" => a < b,
                        _ => a > b,
                    }
                }
            };
            acc = Some(acc.unwrap_or(true) && r);
            left = right;
        }
        Ok(acc.map_or(left, Value::Bool))
    }

    fn sum(&mut self) -> Result<Value, String> {
        let mut v = self.prod()?;
        loop {
            let sign = if self.peek_op("+") {
                1
            } else if self.peek_op("-") {
                -1
            } else {
                return Ok(v);
            };
            self.i += 1;
            let r = int_of(&self.prod()?)?;
            v = Value::Int(int_of(&v)? + sign * r);
        }
    }

    fn prod(&mut self) -> Result<Value, String> {
        let mut v = self.unary()?;
        loop {
            let op = if self.peek_op("*") {
                '*'
            } else if self.peek_op("/") {
                '/'
            } else if self.peek_op("%") {
                '%'
            } else {
                return Ok(v);
            };
            self.i += 1;
            let (a, b) = (int_of(&v)?, int_of(&self.unary()?)?);
            if op != '*' && b == 0 {
                return Err("division by zero".into());
            }
            v = Value::Int(match op {
                '*' => a * b,
                '/' => a.div_euclid(b),
                _ => a.rem_euclid(b),
            });
        }
    }

    fn unary(&mut self) -> Result<Value, String> {
        if self.peek_op("-") {
            self.i += 1;
            return Ok(Value::Int(-int_of(&self.unary()?)?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Value, String> {
        match self.t.get(self.i).cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Value::Int(n))
            }
            Some(Tok::Name(n)) if n == "odd" || n == "even" => {
                self.i += 1;
                self.eat("(")?;
                let x = int_of(&self.or()?)?;
                self.eat(")")?;
                Ok(Value::Bool((x.rem_euclid(2) == 1) == (n == "odd")))
            }
            Some(Tok::Name(n)) => {
                self.i += 1;
                self.env
                    .get(&n)
                    .map(|&v| Value::Int(v))
                    .ok_or_else(|| format!("unknown parameter `{n}`"))
            }
            Some(Tok::Op("(")) => {
                self.i += 1;
                let mut items = vec![self.or()?];
                while self.peek_op(",") {
                    self.i += 1;
                    items.push(self.or()?);
                }
                self.eat(")")?;
                Ok(if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    Value::Tuple(items)
                })
            }
            other => Err(format!("unexpected {other:?}")),
        }
    }
}

fn int_of(v: &Value) -> Result<i64, String> {
    match v {
        Value::Int(n) => Ok(*n),
        _ => Err(format!("expected an integer, found {v:?}")),
    }
}

fn bool_of(v: &Value) -> Result<bool, String> {
    match v {
        Value::Bool(b) => Ok(*b),
        _ => Err(format!("expected a condition, found {v:?}")),
    }
}

pub fn eval(src: &str, env: &Env) -> Result<Value, String> {
    let mut p = P {
        t: lex(src)?,
        i: 0,
        env,
    };
    let v = p.or()?;
    if p.i != p.t.len() {
        return Err(format!("trailing input in `{src}`"));
    }
    Ok(v)
}

pub fn eval_int(src: &str, env: &Env) -> Result<i64, String> {
    int_of(&eval(src, env)?).map_err(|e| format!("{e} in `{src}`"))
}

pub fn eval_bool(src: &str, env: &Env) -> Result<bool, String> {
    bool_of(&eval(src, env)?).map_err(|e| format!("{e} in `{src}`"))
}

/// Replaces every `{expr}` by its integer value.
pub fn expand(template: &str, env: &Env) -> Result<String, String> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(a) = rest.find('{') {
        out.push_str(&rest[..a]);
        let b = rest[a..]
            .find('}')
            .ok_or_else(|| format!("unclosed `{{` in `{template}`"))?;
        out.push_str(&eval_int(&rest[a + 1..a + b], env)?.to_string());
        rest = &rest[a + b + 1..];
    }
    out.push_str(rest);
    Ok(out)
}
