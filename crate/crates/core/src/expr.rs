//! A small expression language for algebra elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'·'|'/') power)*
//! power  := atom ['^' integer]
//! atom   := integer | ident | ident '(' expr {',' expr} ')' | '(' expr ')'
//! ```
//!
//! `sqrt(d)` is built in. A product of two vectors is the algebra product;
//! identifiers and other function calls are resolved by a [`Context`].

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Vector(Vec<Scalar>),
}

impl Value {
    pub fn into_vector(self, n: usize) -> Result<Vec<Scalar>> {
        match self {
            Value::Vector(v) => Ok(v),
            Value::Scalar(s) if s.is_zero() => Ok(vec![Scalar::zero(); n]),
            Value::Scalar(_) => Err(Error::Parse("expected a vector, found a nonzero scalar".into())),
        }
    }

    pub fn into_scalar(self) -> Result<Scalar> {
        match self {
            Value::Scalar(s) => Ok(s),
            Value::Vector(_) => Err(Error::Parse("expected a scalar, found a vector".into())),
        }
    }
}

/// Name resolution for [`parse`].
pub trait Context {
    fn dim(&self) -> usize;
    fn lookup(&self, name: &str) -> Result<Value>;
    fn call(&self, name: &str, _args: Vec<Value>) -> Result<Value> {
        Err(Error::Parse(format!("unknown function `{name}`")))
    }
    fn product(&self, _u: &[Scalar], _v: &[Scalar]) -> Result<Vec<Scalar>> {
        Err(Error::Parse("vector products are not available here".into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '²' | '³' | '\'')
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push(Tok::Num(txt.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            let mut depth = 0usize;
            while i < cs.len() {
                let d = cs[i];
                if d == '{' {
                    depth += 1;
                } else if d == '}' {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                } else if depth == 0 && !is_ident_char(d) {
                    break;
                }
                i += 1;
            }
            if depth != 0 {
                return Err(Error::Parse(format!("unbalanced braces in `{s}`")));
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^(),·".contains(c) {
            out.push(Tok::Op(if c == '·' { '*' } else { c }));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, C: Context + ?Sized> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a C,
}

fn negate(v: Value) -> Value {
    let m = Scalar::int(-1);
    match v {
        Value::Scalar(x) => Value::Scalar(&x * &m),
        Value::Vector(x) => Value::Vector(x.iter().map(|c| c * &m).collect()),
    }
}

fn combine(a: Value, b: Value, sign: &Scalar) -> Result<Value> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &(sign * &y)),
        (Value::Vector(x), Value::Vector(y)) => {
            Value::Vector(x.iter().zip(&y).map(|(p, q)| p + &(sign * q)).collect())
        }
        (Value::Vector(x), Value::Scalar(s)) | (Value::Scalar(s), Value::Vector(x)) if s.is_zero() => {
            Value::Vector(x)
        }
        _ => return Err(Error::Parse("cannot add a scalar to a vector".into())),
    })
}

impl<C: Context + ?Sized> Parser<'_, C> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::Parse(format!("expected `{op}`")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = if self.eat('-') {
            negate(self.term()?)
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            let sign = if self.eat('+') {
                Scalar::one()
            } else if self.eat('-') {
                Scalar::int(-1)
            } else {
                break;
            };
            let t = self.term()?;
            acc = combine(acc, t, &sign)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let r = self.power()?;
                acc = self.mul(acc, r)?;
            } else if self.eat('/') {
                let r = self.power()?.into_scalar()?;
                let inv = Value::Scalar(r.recip()?);
                acc = self.mul(acc, inv)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Result<Value> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(s), Value::Vector(v)) | (Value::Vector(v), Value::Scalar(s)) => {
                Value::Vector(v.iter().map(|c| c * &s).collect())
            }
            (Value::Vector(u), Value::Vector(v)) => Value::Vector(self.ctx.product(&u, &v)?),
        })
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(k)) => u32::try_from(k.clone()).map_err(|_| Error::Parse("exponent too large".into()))?,
            _ => return Err(Error::Parse("expected an integer exponent".into())),
        };
        self.pos += 1;
        let s = base.into_scalar()?;
        let mut r = Scalar::one();
        for _ in 0..e {
            r = &r * &s;
        }
        Ok(Value::Scalar(if neg { r.recip()? } else { r }))
    }

    fn atom(&mut self) -> Result<Value> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(Value::Scalar(Scalar::Rat(Rational::from_integer(k))))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(negate(self.power()?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    if name == "sqrt" {
                        return sqrt_value(args);
                    }
                    self.ctx.call(&name, args)
                } else {
                    self.ctx.lookup(&name)
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

fn sqrt_value(args: Vec<Value>) -> Result<Value> {
    let [Value::Scalar(Scalar::Rat(q))] = args.as_slice() else {
        return Err(Error::Parse("sqrt expects one non-negative integer".into()));
    };
    if !q.is_integer() || q < &Rational::from_integer(0.into()) {
        return Err(Error::Parse("sqrt expects one non-negative integer".into()));
    }
    let d = u64::try_from(q.to_integer()).map_err(|_| Error::Parse("radicand too large".into()))?;
    Ok(Value::Scalar(Scalar::sqrt_of(d)))
}

/// Parses and evaluates `src` in `ctx`.
pub fn parse<C: Context + ?Sized>(src: &str, ctx: &C) -> Result<Value> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, ctx };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(v)
}

/// Parses `src` as a vector in `ctx`.
pub fn parse_vector<C: Context + ?Sized>(src: &str, ctx: &C) -> Result<Vec<Scalar>> {
    parse(src, ctx)?.into_vector(ctx.dim())
}

/// Resolves basis labels (and their ASCII aliases) to unit vectors.
pub struct BasisContext<'a> {
    pub labels: &'a [String],
}

impl Context for BasisContext<'_> {
    fn dim(&self) -> usize {
        self.labels.len()
    }

    fn lookup(&self, name: &str) -> Result<Value> {
        let canon = canonical_label(name).unwrap_or(name);
        let i = self
            .labels
            .iter()
            .position(|l| l == canon)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        let mut v = vec![Scalar::zero(); self.labels.len()];
        v[i] = Scalar::one();
        Ok(Value::Vector(v))
    }
}

/// Display labels with their ASCII spellings.
pub const LABEL_ALIASES: &[(&str, &str)] = &[
    ("a_t", "a_t"),
    ("a_g", "a_g"),
    ("a_gm1", "a_{g_{-1}}"),
    ("a_g2", "a_{g_2}"),
    ("a_gm2", "a_{g_{-2}}"),
    ("a_g3", "a_{g_3}"),
    ("u_r", "u_ρ"),
    ("v_r", "v_ρ"),
    ("w_r", "w_ρ"),
    ("a_r", "a_ρ"),
    ("a_r2", "a_{ρ²}"),
    ("a_r3", "a_{ρ³}"),
    ("u_r2", "u_{ρ²}"),
];

/// Maps an ASCII alias (or a display label) to the display label.
pub fn canonical_label(name: &str) -> Option<&'static str> {
    LABEL_ALIASES.iter().find(|(a, d)| *a == name || *d == name).map(|(_, d)| *d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels() -> Vec<String> {
        ["a_t", "a_g", "a_{g_{-1}}", "u_ρ"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn evaluates_table_entries() {
        let l = labels();
        let ctx = BasisContext { labels: &l };
        let v = parse_vector("1/2^5*(2a_t + 2*a_g + a_gm1) - 3^3*5/2^11*u_r", &ctx);
        // juxtaposition is not multiplication
        assert!(v.is_err());
        let v = parse_vector("1/2^5*(2*a_t + 2*a_g + a_{g_{-1}}) - 3^3*5/2^11*u_ρ", &ctx).unwrap();
        assert_eq!(v, vec![Scalar::frac(1, 16), Scalar::frac(1, 16), Scalar::frac(1, 32), Scalar::frac(-135, 2048)]);
    }

    #[test]
    fn leading_minus_negates_vectors() {
        let l = labels();
        let ctx = BasisContext { labels: &l };
        let v = parse_vector("-3/14*a_t + a_g", &ctx).unwrap();
        assert_eq!(v[0], Scalar::frac(-3, 14));
        let v = parse_vector("(-a_t) - -a_g", &ctx).unwrap();
        assert_eq!(&v[..2], &[Scalar::int(-1), Scalar::one()]);
    }

    #[test]
    fn quadratic_coefficients() {
        let l = labels();
        let ctx = BasisContext { labels: &l };
        let v = parse_vector("2/7*(2 - sqrt(2))*a_t", &ctx).unwrap();
        assert_eq!(v[0], "4/7-2/7*sqrt(2)".parse().unwrap());
        assert_eq!(parse("sqrt(12)", &ctx).unwrap(), Value::Scalar("0+2*sqrt(3)".parse().unwrap()));
    }

    #[test]
    fn errors() {
        let l = labels();
        let ctx = BasisContext { labels: &l };
        assert!(matches!(parse("a_x", &ctx), Err(Error::UnknownLabel(_))));
        assert!(parse("a_t +", &ctx).is_err());
        assert!(parse("a_t * a_g", &ctx).is_err());
        assert!(parse("1 + a_t", &ctx).is_err());
        assert_eq!(parse_vector("0", &ctx).unwrap().len(), 4);
    }
}
