//! Expression language for operators, scalars and symbols.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" INT)?
//! atom  := INT | NAME | "(" expr ")"
//! ```
//!
//! `*` is composition in `K[D]`, so `Dx*x` is `x*Dx + 1`. Names resolve to
//! bindings, declared variables, constants and function symbols, jets
//! `f_xy`, and the derivations `Dx` (or `D1..Dn` when there are more than
//! three variables). In symbol mode `X`, `Y`, `Z` (or `X1..Xn`) are the
//! commuting symbol variables and products commute.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::{Context, Name, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::operator::Lpdo;
use crate::print::{d_name, x_name};
use crate::symbol::SymbolPoly;

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, d)) = chars
                .peek()
                .filter(|(_, d)| d.is_alphanumeric() || *d == '_' || *d == '#')
            {
                s.push(d);
                chars.next();
            }
            out.push((pos, Tok::Name(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            chars.next();
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Debug)]
enum Ast {
    Int(BigInt),
    Name(usize, String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(usize, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Ast::Div(pos, Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            Ok(Ast::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                let Ok(k) = u32::try_from(k) else {
                    return self.err("exponent too large");
                };
                self.at += 1;
                Ok(Ast::Pow(Box::new(base), k))
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.at += 1;
                Ok(Ast::Int(k))
            }
            Some(Tok::Name(s)) => {
                self.at += 1;
                Ok(Ast::Name(pos, s))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected `{}`", tok_text(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Int(k) => k.to_string(),
        Tok::Name(s) => s.clone(),
        Tok::Op(c) => c.to_string(),
    }
}

fn parse_ast(text: &str) -> Result<Ast> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err(format!("unexpected `{}`", tok_text(&p.toks[p.at].1)));
    }
    Ok(e)
}

/// Splits `f_xyy` into the function name and the jet multi-index.
fn parse_jet(ctx: &Context, name: &str) -> Result<Option<RatFunc>> {
    let Some((base, suffix)) = name.split_once('_') else {
        return Ok(None);
    };
    let Some(Name::Func(id)) = ctx.lookup(base) else {
        return Err(Error::UnknownName(base.to_string()));
    };
    let mut index = MultiIndex::zero(ctx.nvars());
    let mut rest = suffix;
    while !rest.is_empty() {
        let hit = ctx
            .var_names()
            .iter()
            .enumerate()
            .filter(|(_, v)| rest.starts_with(v.as_str()))
            .max_by_key(|(_, v)| v.len());
        let Some((i, v)) = hit else {
            return Err(Error::UnknownName(name.to_string()));
        };
        index = index.bump(i);
        rest = &rest[v.len()..];
    }
    ctx.jet(id, &index).map(Some)
}

fn scalar_name(ctx: &Context, name: &str) -> Result<Option<RatFunc>> {
    Ok(match ctx.lookup(name) {
        Some(Name::Var(i)) => Some(ctx.var(i)),
        Some(Name::Const(i)) => Some(ctx.constant(i)),
        Some(Name::Func(i)) => Some(ctx.func(i)),
        None => parse_jet(ctx, name)?,
    })
}

/// Index `i` such that `name` is the derivation `D_i`.
fn derivation(ctx: &Context, name: &str) -> Option<usize> {
    (0..ctx.nvars()).find(|&i| d_name(ctx, i) == name)
}

fn symbol_var(ctx: &Context, name: &str) -> Option<usize> {
    (0..ctx.nvars()).find(|&i| x_name(ctx, i) == name)
}

struct OpEval<'a> {
    ctx: &'a Context,
    bindings: &'a BTreeMap<String, Lpdo>,
}

impl OpEval<'_> {
    fn eval(&self, ast: &Ast) -> Result<Lpdo> {
        let n = self.ctx.nvars();
        Ok(match ast {
            Ast::Int(k) => Lpdo::scalar(n, RatFunc::from_rational(BigRational::from(k.clone()))),
            Ast::Name(_, s) => {
                if let Some(op) = self.bindings.get(s) {
                    op.clone()
                } else if let Some(f) = scalar_name(self.ctx, s)? {
                    Lpdo::scalar(n, f)
                } else if let Some(i) = derivation(self.ctx, s) {
                    Lpdo::d(n, i)
                } else {
                    return Err(Error::UnknownName(s.clone()));
                }
            }
            Ast::Neg(a) => self.eval(a)?.neg(),
            Ast::Add(a, b) => self.eval(a)?.try_add(&self.eval(b)?)?,
            Ast::Sub(a, b) => self.eval(a)?.try_sub(&self.eval(b)?)?,
            Ast::Mul(a, b) => self.eval(a)?.compose(&self.eval(b)?)?,
            Ast::Pow(a, k) => self.eval(a)?.pow(*k),
            Ast::Div(pos, a, b) => {
                let num = self.eval(a)?;
                let den = self.eval(b)?;
                let syntax = |msg: &str| Error::Syntax {
                    pos: *pos,
                    msg: msg.into(),
                };
                if den.order().finite() != Some(0) {
                    return Err(if den.is_zero() {
                        Error::DivisionByZero
                    } else {
                        syntax("can only divide by a scalar")
                    });
                }
                let d = den.coeff(&MultiIndex::zero(n));
                if num.order().finite().unwrap_or(0) > 0 && d.as_rational().is_none() {
                    return Err(syntax(
                        "an operator can only be divided by a rational number",
                    ));
                }
                num.scale(&d.inv()?)
            }
        })
    }
}

type Commutative = Poly<u32, RatFunc>;

struct SymEval<'a> {
    ctx: &'a Context,
}

impl SymEval<'_> {
    fn eval(&self, ast: &Ast) -> Result<Commutative> {
        Ok(match ast {
            Ast::Int(k) => {
                Commutative::constant(RatFunc::from_rational(BigRational::from(k.clone())))
            }
            Ast::Name(_, s) => {
                if let Some(i) = symbol_var(self.ctx, s) {
                    Commutative::var(i as u32)
                } else if let Some(f) = scalar_name(self.ctx, s)? {
                    Commutative::constant(f)
                } else {
                    return Err(Error::UnknownName(s.clone()));
                }
            }
            Ast::Neg(a) => self.eval(a)?.neg(),
            Ast::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Ast::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Ast::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Ast::Pow(a, k) => self.eval(a)?.pow(*k),
            Ast::Div(pos, a, b) => {
                let d = self.eval(b)?.as_constant().ok_or_else(|| Error::Syntax {
                    pos: *pos,
                    msg: "can only divide by a scalar".into(),
                })?;
                self.eval(a)?.scale(&d.inv()?)
            }
        })
    }
}

/// Parses an operator using the context and the named bindings.
pub fn parse_operator_with(
    text: &str,
    ctx: &Context,
    bindings: &BTreeMap<String, Lpdo>,
) -> Result<Lpdo> {
    OpEval { ctx, bindings }.eval(&parse_ast(text)?)
}

pub fn parse_operator(text: &str, ctx: &Context) -> Result<Lpdo> {
    parse_operator_with(text, ctx, &BTreeMap::new())
}

/// Parses an element of the coefficient field.
pub fn parse_scalar(text: &str, ctx: &Context) -> Result<RatFunc> {
    let op = parse_operator(text, ctx)?;
    match op.order().finite() {
        Some(0) => Ok(op.coeff(&MultiIndex::zero(ctx.nvars()))),
        None => Ok(RatFunc::zero()),
        Some(_) => Err(Error::Domain(format!(
            "`{text}` is an operator, not a scalar"
        ))),
    }
}

/// Parses a homogeneous symbol polynomial.
pub fn parse_symbol(text: &str, ctx: &Context) -> Result<SymbolPoly> {
    let p = SymEval { ctx }.eval(&parse_ast(text)?)?;
    let n = ctx.nvars();
    let terms = p.terms().map(|(m, c)| {
        let mut j = MultiIndex::zero(n);
        for (v, e) in m.powers() {
            for _ in 0..*e {
                j = j.bump(*v as usize);
            }
        }
        (j, c.clone())
    });
    SymbolPoly::from_terms(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::print::Render;

    fn ctx() -> Context {
        let mut c = Context::new(&["x", "y"]).unwrap();
        c.declare_function("c", &["y"]).unwrap();
        c.declare_constant("alpha").unwrap();
        c
    }

    #[test]
    fn commutator_is_one() {
        let c = ctx();
        assert!(parse_operator("Dx*x - x*Dx", &c).unwrap().is_one());
    }

    #[test]
    fn canonical_strings_round_trip() {
        let c = ctx();
        for s in [
            "Dx^2*Dy^2 + Dx + Dy + 1",
            "-x*Dx + Dy",
            "(x + c)*Dx - 1/(x + c)",
            "alpha*Dx^2 + c_yy*Dy - 3/2",
            "(-x + 2)/(x^2 - 2*x + 1)*Dy",
        ] {
            let op = parse_operator(s, &c).unwrap();
            assert_eq!(op.render(&c), s);
        }
    }

    #[test]
    fn jets_and_errors() {
        let c = ctx();
        let cy = parse_scalar("c_y", &c).unwrap();
        assert_eq!(cy, parse_scalar("c", &c).unwrap().derive(1));
        assert!(matches!(parse_scalar("c_x", &c), Err(Error::Context(_))));
        assert!(matches!(
            parse_scalar("g_x", &c),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(
            parse_operator("Dz", &c),
            Err(Error::UnknownName(_))
        ));
        assert_eq!(
            parse_operator("Dx + * 1", &c),
            Err(Error::Syntax {
                pos: 5,
                msg: "unexpected `*`".into()
            })
        );
        assert!(matches!(
            parse_operator("(Dx", &c),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_operator("1/Dx", &c),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_operator("Dx/x", &c),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(parse_operator("1/0", &c), Err(Error::DivisionByZero));
        assert!(matches!(
            parse_operator("x $ y", &c),
            Err(Error::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn symbols() {
        let c = ctx();
        let s = parse_symbol("X*Y^2 + x*Y^3", &c).unwrap();
        assert_eq!(s.render(&c), "X*Y^2 + x*Y^3");
        assert!(parse_symbol("X + 1", &c).is_err());
        assert_eq!(
            parse_symbol("Y*X", &c).unwrap(),
            parse_symbol("X*Y", &c).unwrap()
        );
    }

    #[test]
    fn many_variables_use_numbered_names() {
        let c = Context::new(&["a", "b", "u", "v"]).unwrap();
        let op = parse_operator("D1*D4 + a*D2", &c).unwrap();
        assert_eq!(op.render(&c), "D1*D4 + a*D2");
        assert_eq!(parse_symbol("X1*X3", &c).unwrap().render(&c), "X1*X3");
    }

    #[test]
    fn bindings_take_part() {
        let c = ctx();
        let mut b = BTreeMap::new();
        b.insert("M".to_string(), parse_operator("Dx + x", &c).unwrap());
        let op = parse_operator_with("M*M", &c, &b).unwrap();
        assert_eq!(op.render(&c), "Dx^2 + 2*x*Dx + x^2 + 1");
    }
}
