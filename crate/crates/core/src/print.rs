//! Canonical text rendering. Everything printed here parses back to the
//! same value with [`crate::parse`].

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::coeff::{Context, Indeterminate, Monomial, MultiPoly, RatFunc};
use crate::multi_index::MultiIndex;
use crate::operator::Lpdo;
use crate::symbol::SymbolPoly;

/// Values that can be rendered against a [`Context`].
pub trait Render {
    fn render(&self, ctx: &Context) -> String;
}

impl Render for MultiPoly {
    fn render(&self, ctx: &Context) -> String {
        join_signed(self.terms().rev().map(|(m, c)| term_string(ctx, m, c)))
    }
}

impl Render for RatFunc {
    fn render(&self, ctx: &Context) -> String {
        let num = self.numer().render(ctx);
        if self.is_polynomial() {
            return num;
        }
        let num = if self.numer().len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let den = self.denom().render(ctx);
        if is_single_power(self.denom()) {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

impl Render for Indeterminate {
    fn render(&self, ctx: &Context) -> String {
        match self {
            Indeterminate::Var(i) => ctx.var_names()[*i as usize].clone(),
            Indeterminate::Const(i) => ctx.consts()[*i as usize].clone(),
            Indeterminate::Jet { func, index, .. } => {
                let mut s = ctx.funcs()[*func as usize].name.clone();
                if !index.is_zero() {
                    s.push('_');
                    for (i, &k) in index.as_slice().iter().enumerate() {
                        for _ in 0..k {
                            s.push_str(&ctx.var_names()[i]);
                        }
                    }
                }
                s
            }
        }
    }
}

impl Render for Lpdo {
    fn render(&self, ctx: &Context) -> String {
        join_signed(
            self.sorted_terms()
                .into_iter()
                .map(|(j, a)| product_term(ctx, a, &d_monomial(ctx, j))),
        )
    }
}

impl Render for SymbolPoly {
    fn render(&self, ctx: &Context) -> String {
        join_signed(
            self.terms()
                .iter()
                .map(|(j, a)| product_term(ctx, a, &x_monomial(ctx, j))),
        )
    }
}

/// Name of `D_i`: `Dx`-style for up to three variables, `D1..Dn` beyond.
pub fn d_name(ctx: &Context, i: usize) -> String {
    if ctx.nvars() <= 3 {
        format!("D{}", ctx.var_names()[i])
    } else {
        format!("D{}", i + 1)
    }
}

/// Name of the symbol variable `X_i`: the capitalized geometric variable
/// for up to three variables, `X1..Xn` beyond.
pub fn x_name(ctx: &Context, i: usize) -> String {
    if ctx.nvars() <= 3 {
        ctx.var_names()[i].to_uppercase()
    } else {
        format!("X{}", i + 1)
    }
}

fn d_monomial(ctx: &Context, j: &MultiIndex) -> String {
    power_product(j, |i| d_name(ctx, i))
}

fn x_monomial(ctx: &Context, j: &MultiIndex) -> String {
    power_product(j, |i| x_name(ctx, i))
}

fn power_product(j: &MultiIndex, name: impl Fn(usize) -> String) -> String {
    let parts: Vec<String> = j
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                name(i)
            } else {
                format!("{}^{e}", name(i))
            }
        })
        .collect();
    parts.join("*")
}

/// `a * M` for a field element `a` and a rendered power product `M`
/// (empty for the constant term).
fn product_term(ctx: &Context, a: &RatFunc, mono: &str) -> String {
    if mono.is_empty() {
        return a.render(ctx);
    }
    if a.is_one() {
        return mono.to_string();
    }
    if a.neg().is_one() {
        return format!("-{mono}");
    }
    let coeff = a.render(ctx);
    if a.is_polynomial() && a.numer().len() > 1 {
        format!("({coeff})*{mono}")
    } else {
        format!("{coeff}*{mono}")
    }
}

fn is_single_power(p: &MultiPoly) -> bool {
    p.len() == 1
        && p.terms()
            .next()
            .is_some_and(|(m, c)| c.is_one() && m.powers().len() == 1)
}

fn term_string(ctx: &Context, m: &Monomial<Indeterminate>, c: &BigRational) -> String {
    let mono = m
        .powers()
        .iter()
        .map(|(v, e)| {
            let name = v.render(ctx);
            if *e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*");
    let mag = c.abs();
    let sign = if c.is_negative() { "-" } else { "" };
    if mono.is_empty() {
        format!("{sign}{}", rational_string(&mag))
    } else if mag.is_one() {
        format!("{sign}{mono}")
    } else {
        format!("{sign}{}*{mono}", rational_string(&mag))
    }
}

pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Joins terms with ` + ` / ` - `, folding a leading minus into the
/// separator.
fn join_signed(terms: impl Iterator<Item = String>) -> String {
    let mut out = String::new();
    for t in terms {
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}
