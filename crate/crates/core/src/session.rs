//! Line-oriented sessions.
//!
//! A session file has one command per line; `#` starts a comment and a
//! trailing `;` is ignored. Arguments are separated by `,` and groups of
//! arguments by `|`.
//!
//! ```text
//! vars x y
//! func c(y)
//! const alpha
//! let M = Dx + x
//! compose M, Dy + y
//! divide-left Dx^2*Dy + 1, Dx^2
//! verify Dx*x == x*Dx + 1
//! verify-incomplete A | F1, F2 | R
//! refine L, F, R1 | M, G, R2 | S1, S2, S3
//! refine-complete left L, F, M, G
//! laplace Dx*Dy + 1
//! ansatz S = A | X^2, Y^2 | 1 | names l, f, [p q r] | order 0 1 | deps x y
//! eliminate S
//! solve-const S
//! verify-candidate S | l10 = 0, f10 = 0 | symbolic
//! ```

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::ansatz::{
    build_ansatz, eliminate_linear, solve_constant, verify_candidate, AnsatzOptions, AnsatzSystem,
    ConstantStatus, Dependency, EquationClass, Naming, SolveReport,
};
use crate::coeff::{Context, RatFunc};
use crate::division::{divide_left, divide_right, DivisionResult};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::operator::Lpdo;
use crate::parse::{parse_operator_with, parse_symbol};
use crate::print::Render;
use crate::refine::{
    laplace_invariants, refine_complete, refine_obstacle, IncompleteFactorization, Side, TwoFactor,
    Violation,
};
use crate::symbol::{FactorizationType, SymbolPoly};

/// Text lines, JSON result and verification outcome of one command.
pub type CommandOutput = (Vec<String>, Value, Option<bool>);

/// Naming of one ansatz skeleton as written in a session.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NameSpec {
    Prefix(String),
    Explicit(Vec<String>),
}

/// A parsed session line. Expressions stay as text until execution, when
/// they are checked against the current bindings.
#[derive(Clone, PartialEq, Debug)]
pub enum Command {
    Vars(Vec<String>),
    Func {
        name: String,
        deps: Option<Vec<String>>,
    },
    Const(Vec<String>),
    Let {
        name: String,
        expr: String,
    },
    Print(String),
    Order(String),
    Symbol(String),
    Adjoint(String),
    Compose(Vec<String>),
    DivideLeft(String, String),
    DivideRight(String, String),
    Verify(String, String),
    VerifyIncomplete {
        operator: String,
        factors: Vec<String>,
        remainder: String,
    },
    Refine {
        lf: [String; 3],
        mg: [String; 3],
        ty: Vec<String>,
    },
    RefineComplete {
        side: Side,
        ops: [String; 4],
    },
    Laplace(String),
    Ansatz {
        name: String,
        operator: String,
        ty: Vec<String>,
        obstacle_order: i32,
        names: Option<Vec<NameSpec>>,
        declaration_order: Option<Vec<usize>>,
        deps: Option<Vec<String>>,
    },
    Eliminate(String),
    SolveConst(String),
    VerifyCandidate {
        system: String,
        assignment: Vec<(String, String)>,
        symbolic: bool,
    },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos: 0,
        msg: msg.into(),
    }
}

fn list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::to_string)
        .collect()
}

fn words(s: &str) -> Vec<String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(str::to_string)
        .collect()
}

fn exactly<const N: usize>(s: &str, what: &str) -> Result<[String; N]> {
    list(s)
        .try_into()
        .map_err(|_| bad(format!("{what} expects {N} arguments separated by `,`")))
}

/// Drops a `#` comment. A `#` inside a name such as `l10#1` is kept.
fn strip_comment(line: &str) -> &str {
    let mut prev = ' ';
    for (i, c) in line.char_indices() {
        if c == '#' && prev.is_whitespace() {
            return line[..i].trim();
        }
        prev = c;
    }
    line.trim()
}

fn groups(s: &str) -> Vec<&str> {
    s.split('|').map(str::trim).collect()
}

fn name_specs(s: &str) -> Result<Vec<NameSpec>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('[') {
            let (inner, tail) = r.split_once(']').ok_or_else(|| bad("missing `]`"))?;
            out.push(NameSpec::Explicit(words(inner)));
            rest = tail.trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            out.push(NameSpec::Prefix(rest[..end].trim().to_string()));
            rest = &rest[end..];
        }
        rest = rest
            .trim_start()
            .strip_prefix(',')
            .unwrap_or(rest)
            .trim_start();
    }
    Ok(out)
}

impl Command {
    /// Parses one line; blank lines and comments give `None`.
    pub fn parse(line: &str) -> Result<Option<Command>> {
        let line = strip_comment(line);
        let line = line.strip_suffix(';').unwrap_or(line).trim();
        if line.is_empty() {
            return Ok(None);
        }
        let (head, rest) = line
            .split_once(char::is_whitespace)
            .map_or((line, ""), |(h, r)| (h, r.trim()));
        let cmd = match head {
            "vars" | "declare-vars" => Command::Vars(words(rest)),
            "func" | "declare-func" => match rest.split_once('(') {
                Some((name, deps)) => Command::Func {
                    name: name.trim().to_string(),
                    deps: Some(words(
                        deps.strip_suffix(')').ok_or_else(|| bad("missing `)`"))?,
                    )),
                },
                None => Command::Func {
                    name: rest.to_string(),
                    deps: None,
                },
            },
            "const" | "declare-const" => Command::Const(words(rest)),
            "let" => {
                let (name, expr) = rest
                    .split_once('=')
                    .ok_or_else(|| bad("expected `let NAME = expr`"))?;
                Command::Let {
                    name: name.trim().to_string(),
                    expr: expr.trim().to_string(),
                }
            }
            "print" => Command::Print(rest.to_string()),
            "order" => Command::Order(rest.to_string()),
            "symbol" => Command::Symbol(rest.to_string()),
            "adjoint" => Command::Adjoint(rest.to_string()),
            "compose" => Command::Compose(list(rest)),
            "divide-left" => {
                let [a, b] = exactly(rest, head)?;
                Command::DivideLeft(a, b)
            }
            "divide-right" => {
                let [a, b] = exactly(rest, head)?;
                Command::DivideRight(a, b)
            }
            "verify" => {
                let (a, b) = rest
                    .split_once("==")
                    .ok_or_else(|| bad("expected `verify E1 == E2`"))?;
                Command::Verify(a.trim().to_string(), b.trim().to_string())
            }
            "verify-incomplete" => match groups(rest)[..] {
                [a, f, r] => Command::VerifyIncomplete {
                    operator: a.to_string(),
                    factors: list(f),
                    remainder: r.to_string(),
                },
                _ => return Err(bad("expected `verify-incomplete A | F1, ..., Fk | R`")),
            },
            "refine" => match groups(rest)[..] {
                [lf, mg, ty] => Command::Refine {
                    lf: exactly(lf, head)?,
                    mg: exactly(mg, head)?,
                    ty: list(ty),
                },
                _ => return Err(bad("expected `refine L, F, R1 | M, G, R2 | S1, S2, S3`")),
            },
            "refine-complete" => {
                let (side, args) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let side = match side {
                    "left" => Side::Left,
                    "right" => Side::Right,
                    _ => return Err(bad("expected `left` or `right`")),
                };
                Command::RefineComplete {
                    side,
                    ops: exactly(args, head)?,
                }
            }
            "laplace" => Command::Laplace(rest.to_string()),
            "ansatz" => Self::parse_ansatz(rest)?,
            "eliminate" => Command::Eliminate(rest.to_string()),
            "solve-const" => Command::SolveConst(rest.to_string()),
            "verify-candidate" => {
                let g = groups(rest);
                let (system, assign, symbolic) = match g[..] {
                    [s, a] => (s, a, false),
                    [s, a, "symbolic"] => (s, a, true),
                    _ => {
                        return Err(bad(
                            "expected `verify-candidate S | u = expr, ... [| symbolic]`",
                        ))
                    }
                };
                let assignment = list(assign)
                    .iter()
                    .map(|p| {
                        p.split_once('=')
                            .map(|(u, e)| (u.trim().to_string(), e.trim().to_string()))
                            .ok_or_else(|| bad(format!("expected `name = expr`, found `{p}`")))
                    })
                    .collect::<Result<_>>()?;
                Command::VerifyCandidate {
                    system: system.to_string(),
                    assignment,
                    symbolic,
                }
            }
            other => return Err(Error::UnknownName(other.to_string())),
        };
        Ok(Some(cmd))
    }

    fn parse_ansatz(rest: &str) -> Result<Command> {
        let g = groups(rest);
        if g.len() < 3 {
            return Err(bad("expected `ansatz NAME = A | S1, ..., Sk | order`"));
        }
        let (name, operator) = g[0]
            .split_once('=')
            .ok_or_else(|| bad("expected `ansatz NAME = A | ...`"))?;
        let obstacle_order = g[2]
            .parse()
            .map_err(|_| bad(format!("bad obstacle order `{}`", g[2])))?;
        let mut cmd = Command::Ansatz {
            name: name.trim().to_string(),
            operator: operator.trim().to_string(),
            ty: list(g[1]),
            obstacle_order,
            names: None,
            declaration_order: None,
            deps: None,
        };
        if let Command::Ansatz {
            names,
            declaration_order,
            deps,
            ..
        } = &mut cmd
        {
            for clause in &g[3..] {
                let (key, val) = clause
                    .split_once(char::is_whitespace)
                    .unwrap_or((clause, ""));
                match key {
                    "names" => *names = Some(name_specs(val)?),
                    "order" => {
                        *declaration_order = Some(
                            words(val)
                                .iter()
                                .map(|w| w.parse().map_err(|_| bad(format!("bad index `{w}`"))))
                                .collect::<Result<_>>()?,
                        )
                    }
                    "deps" => *deps = Some(words(val)),
                    _ => return Err(bad(format!("unknown ansatz clause `{key}`"))),
                }
            }
        }
        Ok(cmd)
    }

    /// The command keyword.
    pub fn keyword(&self) -> &'static str {
        match self {
            Command::Vars(_) => "vars",
            Command::Func { .. } => "func",
            Command::Const(_) => "const",
            Command::Let { .. } => "let",
            Command::Print(_) => "print",
            Command::Order(_) => "order",
            Command::Symbol(_) => "symbol",
            Command::Adjoint(_) => "adjoint",
            Command::Compose(_) => "compose",
            Command::DivideLeft(..) => "divide-left",
            Command::DivideRight(..) => "divide-right",
            Command::Verify(..) => "verify",
            Command::VerifyIncomplete { .. } => "verify-incomplete",
            Command::Refine { .. } => "refine",
            Command::RefineComplete { .. } => "refine-complete",
            Command::Laplace(_) => "laplace",
            Command::Ansatz { .. } => "ansatz",
            Command::Eliminate(_) => "eliminate",
            Command::SolveConst(_) => "solve-const",
            Command::VerifyCandidate { .. } => "verify-candidate",
        }
    }

    fn is_verification(&self) -> bool {
        matches!(
            self,
            Command::Verify(..)
                | Command::VerifyIncomplete { .. }
                | Command::VerifyCandidate { .. }
        )
    }
}

/// Output of one command.
#[derive(Clone, PartialEq, Debug)]
pub struct Record {
    /// 1-based position among the session's commands.
    pub index: usize,
    pub command: &'static str,
    pub input: String,
    pub text: Vec<String>,
    pub result: Value,
    /// For verification commands: whether the check passed.
    pub verified: Option<bool>,
}

impl Record {
    pub fn to_json(&self) -> Value {
        json!({ "command": self.command, "input": self.input, "result": self.result })
    }
}

/// Declarations, bindings and ansatz systems built so far.
#[derive(Clone, Debug, Default)]
pub struct Session {
    ctx: Option<Context>,
    bindings: BTreeMap<String, Lpdo>,
    systems: BTreeMap<String, AnsatzSystem>,
    log: Vec<String>,
}

pub fn operator_json(ctx: &Context, op: &Lpdo) -> Value {
    json!({ "terms": op.sorted_terms().into_iter().map(|(j, c)| json!({
        "J": j.as_slice(),
        "coeff": c.render(ctx),
    })).collect::<Vec<_>>() })
}

pub fn symbol_json(ctx: &Context, s: &SymbolPoly) -> Value {
    json!({ "terms": s.terms().into_iter().map(|(j, c)| json!({
        "J": j.as_slice(),
        "coeff": c.render(ctx),
    })).collect::<Vec<_>>() })
}

fn d_monomial(ctx: &Context, j: &MultiIndex) -> String {
    Lpdo::monomial(j.clone(), RatFunc::one()).render(ctx)
}

fn paren(s: String) -> String {
    format!("({s})")
}

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn context(&self) -> Option<&Context> {
        self.ctx.as_ref()
    }

    pub fn binding(&self, name: &str) -> Option<&Lpdo> {
        self.bindings.get(name)
    }

    pub fn bindings(&self) -> &BTreeMap<String, Lpdo> {
        &self.bindings
    }

    pub fn system(&self, name: &str) -> Option<&AnsatzSystem> {
        self.systems.get(name)
    }

    /// Command lines executed so far.
    pub fn log(&self) -> &[String] {
        &self.log
    }

    fn ctx(&self) -> Result<&Context> {
        self.ctx
            .as_ref()
            .ok_or_else(|| Error::Context("declare variables with `vars` first".into()))
    }

    fn ctx_mut(&mut self) -> Result<&mut Context> {
        self.ctx
            .as_mut()
            .ok_or_else(|| Error::Context("declare variables with `vars` first".into()))
    }

    fn op(&self, text: &str) -> Result<Lpdo> {
        parse_operator_with(text, self.ctx()?, &self.bindings)
    }

    fn ops<const N: usize>(&self, texts: &[String; N]) -> Result<[Lpdo; N]> {
        let v = texts
            .iter()
            .map(|t| self.op(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(v.try_into().expect("length preserved"))
    }

    fn fresh_binding(&self, name: &str) -> Result<()> {
        let ok = name.chars().next().is_some_and(char::is_alphabetic)
            && name.chars().all(char::is_alphanumeric);
        if !ok {
            return Err(Error::Context(format!("`{name}` is not a valid name")));
        }
        if self.bindings.contains_key(name) || self.systems.contains_key(name) {
            return Err(Error::Context(format!("`{name}` is already bound")));
        }
        if let Some(ctx) = &self.ctx {
            if ctx.lookup(name).is_some()
                || (0..ctx.nvars()).any(|i| crate::print::d_name(ctx, i) == name)
            {
                return Err(Error::Context(format!("`{name}` is already declared")));
            }
        }
        Ok(())
    }

    fn ftype(&self, texts: &[String]) -> Result<FactorizationType> {
        let ctx = self.ctx()?;
        FactorizationType::new(
            texts
                .iter()
                .map(|t| parse_symbol(t, ctx))
                .collect::<Result<_>>()?,
        )
    }

    /// Executes one parsed command; declarations and bindings give `None`.
    pub fn execute(&mut self, cmd: &Command) -> Result<Option<CommandOutput>> {
        let out = match cmd {
            Command::Vars(names) => {
                if self.ctx.is_some() {
                    return Err(Error::Context("variables are already declared".into()));
                }
                self.ctx = Some(Context::new(names)?);
                None
            }
            Command::Func { name, deps } => {
                if self.bindings.contains_key(name) {
                    return Err(Error::Context(format!("`{name}` is already bound")));
                }
                let ctx = self.ctx_mut()?;
                match deps {
                    Some(d) => ctx.declare_function(name, d)?,
                    None => ctx.declare_function_all(name)?,
                };
                None
            }
            Command::Const(names) => {
                for name in names {
                    if self.bindings.contains_key(name) {
                        return Err(Error::Context(format!("`{name}` is already bound")));
                    }
                    self.ctx_mut()?.declare_constant(name)?;
                }
                None
            }
            Command::Let { name, expr } => {
                self.fresh_binding(name)?;
                let op = self.op(expr)?;
                self.bindings.insert(name.clone(), op);
                None
            }
            _ => Some(self.evaluate(cmd)?),
        };
        Ok(out)
    }

    fn evaluate(&mut self, cmd: &Command) -> Result<CommandOutput> {
        let ctx = self.ctx()?.clone();
        let r = |op: &Lpdo| op.render(&ctx);
        let oj = |op: &Lpdo| operator_json(&ctx, op);
        Ok(match cmd {
            Command::Print(e) | Command::Adjoint(e) => {
                let mut op = self.op(e)?;
                if matches!(cmd, Command::Adjoint(_)) {
                    op = op.adjoint();
                }
                (vec![r(&op)], oj(&op), None)
            }
            Command::Compose(es) => {
                let ops = es.iter().map(|e| self.op(e)).collect::<Result<Vec<_>>>()?;
                let op = Lpdo::compose_all(ctx.nvars(), &ops)?;
                (vec![r(&op)], oj(&op), None)
            }
            Command::Order(e) => {
                let ord = self.op(e)?.order();
                let v = match ord.finite() {
                    Some(d) => json!({ "order": d }),
                    None => json!({ "order": "-inf" }),
                };
                (vec![ord.to_string()], v, None)
            }
            Command::Symbol(e) => {
                let s = self.op(e)?.symbol();
                (vec![s.render(&ctx)], symbol_json(&ctx, &s), None)
            }
            Command::DivideLeft(a, b) | Command::DivideRight(a, b) => {
                let (a, b) = (self.op(a)?, self.op(b)?);
                let DivisionResult {
                    quotient,
                    remainder,
                    steps,
                } = if matches!(cmd, Command::DivideLeft(..)) {
                    divide_left(&a, &b)?
                } else {
                    divide_right(&a, &b)?
                };
                (
                    vec![
                        format!("N = {}", r(&quotient)),
                        format!("R = {}", r(&remainder)),
                    ],
                    json!({ "quotient": oj(&quotient), "remainder": oj(&remainder), "steps": steps }),
                    None,
                )
            }
            Command::Verify(a, b) => {
                let diff = self.op(a)?.try_sub(&self.op(b)?)?;
                let ok = diff.is_zero();
                let mut text = vec![ok.to_string()];
                if !ok {
                    text.push(format!("difference: {}", r(&diff)));
                }
                (
                    text,
                    json!({ "equal": ok, "difference": oj(&diff) }),
                    Some(ok),
                )
            }
            Command::VerifyIncomplete {
                operator,
                factors,
                remainder,
            } => {
                let fs = factors
                    .iter()
                    .map(|f| self.op(f))
                    .collect::<Result<Vec<_>>>()?;
                let inc = IncompleteFactorization::from_factors(
                    self.op(operator)?,
                    fs,
                    self.op(remainder)?,
                )?;
                let v = inc.verify()?;
                let msg = match &v {
                    None => "ok".to_string(),
                    Some(Violation::Coefficient {
                        index,
                        expected,
                        found,
                    }) => format!(
                        "violation at {}: expected {}, found {}",
                        d_monomial(&ctx, index),
                        expected.render(&ctx),
                        found.render(&ctx)
                    ),
                    Some(other) => format!("violation: {other:?}"),
                };
                let ok = v.is_none();
                (
                    vec![msg.clone()],
                    json!({ "ok": ok, "report": msg }),
                    Some(ok),
                )
            }
            Command::Refine { lf, mg, ty } => {
                let [l, f, r1] = self.ops(lf)?;
                let [m, g, r2] = self.ops(mg)?;
                let out = refine_obstacle(
                    &TwoFactor::new(l, f, r1),
                    &TwoFactor::new(m, g, r2),
                    &self.ftype(ty)?,
                )?;
                let mut s = out
                    .factors
                    .iter()
                    .map(|f| paren(r(f)))
                    .collect::<Vec<_>>()
                    .join("*");
                if !out.remainder.is_zero() {
                    s = format!("{s} + {}", paren(r(&out.remainder)));
                }
                (
                    vec![s],
                    json!({
                        "factors": out.factors.iter().map(oj).collect::<Vec<_>>(),
                        "remainder": oj(&out.remainder),
                    }),
                    None,
                )
            }
            Command::RefineComplete { side, ops } => {
                let [l, f, m, g] = self.ops(ops)?;
                let t = refine_complete(&l, &f, &m, &g, *side)?;
                let fs = [&t.outer, &t.middle, &t.inner];
                (
                    vec![fs.iter().map(|f| paren(r(f))).collect::<Vec<_>>().join("*")],
                    json!({ "side": side, "factors": fs.iter().map(|f| oj(f)).collect::<Vec<_>>() }),
                    None,
                )
            }
            Command::Laplace(e) => {
                let inv = laplace_invariants(&self.op(e)?)?;
                let (h, k) = (inv.h.render(&ctx), inv.k.render(&ctx));
                (
                    vec![format!("h = {h}"), format!("k = {k}")],
                    json!({ "h": h, "k": k }),
                    None,
                )
            }
            Command::Ansatz {
                name,
                operator,
                ty,
                obstacle_order,
                names,
                declaration_order,
                deps,
            } => {
                self.fresh_binding(name)?;
                let a = self.op(operator)?;
                let t = self.ftype(ty)?;
                let mut opts = AnsatzOptions::default();
                if let Some(names) = names {
                    if names.len() != t.len() + 1 {
                        return Err(Error::Ansatz(format!(
                            "`names` needs {} entries (one per factor and one for the remainder)",
                            t.len() + 1
                        )));
                    }
                    let conv = |s: &NameSpec| match s {
                        NameSpec::Prefix(p) => Naming::Prefix(p.clone()),
                        NameSpec::Explicit(v) => Naming::Explicit(v.clone()),
                    };
                    opts.factor_names = names[..t.len()].iter().map(conv).collect();
                    opts.obstacle_names = conv(&names[t.len()]);
                }
                opts.declaration_order = declaration_order.clone();
                if let Some(d) = deps {
                    let mut mask = 0;
                    for v in d {
                        mask |= 1 << ctx.var_index(v)?;
                    }
                    opts.dependency = Dependency::Mask(mask);
                }
                let sys = build_ansatz(self.ctx_mut()?, &a, &t, *obstacle_order, &opts)?;
                let ctx = self.ctx()?;
                let unknowns: Vec<&str> = sys.unknowns.iter().map(|u| u.name.as_str()).collect();
                let mut text = vec![format!("unknowns: {}", unknowns.join(", "))];
                let mut eqs = Vec::new();
                for e in &sys.equations {
                    let p = e.poly.render(ctx);
                    text.push(format!("{}: 0 = {p}", d_monomial(ctx, &e.origin)));
                    eqs.push(json!({ "J": e.origin.as_slice(), "poly": p }));
                }
                let v = json!({ "unknowns": unknowns, "equations": eqs });
                self.systems.insert(name.clone(), sys);
                (text, v, None)
            }
            Command::Eliminate(s) | Command::SolveConst(s) => {
                let sys = self.get_system(s)?;
                let rep = if matches!(cmd, Command::Eliminate(_)) {
                    eliminate_linear(sys)
                } else {
                    solve_constant(sys)
                };
                report_output(&ctx, sys, &rep)
            }
            Command::VerifyCandidate {
                system,
                assignment,
                symbolic,
            } => {
                let sys = self.get_system(system)?;
                let values = assignment
                    .iter()
                    .map(|(u, e)| Ok((u.as_str(), scalar(&self.op(e)?, e)?)))
                    .collect::<Result<Vec<_>>>()?;
                let residual = verify_candidate(sys, &values, *symbolic)?;
                let ok = residual.is_empty();
                let mut text = vec![if ok { "ok".into() } else { "residual:".into() }];
                let mut items = Vec::new();
                for (j, v) in &residual {
                    let s = v.render(&ctx);
                    text.push(format!("{}: {s}", d_monomial(&ctx, j)));
                    items.push(json!({ "J": j.as_slice(), "value": s }));
                }
                (text, json!({ "ok": ok, "residual": items }), Some(ok))
            }
            Command::Vars(_) | Command::Func { .. } | Command::Const(_) | Command::Let { .. } => {
                unreachable!("declarations are handled by execute")
            }
        })
    }

    fn get_system(&self, name: &str) -> Result<&AnsatzSystem> {
        self.systems
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Declarations and bindings as session text. Running it in a fresh
    /// session reproduces the same context and bindings.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let Some(ctx) = &self.ctx else { return out };
        out.push_str(&format!("vars {}\n", ctx.var_names().join(" ")));
        for f in ctx.funcs() {
            let deps: Vec<&str> = ctx
                .var_names()
                .iter()
                .enumerate()
                .filter(|(i, _)| f.deps & (1 << i) != 0)
                .map(|(_, v)| v.as_str())
                .collect();
            out.push_str(&format!("func {}({})\n", f.name, deps.join(", ")));
        }
        for c in ctx.consts() {
            out.push_str(&format!("const {c}\n"));
        }
        for (name, op) in &self.bindings {
            out.push_str(&format!("let {name} = {}\n", op.render(ctx)));
        }
        out
    }
}

fn scalar(op: &Lpdo, text: &str) -> Result<RatFunc> {
    match op.order().finite() {
        None => Ok(RatFunc::zero()),
        Some(0) => Ok(op.coeff(&MultiIndex::zero(op.nvars()))),
        Some(_) => Err(Error::Domain(format!("`{text}` is not a scalar"))),
    }
}

fn class_name(c: &EquationClass, sys: &AnsatzSystem) -> String {
    match c {
        EquationClass::Solved(u) => format!("solved for {}", sys.unknowns[*u].name),
        EquationClass::Trivial => "trivial".into(),
        EquationClass::Residual => "residual".into(),
        EquationClass::Condition => "condition".into(),
        EquationClass::Inconsistent => "inconsistent".into(),
    }
}

fn report_output(ctx: &Context, sys: &AnsatzSystem, rep: &SolveReport) -> CommandOutput {
    let mut text = Vec::new();
    let mut subs = Vec::new();
    for s in &rep.substitutions {
        let name = &sys.unknowns[s.unknown].name;
        let v = s.value.render(ctx);
        text.push(format!("{name} = {v}"));
        subs.push(json!({ "unknown": name, "value": v }));
    }
    let mut eqs = Vec::new();
    for (e, c) in rep.equations.iter().zip(&rep.classes) {
        if matches!(c, EquationClass::Solved(_) | EquationClass::Trivial) {
            continue;
        }
        let p = e.poly.render(ctx);
        let involved: Vec<&str> = sys
            .involved(&e.poly)
            .into_iter()
            .map(|u| sys.unknowns[u].name.as_str())
            .collect();
        let class = class_name(c, sys);
        text.push(format!("{} [{class}]: 0 = {p}", d_monomial(ctx, &e.origin)));
        eqs.push(
            json!({ "J": e.origin.as_slice(), "poly": p, "class": class, "unknowns": involved }),
        );
    }
    let status = rep.status.as_ref().map(|s| match s {
        ConstantStatus::Unique => "unique".to_string(),
        ConstantStatus::Underdetermined(free) => format!(
            "underdetermined, free: {}",
            free.iter()
                .map(|u| sys.unknowns[*u].name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        ConstantStatus::Inconsistent => "inconsistent".to_string(),
        ConstantStatus::Undecided => "undecided".to_string(),
    });
    if let Some(s) = &status {
        text.push(format!("status: {s}"));
    }
    (
        text,
        json!({ "substitutions": subs, "equations": eqs, "status": status }),
        None,
    )
}

/// Options for [`run`].
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Keep only the records of verification commands.
    pub check_only: bool,
}

/// Result of running a session script.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub records: Vec<Record>,
    /// The error that stopped the run, wrapped with its command index.
    pub error: Option<Error>,
    pub session: Session,
}

impl RunReport {
    /// Every verification command passed.
    pub fn all_verified(&self) -> bool {
        self.records.iter().all(|r| r.verified != Some(false))
    }

    pub fn success(&self) -> bool {
        self.error.is_none() && self.all_verified()
    }

    /// Text output: each command line followed by its indented result.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.input);
            out.push('\n');
            for line in &r.text {
                out.push_str("  ");
                out.push_str(line);
                out.push('\n');
            }
        }
        out
    }

    /// One JSON object per line.
    pub fn json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| r.to_json().to_string() + "\n")
            .collect()
    }
}

/// Runs a session script, stopping at the first error.
pub fn run(script: &str, opts: RunOptions) -> RunReport {
    let mut session = Session::new();
    let mut records = Vec::new();
    let mut index = 0;
    let mut error = None;
    for line in script.lines() {
        let cmd = match Command::parse(line) {
            Ok(None) => continue,
            Ok(Some(c)) => {
                index += 1;
                c
            }
            Err(e) => {
                index += 1;
                error = Some(Error::Session {
                    index,
                    source: Box::new(e),
                });
                break;
            }
        };
        match session.execute(&cmd) {
            Ok(out) => {
                session.log.push(line.trim().to_string());
                if let Some((text, result, verified)) = out {
                    if opts.check_only && !cmd.is_verification() {
                        continue;
                    }
                    records.push(Record {
                        index,
                        command: cmd.keyword(),
                        input: strip_comment(line).to_string(),
                        text,
                        result,
                        verified,
                    });
                }
            }
            Err(e) => {
                error = Some(Error::Session {
                    index,
                    source: Box::new(e),
                });
                break;
            }
        }
    }
    RunReport {
        records,
        error,
        session,
    }
}
