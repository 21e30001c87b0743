//! The coefficient field: rational functions over `Q` in the geometric
//! variables, jets of declared function symbols, and constant symbols,
//! together with the commuting derivations `∂_1, ..., ∂_n`.

mod modular;
mod poly;
mod ratfunc;

pub use poly::{Field, Monomial, Poly};
pub use ratfunc::{substitute_poly, RatFunc};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// A generator of the coefficient field.
///
/// The derived order is the canonical variable order: geometric variables
/// first, then jets by function symbol and multi-index, then constants.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Indeterminate {
    Var(u32),
    /// `u_J`: the `J`-th derivative of function symbol `func`. `deps` is the
    /// bitmask of geometric variables `u` depends on; `J` vanishes outside it.
    Jet {
        func: u32,
        index: MultiIndex,
        deps: u32,
    },
    Const(u32),
}

pub(crate) enum Derivative {
    Zero,
    One,
    Jet(Indeterminate),
}

impl Indeterminate {
    pub(crate) fn derivative(&self, i: usize) -> Derivative {
        match self {
            Indeterminate::Var(j) if *j as usize == i => Derivative::One,
            Indeterminate::Var(_) | Indeterminate::Const(_) => Derivative::Zero,
            Indeterminate::Jet { func, index, deps } => {
                if deps & (1 << i) == 0 {
                    Derivative::Zero
                } else {
                    Derivative::Jet(Indeterminate::Jet {
                        func: *func,
                        index: index.bump(i),
                        deps: *deps,
                    })
                }
            }
        }
    }

    /// Function symbol of a jet.
    pub fn func(&self) -> Option<u32> {
        match self {
            Indeterminate::Jet { func, .. } => Some(*func),
            _ => None,
        }
    }
}

/// Polynomial over `Q` in the field's indeterminates.
pub type MultiPoly = Poly<Indeterminate, BigRational>;

/// Derivative of a polynomial along the `i`-th geometric variable.
pub fn derive_poly(p: &MultiPoly, i: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for (m, c) in p.terms() {
        for (v, e) in m.powers() {
            let factor = match v.derivative(i) {
                Derivative::Zero => continue,
                Derivative::One => Monomial::one(),
                Derivative::Jet(w) => Monomial::var(w),
            };
            let rest = m
                .div(&Monomial::var(v.clone()))
                .expect("variable occurs in monomial");
            let coeff = c * BigRational::from_integer((*e).into());
            out.add_term(rest.mul(&factor), coeff);
        }
    }
    out
}

/// Declaration of a function symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuncDecl {
    pub name: String,
    /// Bitmask over geometric variables.
    pub deps: u32,
}

/// What a name refers to in a [`Context`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Name {
    Var(usize),
    Func(usize),
    Const(usize),
}

/// Symbol table for the coefficient field.
///
/// Values (polynomials, rational functions, operators) refer to generators
/// by index, so a context only ever grows: everything built against an
/// earlier state stays valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    vars: Vec<String>,
    funcs: Vec<FuncDecl>,
    consts: Vec<String>,
    counter: u64,
}

const MAX_VARS: usize = 32;

impl Context {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::Context(
                "at least one geometric variable is required".into(),
            ));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::Context(format!(
                "at most {MAX_VARS} geometric variables"
            )));
        }
        let mut ctx = Context {
            vars: Vec::new(),
            funcs: Vec::new(),
            consts: Vec::new(),
            counter: 0,
        };
        for v in vars {
            let v = v.as_ref();
            ctx.check_fresh(v)?;
            ctx.vars.push(v.to_string());
        }
        Ok(ctx)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn funcs(&self) -> &[FuncDecl] {
        &self.funcs
    }

    pub fn consts(&self) -> &[String] {
        &self.consts
    }

    pub fn lookup(&self, name: &str) -> Option<Name> {
        if let Some(i) = self.vars.iter().position(|v| v == name) {
            return Some(Name::Var(i));
        }
        if let Some(i) = self.funcs.iter().position(|f| f.name == name) {
            return Some(Name::Func(i));
        }
        self.consts.iter().position(|c| c == name).map(Name::Const)
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '#');
        if !valid {
            return Err(Error::Context(format!("invalid name `{name}`")));
        }
        if self.lookup(name).is_some() {
            return Err(Error::Context(format!("name `{name}` is already declared")));
        }
        Ok(())
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Context(format!("`{name}` is not a geometric variable")))
    }

    /// Declares a function symbol depending on the named geometric variables.
    pub fn declare_function<S: AsRef<str>>(&mut self, name: &str, deps: &[S]) -> Result<usize> {
        let mut mask = 0u32;
        for d in deps {
            mask |= 1 << self.var_index(d.as_ref())?;
        }
        self.declare_function_mask(name, mask)
    }

    /// Declares a function symbol depending on every geometric variable.
    pub fn declare_function_all(&mut self, name: &str) -> Result<usize> {
        let mask = self.all_vars_mask();
        self.declare_function_mask(name, mask)
    }

    pub fn declare_function_mask(&mut self, name: &str, deps: u32) -> Result<usize> {
        self.check_fresh(name)?;
        if deps & !self.all_vars_mask() != 0 {
            return Err(Error::Context(format!(
                "dependency set of `{name}` names undeclared variables"
            )));
        }
        self.funcs.push(FuncDecl {
            name: name.to_string(),
            deps,
        });
        Ok(self.funcs.len() - 1)
    }

    pub fn declare_constant(&mut self, name: &str) -> Result<usize> {
        self.check_fresh(name)?;
        self.consts.push(name.to_string());
        Ok(self.consts.len() - 1)
    }

    pub fn all_vars_mask(&self) -> u32 {
        if self.vars.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.vars.len()) - 1
        }
    }

    /// Next generated name `prefix#k`; advances the counter.
    pub fn fresh_name(&mut self, prefix: &str) -> String {
        loop {
            self.counter += 1;
            let name = format!("{prefix}#{}", self.counter);
            if self.lookup(&name).is_none() {
                return name;
            }
        }
    }

    /// `name` if unused, otherwise a generated `name#k`.
    pub fn unused_name(&mut self, name: &str) -> String {
        if self.lookup(name).is_none() {
            name.to_string()
        } else {
            self.fresh_name(name)
        }
    }

    pub fn var(&self, i: usize) -> RatFunc {
        assert!(i < self.nvars(), "variable index out of range");
        RatFunc::var(i)
    }

    pub fn constant(&self, id: usize) -> RatFunc {
        RatFunc::from_indeterminate(Indeterminate::Const(id as u32))
    }

    /// The order-0 jet of a function symbol.
    pub fn func(&self, id: usize) -> RatFunc {
        self.jet(id, &MultiIndex::zero(self.nvars()))
            .expect("zero jet is always valid")
    }

    pub fn func_indeterminate(&self, id: usize, index: &MultiIndex) -> Result<Indeterminate> {
        let decl = self
            .funcs
            .get(id)
            .ok_or_else(|| Error::Context(format!("unknown function symbol #{id}")))?;
        if index.len() != self.nvars() {
            return Err(Error::Context("jet index has wrong length".into()));
        }
        for (i, &j) in index.as_slice().iter().enumerate() {
            if j > 0 && decl.deps & (1 << i) == 0 {
                return Err(Error::Context(format!(
                    "`{}` does not depend on `{}`",
                    decl.name, self.vars[i]
                )));
            }
        }
        Ok(Indeterminate::Jet {
            func: id as u32,
            index: index.clone(),
            deps: decl.deps,
        })
    }

    pub fn jet(&self, id: usize, index: &MultiIndex) -> Result<RatFunc> {
        Ok(RatFunc::from_indeterminate(
            self.func_indeterminate(id, index)?,
        ))
    }

    /// Checks that every generator of `p` is declared here.
    pub fn check_poly(&self, p: &MultiPoly) -> Result<()> {
        for v in p.vars() {
            let ok = match &v {
                Indeterminate::Var(i) => (*i as usize) < self.nvars(),
                Indeterminate::Const(i) => (*i as usize) < self.consts.len(),
                Indeterminate::Jet { func, index, deps } => self
                    .funcs
                    .get(*func as usize)
                    .is_some_and(|d| d.deps == *deps && index.len() == self.nvars()),
            };
            if !ok {
                return Err(Error::Context(format!(
                    "indeterminate {v:?} is not declared"
                )));
            }
        }
        Ok(())
    }

    pub fn check(&self, f: &RatFunc) -> Result<()> {
        self.check_poly(f.numer())?;
        self.check_poly(f.denom())
    }

    /// `∂_i f`, validated against this context.
    pub fn derive(&self, f: &RatFunc, i: usize) -> Result<RatFunc> {
        if i >= self.nvars() {
            return Err(Error::Context(format!(
                "no geometric variable with index {i}"
            )));
        }
        self.check(f)?;
        Ok(f.derive(i))
    }
}
