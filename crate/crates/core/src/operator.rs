//! Linear partial differential operators `L = Σ a_J D^J` over the
//! coefficient field, with composition, principal symbols, formal adjoints
//! and action on scalars.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::{Context, RatFunc};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::symbol::SymbolPoly;

/// Order of an operator; the zero operator has order `-∞`, which compares
/// below every finite order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Order {
    MinusInfinity,
    Finite(u32),
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::MinusInfinity => None,
        }
    }

    /// Numeric form with `-∞` mapped to `-1`, for error reports.
    pub fn as_i64(self) -> i64 {
        self.finite().map_or(-1, i64::from)
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::MinusInfinity => f.write_str("-inf"),
            Order::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of `K[D_1, ..., D_n]`.
#[derive(Clone, PartialEq, Debug)]
pub struct Lpdo {
    nvars: usize,
    terms: BTreeMap<MultiIndex, RatFunc>,
}

impl Lpdo {
    pub fn zero(nvars: usize) -> Self {
        Lpdo {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::scalar(nvars, RatFunc::one())
    }

    /// Order-0 embedding of a field element.
    pub fn scalar(nvars: usize, a: RatFunc) -> Self {
        Self::monomial(MultiIndex::zero(nvars), a)
    }

    /// `a · D^J`.
    pub fn monomial(j: MultiIndex, a: RatFunc) -> Self {
        let nvars = j.len();
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert(j, a);
        }
        Lpdo { nvars, terms }
    }

    /// `D_i`.
    pub fn d(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), RatFunc::one())
    }

    /// `D_i` for the named geometric variable.
    pub fn d_named(ctx: &Context, var: &str) -> Result<Self> {
        Ok(Self::d(ctx.nvars(), ctx.var_index(var)?))
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (MultiIndex, RatFunc)>,
    ) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (j, a) in terms {
            if j.len() != nvars {
                return Err(Error::ContextMismatch {
                    left: nvars,
                    right: j.len(),
                });
            }
            out.add_term(j, a);
        }
        Ok(out)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(j, a)| j.is_zero() && a.is_one())
    }

    pub fn coeff(&self, j: &MultiIndex) -> RatFunc {
        self.terms.get(j).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Terms in lexicographic multi-index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RatFunc)> {
        self.terms.iter()
    }

    /// Terms in canonical print order: decreasing `|J|`, then decreasing lex.
    pub fn sorted_terms(&self) -> Vec<(&MultiIndex, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| MultiIndex::print_order(a.0, b.0));
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Order {
        self.terms
            .keys()
            .map(MultiIndex::order)
            .max()
            .map_or(Order::MinusInfinity, Order::Finite)
    }

    fn add_term(&mut self, j: MultiIndex, a: RatFunc) {
        if a.is_zero() {
            return;
        }
        match self.terms.get_mut(&j) {
            Some(old) => {
                let s = old.add(&a);
                if s.is_zero() {
                    self.terms.remove(&j);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(j, a);
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (j, a) in &other.terms {
            out.add_term(j.clone(), a.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Lpdo {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(j, a)| (j.clone(), a.neg()))
                .collect(),
        }
    }

    /// Left multiplication by a field element, `a · L`.
    pub fn scale(&self, a: &RatFunc) -> Self {
        let mut out = Self::zero(self.nvars);
        for (j, b) in &self.terms {
            out.add_term(j.clone(), a.mul(b));
        }
        out
    }

    /// `P ∘ Q`, expanding `D^I ∘ b = Σ_{K ≤ I} binom(I, K) ∂^K(b) D^{I-K}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        let mut derivs: HashMap<(MultiIndex, MultiIndex), RatFunc> = HashMap::new();
        for (i, a) in &self.terms {
            for k in i.sub_indices() {
                let shift = i.checked_sub(&k).expect("k <= i");
                let binom = BigRational::from_integer(BigInt::from(i.binomial(&k)));
                for (j, b) in &other.terms {
                    let db = derivs
                        .entry((j.clone(), k.clone()))
                        .or_insert_with(|| b.derive_multi(&k));
                    if db.is_zero() {
                        continue;
                    }
                    let c = a.mul(db).scale(&binom);
                    out.add_term(shift.add(j), c);
                }
            }
        }
        Ok(out)
    }

    /// Composes a chain of operators left to right.
    pub fn compose_all<'a>(nvars: usize, ops: impl IntoIterator<Item = &'a Lpdo>) -> Result<Self> {
        let mut acc = Self::one(nvars);
        for op in ops {
            acc = acc.compose(op)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = acc.compose(self).expect("same context");
        }
        acc
    }

    /// Principal symbol `Σ_{|J| = d} a_J X^J`; zero for the zero operator.
    pub fn symbol(&self) -> SymbolPoly {
        match self.order() {
            Order::MinusInfinity => SymbolPoly::zero(self.nvars),
            Order::Finite(d) => SymbolPoly::from_terms(
                self.nvars,
                self.terms
                    .iter()
                    .filter(|(j, _)| j.order() == d)
                    .map(|(j, a)| (j.clone(), a.clone())),
            )
            .expect("top-order terms are homogeneous"),
        }
    }

    /// Operator obtained by substituting `D_i` for `X_i`.
    pub fn hat(s: &SymbolPoly) -> Self {
        let mut out = Self::zero(s.nvars());
        for (j, a) in s.terms() {
            out.add_term(j.clone(), a.clone());
        }
        out
    }

    /// Formal adjoint `L† = Σ_J (-1)^{|J|} D^J ∘ a_J`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (j, a) in &self.terms {
            let sign = if j.order() % 2 == 0 { 1 } else { -1 };
            // each derivative of `a` is one step from a smaller one
            let mut derivs: BTreeMap<MultiIndex, RatFunc> = BTreeMap::new();
            for k in j.sub_indices() {
                let dk = match (0..k.len()).find(|&i| k.get(i) > 0) {
                    None => a.clone(),
                    Some(i) => {
                        let prev = k
                            .checked_sub(&MultiIndex::unit(k.len(), i))
                            .expect("k_i > 0");
                        derivs[&prev].derive(i)
                    }
                };
                let shift = j.checked_sub(&k).expect("k <= j");
                let c = BigRational::from_integer(BigInt::from(sign * j.binomial(&k) as i64));
                out.add_term(shift, dk.scale(&c));
                derivs.insert(k, dk);
            }
        }
        out
    }

    /// `L(f) = Σ a_J ∂^J f`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        self.terms.iter().fold(RatFunc::zero(), |acc, (j, a)| {
            acc.add(&a.mul(&f.derive_multi(j)))
        })
    }

    /// `L(f)` after checking `f` against the context.
    pub fn apply_checked(&self, ctx: &Context, f: &RatFunc) -> Result<RatFunc> {
        if ctx.nvars() != self.nvars {
            return Err(Error::ContextMismatch {
                left: self.nvars,
                right: ctx.nvars(),
            });
        }
        ctx.check(f)?;
        Ok(self.apply(f))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (j, a) in &self.terms {
            out.add_term(j.clone(), f(a)?);
        }
        Ok(out)
    }

    /// Part of the operator of order below `d`.
    pub fn lower_part(&self, d: u32) -> Self {
        Lpdo {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(j, _)| j.order() < d)
                .map(|(j, a)| (j.clone(), a.clone()))
                .collect(),
        }
    }
}

// Operator sugar. These panic on a context mismatch; the `try_*` and
// `compose` methods report it as an error instead.

impl Add for &Lpdo {
    type Output = Lpdo;
    fn add(self, rhs: &Lpdo) -> Lpdo {
        self.try_add(rhs).expect("context mismatch")
    }
}

impl Sub for &Lpdo {
    type Output = Lpdo;
    fn sub(self, rhs: &Lpdo) -> Lpdo {
        self.try_sub(rhs).expect("context mismatch")
    }
}

impl Mul for &Lpdo {
    type Output = Lpdo;
    fn mul(self, rhs: &Lpdo) -> Lpdo {
        self.compose(rhs).expect("context mismatch")
    }
}

impl Neg for &Lpdo {
    type Output = Lpdo;
    fn neg(self) -> Lpdo {
        Lpdo::neg(self)
    }
}
