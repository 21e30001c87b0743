//! Coefficient comparison for factorizations with unknown coefficients.
//!
//! [`build_ansatz`] writes every factor of a declared type as
//! `hat(S_i) + Σ_{|J| < deg S_i} u_J D^J` and the remainder as
//! `Σ_{|J| ≤ k} r_J D^J`, with fresh function symbols for the unknowns, and
//! collects the coefficients of `F_1 ∘ ... ∘ F_k + R − A`. Each nonzero
//! coefficient gives one equation (its numerator, a jet polynomial).
//!
//! [`eliminate_linear`] removes unknowns that occur linearly with a rational
//! coefficient; [`solve_constant`] restricts the unknowns to constants and
//! solves what is left by exact elimination; [`verify_candidate`] checks
//! concrete values.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::coeff::{substitute_poly, Context, Indeterminate, MultiPoly, RatFunc};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::operator::Lpdo;
use crate::refine::IncompleteFactorization;
use crate::symbol::FactorizationType;

/// Which geometric variables the unknowns depend on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Dependency {
    #[default]
    All,
    /// Bitmask of geometric variables.
    Mask(u32),
}

/// How the unknowns of one skeleton are named.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Naming {
    /// `<prefix><digits of J>`, e.g. `l10`.
    Prefix(String),
    /// One name per unknown, in print order of the multi-indices.
    Explicit(Vec<String>),
}

/// Options for [`build_ansatz`].
#[derive(Clone, PartialEq, Debug)]
pub struct AnsatzOptions {
    /// One entry per factor; missing entries default to `u1`, `u2`, ...
    pub factor_names: Vec<Naming>,
    pub obstacle_names: Naming,
    pub dependency: Dependency,
    /// Order in which factor unknowns are declared (a permutation of the
    /// factor indices). Remainder unknowns always come first. This is the
    /// order in which the solvers try unknowns.
    pub declaration_order: Option<Vec<usize>>,
}

impl Default for AnsatzOptions {
    fn default() -> Self {
        AnsatzOptions {
            factor_names: Vec::new(),
            obstacle_names: Naming::Prefix("r".into()),
            dependency: Dependency::All,
            declaration_order: None,
        }
    }
}

impl AnsatzOptions {
    pub fn prefixes<S: AsRef<str>>(factors: &[S], obstacle: &str) -> Self {
        AnsatzOptions {
            factor_names: factors
                .iter()
                .map(|p| Naming::Prefix(p.as_ref().to_string()))
                .collect(),
            obstacle_names: Naming::Prefix(obstacle.to_string()),
            ..Self::default()
        }
    }
}

/// An unknown coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Unknown {
    pub name: String,
    /// Function symbol id in the context.
    pub func: usize,
    /// Factor index, or `None` for the remainder.
    pub factor: Option<usize>,
    /// Multi-index of the skeleton term it multiplies.
    pub index: MultiIndex,
    /// Bitmask of the geometric variables it depends on.
    pub deps: u32,
}

/// One coefficient of `F_1 ∘ ... ∘ F_k + R − A`.
#[derive(Clone, PartialEq, Debug)]
pub struct Equation {
    pub origin: MultiIndex,
    pub poly: MultiPoly,
}

#[derive(Clone, PartialEq, Debug)]
pub struct AnsatzSystem {
    pub target: Lpdo,
    pub factorization_type: FactorizationType,
    pub factors: Vec<Lpdo>,
    pub obstacle: Lpdo,
    pub obstacle_order: i32,
    pub unknowns: Vec<Unknown>,
    pub equations: Vec<Equation>,
}

fn index_digits(j: &MultiIndex) -> String {
    j.as_slice().iter().map(u32::to_string).collect()
}

fn skeleton(
    ctx: &mut Context,
    head: Lpdo,
    indices: &[MultiIndex],
    naming: &Naming,
    mask: u32,
    factor: Option<usize>,
    unknowns: &mut Vec<Unknown>,
) -> Result<Lpdo> {
    if let Naming::Explicit(names) = naming {
        if names.len() != indices.len() {
            return Err(Error::Ansatz(format!(
                "expected {} names, got {}",
                indices.len(),
                names.len()
            )));
        }
    }
    let mut op = head;
    for (k, j) in indices.iter().enumerate() {
        let wanted = match naming {
            Naming::Prefix(p) => format!("{p}{}", index_digits(j)),
            Naming::Explicit(names) => names[k].clone(),
        };
        let name = ctx.unused_name(&wanted);
        let func = ctx.declare_function_mask(&name, mask)?;
        op = op.try_add(&Lpdo::monomial(j.clone(), ctx.func(func)))?;
        unknowns.push(Unknown {
            name,
            func,
            factor,
            index: j.clone(),
            deps: mask,
        });
    }
    Ok(op)
}

/// Builds the ansatz `A = F_1 ∘ ... ∘ F_k + R` for the type `ty`, with a
/// remainder of order at most `obstacle_order` (`-1` forces `R = 0`).
pub fn build_ansatz(
    ctx: &mut Context,
    a: &Lpdo,
    ty: &FactorizationType,
    obstacle_order: i32,
    opts: &AnsatzOptions,
) -> Result<AnsatzSystem> {
    let n = ctx.nvars();
    if a.nvars() != n || ty.nvars() != n {
        return Err(Error::ContextMismatch {
            left: n,
            right: if a.nvars() != n {
                a.nvars()
            } else {
                ty.nvars()
            },
        });
    }
    if ty.product() != a.symbol() {
        return Err(Error::SymbolMismatch(
            "product of the type symbols differs from the symbol of A".into(),
        ));
    }
    let total = ty.product().degree().unwrap_or(0) as i32;
    if obstacle_order < -1 || obstacle_order >= total {
        return Err(Error::Domain(format!(
            "obstacle order must lie in -1..{total}, got {obstacle_order}"
        )));
    }
    let mask = match opts.dependency {
        Dependency::All => ctx.all_vars_mask(),
        Dependency::Mask(m) => m,
    };
    let k = ty.len();
    let order: Vec<usize> = match &opts.declaration_order {
        Some(o) => {
            let mut sorted = o.clone();
            sorted.sort_unstable();
            if sorted != (0..k).collect::<Vec<_>>() {
                return Err(Error::Ansatz(
                    "declaration order must be a permutation of the factors".into(),
                ));
            }
            o.clone()
        }
        None => (0..k).collect(),
    };

    let mut unknowns = Vec::new();
    let obstacle_indices = if obstacle_order < 0 {
        Vec::new()
    } else {
        MultiIndex::up_to_order(n, obstacle_order as u32)
    };
    let obstacle = skeleton(
        ctx,
        Lpdo::zero(n),
        &obstacle_indices,
        &opts.obstacle_names,
        mask,
        None,
        &mut unknowns,
    )?;

    let mut factors: Vec<Option<Lpdo>> = vec![None; k];
    for &i in &order {
        let s = &ty.factors()[i];
        let deg = s.degree().expect("type symbols are nonzero");
        let indices: Vec<MultiIndex> = if deg == 0 {
            Vec::new()
        } else {
            MultiIndex::up_to_order(n, deg - 1)
        };
        let naming = opts
            .factor_names
            .get(i)
            .cloned()
            .unwrap_or_else(|| Naming::Prefix(format!("u{}", i + 1)));
        factors[i] = Some(skeleton(
            ctx,
            Lpdo::hat(s),
            &indices,
            &naming,
            mask,
            Some(i),
            &mut unknowns,
        )?);
    }
    let factors: Vec<Lpdo> = factors.into_iter().map(Option::unwrap).collect();
    let residual = Lpdo::compose_all(n, &factors)?
        .try_add(&obstacle)?
        .try_sub(a)?;
    let equations = residual
        .sorted_terms()
        .into_iter()
        .map(|(j, c)| Equation {
            origin: j.clone(),
            poly: c.numer().clone(),
        })
        .collect();
    Ok(AnsatzSystem {
        target: a.clone(),
        factorization_type: ty.clone(),
        factors,
        obstacle,
        obstacle_order,
        unknowns,
        equations,
    })
}

impl AnsatzSystem {
    pub fn unknown(&self, name: &str) -> Option<&Unknown> {
        self.unknowns.iter().find(|u| u.name == name)
    }

    fn unknown_funcs(&self) -> BTreeSet<u32> {
        self.unknowns.iter().map(|u| u.func as u32).collect()
    }

    /// Unknowns (by position in `unknowns`) whose jets occur in `p`.
    pub fn involved(&self, p: &MultiPoly) -> Vec<usize> {
        let funcs: BTreeSet<u32> = p.vars().iter().filter_map(Indeterminate::func).collect();
        (0..self.unknowns.len())
            .filter(|&i| funcs.contains(&(self.unknowns[i].func as u32)))
            .collect()
    }

    fn assignment_map(
        &self,
        assignment: &[(&str, RatFunc)],
        allow_symbolic: bool,
    ) -> Result<BTreeMap<u32, RatFunc>> {
        let mut map = BTreeMap::new();
        for (name, value) in assignment {
            let u = self
                .unknown(name)
                .ok_or_else(|| Error::UnknownName((*name).to_string()))?;
            map.insert(u.func as u32, value.clone());
        }
        if !allow_symbolic {
            if let Some(u) = self
                .unknowns
                .iter()
                .find(|u| !map.contains_key(&(u.func as u32)))
            {
                return Err(Error::Ansatz(format!("no value for unknown `{}`", u.name)));
            }
        }
        Ok(map)
    }

    /// The skeleton factorization with the given values substituted.
    pub fn instantiate(
        &self,
        assignment: &[(&str, RatFunc)],
        allow_symbolic: bool,
    ) -> Result<IncompleteFactorization> {
        let map = self.assignment_map(assignment, allow_symbolic)?;
        let value = jet_values(&map);
        let subst = |op: &Lpdo| op.map_coeffs(|c| c.substitute(&value));
        let factors = self.factors.iter().map(subst).collect::<Result<Vec<_>>>()?;
        Ok(IncompleteFactorization::new(
            self.target.clone(),
            factors,
            subst(&self.obstacle)?,
            self.factorization_type.clone(),
        ))
    }
}

/// `u_J ↦ ∂^J value(u)` for the functions in `map`.
fn jet_values(map: &BTreeMap<u32, RatFunc>) -> impl Fn(&Indeterminate) -> Option<RatFunc> + '_ {
    move |v| match v {
        Indeterminate::Jet { func, index, .. } => map.get(func).map(|e| e.derive_multi(index)),
        _ => None,
    }
}

/// Substitutes the given values into the equations and returns the
/// nonzero results with their origins. An empty list means the candidate
/// solves the system.
pub fn verify_candidate(
    sys: &AnsatzSystem,
    assignment: &[(&str, RatFunc)],
    allow_symbolic: bool,
) -> Result<Vec<(MultiIndex, RatFunc)>> {
    let map = sys.assignment_map(assignment, allow_symbolic)?;
    let value = jet_values(&map);
    Ok(sys
        .equations
        .iter()
        .map(|e| (e.origin.clone(), substitute_poly(&e.poly, &value)))
        .filter(|(_, r)| !r.is_zero())
        .collect())
}

/// What became of an equation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EquationClass {
    /// Used to solve for the unknown at this position.
    Solved(usize),
    /// Vanished identically.
    Trivial,
    /// Still involves unknowns.
    Residual,
    /// Free of unknowns; a condition on the declared symbols.
    Condition,
    /// A nonzero element of the field free of symbols: no solution.
    Inconsistent,
}

/// Outcome of [`solve_constant`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConstantStatus {
    Unique,
    /// Solutions exist for every value of the listed free unknowns.
    Underdetermined(Vec<usize>),
    Inconsistent,
    /// Nonlinear equations or symbol conditions remain.
    Undecided,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Substitution {
    /// Position in [`AnsatzSystem::unknowns`].
    pub unknown: usize,
    /// Value in terms of the remaining unknowns.
    pub value: RatFunc,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SolveReport {
    /// Jets of positive order were set to zero first.
    pub constant_mode: bool,
    /// In the order performed; every value is already reduced by the later
    /// substitutions.
    pub substitutions: Vec<Substitution>,
    /// The equations after substitution, in the original order.
    pub equations: Vec<Equation>,
    pub classes: Vec<EquationClass>,
    pub status: Option<ConstantStatus>,
}

impl SolveReport {
    /// Indices of equations still involving unknowns.
    pub fn residual(&self) -> impl Iterator<Item = &Equation> {
        self.equations
            .iter()
            .zip(&self.classes)
            .filter(|(_, c)| **c == EquationClass::Residual)
            .map(|(e, _)| e)
    }

    pub fn value_of(&self, unknown: usize) -> Option<&RatFunc> {
        self.substitutions
            .iter()
            .find(|s| s.unknown == unknown)
            .map(|s| &s.value)
    }

    /// Applies all substitutions at once to the original equations.
    pub fn replay(&self, sys: &AnsatzSystem) -> Vec<RatFunc> {
        let map: BTreeMap<u32, RatFunc> = self
            .substitutions
            .iter()
            .map(|s| (sys.unknowns[s.unknown].func as u32, s.value.clone()))
            .collect();
        let funcs = sys.unknown_funcs();
        let constant = self.constant_mode;
        let value = move |v: &Indeterminate| match v {
            Indeterminate::Jet { func, index, .. } => {
                if constant && funcs.contains(func) && !index.is_zero() {
                    Some(RatFunc::zero())
                } else {
                    map.get(func).map(|e| e.derive_multi(index))
                }
            }
            _ => None,
        };
        sys.equations
            .iter()
            .map(|e| substitute_poly(&e.poly, &value))
            .collect()
    }

    /// Checks that [`SolveReport::replay`] reproduces the recorded
    /// equations, up to factors free of unknowns.
    pub fn replays(&self, sys: &AnsatzSystem) -> bool {
        let funcs = sys.unknown_funcs();
        self.replay(sys).iter().zip(&self.equations).all(|(r, e)| {
            match (r.is_zero(), e.poly.is_zero()) {
                (true, true) => true,
                (false, false) => RatFunc::from_poly(e.poly.clone())
                    .div(r)
                    .map(|q| {
                        !q.indeterminates()
                            .iter()
                            .any(|v| v.func().is_some_and(|f| funcs.contains(&f)))
                    })
                    .unwrap_or(false),
                _ => false,
            }
        })
    }
}

struct Solver<'a> {
    sys: &'a AnsatzSystem,
    funcs: BTreeSet<u32>,
    zeros: Vec<Indeterminate>,
    substitutions: Vec<Substitution>,
    equations: Vec<Equation>,
    solved_by: Vec<Option<usize>>,
}

impl<'a> Solver<'a> {
    fn new(sys: &'a AnsatzSystem) -> Self {
        let n = sys.target.nvars();
        Solver {
            sys,
            funcs: sys.unknown_funcs(),
            zeros: sys
                .unknowns
                .iter()
                .map(|u| Indeterminate::Jet {
                    func: u.func as u32,
                    index: MultiIndex::zero(n),
                    deps: u.deps,
                })
                .collect(),
            substitutions: Vec::new(),
            equations: sys.equations.clone(),
            solved_by: vec![None; sys.equations.len()],
        }
    }

    fn has_unknowns(&self, p: &MultiPoly) -> bool {
        p.vars()
            .iter()
            .any(|v| v.func().is_some_and(|f| self.funcs.contains(&f)))
    }

    fn mentions(&self, p: &MultiPoly, u: usize) -> bool {
        let f = self.sys.unknowns[u].func as u32;
        p.vars().iter().any(|v| v.func() == Some(f))
    }

    /// `u := value` everywhere, including earlier substitution values.
    fn substitute(&mut self, u: usize, value: RatFunc) {
        let f = self.sys.unknowns[u].func as u32;
        let sub = |v: &Indeterminate| match v {
            Indeterminate::Jet { func, index, .. } if *func == f => Some(value.derive_multi(index)),
            _ => None,
        };
        for e in &mut self.equations {
            if e.poly.vars().iter().any(|v| v.func() == Some(f)) {
                e.poly = substitute_poly(&e.poly, &sub).numer().clone();
            }
        }
        for s in &mut self.substitutions {
            s.value = s
                .value
                .substitute(&sub)
                .expect("substitution keeps denominators nonzero");
        }
        self.substitutions.push(Substitution { unknown: u, value });
    }

    /// Sets every jet of positive order of every unknown to zero.
    fn zero_derivatives(&mut self) {
        let funcs = self.funcs.clone();
        let sub = |v: &Indeterminate| match v {
            Indeterminate::Jet { func, index, .. } if funcs.contains(func) && !index.is_zero() => {
                Some(RatFunc::zero())
            }
            _ => None,
        };
        for e in &mut self.equations {
            e.poly = substitute_poly(&e.poly, &sub).numer().clone();
        }
    }

    /// `p = c·u + rest` with `rest` free of `u` and its jets; returns `(c, rest)`.
    fn linear_in(&self, p: &MultiPoly, u: usize) -> Option<(MultiPoly, MultiPoly)> {
        let v = &self.zeros[u];
        if p.degree_in(v) != 1 {
            return None;
        }
        let mut parts = p.coeffs_in(v);
        let c = parts.remove(&1).expect("degree one");
        let rest = parts.remove(&0).unwrap_or_else(MultiPoly::zero);
        if self.mentions(&c, u) || self.mentions(&rest, u) {
            return None;
        }
        Some((c, rest))
    }

    /// One linear step; `rational_only` restricts `c` to nonzero rationals.
    fn linear_step(&mut self, rational_only: bool) -> bool {
        for idx in scan_order(&self.equations) {
            if self.solved_by[idx].is_some() || self.equations[idx].poly.is_zero() {
                continue;
            }
            for u in 0..self.sys.unknowns.len() {
                let Some((c, rest)) = self.linear_in(&self.equations[idx].poly, u) else {
                    continue;
                };
                let value = if rational_only {
                    let Some(q) = c.as_constant() else { continue };
                    RatFunc::from_poly(rest.scale(&(-q.recip())))
                } else {
                    if self.has_unknowns(&c) {
                        continue;
                    }
                    RatFunc::from_poly(rest.neg())
                        .div(&RatFunc::from_poly(c))
                        .expect("coefficient is nonzero")
                };
                self.solved_by[idx] = Some(u);
                self.substitute(u, value);
                return true;
            }
        }
        false
    }

    /// An equation `c·u^k` with `c` free of unknowns forces `u = 0`.
    fn monomial_step(&mut self) -> bool {
        for idx in scan_order(&self.equations) {
            if self.solved_by[idx].is_some() {
                continue;
            }
            let p = &self.equations[idx].poly;
            let involved = self.sys.involved(p);
            let [u] = involved[..] else { continue };
            let v = &self.zeros[u];
            let parts = p.coeffs_in(v);
            if parts.len() != 1 || parts.contains_key(&0) {
                continue;
            }
            if parts.values().any(|c| self.has_unknowns(c)) {
                continue;
            }
            self.solved_by[idx] = Some(u);
            self.substitute(u, RatFunc::zero());
            return true;
        }
        false
    }

    fn classify(&self) -> Vec<EquationClass> {
        self.equations
            .iter()
            .zip(&self.solved_by)
            .map(|(e, s)| match s {
                Some(u) => EquationClass::Solved(*u),
                None if e.poly.is_zero() => EquationClass::Trivial,
                None if self.has_unknowns(&e.poly) => EquationClass::Residual,
                None if e
                    .poly
                    .vars()
                    .iter()
                    .any(|v| !matches!(v, Indeterminate::Var(_))) =>
                {
                    EquationClass::Condition
                }
                None => EquationClass::Inconsistent,
            })
            .collect()
    }

    fn report(self, constant_mode: bool, status: Option<ConstantStatus>) -> SolveReport {
        let classes = self.classify();
        SolveReport {
            constant_mode,
            substitutions: self.substitutions,
            equations: self.equations,
            classes,
            status,
        }
    }
}

/// Equations by decreasing origin in print order.
fn scan_order(eqs: &[Equation]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..eqs.len()).collect();
    idx.sort_by(|&a, &b| MultiIndex::print_order(&eqs[a].origin, &eqs[b].origin));
    idx
}

/// Repeatedly solves equations `c·u + rest = 0` with `c` a nonzero rational
/// and `rest` free of `u` and its jets, substituting `u` (and the
/// derivatives of its value for its jets) everywhere.
///
/// Equations are scanned in print order of their origin, unknowns in
/// declaration order; the first solvable pair is used and the scan
/// restarts.
pub fn eliminate_linear(sys: &AnsatzSystem) -> SolveReport {
    let mut s = Solver::new(sys);
    while s.linear_step(true) {}
    s.report(false, None)
}

/// Treats the unknowns as constants: all their jets of positive order are
/// zero. Then solves linear equations (coefficients free of unknowns) and
/// equations `c·u^k = 0` until neither applies, and classifies the result.
pub fn solve_constant(sys: &AnsatzSystem) -> SolveReport {
    let mut s = Solver::new(sys);
    s.zero_derivatives();
    while s.linear_step(false) || s.monomial_step() {}
    let classes = s.classify();
    let status = if classes.contains(&EquationClass::Inconsistent) {
        ConstantStatus::Inconsistent
    } else if classes
        .iter()
        .any(|c| matches!(c, EquationClass::Residual | EquationClass::Condition))
    {
        ConstantStatus::Undecided
    } else {
        let solved: BTreeSet<usize> = s.substitutions.iter().map(|x| x.unknown).collect();
        let free: Vec<usize> = (0..sys.unknowns.len())
            .filter(|u| !solved.contains(u))
            .collect();
        if free.is_empty() {
            ConstantStatus::Unique
        } else {
            ConstantStatus::Underdetermined(free)
        }
    };
    s.report(true, Some(status))
}

/// Normalizes a jet polynomial up to a nonzero rational factor.
pub fn normalize(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let lc: BigRational = p.lead_coeff();
    p.scale(&lc.recip())
}
