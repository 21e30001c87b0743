//! Principal symbols: homogeneous commutative polynomials in `X_1..X_n`
//! with coefficients in the rational-function field.

use std::collections::BTreeMap;

use crate::coeff::{Field, Monomial, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

type XPoly = Poly<u32, RatFunc>;

/// A homogeneous polynomial in the formal variables `X_1..X_n`.
#[derive(Clone, PartialEq, Debug)]
pub struct SymbolPoly {
    nvars: usize,
    poly: XPoly,
}

fn to_monomial(j: &MultiIndex) -> Monomial<u32> {
    Monomial::from_powers(j.as_slice().iter().enumerate().map(|(i, &e)| (i as u32, e)))
}

fn to_index(nvars: usize, m: &Monomial<u32>) -> MultiIndex {
    let mut parts = vec![0u32; nvars];
    for (v, e) in m.powers() {
        parts[*v as usize] = *e;
    }
    MultiIndex::from_slice(&parts)
}

impl SymbolPoly {
    pub fn zero(nvars: usize) -> Self {
        SymbolPoly {
            nvars,
            poly: XPoly::zero(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, RatFunc::one())
    }

    pub fn constant(nvars: usize, a: RatFunc) -> Self {
        SymbolPoly {
            nvars,
            poly: XPoly::constant(a),
        }
    }

    /// `X_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        SymbolPoly {
            nvars,
            poly: XPoly::var(i as u32),
        }
    }

    /// Builds a symbol from `(J, a_J)` pairs; all `|J|` must agree.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (MultiIndex, RatFunc)>,
    ) -> Result<Self> {
        let mut poly = XPoly::zero();
        for (j, a) in terms {
            if j.len() != nvars {
                return Err(Error::ContextMismatch {
                    left: nvars,
                    right: j.len(),
                });
            }
            poly.add_term(to_monomial(&j), a);
        }
        Self::from_poly(nvars, poly)
    }

    fn from_poly(nvars: usize, poly: XPoly) -> Result<Self> {
        if !poly.is_homogeneous() {
            return Err(Error::Domain("symbol is not homogeneous".into()));
        }
        Ok(SymbolPoly { nvars, poly })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Homogeneity degree; `None` for the zero symbol.
    pub fn degree(&self) -> Option<u32> {
        self.poly.total_degree()
    }

    /// Terms as `(J, a_J)` in canonical print order.
    pub fn terms(&self) -> Vec<(MultiIndex, RatFunc)> {
        let mut v: Vec<_> = self
            .poly
            .terms()
            .map(|(m, a)| (to_index(self.nvars, m), a.clone()))
            .collect();
        v.sort_by(|a, b| MultiIndex::print_order(&a.0, &b.0));
        v
    }

    pub fn coeff(&self, j: &MultiIndex) -> RatFunc {
        self.poly.coeff(&to_monomial(j))
    }

    /// Coefficient of the leading monomial under graded-lex.
    pub fn lead_coeff(&self) -> RatFunc {
        self.poly.lead_coeff()
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

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(SymbolPoly {
            nvars: self.nvars,
            poly: self.poly.mul(&other.poly),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Self::from_poly(self.nvars, self.poly.add(&other.poly))
    }

    pub fn neg(&self) -> Self {
        SymbolPoly {
            nvars: self.nvars,
            poly: self.poly.neg(),
        }
    }

    pub fn scale(&self, a: &RatFunc) -> Self {
        SymbolPoly {
            nvars: self.nvars,
            poly: self.poly.scale(a),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        SymbolPoly {
            nvars: self.nvars,
            poly: self.poly.pow(k),
        }
    }

    /// Same polynomial with leading coefficient 1.
    pub fn monic(&self) -> Self {
        SymbolPoly {
            nvars: self.nvars,
            poly: self.poly.monic(),
        }
    }

    /// Product of a sequence of symbols.
    pub fn product<'a>(
        nvars: usize,
        factors: impl IntoIterator<Item = &'a SymbolPoly>,
    ) -> Result<Self> {
        factors
            .into_iter()
            .try_fold(Self::one(nvars), |acc, s| acc.mul(s))
    }

    /// Exact quotient `self / divisor`, or `None` if `divisor` does not
    /// divide `self`.
    pub fn divide(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_same(divisor)?;
        if divisor.is_zero() {
            return Err(Error::Domain("division by the zero symbol".into()));
        }
        Ok(self.poly.div_exact(&divisor.poly).map(|poly| SymbolPoly {
            nvars: self.nvars,
            poly,
        }))
    }

    pub fn is_divisible_by(&self, divisor: &Self) -> Result<bool> {
        Ok(self.divide(divisor)?.is_some())
    }

    /// Monic gcd. Two variables: dehomogenize and run Euclid over the
    /// coefficient field. Otherwise: recursive content / primitive part.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("gcd of two zero symbols".into()));
        }
        let poly = if self.nvars == 2 {
            bivariate_gcd(&self.poly, &other.poly)
        } else {
            self.poly.gcd(&other.poly)
        };
        Ok(SymbolPoly {
            nvars: self.nvars,
            poly,
        })
    }

    /// Gcd through the general recursive route regardless of `n`.
    pub fn gcd_recursive(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("gcd of two zero symbols".into()));
        }
        Ok(SymbolPoly {
            nvars: self.nvars,
            poly: self.poly.gcd(&other.poly),
        })
    }

    pub fn coprime(&self, other: &Self) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::Domain("coprimality of a zero symbol".into()));
        }
        Ok(self.gcd(other)?.degree() == Some(0))
    }
}

/// gcd of two homogeneous polynomials in `X_0, X_1`.
fn bivariate_gcd(a: &XPoly, b: &XPoly) -> XPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (ka, ua) = dehomogenize(a);
    let (kb, ub) = dehomogenize(b);
    let g = univariate_gcd(ua, ub);
    let d = g.keys().next_back().copied().unwrap_or(0);
    let shift = ka.min(kb);
    let poly = XPoly::from_terms(
        g.into_iter()
            .map(|(i, c)| (Monomial::from_powers([(0, i), (1, d - i + shift)]), c)),
    );
    poly.monic()
}

/// Sets `X_1 = 1`, returning the power of `X_1` dividing the input and the
/// univariate polynomial in `X_0` as a degree → coefficient map.
fn dehomogenize(p: &XPoly) -> (u32, BTreeMap<u32, RatFunc>) {
    let mut out = BTreeMap::new();
    let mut k = u32::MAX;
    for (m, c) in p.terms() {
        k = k.min(m.exponent(&1));
        out.insert(m.exponent(&0), c.clone());
    }
    (k, out)
}

fn univariate_gcd(
    mut a: BTreeMap<u32, RatFunc>,
    mut b: BTreeMap<u32, RatFunc>,
) -> BTreeMap<u32, RatFunc> {
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn univariate_rem(
    a: &BTreeMap<u32, RatFunc>,
    b: &BTreeMap<u32, RatFunc>,
) -> BTreeMap<u32, RatFunc> {
    let (&db, lb) = b.iter().next_back().expect("nonzero divisor");
    let lb_inv = lb.finv();
    let mut r = a.clone();
    while let Some((&dr, lr)) = r.iter().next_back() {
        if dr < db {
            break;
        }
        let q = lr.mul(&lb_inv);
        for (&e, c) in b {
            let key = e + dr - db;
            let v = r
                .get(&key)
                .cloned()
                .unwrap_or_else(RatFunc::zero)
                .sub(&q.mul(c));
            if v.is_zero() {
                r.remove(&key);
            } else {
                r.insert(key, v);
            }
        }
    }
    r
}

/// Ordered symbols `(S_1)...(S_k)` of a factorization.
#[derive(Clone, PartialEq, Debug)]
pub struct FactorizationType {
    factors: Vec<SymbolPoly>,
}

impl FactorizationType {
    pub fn new(factors: Vec<SymbolPoly>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Domain(
                "a factorization type needs at least one factor".into(),
            ));
        }
        let n = factors[0].nvars();
        if let Some(bad) = factors.iter().find(|s| s.nvars() != n) {
            return Err(Error::ContextMismatch {
                left: n,
                right: bad.nvars(),
            });
        }
        if factors.iter().any(SymbolPoly::is_zero) {
            return Err(Error::Domain("factor symbols must be nonzero".into()));
        }
        Ok(FactorizationType { factors })
    }

    pub fn factors(&self) -> &[SymbolPoly] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.factors[0].nvars()
    }

    pub fn product(&self) -> SymbolPoly {
        SymbolPoly::product(self.nvars(), &self.factors).expect("factors share a context")
    }
}
