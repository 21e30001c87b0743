//! Sparse multivariate polynomials over an exact field.
//!
//! The same representation backs the scalar coefficients (variables are
//! [`Indeterminate`](super::Indeterminate)s, coefficients are rationals) and
//! principal symbols (variables are the formal `X_i`, coefficients live in
//! the rational-function field).
//!
//! Monomials are ordered graded-lexicographically; the variable that sorts
//! first under `Ord` is the most significant one. The leading term of a
//! polynomial is the greatest monomial under that order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::modular::{self, gcd_mod, inv_mod, mul_mod, PRIME};

/// Exact field arithmetic needed by [`Poly`].
///
/// Method names carry an `f` prefix so they never collide with the
/// `std::ops` traits on types that implement both.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn fadd(&self, rhs: &Self) -> Self;
    fn fsub(&self, rhs: &Self) -> Self;
    fn fmul(&self, rhs: &Self) -> Self;
    fn fneg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn finv(&self) -> Self;
    fn fdiv(&self, rhs: &Self) -> Self {
        self.fmul(&rhs.finv())
    }
    /// Image in `Z/p` for a rational whose denominator `p` does not divide.
    fn residue(&self, _p: u64) -> Option<u64> {
        None
    }
    /// The rational `n / d`, when the field contains `Q` as constants.
    fn from_ratio(_n: BigInt, _d: BigInt) -> Option<Self> {
        None
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
    fn residue(&self, p: u64) -> Option<u64> {
        let d = modular::residue(self.denom(), p);
        (d != 0).then(|| mul_mod(modular::residue(self.numer(), p), inv_mod(d, p), p))
    }
    fn from_ratio(n: BigInt, d: BigInt) -> Option<Self> {
        Some(BigRational::new(n, d))
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by
/// variable with strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial<V> {
    powers: Vec<(V, u32)>,
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Monomial { powers: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial {
            powers: vec![(v, 1)],
        }
    }

    pub fn var_pow(v: V, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial {
                powers: vec![(v, e)],
            }
        }
    }

    /// Builds a monomial from unsorted pairs, merging repeated variables.
    pub fn from_powers(pairs: impl IntoIterator<Item = (V, u32)>) -> Self {
        let mut map: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            powers: map.into_iter().collect(),
        }
    }

    pub fn powers(&self) -> &[(V, u32)] {
        &self.powers
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.powers
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() && j < other.powers.len() {
            let (a, b) = (&self.powers[i], &other.powers[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.powers[i..]);
        out.extend_from_slice(&other.powers[j..]);
        Monomial { powers: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        for (v, e) in &self.powers {
            if j < other.powers.len() && other.powers[j].0 < *v {
                return None;
            }
            if j < other.powers.len() && other.powers[j].0 == *v {
                let f = other.powers[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v.clone(), e - f)),
                }
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial { powers: out })
    }

    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Monomial {
            powers: self
                .powers
                .iter()
                .map(|(v, e)| (v.clone(), e * k))
                .collect(),
        }
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Self) -> Self {
        let powers = self
            .powers
            .iter()
            .filter_map(|(v, e)| {
                let f = other.exponent(v);
                (f > 0).then(|| (v.clone(), (*e).min(f)))
            })
            .collect();
        Monomial { powers }
    }

    /// Removes `v` from the monomial, returning its former exponent.
    pub fn split_off(&self, v: &V) -> (u32, Self) {
        let mut e = 0;
        let powers = self
            .powers
            .iter()
            .filter(|(w, f)| {
                if w == v {
                    e = *f;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (e, Monomial { powers })
    }
}

impl<V: Ord> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.powers.iter().map(|(_, e)| *e).sum();
        let db: u32 = other.powers.iter().map(|(_, e)| *e).sum();
        da.cmp(&db).then_with(|| {
            for (a, b) in self.powers.iter().zip(other.powers.iter()) {
                match a.0.cmp(&b.0) {
                    // `self` carries a more significant variable
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {}
                        o => return o,
                    },
                }
            }
            self.powers.len().cmp(&other.powers.len())
        })
    }
}

impl<V: Ord> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: map from monomial to nonzero coefficient.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<V: Ord, C> {
    terms: BTreeMap<Monomial<V>, C>,
}

impl<V: Ord + Clone + Debug, C: Field> Default for Poly<V, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<V: Ord + Clone + Debug, C: Field> Poly<V, C> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial<V>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: V) -> Self {
        Self::term(Monomial::var(v), C::one())
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial<V>, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
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
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial<V>, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial<V>, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn lead(&self) -> Option<(&Monomial<V>, &C)> {
        self.terms.iter().next_back()
    }

    pub fn lead_coeff(&self) -> C {
        self.lead().map(|(_, c)| c.clone()).unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.fadd(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.fneg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.fneg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.fmul(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial<V>, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.fmul(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a.fmul(b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Variables occurring in the polynomial.
    pub fn vars(&self) -> BTreeSet<V> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn contains_var(&self, v: &V) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// View as a univariate polynomial in `v` with coefficients free of `v`.
    pub fn coeffs_in(&self, v: &V) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, v: &V) -> (u32, Self) {
        let d = self.degree_in(v);
        let mut lc = Self::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            if e == d {
                lc.add_term(rest, c.clone());
            }
        }
        (d, lc)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.finv()),
        }
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder. Reduction runs against the single divisor under the
    /// graded-lex order, which decides membership in a principal ideal.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = divisor.lead().map(|(m, c)| (m.clone(), c.clone()))?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.finv()));
        }
        let lc_inv = lc.finv();
        let mut quotient = Self::zero();
        let mut rem = self.clone();
        while let Some((m, c)) = rem.lead().map(|(m, c)| (m.clone(), c.clone())) {
            let q = m.div(&lm)?;
            let qc = c.fmul(&lc_inv);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&q), dc.fmul(&qc).fneg());
            }
            quotient.add_term(q, qc);
        }
        Some(quotient)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Pseudo-remainder of `self` by `b` as polynomials in `v`.
    fn pseudo_rem(&self, b: &Self, v: &V) -> Self {
        let (db, lb) = b.lead_coeff_in(v);
        if db == 0 {
            // `b` is free of `v`; every multiple reduces to zero.
            return Self::zero();
        }
        let mut r = self.clone();
        if let Some(c) = lb.as_constant() {
            // plain division over the field; no coefficient growth
            let inv = c.finv();
            while !r.is_zero() && r.contains_var(v) && r.degree_in(v) >= db {
                let (dr, lr) = r.lead_coeff_in(v);
                let shift = Monomial::var_pow(v.clone(), dr - db);
                r = r.sub(&lr.scale(&inv).mul(b).mul_term(&shift, &C::one()));
            }
            return r;
        }
        while !r.is_zero() && r.contains_var(v) && r.degree_in(v) >= db {
            let (dr, lr) = r.lead_coeff_in(v);
            let shift = Monomial::var_pow(v.clone(), dr - db);
            r = lb.mul(&r).sub(&lr.mul(b).mul_term(&shift, &C::one()));
        }
        r
    }

    /// Content with respect to `v`: gcd of the coefficients in `v`.
    pub fn content_in(&self, v: &V) -> Self {
        self.content_gcd(v, Self::zero())
    }

    /// `gcd(g, content_in(v))`, folding the smallest coefficients in first
    /// so that a small `g` keeps every intermediate gcd small.
    fn content_gcd(&self, v: &V, mut g: Self) -> Self {
        let mut coeffs: Vec<Self> = self.coeffs_in(v).into_values().collect();
        coeffs.sort_by_key(|c| c.len());
        for c in coeffs {
            g = g.gcd(&c);
            if g.is_constant() {
                return Self::one();
            }
        }
        g
    }

    pub fn primitive_part_in(&self, v: &V) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides polynomial")
    }

    /// Greatest common divisor, normalized to be monic (leading coefficient 1
    /// under the graded-lex order). `gcd(p, 0)` is `p` made monic.
    ///
    /// Recursive content / primitive-part scheme: split off a variable, take
    /// gcds of contents recursively and run a primitive pseudo-remainder
    /// sequence on the primitive parts. A modular image test settles the
    /// common coprime case first, and univariate rational inputs go through
    /// a modular gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        if self.is_monomial() || other.is_monomial() {
            return monomial_gcd(self, other);
        }
        // Variables present in only one operand go first: folding the
        // other operand into that one's content keeps the work small.
        let (va, vb) = (self.vars(), other.vars());
        let Some(v) = va
            .symmetric_difference(&vb)
            .next()
            .or_else(|| va.intersection(&vb).next())
            .cloned()
        else {
            return Self::one();
        };
        match (self.contains_var(&v), other.contains_var(&v)) {
            (true, false) => self.content_gcd(&v, other.clone()),
            (false, true) => other.content_gcd(&v, self.clone()),
            _ => {
                let (ca, cb) = (self.content_in(&v), other.content_in(&v));
                let g = ca.gcd(&cb);
                let pa = self.div_exact(&ca).expect("content divides");
                let pb = other.div_exact(&cb).expect("content divides");
                let h = if coprime_images(&pa, &pb, &v) {
                    Self::one()
                } else {
                    primitive_prs_gcd(pa, pb, &v)
                };
                g.mul(&h).monic()
            }
        }
    }

    /// Substitutes a polynomial for a variable.
    pub fn substitute(&self, v: &V, value: &Self) -> Self {
        let mut cache: Vec<Self> = vec![Self::one()];
        let mut out = Self::zero();
        for (e, c) in self.coeffs_in(v) {
            while cache.len() <= e as usize {
                let next = cache.last().expect("nonempty").mul(value);
                cache.push(next);
            }
            out = out.add(&c.mul(&cache[e as usize]));
        }
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<V, D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

fn monomial_gcd<V: Ord + Clone + Debug, C: Field>(a: &Poly<V, C>, b: &Poly<V, C>) -> Poly<V, C> {
    let mut g: Option<Monomial<V>> = None;
    for m in a.terms.keys().chain(b.terms.keys()) {
        g = Some(match g {
            None => m.clone(),
            Some(h) => h.gcd(m),
        });
        if g.as_ref().is_some_and(|h| h.is_one()) {
            break;
        }
    }
    Poly::term(g.unwrap_or_else(Monomial::one), C::one())
}

/// Dense image of `p` in `v` over `Z/PRIME` after evaluating every other
/// variable; `None` if a coefficient has no image.
fn image_mod<V: Ord + Clone + Debug, C: Field>(
    p: &Poly<V, C>,
    v: &V,
    point: &BTreeMap<V, u64>,
) -> Option<Vec<u64>> {
    let mut out = vec![0; p.degree_in(v) as usize + 1];
    for (m, c) in &p.terms {
        let mut t = c.residue(PRIME)?;
        let mut e = 0;
        for (w, k) in m.powers() {
            if w == v {
                e = *k as usize;
            } else {
                for _ in 0..*k {
                    t = mul_mod(t, point[w], PRIME);
                }
            }
        }
        out[e] = (out[e] + t) % PRIME;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

/// Exact test for `gcd(a, b) = 1`, with `a`, `b` primitive in `v`. At a
/// point (mod a prime) where the leading coefficient of `a` in `v`
/// survives, the gcd's degree in `v` cannot exceed that of the images.
/// `false` means undecided.
fn coprime_images<V: Ord + Clone + Debug, C: Field>(a: &Poly<V, C>, b: &Poly<V, C>, v: &V) -> bool {
    let others: Vec<V> = a
        .vars()
        .union(&b.vars())
        .filter(|w| *w != v)
        .cloned()
        .collect();
    let (_, lc) = a.lead_coeff_in(v);
    for attempt in 0..3u64 {
        let point: BTreeMap<V, u64> = others
            .iter()
            .enumerate()
            .map(|(i, w)| {
                (
                    w.clone(),
                    (1_000_003 * (i as u64 + 1) + 7919 * attempt) % PRIME,
                )
            })
            .collect();
        let images = (
            image_mod(&lc, v, &point),
            image_mod(a, v, &point),
            image_mod(b, v, &point),
        );
        let (Some(l), Some(ia), Some(ib)) = images else {
            return false;
        };
        if l[0] != 0 {
            return gcd_mod(ia, ib, PRIME).len() == 1;
        }
    }
    false
}

fn dense_mod<V: Ord + Clone + Debug, C: Field>(
    p: &Poly<V, C>,
    v: &V,
    prime: u64,
) -> Option<Vec<u64>> {
    let mut out = vec![0; p.degree_in(v) as usize + 1];
    for (m, c) in &p.terms {
        out[m.exponent(v) as usize] = c.residue(prime)?;
    }
    Some(out)
}

/// Gcd of univariate polynomials over `Q` by the modular method: monic
/// gcds modulo several primes, combined by Chinese remaindering and
/// rational reconstruction, and checked by exact division. `None` when the
/// coefficients are not rationals or no candidate verified.
fn modular_univariate_gcd<V: Ord + Clone + Debug, C: Field>(
    a: &Poly<V, C>,
    b: &Poly<V, C>,
    v: &V,
) -> Option<Poly<V, C>> {
    const MAX_PRIMES: usize = 64;
    let (da, db) = (a.degree_in(v) as usize, b.degree_in(v) as usize);
    let mut best = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    for p in modular::primes().take(MAX_PRIMES) {
        let (Some(ia), Some(ib)) = (dense_mod(a, v, p), dense_mod(b, v, p)) else {
            C::one().residue(p)?;
            continue;
        };
        if ia[da] == 0 || ib[db] == 0 {
            continue;
        }
        let g = gcd_mod(ia, ib, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Some(Poly::one());
        }
        if deg > best {
            continue;
        }
        let pb = BigInt::from(p);
        if deg < best {
            best = deg;
            acc = g.into_iter().map(BigInt::from).collect();
            modulus = pb;
        } else {
            let inv = BigInt::from(inv_mod(modular::residue(&modulus, p), p));
            for (x, r) in acc.iter_mut().zip(g) {
                let t = ((BigInt::from(r) - &*x) * &inv).mod_floor(&pb);
                *x += &modulus * t;
            }
            modulus *= pb;
        }
        let candidate: Option<Vec<(Monomial<V>, C)>> = acc
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(e, x)| {
                let (n, d) = modular::rational_reconstruction(x, &modulus)?;
                Some((Monomial::var_pow(v.clone(), e as u32), C::from_ratio(n, d)?))
            })
            .collect();
        if let Some(terms) = candidate {
            let g = Poly::from_terms(terms);
            if g.divides(a) && g.divides(b) {
                return Some(g);
            }
        }
    }
    None
}

fn primitive_prs_gcd<V: Ord + Clone + Debug, C: Field>(
    a: Poly<V, C>,
    b: Poly<V, C>,
    v: &V,
) -> Poly<V, C> {
    let univariate = |p: &Poly<V, C>| p.vars().iter().all(|w| w == v);
    if univariate(&a) && univariate(&b) {
        if let Some(g) = modular_univariate_gcd(&a, &b, v) {
            return g.monic();
        }
    }
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = a.pseudo_rem(&b, v);
        if r.is_zero() {
            return b.primitive_part_in(v).monic();
        }
        if !r.contains_var(v) {
            return Poly::one();
        }
        a = b;
        b = r.primitive_part_in(v).monic();
    }
}
