use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::{Field, Monomial};
use super::{derive_poly, Indeterminate, MultiPoly};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;

/// Element of the coefficient field: a reduced quotient of polynomials.
///
/// Canonical form: numerator and denominator are coprime and the
/// denominator is monic under the graded-lex order, so structural equality
/// is field equality. Zero is `0/1`.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        RatFunc {
            num: MultiPoly::constant(q),
            den: MultiPoly::one(),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn from_indeterminate(v: Indeterminate) -> Self {
        Self::from_poly(MultiPoly::var(v))
    }

    pub fn var(i: usize) -> Self {
        Self::from_indeterminate(Indeterminate::Var(i as u32))
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&c.finv()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_den(num, den)
    }

    fn normalize_den(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.lead_coeff();
        if num_traits::One::is_one(&lc) {
            return RatFunc { num, den };
        }
        let inv = lc.finv();
        if let Some(c) = den.as_constant() {
            return Self::from_poly(num.scale(&c.finv()));
        }
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value, if `self` involves no indeterminates.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Indeterminates occurring in numerator or denominator.
    pub fn indeterminates(&self) -> std::collections::BTreeSet<Indeterminate> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::reduce(num, self.den.mul(&other.den));
        }
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        Self::reduce(num, a.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        // cross-cancel; inputs are reduced so the product is too
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::normalize_den(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if num_traits::Zero::is_zero(q) {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_den(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `∂_i` extended to quotients by the quotient rule.
    ///
    /// Does not validate `i` against a context; see
    /// [`Context::derive`](super::Context::derive).
    pub fn derive(&self, i: usize) -> Self {
        let dn = derive_poly(&self.num, i);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = derive_poly(&self.den, i);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        // With g = gcd(d, d'), (n/d)' = (n' d/g - n d'/g) / (d d/g). A prime
        // factor of d that involves x_i divides d/g once and divides
        // neither n nor d'/g, so only factors free of x_i, which divide g,
        // can cancel.
        let g = self.den.gcd(&dd);
        if g.is_one() {
            let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
            if num.is_zero() {
                return Self::zero();
            }
            return Self::normalize_den(num, self.den.mul(&self.den));
        }
        let d_g = self.den.div_exact(&g).expect("gcd divides");
        let dd_g = dd.div_exact(&g).expect("gcd divides");
        let num = dn.mul(&d_g).sub(&self.num.mul(&dd_g));
        if num.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&d_g);
        let h = num.gcd(&g);
        if h.is_one() {
            return Self::normalize_den(num, den);
        }
        Self::normalize_den(
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }

    /// `∂^J f`.
    pub fn derive_multi(&self, j: &MultiIndex) -> Self {
        let mut out = self.clone();
        for (i, &k) in j.as_slice().iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = out.derive(i);
            }
        }
        out
    }

    /// Substitutes values for indeterminates; generators not in the map
    /// are left alone.
    pub fn substitute(&self, value: &dyn Fn(&Indeterminate) -> Option<RatFunc>) -> Result<Self> {
        let n = substitute_poly(&self.num, value);
        let d = substitute_poly(&self.den, value);
        n.div(&d)
    }
}

/// Evaluates a polynomial after replacing some generators by field elements.
pub fn substitute_poly(
    p: &MultiPoly,
    value: &dyn Fn(&Indeterminate) -> Option<RatFunc>,
) -> RatFunc {
    let mut cache: std::collections::BTreeMap<Indeterminate, Option<RatFunc>> = Default::default();
    let mut poly_part = MultiPoly::zero();
    let mut rat_part = RatFunc::zero();
    for (m, c) in p.terms() {
        let mut kept: Vec<(Indeterminate, u32)> = Vec::new();
        let mut factor = RatFunc::from_rational(c.clone());
        for (v, e) in m.powers() {
            let val = cache.entry(v.clone()).or_insert_with(|| value(v));
            match val {
                None => kept.push((v.clone(), *e)),
                Some(r) => {
                    let mut pw = r.clone();
                    for _ in 1..*e {
                        pw = pw.mul(r);
                    }
                    factor = factor.mul(&pw);
                }
            }
        }
        let kept = Monomial::from_powers(kept);
        if factor.is_polynomial() {
            poly_part = poly_part.add(
                &factor
                    .num
                    .mul_term(&kept, &num_traits::one::<BigRational>()),
            );
        } else {
            rat_part = rat_part.add(&factor.mul(&RatFunc::from_poly(MultiPoly::term(
                kept,
                num_traits::one::<BigRational>(),
            ))));
        }
    }
    rat_part.add(&RatFunc::from_poly(poly_part))
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_int(n: i64) -> Self {
        RatFunc::from_int(n)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Self {
        self.inv().expect("inverse of zero rational function")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::add(self, rhs)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::sub(self, rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::mul(self, rhs)
    }
}

/// Panics on division by zero; use [`RatFunc::div`] for a checked variant.
impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::div(self, rhs).expect("division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}
