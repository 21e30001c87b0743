//! Refining two-factor (incomplete) factorizations into three-factor ones.
//!
//! Given `A = L ∘ F + R1` of type `(S1 S2)(S3)` and `A = M ∘ G + R2` of type
//! `(S1)(S2 S3)` with `gcd(S1, S3) = 1` and both remainders of order below
//! `ord(S3)`, dividing `L` by `M` leaves no remainder and
//! `A = M ∘ N ∘ F + R1` is an incomplete factorization of type
//! `(S1)(S2)(S3)`. With zero remainders this is the complete case; the
//! mirrored case `F ∘ L = G ∘ M` goes through formal adjoints.

use serde::Serialize;

use crate::coeff::RatFunc;
use crate::division::divide_left;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::operator::{Lpdo, Order};
use crate::symbol::{FactorizationType, SymbolPoly};

/// `A = F_1 ∘ ... ∘ F_k + R` together with the declared symbols of the
/// factors.
#[derive(Clone, PartialEq, Debug)]
pub struct IncompleteFactorization {
    pub operator: Lpdo,
    pub factors: Vec<Lpdo>,
    pub remainder: Lpdo,
    pub factorization_type: FactorizationType,
}

/// Why a candidate factorization fails to verify.
#[derive(Clone, PartialEq, Debug)]
pub enum Violation {
    FactorCount {
        expected: usize,
        found: usize,
    },
    /// Factor `factor` (0-based) does not have its declared symbol.
    Symbol {
        factor: usize,
    },
    /// First coefficient, in print order, where `A` and `F_1∘...∘F_k + R`
    /// differ.
    Coefficient {
        index: MultiIndex,
        expected: RatFunc,
        found: RatFunc,
    },
}

impl IncompleteFactorization {
    pub fn new(
        operator: Lpdo,
        factors: Vec<Lpdo>,
        remainder: Lpdo,
        factorization_type: FactorizationType,
    ) -> Self {
        IncompleteFactorization {
            operator,
            factors,
            remainder,
            factorization_type,
        }
    }

    /// A factorization whose type is read off the factors' symbols.
    pub fn from_factors(operator: Lpdo, factors: Vec<Lpdo>, remainder: Lpdo) -> Result<Self> {
        let ty = FactorizationType::new(factors.iter().map(Lpdo::symbol).collect())?;
        Ok(Self::new(operator, factors, remainder, ty))
    }

    pub fn is_complete(&self) -> bool {
        self.remainder.is_zero()
    }

    /// Checks `A = F_1 ∘ ... ∘ F_k + R` and `Sym(F_i) = S_i`.
    pub fn verify(&self) -> Result<Option<Violation>> {
        let n = self.operator.nvars();
        for op in self.factors.iter().chain([&self.remainder]) {
            if op.nvars() != n {
                return Err(Error::ContextMismatch {
                    left: n,
                    right: op.nvars(),
                });
            }
        }
        if self.factorization_type.nvars() != n {
            return Err(Error::ContextMismatch {
                left: n,
                right: self.factorization_type.nvars(),
            });
        }
        let declared = self.factorization_type.factors();
        if declared.len() != self.factors.len() {
            return Ok(Some(Violation::FactorCount {
                expected: declared.len(),
                found: self.factors.len(),
            }));
        }
        for (i, (f, s)) in self.factors.iter().zip(declared).enumerate() {
            if f.symbol() != *s {
                return Ok(Some(Violation::Symbol { factor: i }));
            }
        }
        let rebuilt = Lpdo::compose_all(n, &self.factors)?.try_add(&self.remainder)?;
        let diff = self.operator.try_sub(&rebuilt)?;
        Ok(diff
            .sorted_terms()
            .first()
            .map(|(j, _)| Violation::Coefficient {
                index: (*j).clone(),
                expected: self.operator.coeff(j),
                found: rebuilt.coeff(j),
            }))
    }
}

/// `A = left ∘ right + remainder`.
#[derive(Clone, PartialEq, Debug)]
pub struct TwoFactor {
    pub left: Lpdo,
    pub right: Lpdo,
    pub remainder: Lpdo,
}

impl TwoFactor {
    pub fn new(left: Lpdo, right: Lpdo, remainder: Lpdo) -> Self {
        TwoFactor {
            left,
            right,
            remainder,
        }
    }

    pub fn complete(left: Lpdo, right: Lpdo) -> Self {
        let n = left.nvars();
        Self::new(left, right, Lpdo::zero(n))
    }

    pub fn operator(&self) -> Result<Lpdo> {
        self.left.compose(&self.right)?.try_add(&self.remainder)
    }
}

fn expect_symbol(op: &Lpdo, expected: &SymbolPoly, what: &str) -> Result<()> {
    if op.symbol() != *expected {
        return Err(Error::SymbolMismatch(format!(
            "{what} does not have the declared symbol"
        )));
    }
    Ok(())
}

fn check_order(remainder: &'static str, op: &Lpdo, bound: u32) -> Result<()> {
    if op.order() < Order::Finite(bound) {
        Ok(())
    } else {
        Err(Error::OrderHypothesisViolation {
            remainder,
            order: op.order().as_i64(),
            bound,
        })
    }
}

fn gcd_check(s1: &SymbolPoly, s3: &SymbolPoly) -> Result<()> {
    let g = s1.gcd(s3)?;
    match g.degree() {
        Some(0) => Ok(()),
        d => Err(Error::GcdViolation {
            gcd_degree: d.unwrap_or(0),
        }),
    }
}

/// Refines `A = L ∘ F + R1` (type `(S1 S2)(S3)`) and `A = M ∘ G + R2`
/// (type `(S1)(S2 S3)`) into `A = M ∘ N ∘ F + R1` of type `(S1)(S2)(S3)`.
///
/// Hypotheses are checked in this order: both sides define the same `A`,
/// the symbols match the type, `gcd(S1, S3) = 1`, and both remainders have
/// order below `deg S3`.
pub fn refine_obstacle(
    lf: &TwoFactor,
    mg: &TwoFactor,
    ty: &FactorizationType,
) -> Result<IncompleteFactorization> {
    let [s1, s2, s3] = ty.factors() else {
        return Err(Error::Domain("refinement needs a three-factor type".into()));
    };
    let n = ty.nvars();
    for op in [
        &lf.left,
        &lf.right,
        &lf.remainder,
        &mg.left,
        &mg.right,
        &mg.remainder,
    ] {
        if op.nvars() != n {
            return Err(Error::ContextMismatch {
                left: n,
                right: op.nvars(),
            });
        }
    }
    let a = lf.operator()?;
    if a != mg.operator()? {
        return Err(Error::IdentityMismatch(
            "L∘F + R1 and M∘G + R2 are different operators".into(),
        ));
    }
    expect_symbol(&lf.left, &s1.mul(s2)?, "L")?;
    expect_symbol(&lf.right, s3, "F")?;
    expect_symbol(&mg.left, s1, "M")?;
    expect_symbol(&mg.right, &s2.mul(s3)?, "G")?;
    gcd_check(s1, s3)?;
    let bound = s3.degree().expect("type symbols are nonzero");
    check_order("R1", &lf.remainder, bound)?;
    check_order("R2", &mg.remainder, bound)?;

    let div = divide_left(&lf.left, &mg.left)?;
    if !div.remainder.is_zero() {
        return Err(Error::InternalContradiction(
            "L = M∘N + R left a nonzero R although every hypothesis holds".into(),
        ));
    }
    let out = IncompleteFactorization::new(
        a,
        vec![mg.left.clone(), div.quotient, lf.right.clone()],
        lf.remainder.clone(),
        ty.clone(),
    );
    if let Some(v) = out.verify()? {
        return Err(Error::InternalContradiction(format!(
            "refined factorization does not verify: {v:?}"
        )));
    }
    Ok(out)
}

/// Which of the two mirrored statements to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `L ∘ F = M ∘ G` gives `A = M ∘ N ∘ F`.
    Left,
    /// `F ∘ L = G ∘ M` gives `A = F ∘ N ∘ M`.
    Right,
}

/// `A = outer ∘ middle ∘ inner`.
#[derive(Clone, PartialEq, Debug)]
pub struct ThreeFactor {
    pub outer: Lpdo,
    pub middle: Lpdo,
    pub inner: Lpdo,
}

impl ThreeFactor {
    pub fn product(&self) -> Result<Lpdo> {
        self.outer.compose(&self.middle)?.compose(&self.inner)
    }
}

/// Complete-factorization refinement.
///
/// `Side::Left`: from `L ∘ F = M ∘ G` with `gcd(Sym F, Sym M) = 1` returns
/// `(M, N, F)`. `Side::Right`: from `F ∘ L = G ∘ M` returns `(F, N, M)`,
/// computed by refining the adjoint identity `L† ∘ F† = M† ∘ G†`.
pub fn refine_complete(l: &Lpdo, f: &Lpdo, m: &Lpdo, g: &Lpdo, side: Side) -> Result<ThreeFactor> {
    match side {
        Side::Left => refine_complete_left(l, f, m, g),
        Side::Right => {
            let t = refine_complete_left(&l.adjoint(), &f.adjoint(), &m.adjoint(), &g.adjoint())?;
            Ok(ThreeFactor {
                outer: f.clone(),
                middle: t.middle.adjoint(),
                inner: m.clone(),
            })
        }
    }
}

fn refine_complete_left(l: &Lpdo, f: &Lpdo, m: &Lpdo, g: &Lpdo) -> Result<ThreeFactor> {
    let a = l.compose(f)?;
    if a != m.compose(g)? {
        return Err(Error::IdentityMismatch(
            "L∘F and M∘G are different operators".into(),
        ));
    }
    if a.is_zero() {
        return Err(Error::Domain(
            "cannot refine factorizations of the zero operator".into(),
        ));
    }
    gcd_check(&m.symbol(), &f.symbol())?;
    let div = divide_left(l, m).map_err(|e| match e {
        Error::NotApplicable(msg) => Error::InternalContradiction(msg),
        other => other,
    })?;
    if !div.remainder.is_zero() {
        return Err(Error::InternalContradiction(
            "L = M∘N + R left a nonzero R although Sym(F) and Sym(M) are coprime".into(),
        ));
    }
    Ok(ThreeFactor {
        outer: m.clone(),
        middle: div.quotient,
        inner: f.clone(),
    })
}

/// Laplace invariants of `L = Dx Dy + a Dx + b Dy + c`.
#[derive(Clone, PartialEq, Debug)]
pub struct LaplaceInvariants {
    /// `L = (Dx + b) ∘ (Dy + a) + h`.
    pub h: RatFunc,
    /// `L = (Dy + a) ∘ (Dx + b) + k`.
    pub k: RatFunc,
}

/// Computes `h` and `k` by subtracting the two compositions from `L`.
pub fn laplace_invariants(l: &Lpdo) -> Result<LaplaceInvariants> {
    if l.nvars() != 2 {
        return Err(Error::NotNormalizedHyperbolic(format!(
            "expected 2 variables, found {}",
            l.nvars()
        )));
    }
    let dxdy = MultiIndex::from_slice(&[1, 1]);
    let ex = MultiIndex::from_slice(&[1, 0]);
    let ey = MultiIndex::from_slice(&[0, 1]);
    let e0 = MultiIndex::zero(2);
    if !l.coeff(&dxdy).is_one() {
        return Err(Error::NotNormalizedHyperbolic(
            "coefficient of Dx*Dy must be 1".into(),
        ));
    }
    if let Some((j, _)) = l.terms().find(|(j, _)| ![&dxdy, &ex, &ey, &e0].contains(j)) {
        return Err(Error::NotNormalizedHyperbolic(format!(
            "unexpected term at multi-index {j:?}"
        )));
    }
    let a = l.coeff(&ex);
    let b = l.coeff(&ey);
    let dx = Lpdo::d(2, 0);
    let dy = Lpdo::d(2, 1);
    let px = dx.try_add(&Lpdo::scalar(2, b.clone()))?;
    let py = dy.try_add(&Lpdo::scalar(2, a.clone()))?;
    let h_op = l.try_sub(&px.compose(&py)?)?;
    let k_op = l.try_sub(&py.compose(&px)?)?;
    let scalar = |op: &Lpdo| -> Result<RatFunc> {
        match op.order() {
            Order::MinusInfinity => Ok(RatFunc::zero()),
            Order::Finite(0) => Ok(op.coeff(&e0)),
            _ => Err(Error::InternalContradiction(
                "Laplace remainder is not a scalar".into(),
            )),
        }
    };
    let h = scalar(&h_op)?;
    let k = scalar(&k_op)?;
    debug_assert_eq!(h.sub(&k), b.derive(1).sub(&a.derive(0)));
    Ok(LaplaceInvariants { h, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx() -> Lpdo {
        Lpdo::d(2, 0)
    }
    fn dy() -> Lpdo {
        Lpdo::d(2, 1)
    }
    fn one() -> Lpdo {
        Lpdo::one(2)
    }
    fn s(f: RatFunc) -> Lpdo {
        Lpdo::scalar(2, f)
    }
    fn x() -> RatFunc {
        RatFunc::var(0)
    }
    fn a4() -> Lpdo {
        &(&(&dx().pow(2) * &dy().pow(2)) + &dx()) + &(&dy() + &one())
    }
    fn obstacle() -> Lpdo {
        &(&dx() + &dy()) + &one()
    }
    fn ty(symbols: &[SymbolPoly]) -> FactorizationType {
        FactorizationType::new(symbols.to_vec()).unwrap()
    }
    fn sx(k: u32) -> SymbolPoly {
        SymbolPoly::var(2, 0).pow(k)
    }
    fn sy(k: u32) -> SymbolPoly {
        SymbolPoly::var(2, 1).pow(k)
    }

    #[test]
    fn verify_accepts_and_pinpoints() {
        let f = IncompleteFactorization::new(
            a4(),
            vec![dx().pow(2), dy().pow(2)],
            obstacle(),
            ty(&[sx(2), sy(2)]),
        );
        assert_eq!(f.verify().unwrap(), None);
        let bad = IncompleteFactorization {
            remainder: &dx() + &dy(),
            ..f.clone()
        };
        match bad.verify().unwrap() {
            Some(Violation::Coefficient {
                index,
                expected,
                found,
            }) => {
                assert!(index.is_zero());
                assert!(expected.is_one());
                assert!(found.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        let wrong_type = IncompleteFactorization {
            factorization_type: ty(&[sx(2), sx(2)]),
            ..f
        };
        assert_eq!(
            wrong_type.verify().unwrap(),
            Some(Violation::Symbol { factor: 1 })
        );
    }

    #[test]
    fn refine_obstacle_for_a4() {
        let m = &RatFunc::one() / &x();
        let lf = TwoFactor::new(dx().pow(2), dy().pow(2), obstacle());
        let big_m = &dx() + &s(m.clone());
        let g = &(&dx() * &dy().pow(2)) - &(&s(m.clone()) * &dy().pow(2));
        let mg = TwoFactor::new(big_m.clone(), g, obstacle());
        let out = refine_obstacle(&lf, &mg, &ty(&[sx(1), sx(1), sy(2)])).unwrap();
        assert_eq!(out.factors, vec![big_m, &dx() - &s(m), dy().pow(2)]);
        assert_eq!(out.remainder, obstacle());
    }

    #[test]
    fn order_hypothesis_is_enforced() {
        let l = &(&dx().pow(2) * &dy()) + &one();
        let lf = TwoFactor::new(l, dy(), &dx() + &one());
        let mg = TwoFactor::new(dx().pow(2), dy().pow(2), obstacle());
        let err = refine_obstacle(&lf, &mg, &ty(&[sx(2), sy(1), sy(1)])).unwrap_err();
        assert_eq!(
            err,
            Error::OrderHypothesisViolation {
                remainder: "R1",
                order: 1,
                bound: 1
            }
        );
    }

    #[test]
    fn mismatched_identities_are_reported() {
        let lf = TwoFactor::new(dx().pow(2), dy().pow(2), obstacle());
        let mg = TwoFactor::new(dx().pow(2), dy().pow(2), dx());
        let err = refine_obstacle(&lf, &mg, &ty(&[sx(1), sx(1), sy(2)])).unwrap_err();
        assert!(matches!(err, Error::IdentityMismatch(_)));
    }

    #[test]
    fn gcd_failure_for_commuting_pair() {
        let p = &(&dx() * &dy()) + &one();
        let q = &dx() + &one();
        let err = refine_complete(&p, &q, &q, &p, Side::Left).unwrap_err();
        assert_eq!(err, Error::GcdViolation { gcd_degree: 1 });
    }

    #[test]
    fn laplace_examples() {
        let inv = laplace_invariants(&(&dx() * &dy())).unwrap();
        assert!(inv.h.is_zero() && inv.k.is_zero());
        let inv = laplace_invariants(&(&(&dx() * &dy()) + &one())).unwrap();
        assert!(inv.h.is_one() && inv.k.is_one());
        assert!(laplace_invariants(&dx().pow(2)).is_err());
        assert!(laplace_invariants(&(&(&dx() * &dy()) + &dx().pow(2))).is_err());
        let scaled = &s(RatFunc::from_int(2)) * &(&dx() * &dy());
        assert!(laplace_invariants(&scaled).is_err());
    }
}
