//! Division with remainder in `K[D]`.
//!
//! For `L` and `M` with `Sym(M) | Sym(L)` we find `N` and `R` with
//! `L = M ∘ N + R`, where `R = 0` or `Sym(R)` is not divisible by `Sym(M)`.
//! Starting from `N = hat(Sym(L)/Sym(M))`, each step removes the whole top
//! symbol of the working remainder `Q = L - M ∘ N`, so `ord(Q)` strictly
//! decreases and the loop runs at most `ord(L) - ord(M) + 1` times.

use crate::error::{Error, Result};
use crate::operator::Lpdo;
use crate::symbol::SymbolPoly;

/// Quotient and remainder of a division.
#[derive(Clone, PartialEq, Debug)]
pub struct DivisionResult {
    pub quotient: Lpdo,
    pub remainder: Lpdo,
    /// Number of symbol quotients added to the quotient.
    pub steps: usize,
}

fn exact_symbol_quotient(s: &SymbolPoly, t: &SymbolPoly) -> Result<Option<SymbolPoly>> {
    if s.is_zero() {
        return Ok(None);
    }
    s.divide(t)
}

/// `L = M ∘ N + R`.
pub fn divide_left(l: &Lpdo, m: &Lpdo) -> Result<DivisionResult> {
    if l.nvars() != m.nvars() {
        return Err(Error::ContextMismatch {
            left: l.nvars(),
            right: m.nvars(),
        });
    }
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let sym_m = m.symbol();
    let sym_l = l.symbol();
    let first = if l.is_zero() {
        SymbolPoly::zero(l.nvars())
    } else {
        sym_l.divide(&sym_m)?.ok_or_else(|| {
            Error::NotApplicable(
                "symbol of the divisor does not divide symbol of the dividend".into(),
            )
        })?
    };

    let mut quotient = Lpdo::hat(&first);
    let mut rem = l.try_sub(&m.compose(&quotient)?)?;
    let mut steps = usize::from(!l.is_zero());
    while let Some(t) = exact_symbol_quotient(&rem.symbol(), &sym_m)? {
        let before = rem.order();
        let step = Lpdo::hat(&t);
        quotient = quotient.try_add(&step)?;
        rem = rem.try_sub(&m.compose(&step)?)?;
        steps += 1;
        debug_assert!(rem.order() < before, "working remainder order must drop");
    }
    debug_assert_eq!(
        m.compose(&quotient)?.try_add(&rem)?,
        *l,
        "division must reconstruct the dividend"
    );
    Ok(DivisionResult {
        quotient,
        remainder: rem,
        steps,
    })
}

/// `L = N ∘ F + R`, obtained by dividing adjoints: `L† = F† ∘ N† + R†`.
pub fn divide_right(l: &Lpdo, f: &Lpdo) -> Result<DivisionResult> {
    let inner = divide_left(&l.adjoint(), &f.adjoint())?;
    let out = DivisionResult {
        quotient: inner.quotient.adjoint(),
        remainder: inner.remainder.adjoint(),
        steps: inner.steps,
    };
    debug_assert_eq!(
        out.quotient.compose(f)?.try_add(&out.remainder)?,
        *l,
        "right division must reconstruct the dividend"
    );
    Ok(out)
}
