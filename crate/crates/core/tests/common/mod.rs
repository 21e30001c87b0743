#![allow(dead_code)]

use lpdo::{Context, Lpdo, MultiIndex, RatFunc};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

pub const CASES: u32 = 256;

/// Deterministic runner with `CASES` cases.
pub fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        max_shrink_iters: 32,
        ..Config::default()
    })
}

/// `x`, `y` and a function symbol `f(x, y)`.
pub fn context() -> Context {
    let mut ctx = Context::new(&["x", "y"]).unwrap();
    ctx.declare_function_all("f").unwrap();
    ctx
}

/// `c * x^i * y^j * (jet of f or 1)`.
fn term() -> impl Strategy<Value = (i64, u32, u32, u8)> {
    (-3i64..=3, 0u32..=2, 0u32..=2, 0u8..=3)
}

fn build_term(ctx: &Context, (c, i, j, jet): (i64, u32, u32, u8)) -> RatFunc {
    let x = ctx.var(0).pow(i as i64).unwrap();
    let y = ctx.var(1).pow(j as i64).unwrap();
    let mut t = &(&RatFunc::from_int(c) * &x) * &y;
    if jet > 0 {
        let idx = match jet {
            1 => [0, 0],
            2 => [1, 0],
            _ => [0, 1],
        };
        t = &t * &ctx.jet(0, &MultiIndex::from_slice(&idx)).unwrap();
    }
    t
}

/// A polynomial coefficient, possibly involving jets of `f`.
pub fn poly() -> impl Strategy<Value = RatFunc> {
    prop::collection::vec(term(), 0..=3).prop_map(|ts| {
        let ctx = context();
        ts.into_iter()
            .fold(RatFunc::zero(), |acc, t| &acc + &build_term(&ctx, t))
    })
}

/// A coefficient with an occasional denominator `x + k` or `y - k`.
pub fn scalar() -> impl Strategy<Value = RatFunc> {
    (poly(), 0u8..=4, 1i64..=3).prop_map(|(p, kind, k)| match kind {
        0 => &p / &(&RatFunc::var(0) + &RatFunc::from_int(k)),
        1 => &p / &(&RatFunc::var(1) - &RatFunc::from_int(k)),
        _ => p,
    })
}

/// An operator of order at most `max_order` in two variables.
pub fn operator(max_order: u32) -> impl Strategy<Value = Lpdo> {
    let slots = MultiIndex::up_to_order(2, max_order);
    prop::collection::vec(scalar(), slots.len())
        .prop_map(move |cs| Lpdo::from_terms(2, slots.iter().cloned().zip(cs)).unwrap())
}

/// An operator of exact order `d` whose principal symbol has leading
/// term `(k + x^2) X^i Y^(d-i)` or `(k + y^2) X^i Y^(d-i)`.
pub fn operator_of_order(d: u32) -> impl Strategy<Value = Lpdo> {
    (operator(d), 0..=d, 1i64..=3, 0usize..2).prop_map(move |(op, i, k, v)| {
        let lead = &RatFunc::from_int(k) + &(&RatFunc::var(v) * &RatFunc::var(v));
        let terms = op.terms().filter_map(|(j, c)| {
            let top = j.order() == d && j.get(0) >= i;
            (!top).then(|| (j.clone(), c.clone()))
        });
        let j = MultiIndex::from_slice(&[i, d - i]);
        Lpdo::from_terms(2, terms.chain([(j, lead)])).unwrap()
    })
}
