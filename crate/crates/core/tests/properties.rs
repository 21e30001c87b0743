mod common;

use common::{context, operator, operator_of_order, poly, runner, scalar};
use lpdo::ansatz::{
    build_ansatz, eliminate_linear, solve_constant, verify_candidate, AnsatzOptions,
};
use lpdo::parse::{parse_operator, parse_scalar};
use lpdo::session::{run, RunOptions};
use lpdo::{FactorizationType, Lpdo, RatFunc, Render};
use proptest::prelude::*;

#[test]
fn scalars_survive_print_and_parse() {
    let ctx = context();
    runner(11)
        .run(&scalar(), |u| {
            let text = u.render(&ctx);
            prop_assert_eq!(parse_scalar(&text, &ctx).unwrap(), u, "{}", text);
            Ok(())
        })
        .unwrap();
}

#[test]
fn operators_survive_print_and_parse() {
    let ctx = context();
    runner(12)
        .run(&operator(2), |op| {
            let text = op.render(&ctx);
            prop_assert_eq!(parse_operator(&text, &ctx).unwrap(), op, "{}", text);
            Ok(())
        })
        .unwrap();
}

#[test]
fn reduced_quotients_cancel_common_factors() {
    runner(13)
        .run(&(poly(), poly(), scalar()), |(a, b, c)| {
            prop_assume!(!b.is_zero() && !c.is_zero());
            let q = (&a * &c).div(&(&b * &c)).unwrap();
            prop_assert_eq!(q, a.div(&b).unwrap());
            Ok(())
        })
        .unwrap();
}

#[test]
fn gcd_routes_agree() {
    runner(14)
        .run(&(operator(1), operator(1), operator(1)), |(a, b, c)| {
            let (a, b, c) = (a.symbol(), b.symbol(), c.symbol());
            prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
            let (ac, bc) = (a.mul(&c).unwrap(), b.mul(&c).unwrap());
            let g = ac.gcd(&bc).unwrap();
            prop_assert_eq!(&g, &ac.gcd_recursive(&bc).unwrap().monic());
            prop_assert!(g.is_divisible_by(&c).unwrap());
            prop_assert!(ac.is_divisible_by(&g).unwrap() && bc.is_divisible_by(&g).unwrap());
            Ok(())
        })
        .unwrap();
}

fn script(ctx: &lpdo::Context, ops: &[Lpdo]) -> String {
    let mut s = String::from("vars x y\nfunc f(x, y)\n");
    for (i, op) in ops.iter().enumerate() {
        s.push_str(&format!("let A{i} = {}\n", op.render(ctx)));
    }
    s.push_str("compose A0, A1\nadjoint A2\nsymbol A0*A1\nverify A0*A1 == A0*A1\n");
    s
}

#[test]
fn sessions_are_deterministic_and_serializable() {
    let ctx = context();
    runner(15)
        .run(&(operator(1), operator(1), operator(2)), |(a, b, c)| {
            let text = script(&ctx, &[a, b, c]);
            let first = run(&text, RunOptions::default());
            let second = run(&text, RunOptions::default());
            prop_assert!(first.success());
            prop_assert_eq!(first.json_lines(), second.json_lines());
            prop_assert_eq!(first.text(), second.text());
            for line in first.json_lines().lines() {
                prop_assert!(serde_json::from_str::<serde_json::Value>(line).is_ok());
            }
            let saved = first.session.serialize();
            let again = run(&saved, RunOptions::default());
            prop_assert!(again.success());
            prop_assert_eq!(again.session.bindings(), first.session.bindings());
            prop_assert_eq!(again.session.serialize(), saved);
            Ok(())
        })
        .unwrap();
}

#[test]
fn true_factors_solve_their_ansatz() {
    runner(16)
        .run(
            &(operator_of_order(1), operator_of_order(1), 0i32..=1),
            |(f, g, r)| {
                let mut ctx = context();
                let l = f.compose(&g).unwrap();
                let ty = FactorizationType::new(vec![f.symbol(), g.symbol()]).unwrap();
                let opts = AnsatzOptions::prefixes(&["p", "q"], "r");
                let sys = build_ansatz(&mut ctx, &l, &ty, r - 1, &opts).unwrap();
                let actual = [&f, &g];
                let values: Vec<(&str, RatFunc)> = sys
                    .unknowns
                    .iter()
                    .map(|u| {
                        let v = match u.factor {
                            Some(i) => actual[i].coeff(&u.index),
                            None => RatFunc::zero(),
                        };
                        (u.name.as_str(), v)
                    })
                    .collect();
                prop_assert_eq!(verify_candidate(&sys, &values, true).unwrap(), vec![]);
                Ok(())
            },
        )
        .unwrap();
}

#[test]
fn solver_reports_replay() {
    runner(17)
        .run(&(operator_of_order(1), operator_of_order(1)), |(f, g)| {
            let mut ctx = context();
            let l = f.compose(&g).unwrap();
            let ty = FactorizationType::new(vec![f.symbol(), g.symbol()]).unwrap();
            let sys = build_ansatz(&mut ctx, &l, &ty, 0, &AnsatzOptions::default()).unwrap();
            prop_assert!(eliminate_linear(&sys).replays(&sys));
            prop_assert!(solve_constant(&sys).replays(&sys));
            Ok(())
        })
        .unwrap();
}
