//! Common obstacles of Dx^2*Dy^2 + Dx + Dy + 1 for the type (X^2)(Y^2).

use lpdo::ansatz::{build_ansatz, solve_constant, AnsatzOptions, ConstantStatus};
use lpdo::parse::{parse_operator, parse_symbol};
use lpdo::{Context, FactorizationType, RatFunc, Render};

fn main() -> lpdo::Result<()> {
    let mut ctx = Context::new(&["x", "y"])?;
    let a = parse_operator("Dx^2*Dy^2 + Dx + Dy + 1", &ctx)?;
    let ty = FactorizationType::new(vec![parse_symbol("X^2", &ctx)?, parse_symbol("Y^2", &ctx)?])?;
    let sys = build_ansatz(
        &mut ctx,
        &a,
        &ty,
        1,
        &AnsatzOptions::prefixes(&["l", "f"], "r"),
    )?;
    println!(
        "{} unknowns, {} equations",
        sys.unknowns.len(),
        sys.equations.len()
    );
    let rep = solve_constant(&sys);
    if rep.status != Some(ConstantStatus::Unique) {
        println!("status: {:?}", rep.status);
        return Ok(());
    }
    let values: Vec<(&str, RatFunc)> = sys
        .unknowns
        .iter()
        .enumerate()
        .map(|(i, u)| {
            (
                u.name.as_str(),
                rep.value_of(i).cloned().unwrap_or_else(RatFunc::zero),
            )
        })
        .collect();
    let inc = sys.instantiate(&values, false)?;
    for f in &inc.factors {
        println!("factor {}", f.render(&ctx));
    }
    println!("obstacle {}", inc.remainder.render(&ctx));
    Ok(())
}
