//! Division with remainder by an operator and the order hypothesis.

use lpdo::parse::{parse_operator, parse_symbol};
use lpdo::{divide_left, refine_obstacle, Context, FactorizationType, Render, TwoFactor};

fn main() -> lpdo::Result<()> {
    let ctx = Context::new(&["x", "y"])?;
    let op = |s: &str| parse_operator(s, &ctx);
    let d = divide_left(&op("Dx^2*Dy + x*Dx + 1")?, &op("Dx^2 + y")?)?;
    println!("quotient {}", d.quotient.render(&ctx));
    println!("remainder {}", d.remainder.render(&ctx));

    let lf = TwoFactor::new(op("Dx^2*Dy + 1")?, op("Dy")?, op("Dx + 1")?);
    let mg = TwoFactor::new(op("Dx^2")?, op("Dy^2")?, op("Dx + Dy + 1")?);
    let ty = FactorizationType::new(
        ["X^2", "Y", "Y"]
            .iter()
            .map(|s| parse_symbol(s, &ctx))
            .collect::<lpdo::Result<_>>()?,
    )?;
    match refine_obstacle(&lf, &mg, &ty) {
        Ok(f) => println!("refined with obstacle {}", f.remainder.render(&ctx)),
        Err(e) => println!("refinement refused: {e}"),
    }
    Ok(())
}
