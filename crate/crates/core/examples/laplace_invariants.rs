//! Laplace invariants of hyperbolic second-order operators.

use lpdo::parse::parse_operator;
use lpdo::{laplace_invariants, Context, Render};

fn main() -> lpdo::Result<()> {
    let ctx = Context::new(&["x", "y"])?;
    for text in [
        "Dx*Dy + 1",
        "Dx*Dy + x*Dx + y*Dy + x*y",
        "Dx*Dy + 1/(1 - x)*Dx + x*Dy + (2 - x)/(x - 1)^2",
    ] {
        let inv = laplace_invariants(&parse_operator(text, &ctx)?)?;
        println!("{text}");
        println!("  h = {}", inv.h.render(&ctx));
        println!("  k = {}", inv.k.render(&ctx));
    }
    Ok(())
}
