//! A two-parameter family of factorizations of Dx^2*Dy^2.

use lpdo::parse::parse_operator;
use lpdo::{Context, Lpdo, Render};

fn main() -> lpdo::Result<()> {
    let mut ctx = Context::new(&["x", "y"])?;
    ctx.declare_constant("alpha")?;
    ctx.declare_constant("beta")?;
    let f1 = parse_operator("Dx + alpha/(y + alpha*x + beta)", &ctx)?;
    let f2 = parse_operator("Dy + 1/(y + alpha*x + beta)", &ctx)?;
    let f3 = parse_operator("Dx*Dy - 1/(y + alpha*x + beta)*(Dx + alpha*Dy)", &ctx)?;
    let product = Lpdo::compose_all(2, [&f1, &f2, &f3])?;
    println!("F1*F2*F3 = {}", product.render(&ctx));
    println!("F1*F2 == F2*F1: {}", f1.compose(&f2)? == f2.compose(&f1)?);
    Ok(())
}
