//! Two factorizations of different types of one third-order operator.

use lpdo::parse::parse_operator;
use lpdo::{Context, Render};

fn main() -> lpdo::Result<()> {
    let mut ctx = Context::new(&["x", "y"])?;
    ctx.declare_function("c", &["y"])?;
    let three = parse_operator(
        "(Dx + 1 + 1/(x + c))*(Dx + 1 - 1/(x + c))*(Dx + x*Dy)",
        &ctx,
    )?;
    let two = parse_operator("(Dx^2 + x*Dx*Dy + Dx + (2 + x)*Dy)*(Dx + 1)", &ctx)?;
    println!("L = {}", three.render(&ctx));
    println!("symbol = {}", three.symbol().render(&ctx));
    println!("same operator: {}", three == two);
    Ok(())
}
