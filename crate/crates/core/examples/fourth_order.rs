//! Refinement of a pair of factorizations of a fourth-order operator.

use lpdo::parse::parse_operator;
use lpdo::{refine_complete, Context, Render, Side};

fn main() -> lpdo::Result<()> {
    let ctx = Context::new(&["x", "y"])?;
    let op = |s: &str| parse_operator(s, &ctx);
    let l = op("Dx^3 + (1 + x)*Dx^2*Dy + x*Dx*Dy^2 - x^2*Dx^2 - x^3*Dx*Dy \
        + (1 - 4*x)*Dx + (x - 2*x^2)*Dy - 2")?;
    let f = op("Dy + x^2")?;
    let m = op("Dx + x*Dy")?;
    let g = op("Dx^2*Dy + Dx*Dy^2 + x^2*Dx^2 + (4*x - x^4)*Dx + Dy - 4*x^3 + x^2 + 2")?;
    println!("L*F == M*G: {}", l.compose(&f)? == m.compose(&g)?);
    let t = refine_complete(&l, &f, &m, &g, Side::Left)?;
    println!("N = {}", t.middle.render(&ctx));
    Ok(())
}
