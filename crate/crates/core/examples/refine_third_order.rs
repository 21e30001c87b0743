//! Refines L*F = M*G into a three-factor factorization M*N*F.

use lpdo::parse::parse_operator;
use lpdo::{refine_complete, Context, Render, Side};

fn main() -> lpdo::Result<()> {
    let ctx = Context::new(&["x", "y"])?;
    let op = |s: &str| parse_operator(s, &ctx);
    let l = op("Dx^2 + (x + y^2)*Dx + x*y^2")?;
    let f = op("Dy + y")?;
    let m = op("Dx + x")?;
    let g = op("Dx*Dy + y*Dx + y^2*Dy + y^3")?;
    let t = refine_complete(&l, &f, &m, &g, Side::Left)?;
    println!(
        "({}) * ({}) * ({})",
        t.outer.render(&ctx),
        t.middle.render(&ctx),
        t.inner.render(&ctx)
    );
    println!("equals L*F: {}", t.product()? == l.compose(&f)?);
    Ok(())
}
