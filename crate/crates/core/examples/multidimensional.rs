//! Refinement in three variables with arbitrary function coefficients.

use lpdo::parse::parse_operator;
use lpdo::{divide_left, refine_complete, Context, Render, Side};

fn main() -> lpdo::Result<()> {
    let mut ctx = Context::new(&["x", "y", "z"])?;
    for name in ["s", "t", "b"] {
        ctx.declare_function_all(name)?;
    }
    let op = |s: &str| parse_operator(s, &ctx);
    let l = op("Dx*Dy + s*Dx + t*Dy + t*s + s_x")?;
    let f = op("Dz + b")?;
    let m = op("Dx + t")?;
    let g = op("Dy*Dz + b*Dy + s*Dz + s*b + b_y")?;
    println!("L*F == M*G: {}", l.compose(&f)? == m.compose(&g)?);
    let d = divide_left(&l, &m)?;
    println!(
        "L = M*({}) + ({})",
        d.quotient.render(&ctx),
        d.remainder.render(&ctx)
    );
    let t = refine_complete(&l, &f, &m, &g, Side::Left)?;
    println!("N = {}", t.middle.render(&ctx));
    Ok(())
}
