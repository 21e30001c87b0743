//! When the outer symbols share a factor, refinement is refused.

use lpdo::parse::parse_operator;
use lpdo::{laplace_invariants, refine_complete, Context, Render, Side};

fn main() -> lpdo::Result<()> {
    let ctx = Context::new(&["x", "y"])?;
    let p = parse_operator("Dx*Dy + 1", &ctx)?;
    let q = parse_operator("Dx + 1", &ctx)?;
    println!("P*Q == Q*P: {}", p.compose(&q)? == q.compose(&p)?);
    match refine_complete(&p, &q, &q, &p, Side::Left) {
        Ok(t) => println!("unexpected refinement {}", t.middle.render(&ctx)),
        Err(e) => println!("refinement refused: {e}"),
    }
    let inv = laplace_invariants(&p)?;
    println!("h = {}, k = {}", inv.h.render(&ctx), inv.k.render(&ctx));
    Ok(())
}
