//! A generic fourth-order operator: the (X)(XY)(Y) ansatz solved by linear
//! elimination, with the equations left over.

use lpdo::ansatz::{build_ansatz, eliminate_linear, AnsatzOptions, Naming};
use lpdo::parse::{parse_operator, parse_symbol};
use lpdo::{Context, FactorizationType, Render};

fn main() -> lpdo::Result<()> {
    let mut ctx = Context::new(&["x", "y"])?;
    let mut text = "Dx^2*Dy^2".to_string();
    for (i, j) in [
        (3, 0),
        (2, 1),
        (1, 2),
        (0, 3),
        (2, 0),
        (1, 1),
        (0, 2),
        (1, 0),
        (0, 1),
        (0, 0),
    ] {
        let name = format!("a{i}{j}");
        ctx.declare_function_all(&name)?;
        text.push_str(&format!(" + {name}*Dx^{i}*Dy^{j}"));
    }
    let a = parse_operator(&text, &ctx)?;
    let ty = FactorizationType::new(vec![
        parse_symbol("X", &ctx)?,
        parse_symbol("X*Y", &ctx)?,
        parse_symbol("Y", &ctx)?,
    ])?;
    let opts = AnsatzOptions {
        factor_names: vec![
            Naming::Explicit(vec!["m".into()]),
            Naming::Prefix("n".into()),
            Naming::Explicit(vec!["f".into()]),
        ],
        declaration_order: Some(vec![1, 0, 2]),
        ..AnsatzOptions::default()
    };
    let sys = build_ansatz(&mut ctx, &a, &ty, -1, &opts)?;
    let rep = eliminate_linear(&sys);
    for s in &rep.substitutions {
        println!(
            "{} = {}",
            sys.unknowns[s.unknown].name,
            s.value.render(&ctx)
        );
    }
    for e in rep.residual() {
        println!(
            "residual at {:?}: {} terms",
            e.origin.as_slice(),
            e.poly.len()
        );
    }
    println!("replays: {}", rep.replays(&sys));
    Ok(())
}
