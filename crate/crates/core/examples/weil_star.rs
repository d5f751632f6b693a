// The Hodge star from the primitive decomposition.

use lefschetz::form::{all_monomials, standard_kahler_form, Form};
use lefschetz::hodge::{hodge_star, StarContext};
use lefschetz::{build_model, Ring, Scalar};

pub fn run_example() -> lefschetz::Result<()> {
    let ctx = StarContext::new(build_model(&standard_kahler_form(3))?)?;
    let model = ctx.model();
    let vol = model.omega_pow(3).scale(&Scalar::rational(1, 6));
    assert_eq!(hodge_star(&Form::one(3), &ctx), vol);
    println!("*1 = {}", hodge_star(&Form::one(3), &ctx));
    println!("*w = {}", hodge_star(model.omega(), &ctx));
    for m in all_monomials(3) {
        let x = Form::monomial(3, m, Scalar::one());
        let twice = hodge_star(&hodge_star(&x, &ctx), &ctx);
        assert_eq!(twice, x.scale(&Scalar::sign(m.degree() as i64)));
    }
    println!("** = (-1)^deg on all 64 monomials");
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
