// `T_v`, the first-order change of the Hodge star, from its closed form
// and from the star of the deformed model.

use lefschetz::form::{all_monomials, standard_kahler_form, Form};
use lefschetz::hodge::{deformed_star_oracle, t_v, StarContext};
use lefschetz::{build_model, sample, Ring, Scalar};

pub fn run_example() -> lefschetz::Result<()> {
    let ctx = StarContext::new(build_model(&standard_kahler_form(3))?)?;
    let v = sample::real_one_one(&mut sample::rng(2), 3);
    for m in all_monomials(3) {
        let x = Form::monomial(3, m, Scalar::one());
        assert_eq!(t_v(&x, &v, &ctx)?, deformed_star_oracle(&x, &v, &ctx)?.slope());
    }
    let w = ctx.model().omega();
    let primitive_v = ctx.model().decompose(&v)?.part(0);
    println!("T_v(w) = {}", t_v(w, &primitive_v, &ctx)?);
    assert_eq!(t_v(w, &primitive_v, &ctx)?, w.wedge(&primitive_v).scale(&Scalar::from(2)));
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
