// `h(v, αωʲ) = *dT_v(αωʲ)` next to its closed form in terms of the
// primitive pieces of `vα`.

use lefschetz::form::standard_kahler_form;
use lefschetz::hodge::StarContext;
use lefschetz::torus::{FourierForm, ModeSet, TorusContext};
use lefschetz::{build_model, Form};

pub fn run_example() -> lefschetz::Result<()> {
    let modes = (-1..=1).flat_map(|a| (-1..=1).map(move |b| vec![a, 0, 0, b, 0, 0]));
    let star = StarContext::new(build_model(&standard_kahler_form(3))?)?;
    let ctx = TorusContext::new(star, ModeSet::new(3, modes)?)?;
    let alpha = FourierForm::constant(Form::dz(3, 1));
    let mut agree = 0;
    let directions = ctx.single_mode_directions(1);
    for v in directions.iter() {
        for j in 0..=2 {
            let x = alpha.wedge_constant(&ctx.model().omega_pow(j));
            let h = ctx.h_map(v, &x)?.h;
            if h == ctx.h_closed_form(&alpha, j, v)? {
                agree += 1;
            }
        }
    }
    println!("closed form agrees on {agree} of {} cases", 3 * directions.len());

    // in top degree the closed form vanishes identically while h need not
    for a in ctx.model().primitive_basis(3) {
        let top = FourierForm::constant(a.clone());
        for v in &directions {
            let h = ctx.h_map(v, &top)?.h;
            if !h.is_zero() {
                assert!(ctx.h_closed_form(&top, 0, v)?.is_zero());
                println!("top degree: alpha = {top}, v = {v}\n  h = {h}, closed form = 0");
                return Ok(());
            }
        }
    }
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
