// Which primitive forms stay primitive when `ω` is moved along `v`.

use lefschetz::form::{standard_kahler_form, Form};
use lefschetz::sl2::stays_primitive;
use lefschetz::{build_model, Scalar};

pub fn run_example() -> lefschetz::Result<()> {
    let model = build_model(&standard_kahler_form(2))?;
    let a = (Form::<Scalar>::dz(2, 1).wedge(&Form::dzb(2, 1)) - Form::dz(2, 2).wedge(&Form::dzb(2, 2)))
        .scale(&Scalar::i());
    println!("v = 0:     {}", stays_primitive(&model, &a, &Form::zero(2))?);
    println!("v = alpha: {}", stays_primitive(&model, &a, &a)?);
    assert!(!stays_primitive(&model, &a, &a)?);
    let dz1 = Form::dz(2, 1);
    let v = dz1.wedge(&Form::dzb(2, 2));
    println!("dz1 along dz1^dzb2: {}", stays_primitive(&model, &dz1, &v)?);
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
