// Searches single-mode directions for one along which a harmonic form
// stops being harmonic, and shows the two certificates agree.

use lefschetz::form::Form;
use lefschetz::torus::{FourierForm, TorusContext};
use lefschetz::Scalar;

pub fn run_example() -> lefschetz::Result<()> {
    let ctx = TorusContext::standard(2, 2)?;
    let a = (Form::<Scalar>::dz(2, 1).wedge(&Form::dzb(2, 1)) - Form::dz(2, 2).wedge(&Form::dzb(2, 2)))
        .scale(&Scalar::i());
    let alpha = FourierForm::constant(a);
    let (v, cert) = ctx
        .find_harmonicity_witness(&alpha, 0, 2)?
        .expect("a witness exists at radius 2");
    println!("v = {v}");
    println!("h = {}", cert.h);
    assert!(!cert.holds && !cert.product_harmonic);
    let constant = ctx.omega();
    assert!(ctx.stays_harmonic(&alpha, 0, &constant)?.holds);
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
