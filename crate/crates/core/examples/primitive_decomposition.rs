// Splits forms into `Σ Lʲβⱼ` with primitive `βⱼ` and applies the dual
// Lefschetz operator.

use lefschetz::form::{standard_kahler_form, Form};
use lefschetz::{build_model, Scalar};

pub fn run_example() -> lefschetz::Result<()> {
    let model = build_model(&standard_kahler_form(2))?;
    let x = Form::<Scalar>::dz(2, 1).wedge(&Form::dzb(2, 1));
    let d = model.decompose(&x)?;
    println!("dz1^dzb1 = {d}");
    assert_eq!(model.reconstruct(&d), x);

    // Λωᵏ = k(N−k+1)ωᵏ⁻¹
    let w2 = model.omega_pow(2);
    println!("Λ(w^2) = {}", model.lambda(&w2));
    assert_eq!(model.lambda(&w2), model.omega().scale(&Scalar::from(2)));

    let indefinite = Form::<Scalar>::dz(2, 1).wedge(&Form::dzb(2, 1)) - Form::dz(2, 2).wedge(&Form::dzb(2, 2));
    let indefinite = indefinite.scale(&Scalar::i());
    let other = build_model(&indefinite)?;
    println!("indefinite form: dim P^2 = {}", other.primitive_basis(2).len());
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
