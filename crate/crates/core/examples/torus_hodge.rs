// Fourier forms on a flat torus: `d`, the codifferential, the Green
// operator and the Hodge decomposition.

use lefschetz::torus::{theta, FourierForm, TorusContext};
use lefschetz::Form;

pub fn run_example() -> lefschetz::Result<()> {
    let ctx = TorusContext::standard(2, 1)?;
    let k = vec![1, 0, 0, -1];
    let x = FourierForm::from_modes(
        2,
        [(k.clone(), Form::dz(2, 1)), (vec![0, 0, 0, 0], Form::dzb(2, 2))],
    );
    let split = ctx.hodge_decompose(&x)?;
    println!("harmonic part:  {}", split.harmonic);
    println!("exact part:     {}", split.d_exact);
    println!("coexact part:   {}", split.dstar_exact);
    assert_eq!(&(&split.harmonic + &split.d_exact) + &split.dstar_exact, x);
    println!("theta(k) = {}", theta(2, &k));
    println!("Laplacian eigenvalue at k: {:?}", ctx.laplacian_eigenvalue(&k).map(|e| e.to_string()));
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
