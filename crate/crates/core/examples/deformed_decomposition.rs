// Moves `ω` to `ω + εv` and compares the closed-form decomposition of
// `Lʲα` with a dual-number solve in the deformed model.

use lefschetz::form::standard_kahler_form;
use lefschetz::sample;
use lefschetz::sl2::{deformed_decompose_closed, phi_tilde};
use lefschetz::{build_model, Form};

pub fn run_example() -> lefschetz::Result<()> {
    let n = 3;
    let model = build_model(&standard_kahler_form(n))?;
    let mut rng = sample::rng(5);
    let alpha = sample::primitive(&mut rng, &model, 1).expect("P^1 is nonzero");
    let v = sample::two_form(&mut rng, n);
    let deformed = model.deform(&v)?;
    for j in 0..=2 {
        let closed = deformed_decompose_closed(&model, &alpha, j, &v)?;
        let oracle = deformed.decompose(&model.lefschetz_pow(&alpha, j).lift())?;
        assert_eq!(closed, oracle);
        let moved: Form = oracle
            .parts()
            .filter(|(s, _)| *s != j)
            .map(|(s, beta)| model.lefschetz_pow(&beta.slope(), s))
            .fold(Form::zero(n), |a, b| a + b);
        assert_eq!(moved, phi_tilde(&model, &alpha, j, &v)?);
        println!("j = {j}: slots {:?}", closed.slots());
    }
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
