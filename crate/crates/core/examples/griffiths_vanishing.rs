// Multiplying a primitive form by a 2-form only reaches the first three
// primitive slots.

use lefschetz::form::{degree_two_basis, standard_kahler_form};
use lefschetz::build_model;

pub fn run_example() -> lefschetz::Result<()> {
    let n = 3;
    let model = build_model(&standard_kahler_form(n))?;
    let mut checked = 0;
    for m in 0..=n {
        for alpha in model.primitive_basis(m) {
            for v in degree_two_basis(n) {
                let q = model.q_triple(&v, alpha)?;
                let rebuilt = &(&q.q0 + &model.lefschetz(&q.q1)) + &model.lefschetz_pow(&q.q2, 2);
                assert_eq!(rebuilt, alpha.wedge(&v));
                checked += 1;
            }
        }
    }
    println!("vα = Q0 + L Q1 + L^2 Q2 on {checked} pairs at N = {n}");
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
