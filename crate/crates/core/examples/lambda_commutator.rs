// The dual Lefschetz operators of `ω` and `ω + εv` commute for real
// `(1,1)` directions `v`.

use lefschetz::form::{real_one_one_basis, standard_kahler_form};
use lefschetz::sl2::commutator_lambda_eps;
use lefschetz::build_model;

pub fn run_example() -> lefschetz::Result<()> {
    for n in [2, 3] {
        let model = build_model(&standard_kahler_form(n))?;
        let basis = real_one_one_basis(n);
        for v in &basis {
            assert!(commutator_lambda_eps(&model, v)?.is_zero());
        }
        println!("N = {n}: [Λ, Λ_ε] = 0 for all {} basis directions", basis.len());
    }
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
