// Builds the Lefschetz model of the standard Kähler form and checks the
// sl₂ commutation relations on the whole exterior algebra.
//
// ```bash
// cargo run --example sl2_relations
// ```

use lefschetz::form::standard_kahler_form;
use lefschetz::{build_model, Scalar};

pub fn run_example() -> lefschetz::Result<()> {
    for n in 1..=3 {
        let model = build_model(&standard_kahler_form(n))?;
        let l = model.lefschetz_operator();
        let lambda = model.lambda_operator();
        let b = model.weight_operator();
        let ok = lambda.commutator(&l).try_sub(&b)?.is_zero()
            && b.commutator(&l).try_sub(&l.scale(&Scalar::from(-2)))?.is_zero()
            && b.commutator(&lambda).try_sub(&lambda.scale(&Scalar::from(2)))?.is_zero();
        println!("N = {n}: dim A = {:>2}, relations hold: {ok}", 1 << (2 * n));
        assert!(ok);
    }
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
