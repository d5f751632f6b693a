// Linearity criteria for the cones `Kⁱ` on a flat torus and the tangent
// identity for `(ω + εv)^{N−i}ωⁱ`.

use lefschetz::cones::{k0_equivalence_suite, tangent_identity_check};
use lefschetz::torus::TorusContext;

pub fn run_example() -> lefschetz::Result<()> {
    let ctx = TorusContext::standard(2, 1)?;
    let other = TorusContext::standard(2, 0)?;
    let report = k0_equivalence_suite(&ctx, &[other])?;
    for r in &report.reports {
        println!("K^{}: linear criterion {} over {} products", r.i, r.criterion_holds, r.witnesses.len());
    }
    println!("monotone: {}, positive cone: {}", report.monotone, report.positive_cone);
    let v = &ctx.single_mode_directions(1)[0];
    let t = tangent_identity_check(v, 0, &ctx)?;
    println!("tangent identity exact: {}, v tangent: {}", t.identity_exact, t.tangent);
    assert!(t.lemma_holds());
    Ok(())
}

fn main() -> lefschetz::Result<()> {
    run_example()
}
