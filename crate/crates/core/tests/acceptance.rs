//! The acceptance suite: thirteen exact criteria, one line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail on the inputs they
//! quantify over. They are still evaluated in full and printed as `[FAIL]`
//! with a counterexample; the process exits nonzero on any other failure,
//! or if a known-red criterion starts passing.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use lefschetz::cones::{k0_equivalence_suite, ki_linear_criterion, tangent_identity_check, torus_harmonic_basis};
use lefschetz::form::{
    all_monomials, degree_two_basis, diagonal_kahler_form, real_one_one_basis, standard_kahler_form, Form,
};
use lefschetz::hodge::{deformed_star_oracle, t_v, StarContext};
use lefschetz::sl2::{commutator_lambda_eps, deformed_decompose_closed, phi_tilde};
use lefschetz::torus::{FourierForm, ModeSet, TorusContext};
use lefschetz::{build_model, sample, DualScalar, PrimDecomp, Ring, Scalar, Sl2Model};

const KNOWN_RED: [usize; 2] = [9, 11];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn std_model(n: usize) -> Sl2Model {
    build_model(&standard_kahler_form(n)).expect("standard form is Kähler")
}

fn unit(n: usize, m: lefschetz::Mono) -> Form {
    Form::monomial(n, m, Scalar::one())
}

fn inv_fact(k: i64) -> Scalar {
    Scalar::factorial(k)
        .and_then(|f| f.inverse())
        .unwrap_or_else(Scalar::zero)
}

fn omega_pow(model: &Sl2Model, k: i64) -> Form {
    if k < 0 {
        Form::zero(model.dim())
    } else {
        model.omega_pow(k as usize)
    }
}

fn sl2_relations() -> Verdict {
    for n in [2, 3] {
        let m = std_model(n);
        let (l, lam, b) = (m.lefschetz_operator(), m.lambda_operator(), m.weight_operator());
        let ok = lam.commutator(&l).try_sub(&b).unwrap().is_zero()
            && b.commutator(&l).try_sub(&l.scale(&Scalar::from(-2))).unwrap().is_zero()
            && b.commutator(&lam).try_sub(&lam.scale(&Scalar::from(2))).unwrap().is_zero();
        if !ok {
            return verdict(false, format!("relations fail at N={n}"));
        }
    }
    verdict(true, "[Λ,L]=B, [B,L]=−2L, [B,Λ]=2Λ on all of A for N=2 (16) and N=3 (64)")
}

fn griffiths() -> Verdict {
    let mut count = 0;
    for n in [2, 3] {
        let m = std_model(n);
        for deg in 0..=n {
            for alpha in m.primitive_basis(deg) {
                for v in degree_two_basis(n) {
                    let d = m.decompose(&alpha.wedge(&v)).unwrap();
                    if d.slots().into_iter().any(|j| j >= 3) {
                        return verdict(false, format!("N={n}: α={alpha}, v={v} reaches slot ≥ 3"));
                    }
                    m.q_triple(&v, alpha).unwrap();
                    count += 1;
                }
            }
        }
    }
    verdict(true, format!("{count} pairs (α primitive basis, v ∈ basis of A²), N=2,3"))
}

/// The off-slot ε-parts of an oracle decomposition, mapped back through `L`.
fn moved_part(model: &Sl2Model, d: &PrimDecomp<DualScalar>, j: usize) -> Form {
    d.parts()
        .filter(|(s, _)| *s != j)
        .map(|(s, beta)| model.lefschetz_pow(&beta.slope(), s))
        .fold(Form::zero(model.dim()), |a, b| a + b)
}

/// Criteria 3 and 4 share their cases: results are (main2 failures, main1
/// failures, cases, random N=4 cases).
fn deformed_decompositions() -> (Vec<String>, Vec<String>, usize, usize) {
    let (mut bad3, mut bad4, mut cases) = (Vec::new(), Vec::new(), 0);
    let mut check = |model: &Sl2Model, deformed: &Sl2Model<DualScalar>, alpha: &Form, j: usize, v: &Form| {
        let closed = deformed_decompose_closed(model, alpha, j, v).unwrap();
        let oracle = deformed.decompose(&model.lefschetz_pow(alpha, j).lift()).unwrap();
        if closed != oracle {
            bad3.push(format!("N={} α={alpha} j={j} v={v}", model.dim()));
        }
        if moved_part(model, &oracle, j) != phi_tilde(model, alpha, j, v).unwrap() {
            bad4.push(format!("N={} α={alpha} j={j} v={v}", model.dim()));
        }
        cases += 1;
    };
    for n in [2, 3] {
        let model = std_model(n);
        for v in degree_two_basis(n) {
            let deformed = model.deform(&v).unwrap();
            for deg in 0..=n {
                for alpha in model.primitive_basis(deg) {
                    for j in 0..=n - deg {
                        check(&model, &deformed, alpha, j, &v);
                    }
                }
            }
        }
    }
    let model = std_model(4);
    let mut rng = sample::rng(2024);
    let mut random = 0;
    while random < 100 {
        use rand::Rng;
        let deg = rng.random_range(0..=4usize);
        let Some(alpha) = sample::primitive(&mut rng, &model, deg) else {
            continue;
        };
        let j = rng.random_range(0..=4 - deg);
        let v = sample::two_form(&mut rng, 4);
        let deformed = model.deform(&v).unwrap();
        check(&model, &deformed, &alpha, j, &v);
        random += 1;
    }
    (bad3, bad4, cases, random)
}

fn lefschetz_commutator() -> Verdict {
    let mut count = 0;
    for n in [2, 3] {
        let model = std_model(n);
        for v in real_one_one_basis(n) {
            if !commutator_lambda_eps(&model, &v).unwrap().is_zero() {
                return verdict(false, format!("N={n}: [Λ,Λ_ε] ≠ 0 for v={v}"));
            }
            count += 1;
        }
    }
    verdict(true, format!("[Λ,Λ_ε] = 0 for all {count} real (1,1) basis directions, N=2,3"))
}

fn weil_star() -> Verdict {
    for n in [2, 3] {
        let ctx = StarContext::new(std_model(n)).unwrap();
        let model = ctx.model();
        for m in all_monomials(n) {
            let x = unit(n, m);
            if ctx.star(&ctx.star(&x)) != x.scale(&Scalar::sign(m.degree() as i64)) {
                return verdict(false, format!("N={n}: ** ≠ (−1)^deg on {x}"));
            }
            let re = &x + &x.conj();
            let im = (&x - &x.conj()).scale(&Scalar::i());
            if !ctx.star(&re).is_real() || !ctx.star(&im).is_real() {
                return verdict(false, format!("N={n}: * breaks reality at {x}"));
            }
        }
        let ni = n as i64;
        if ctx.star(&Form::one(n)) != model.omega_pow(n).scale(&inv_fact(ni)) {
            return verdict(false, format!("N={n}: *1 ≠ ω^N/N!"));
        }
        if ctx.star(model.omega()) != model.omega_pow(n - 1).scale(&inv_fact(ni - 1)) {
            return verdict(false, format!("N={n}: *ω ≠ ω^(N−1)/(N−1)!"));
        }
    }
    verdict(true, "**=(−1)^deg on every monomial, reality preserved, *1 and *ω exact, N=2,3")
}

fn tv_examples_hold(ctx: &StarContext, v: &Form) -> Result<(), String> {
    let model = ctx.model();
    let n = model.dim();
    let ni = n as i64;
    for deg in 0..=n {
        for a in model.primitive_basis(deg) {
            let (p, q) = a.pure_type().unwrap();
            let k = deg as i64;
            let beta2 = model.q_triple(v, a).unwrap().q2;
            let pre = Scalar::sign(k * (k + 1) / 2)
                .times(&Scalar::i_pow(p as i64 - q as i64))
                .times(&inv_fact(ni - k));
            let expected = (a.wedge(v).wedge(&omega_pow(model, ni - k - 1)).scale(&Scalar::from(ni - k))
                - beta2.wedge(&omega_pow(model, ni - k + 1)).scale(&Scalar::from(ni - k + 2)))
            .scale(&pre);
            if t_v(a, v, ctx).unwrap() != expected {
                return Err(format!("j=0 example fails: N={n} α={a} v={v}"));
            }
        }
    }
    let v0 = model.decompose(v).unwrap().part(0);
    for j in 0..n as i64 {
        let c = Scalar::from(2).times(&Scalar::factorial(j).unwrap()).times(&inv_fact(ni - j - 1));
        let expected = v0.wedge(&omega_pow(model, ni - j - 1)).scale(&c);
        if t_v(&model.omega_pow(j as usize), &v0, ctx).unwrap() != expected {
            return Err(format!("T_v(ω^j) example fails: N={n} j={j} v={v0}"));
        }
    }
    let top = model.omega_pow(n);
    let (vol_mono, vol) = top.terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
    for a in model.primitive_basis(2).iter().filter(|a| a.pure_type() == Some((1, 1))) {
        let av = a.wedge(v);
        let f = av.wedge(&omega_pow(model, ni - 2)).coeff(vol_mono).checked_div(&vol).unwrap();
        let expected = av.wedge(&omega_pow(model, ni - 3)).scale(&-inv_fact(ni - 3))
            + omega_pow(model, ni - 1).scale(&f.times(&Scalar::from(ni)).times(&inv_fact(ni - 2)));
        if t_v(a, v, ctx).unwrap() != expected {
            return Err(format!("(1,1) example fails: N={n} α={a} v={v}"));
        }
    }
    Ok(())
}

fn t_v_differential() -> Verdict {
    let mut count = 0;
    for n in [2, 3] {
        let ctx = StarContext::new(std_model(n)).unwrap();
        for v in real_one_one_basis(n) {
            for m in all_monomials(n) {
                let x = unit(n, m);
                let closed = t_v(&x, &v, &ctx).unwrap();
                let oracle = deformed_star_oracle(&x, &v, &ctx).unwrap().slope();
                if closed != oracle {
                    return verdict(false, format!("N={n}: T_v({x}) with v={v}: {closed} vs {oracle}"));
                }
                count += 1;
            }
            if let Err(e) = tv_examples_hold(&ctx, &v) {
                return verdict(false, e);
            }
        }
    }
    verdict(true, format!("{count} (x, v) pairs match the dual-number star; three worked examples hold, N=2,3"))
}

fn torus2() -> TorusContext {
    TorusContext::standard(2, 1).unwrap()
}

fn deformed_harmonic(ctx: &TorusContext) -> Verdict {
    let directions = ctx.single_mode_directions(1);
    let mut count = 0;
    for v in &directions {
        let star = ctx.deformed_star(v).unwrap();
        for m in all_monomials(2) {
            let alpha = FourierForm::constant(unit(2, m));
            let beta = match ctx.deformed_harmonic_part(&alpha, v) {
                Ok(b) => b,
                Err(e) => return verdict(false, format!("α={alpha} v={v}: {e}")),
            };
            if !star.laplacian(&beta).unwrap().is_zero() {
                return verdict(false, format!("Δ_ε β ≠ 0 for α={alpha} v={v}"));
            }
            count += 1;
        }
    }
    verdict(true, format!("Δ_ε(α+εdG*dT_v α) = 0 on {count} pairs (16 constant α × {} single-mode v)", directions.len()))
}

/// `(α, j, v)` with `α` a constant primitive basis form and `αωʲ ≠ 0`.
fn admissible(ctx: &TorusContext) -> Vec<(FourierForm, usize, FourierForm)> {
    let n = ctx.dim();
    let directions = ctx.single_mode_directions(1);
    let mut out = Vec::new();
    for deg in 0..=n {
        for a in ctx.model().primitive_basis(deg) {
            for j in 0..=n - deg {
                for v in &directions {
                    out.push((FourierForm::constant(a.clone()), j, v.clone()));
                }
            }
        }
    }
    out
}

fn degree(a: &FourierForm) -> usize {
    a.mean().homogeneous_degree().unwrap_or(0)
}

fn by_degree(failures: &BTreeMap<usize, usize>) -> String {
    failures
        .iter()
        .map(|(d, c)| format!("{c} at deg α={d}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn h_closed_form_agrees(ctx: &TorusContext) -> Verdict {
    let cases = admissible(ctx);
    let mut failures = BTreeMap::new();
    let mut example = None;
    let mut below_top = 0;
    for (a, j, v) in &cases {
        let x = a.wedge_constant(&ctx.model().omega_pow(*j));
        let h = ctx.h_map(v, &x).unwrap().h;
        let closed = ctx.h_closed_form(a, *j, v).unwrap();
        if degree(a) < ctx.dim() {
            below_top += 1;
        }
        if h != closed {
            *failures.entry(degree(a)).or_insert(0) += 1;
            example.get_or_insert_with(|| format!("α={a}, j={j}, v={v}: h={h}, closed form={closed}"));
        }
    }
    let total: usize = failures.values().sum();
    match example {
        None => verdict(true, format!("closed form ≡ *dT_v on all {} admissible (α, j, v)", cases.len())),
        Some(e) => verdict(
            false,
            format!(
                "{total}/{} admissible cases disagree ({}); all {below_top} cases with deg α < N agree; first: {e}",
                cases.len(),
                by_degree(&failures)
            ),
        ),
    }
}

fn harmonic_products(ctx: &TorusContext) -> Verdict {
    let n = ctx.dim();
    let mut witness = None;
    for a in ctx.model().primitive_basis(2).iter().filter(|a| a.pure_type() == Some((1, 1))) {
        let alpha = FourierForm::constant(a.clone());
        if let Some((v, cert)) = ctx.find_harmonicity_witness(&alpha, 0, 1).unwrap() {
            let product = alpha.try_wedge(&v, ctx.mode_set()).unwrap().wedge_constant(&ctx.model().omega_pow(n - 2));
            if !ctx.is_harmonic(&product) && !cert.h.is_zero() {
                witness = Some(format!("α={alpha}, v={v}"));
                break;
            }
        }
    }
    let Some(witness) = witness else {
        return verdict(false, "no witness with αvω^{N−2} non-harmonic found");
    };
    let (mut harmonic, mut moved) = (0, 0);
    for (a, j, v) in admissible(ctx) {
        let av = a.try_wedge(&v, ctx.mode_set()).unwrap();
        let product = if j == 0 { av.wedge_constant(&ctx.model().omega_pow(n - degree(&a))) } else { av };
        let x = a.wedge_constant(&ctx.model().omega_pow(j));
        let h = ctx.h_map(&v, &x).unwrap().h;
        let product_harmonic = ctx.is_harmonic(&product);
        if product_harmonic != h.is_zero() {
            return verdict(false, format!("α={a} j={j} v={v}: product harmonic {product_harmonic}, h={h}"));
        }
        ctx.stays_harmonic(&a, j, &v).unwrap();
        if product_harmonic {
            harmonic += 1;
        } else {
            moved += 1;
        }
    }
    verdict(
        true,
        format!("witness {witness}; {harmonic} harmonic-product cases all have h=0, {moved} others all have h≠0"),
    )
}

fn delta_relations(ctx: &TorusContext) -> Verdict {
    let model = ctx.model();
    let n = ctx.dim();
    let directions = ctx.single_mode_directions(1);
    let (mut cases, mut relation_bad, mut equiv_bad, mut in_particular_bad) =
        (0, BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    let mut example = None;
    for deg in 0..=n {
        for a0 in model.primitive_basis(deg) {
            let a = FourierForm::constant(a0.clone());
            for v in &directions {
                cases += 1;
                let q = ctx.q_triple(&a, v).unwrap();
                let d1 = ctx.d(&q.beta1);
                let (mut d0s, mut d1s) = (Vec::new(), Vec::new());
                let mut beyond = false;
                for (k, phi) in d1.modes() {
                    let dec = model.decompose(phi).unwrap();
                    beyond |= dec.slots().into_iter().any(|s| s >= 2);
                    d0s.push((k.clone(), dec.part(0)));
                    d1s.push((k.clone(), dec.part(1)));
                }
                let delta0 = FourierForm::from_modes(n, d0s);
                let delta1 = FourierForm::from_modes(n, d1s);
                let rel0 = ctx.d(&q.beta0) == -delta0.wedge_constant(model.omega());
                let rel2 = ctx.d(&q.beta2) == -delta1.clone();
                if beyond || !rel0 || !rel2 {
                    *relation_bad.entry(deg).or_insert(0) += 1;
                    example.get_or_insert_with(|| {
                        format!("α={a}, v={v}: dβ₂={} but −δ₁={}", ctx.d(&q.beta2), -delta1.clone())
                    });
                }
                let av_harmonic = ctx.is_harmonic(&a.try_wedge(v, ctx.mode_set()).unwrap());
                if av_harmonic != d1.is_zero() {
                    *equiv_bad.entry(deg).or_insert(0) += 1;
                }
                let outer = ctx.d(&q.beta0).is_zero() && ctx.d(&q.beta2).is_zero();
                if d1.is_zero() != outer {
                    *in_particular_bad.entry(deg).or_insert(0) += 1;
                }
            }
        }
    }
    let pass = relation_bad.is_empty() && equiv_bad.is_empty();
    let mut detail = format!(
        "{cases} (α, v) pairs; δ-relations fail: [{}]; αv harmonic ⟺ dβ₁=0 fails: [{}]; (dβ₁=0 ⟺ dβ₀=dβ₂=0 fails: [{}])",
        by_degree(&relation_bad),
        by_degree(&equiv_bad),
        by_degree(&in_particular_bad)
    );
    if let Some(e) = example {
        detail.push_str(&format!("; first: {e}"));
    }
    verdict(pass, detail)
}

fn cones() -> Verdict {
    let small3 = ModeSet::new(3, [vec![0; 6], vec![1, 0, 0, 0, 0, 0], vec![-1, 0, 0, 0, 0, 0]]).unwrap();
    let weights = [Scalar::from(1), Scalar::from(3), Scalar::rational(1, 2)];
    let contexts = vec![
        TorusContext::standard(2, 1).unwrap(),
        TorusContext::new(StarContext::new(std_model(3)).unwrap(), small3.clone()).unwrap(),
        TorusContext::new(
            StarContext::new(build_model(&diagonal_kahler_form(&weights)).unwrap()).unwrap(),
            small3,
        )
        .unwrap(),
    ];
    let mut tangent = 0;
    for ctx in &contexts {
        let n = ctx.dim();
        let mut vs = vec![ctx.omega()];
        vs.extend(torus_harmonic_basis(ctx));
        vs.extend(ctx.single_mode_directions(1));
        for v in &vs {
            for i in 0..n {
                let r = tangent_identity_check(v, i, ctx).unwrap();
                if !r.lemma_holds() {
                    return verdict(false, format!("tangent identity fails: N={n} i={i} v={v}"));
                }
                tangent += 1;
            }
        }
        let report = k0_equivalence_suite(ctx, &[]).unwrap();
        if !report.monotone || !report.implication_holds {
            return verdict(false, format!("criteria not monotone at N={n}"));
        }
        if !report.reports.iter().all(|r| r.criterion_holds) {
            return verdict(false, format!("a K^i criterion is false on the torus, N={n}"));
        }
        let top = ki_linear_criterion(n - 1, &torus_harmonic_basis(ctx), ctx).unwrap();
        if !top.criterion_holds {
            return verdict(false, format!("i=N−1 criterion false at N={n}"));
        }
    }
    verdict(
        true,
        format!("{tangent} tangent identities exact; all K^i criteria true and monotone on 3 torus models"),
    )
}

fn determinism() -> Verdict {
    let model = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models/default.json");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_lefschetz"))
            .args(["verify", "--model", model.to_str().unwrap(), "--suite", "all", "--seed", "7", "--json"])
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    if a.stdout.is_empty() {
        return verdict(false, format!("empty report: {}", String::from_utf8_lossy(&a.stderr)));
    }
    let lines = a.stdout.iter().filter(|&&c| c == b'\n').count();
    verdict(
        a.stdout == b.stdout && a.status.code() == b.status.code(),
        format!("two runs, {} bytes, {lines} records, identical: {}", a.stdout.len(), a.stdout == b.stdout),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Verdict, f64)> = Vec::new();
    let mut timed = |num: usize, name: &'static str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let v = f();
        let secs = start.elapsed().as_secs_f64();
        println!("[{}] {num:>2} {name}: {} ({secs:.1}s)", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push((num, name, v, secs));
    };
    timed(1, "sl2 relations", &mut sl2_relations);
    timed(2, "Griffiths vanishing", &mut griffiths);
    let start = Instant::now();
    let (bad3, bad4, cases, random) = deformed_decompositions();
    let shared = start.elapsed().as_secs_f64();
    timed(3, "deformed decomposition", &mut || {
        verdict(
            bad3.is_empty(),
            match bad3.first() {
                None => format!("closed form = dual-number oracle on {cases} cases ({random} random at N=4), {shared:.1}s shared with 4"),
                Some(e) => format!("{} of {cases} differ, first {e}", bad3.len()),
            },
        )
    });
    timed(4, "phi-tilde", &mut || {
        verdict(
            bad4.is_empty(),
            match bad4.first() {
                None => format!("φ̃ = off-slot ε-part on the same {cases} cases"),
                Some(e) => format!("{} of {cases} differ, first {e}", bad4.len()),
            },
        )
    });
    timed(5, "[Λ, Λ_ε] = 0", &mut lefschetz_commutator);
    timed(6, "Weil star", &mut weil_star);
    timed(7, "T_v differential test", &mut t_v_differential);
    let ctx = torus2();
    timed(8, "deformed harmonic part", &mut || deformed_harmonic(&ctx));
    timed(9, "closed form of h", &mut || h_closed_form_agrees(&ctx));
    timed(10, "harmonic products", &mut || harmonic_products(&ctx));
    timed(11, "δ-relations", &mut || delta_relations(&ctx));
    timed(12, "cone criteria", &mut cones);
    timed(13, "determinism", &mut determinism);

    let unexpected: Vec<usize> = results
        .iter()
        .filter(|(num, _, v, _)| v.pass == KNOWN_RED.contains(num))
        .map(|(num, ..)| *num)
        .collect();
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!(
        "{passed}/13 pass; known red: {:?}; unexpected outcomes: {:?}",
        KNOWN_RED, unexpected
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
