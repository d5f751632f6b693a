//! The verification suites behind `verify`.
//!
//! Every check enumerates its cases up front, evaluates them in parallel
//! and folds the outcomes in enumeration order, so reports do not depend on
//! scheduling. Random cases come from [`crate::sample`], seeded by the
//! descriptor.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::descriptor::Model;
use super::expr::render;
use crate::cones::{k0_equivalence_suite, tangent_identity_check};
use crate::error::{Error, Result};
use crate::form::{all_monomials, degree_two_basis, real_one_one_basis, Form};
use crate::hodge::{deformed_star_oracle, t_v};
use crate::linop::LinOp;
use crate::sample;
use crate::scalar::{DualScalar, Ring, Scalar};
use crate::sl2::{commutator_lambda_eps, Sl2Model, deformed_decompose_closed, phi_tilde, stays_primitive};
use crate::torus::FourierForm;

pub const SUITES: [&str; 4] = ["sl2", "hodge", "torus", "cones"];

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub check: String,
    pub inputs: String,
    pub status: Status,
    pub certificate: Value,
}

struct Outcome {
    pass: bool,
    certificate: Value,
}

type Runner<'a> = Box<dyn Fn() -> Outcome + Send + Sync + 'a>;

struct Item<'a> {
    suite: &'static str,
    check: &'static str,
    run: Runner<'a>,
}

/// Runs `f` over every case. `Ok(None)` is a pass, `Ok(Some(detail))` a
/// failure, and errors count as failures too.
fn tally<T: Sync>(cases: &[T], f: impl Fn(&T) -> Result<Option<Value>> + Sync) -> Outcome {
    let results: Vec<Result<Option<Value>>> = cases.par_iter().map(&f).collect();
    let mut failures = 0;
    let mut first = Value::Null;
    for r in results {
        let detail = match r {
            Ok(None) => continue,
            Ok(Some(d)) => d,
            Err(e) => json!({ "error": e.to_string() }),
        };
        if failures == 0 {
            first = detail;
        }
        failures += 1;
    }
    Outcome {
        pass: failures == 0,
        certificate: json!({ "cases": cases.len(), "failures": failures, "first_failure": first }),
    }
}

fn single(f: impl FnOnce() -> Result<(bool, Value)>) -> Outcome {
    match f() {
        Ok((pass, certificate)) => Outcome { pass, certificate },
        Err(e) => Outcome {
            pass: false,
            certificate: json!({ "error": e.to_string() }),
        },
    }
}

fn fail_unless(ok: bool, detail: impl FnOnce() -> Value) -> Option<Value> {
    (!ok).then(detail)
}

fn fingerprint(model: &Model) -> String {
    let modes: Vec<String> = model.torus.mode_set().iter().map(|k| format!("{k:?}")).collect();
    let bindings: Vec<String> = model.sources.iter().map(|(k, e)| format!("{k}={e}")).collect();
    format!(
        "N={};omega={};modes={};bindings={};seed={}",
        model.n,
        model.omega,
        modes.join(","),
        bindings.join(","),
        model.seed
    )
}

fn digest(text: &str) -> String {
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

/// Degree-2 directions for the algebraic checks: the monomial basis and a
/// few seeded random forms.
fn two_forms(model: &Model, salt: u64) -> Vec<Form> {
    let mut rng = sample::rng(model.seed ^ salt);
    let mut out = degree_two_basis(model.n);
    out.extend((0..3).map(|_| sample::two_form(&mut rng, model.n)));
    out
}

fn real_directions(model: &Model, salt: u64) -> Vec<Form> {
    let mut rng = sample::rng(model.seed ^ salt);
    let mut out = real_one_one_basis(model.n);
    out.extend((0..2).map(|_| sample::real_one_one(&mut rng, model.n)));
    out
}

fn primitive_pairs(model: &Model) -> Vec<(Form, usize)> {
    let sl2 = model.torus.model();
    (0..=model.n)
        .flat_map(|m| sl2.primitive_basis(m).iter().cloned())
        .flat_map(|a| {
            let m = a.homogeneous_degree().unwrap_or(0);
            (0..=model.n - m).map(move |j| (a.clone(), j))
        })
        .collect()
}

fn deform_all(sl2: &Sl2Model, vs: &[Form]) -> Vec<Result<Sl2Model<DualScalar>>> {
    vs.par_iter().map(|v| sl2.deform(v)).collect()
}

fn op_equal(a: &LinOp, b: &LinOp) -> Result<bool> {
    Ok(a.try_sub(b)?.is_zero())
}

fn sl2_items(model: &Model) -> Vec<Item<'_>> {
    let sl2 = model.torus.model();
    let mut items: Vec<Item<'_>> = Vec::new();
    items.push(Item {
        suite: "sl2",
        check: "sl2-relations",
        run: Box::new(move || {
            single(|| {
                let (l, lam, b) = (sl2.lefschetz_operator(), sl2.lambda_operator(), sl2.weight_operator());
                let first = op_equal(&lam.commutator(&l), &b)?;
                let second = op_equal(&b.commutator(&l), &l.scale(&Scalar::from(-2)))?;
                let third = op_equal(&b.commutator(&lam), &lam.scale(&Scalar::from(2)))?;
                Ok((
                    first && second && third,
                    json!({ "lambda_l": first, "b_l": second, "b_lambda": third, "dim": 1usize << (2 * model.n) }),
                ))
            })
        }),
    });
    let alphas: Vec<Form> = (0..=model.n).flat_map(|m| sl2.primitive_basis(m).to_vec()).collect();
    let vs = two_forms(model, 0x51);
    let cases: Vec<(Form, Form)> = alphas
        .iter()
        .flat_map(|a| vs.iter().map(move |v| (a.clone(), v.clone())))
        .collect();
    items.push(Item {
        suite: "sl2",
        check: "q-components-vanish",
        run: Box::new(move || {
            tally(&cases, |(a, v)| {
                let d = sl2.decompose(&a.wedge(v))?;
                let high: Vec<usize> = d.slots().into_iter().filter(|&j| j >= 3).collect();
                Ok(fail_unless(high.is_empty(), || {
                    json!({ "alpha": a.to_string(), "v": v.to_string(), "slots": high })
                }))
            })
        }),
    });
    let vs = std::sync::Arc::new(vs);
    let pairs = primitive_pairs(model);
    let triples: Vec<(Form, usize, usize)> = pairs
        .iter()
        .flat_map(|(a, j)| (0..vs.len()).map(move |vi| (a.clone(), *j, vi)))
        .collect();
    let triples = std::sync::Arc::new(triples);
    let (t, w) = (triples.clone(), vs.clone());
    items.push(Item {
        suite: "sl2",
        check: "deformed-decomposition",
        run: Box::new(move || {
            let deformed = deform_all(sl2, &w);
            tally(&t, |(a, j, vi)| {
                let v = &w[*vi];
                let closed = deformed_decompose_closed(sl2, a, *j, v)?;
                let oracle = deformed[*vi].as_ref().map_err(Clone::clone)?.decompose(&sl2.lefschetz_pow(a, *j).lift())?;
                Ok(fail_unless(closed == oracle, || {
                    json!({ "alpha": a.to_string(), "j": j, "v": v.to_string(),
                            "closed": closed.to_string(), "oracle": oracle.to_string() })
                }))
            })
        }),
    });
    let (t, w) = (triples.clone(), vs.clone());
    items.push(Item {
        suite: "sl2",
        check: "phi-tilde",
        run: Box::new(move || {
            let deformed = deform_all(sl2, &w);
            tally(&t, |(a, j, vi)| {
                let v = &w[*vi];
                let oracle = deformed[*vi].as_ref().map_err(Clone::clone)?.decompose(&sl2.lefschetz_pow(a, *j).lift())?;
                let moved: Form = oracle
                    .parts()
                    .filter(|(s, _)| s != j)
                    .map(|(s, beta)| sl2.lefschetz_pow(&beta.slope(), s))
                    .fold(Form::zero(model.n), |acc, x| acc + x);
                let formula = phi_tilde(sl2, a, *j, v)?;
                Ok(fail_unless(moved == formula, || {
                    json!({ "alpha": a.to_string(), "j": j, "v": v.to_string(),
                            "formula": formula.to_string(), "oracle": moved.to_string() })
                }))
            })
        }),
    });
    let pairs: Vec<(Form, usize)> = alphas
        .iter()
        .flat_map(|a| (0..vs.len()).map(move |vi| (a.clone(), vi)))
        .collect();
    let w = vs.clone();
    items.push(Item {
        suite: "sl2",
        check: "stays-primitive",
        run: Box::new(move || {
            let deformed = deform_all(sl2, &w);
            tally(&pairs, |(a, vi)| {
                let v = &w[*vi];
                let answer = stays_primitive(sl2, a, v)?;
                let oracle = deformed[*vi].as_ref().map_err(Clone::clone)?.is_primitive(&a.lift());
                Ok(fail_unless(answer == oracle, || {
                    json!({ "alpha": a.to_string(), "v": v.to_string(), "answer": answer })
                }))
            })
        }),
    });
    let reals = real_directions(model, 0x52);
    items.push(Item {
        suite: "sl2",
        check: "lambda-commutator",
        run: Box::new(move || {
            tally(&reals, |v| {
                let c = commutator_lambda_eps(sl2, v)?;
                Ok(fail_unless(c.is_zero(), || json!({ "v": v.to_string(), "support": c.support() })))
            })
        }),
    });
    items
}

/// `1/k!` as a scalar, zero for negative `k`.
fn inv_fact(k: i64) -> Scalar {
    Scalar::factorial(k)
        .and_then(|f| f.inverse())
        .unwrap_or_else(Scalar::zero)
}

fn hodge_items(model: &Model) -> Vec<Item<'_>> {
    let star = model.torus.star_context();
    let sl2 = star.model();
    let n = model.n;
    let n_i = n as i64;
    let mut items: Vec<Item<'_>> = Vec::new();
    items.push(Item {
        suite: "hodge",
        check: "star-involution",
        run: Box::new(move || {
            tally(&all_monomials(n), |&m| {
                let x = Form::monomial(n, m, Scalar::one());
                let deg = m.degree() as i64;
                let twice = star.star(&star.star(&x));
                let sign = Scalar::sign(deg);
                let re = &x + &x.conj();
                let im = (&x - &x.conj()).scale(&Scalar::i());
                let ok = twice == x.scale(&sign) && star.star(&re).is_real() && star.star(&im).is_real();
                Ok(fail_unless(ok, || json!({ "x": x.to_string(), "star_star": twice.to_string() })))
            })
        }),
    });
    items.push(Item {
        suite: "hodge",
        check: "star-normalization",
        run: Box::new(move || {
            single(|| {
                let one = star.star(&Form::one(n));
                let star_w = star.star(sl2.omega());
                let vol = sl2.omega_pow(n).scale(&inv_fact(n_i));
                let co = sl2.omega_pow(n - 1).scale(&inv_fact(n_i - 1));
                Ok((one == vol && star_w == co, json!({ "star_one": one.to_string(), "star_omega": star_w.to_string() })))
            })
        }),
    });
    let vs = real_directions(model, 0x61);
    let cases: Vec<(Form, Form)> = vs
        .iter()
        .flat_map(|v| {
            all_monomials(n)
                .into_iter()
                .map(move |m| (Form::monomial(n, m, Scalar::one()), v.clone()))
        })
        .collect();
    items.push(Item {
        suite: "hodge",
        check: "tv-oracle",
        run: Box::new(move || {
            tally(&cases, |(x, v)| {
                let closed = t_v(x, v, star)?;
                let oracle = deformed_star_oracle(x, v, star)?.slope();
                Ok(fail_unless(closed == oracle, || {
                    json!({ "x": x.to_string(), "v": v.to_string(), "closed": closed.to_string(), "oracle": oracle.to_string() })
                }))
            })
        }),
    });
    let vs = real_directions(model, 0x62);
    items.push(Item {
        suite: "hodge",
        check: "tv-examples",
        run: Box::new(move || tally(&vs, |v| tv_examples(model, v))),
    });
    items
}

/// The three worked instances of `T_v`: primitive `α` with `j = 0`, powers
/// of `ω` along primitive `v`, and primitive `(1,1)` forms.
fn tv_examples(model: &Model, v: &Form) -> Result<Option<Value>> {
    let star = model.torus.star_context();
    let sl2 = star.model();
    let n = model.n;
    let n_i = n as i64;
    let w = |k: i64| if k < 0 { Form::zero(n) } else { sl2.omega_pow(k as usize) };
    for m in 0..=n {
        for a in sl2.primitive_basis(m) {
            let (p, q) = a.pure_type().ok_or(Error::NotPureType)?;
            let k = m as i64;
            let beta2 = sl2.q_triple(v, a)?.q2;
            let pre = Scalar::sign(k * (k + 1) / 2)
                .times(&Scalar::i_pow(p as i64 - q as i64))
                .times(&inv_fact(n_i - k));
            let expected = (a.wedge(v).wedge(&w(n_i - k - 1)).scale(&Scalar::from(n_i - k))
                - beta2.wedge(&w(n_i - k + 1)).scale(&Scalar::from(n_i - k + 2)))
            .scale(&pre);
            let got = t_v(a, v, star)?;
            if got != expected {
                return Ok(Some(json!({ "example": "primitive", "alpha": a.to_string(), "v": v.to_string() })));
            }
        }
    }
    let v0 = sl2.decompose(v)?.part(0);
    for j in 0..n {
        let ji = j as i64;
        let expected = v0
            .wedge(&w(n_i - ji - 1))
            .scale(&Scalar::from(2).times(&Scalar::factorial(ji).expect("j ≥ 0")).times(&inv_fact(n_i - ji - 1)));
        let got = t_v(&sl2.omega_pow(j), &v0, star)?;
        if got != expected {
            return Ok(Some(json!({ "example": "omega-power", "j": j, "v": v0.to_string() })));
        }
    }
    if n >= 2 {
        let top = sl2.omega_pow(n);
        let (vol_mono, vol) = top.terms().next().map(|(m, c)| (*m, c.clone())).expect("ωᴺ ≠ 0");
        for a in sl2.primitive_basis(2).iter().filter(|a| a.pure_type() == Some((1, 1))) {
            let av = a.wedge(v);
            let ratio = av.wedge(&w(n_i - 2)).coeff(vol_mono).checked_div(&vol)?;
            let expected = av.wedge(&w(n_i - 3)).scale(&inv_fact(n_i - 3)).scale(&Scalar::from(-1))
                + w(n_i - 1).scale(&ratio.times(&Scalar::from(n_i)).times(&inv_fact(n_i - 2)));
            let got = t_v(a, v, star)?;
            if got != expected {
                return Ok(Some(json!({ "example": "one-one", "alpha": a.to_string(), "v": v.to_string() })));
            }
        }
    }
    Ok(None)
}

/// Directions for the torus checks: the bound `v`, or every single-mode
/// closed real `(1,1)` form of radius one.
fn torus_directions(model: &Model) -> Result<Vec<FourierForm>> {
    match model.bindings.get("v") {
        Some(v) => {
            model.torus.validate_direction(v)?;
            Ok(vec![v.clone()])
        }
        None => Ok(model.torus.single_mode_directions(1)),
    }
}

/// Constant primitive pure-type forms: the bound `alpha`, or the primitive
/// basis of every degree.
fn torus_alphas(model: &Model) -> Vec<FourierForm> {
    match model.bindings.get("alpha") {
        Some(a) => vec![a.clone()],
        None => (0..=model.n)
            .flat_map(|m| model.torus.model().primitive_basis(m).to_vec())
            .map(FourierForm::constant)
            .collect(),
    }
}

fn degree_of(a: &FourierForm) -> usize {
    a.mean().homogeneous_degree().unwrap_or(0)
}

fn torus_items(model: &Model) -> Vec<Item<'_>> {
    let ctx = &model.torus;
    let directions = match torus_directions(model) {
        Ok(d) => d,
        Err(e) => {
            let msg = e.to_string();
            return vec![Item {
                suite: "torus",
                check: "direction",
                run: Box::new(move || Outcome {
                    pass: false,
                    certificate: json!({ "error": msg }),
                }),
            }];
        }
    };
    let alphas = torus_alphas(model);
    let n = model.n;
    let mut items: Vec<Item<'_>> = Vec::new();
    let modes: Vec<Vec<i64>> = ctx.mode_set().iter().cloned().collect();
    items.push(Item {
        suite: "torus",
        check: "harmonic-blocks",
        run: Box::new(move || {
            tally(&modes, |k| {
                let zero = k.iter().all(|&a| a == 0);
                let ok = zero || crate::linalg::inverse(&ctx.laplacian_block(k)).is_ok();
                Ok(fail_unless(ok, || json!({ "mode": k })))
            })
        }),
    });
    let basis: Vec<FourierForm> = all_monomials(n)
        .into_iter()
        .map(|m| FourierForm::constant(Form::monomial(n, m, Scalar::one())))
        .collect();
    let pairs: Vec<(FourierForm, FourierForm)> = basis
        .iter()
        .flat_map(|a| directions.iter().map(move |v| (a.clone(), v.clone())))
        .collect();
    items.push(Item {
        suite: "torus",
        check: "deformed-harmonic-part",
        run: Box::new(move || {
            tally(&pairs, |(a, v)| {
                let beta = ctx.deformed_harmonic_part(a, v)?;
                let lap = ctx.deformed_star(v)?.laplacian(&beta)?;
                Ok(fail_unless(lap.is_zero(), || json!({ "alpha": render(a), "v": render(v) })))
            })
        }),
    });
    let admissible: Vec<(FourierForm, usize, FourierForm)> = alphas
        .iter()
        .flat_map(|a| (0..=n.saturating_sub(degree_of(a))).map(move |j| (a.clone(), j)))
        .flat_map(|(a, j)| directions.iter().map(move |v| (a.clone(), j, v.clone())))
        .collect();
    let admissible = std::sync::Arc::new(admissible);
    let cases = admissible.clone();
    items.push(Item {
        suite: "torus",
        check: "h-closed-form",
        run: Box::new(move || {
            tally(&cases, |(a, j, v)| {
                let x = a.wedge_constant(&ctx.model().omega_pow(*j));
                let h = ctx.h_map(v, &x)?.h;
                let closed = ctx.h_closed_form(a, *j, v)?;
                Ok(fail_unless(h == closed, || {
                    json!({ "alpha": render(a), "j": j, "v": render(v), "h": render(&h), "closed_form": render(&closed) })
                }))
            })
        }),
    });
    let av_pairs: Vec<(FourierForm, FourierForm)> = alphas
        .iter()
        .flat_map(|a| directions.iter().map(move |v| (a.clone(), v.clone())))
        .collect();
    items.push(Item {
        suite: "torus",
        check: "delta-relations",
        run: Box::new(move || {
            tally(&av_pairs, |(a, v)| {
                let q = ctx.q_triple(a, v)?;
                let split = ctx.delta_split(&q);
                let product_harmonic = ctx.is_harmonic(&a.try_wedge(v, ctx.mode_set())?);
                let beta1_closed = ctx.is_closed(&q.beta1);
                Ok(match split {
                    Err(e) => Some(json!({ "alpha": render(a), "v": render(v), "relation": e.to_string() })),
                    Ok(_) if product_harmonic != beta1_closed => Some(json!({
                        "alpha": render(a), "v": render(v),
                        "product_harmonic": product_harmonic, "beta1_closed": beta1_closed
                    })),
                    Ok(_) => None,
                })
            })
        }),
    });
    let cases = admissible.clone();
    items.push(Item {
        suite: "torus",
        check: "stays-harmonic",
        run: Box::new(move || {
            tally(&cases, |(a, j, v)| {
                let cert = ctx.stays_harmonic(a, *j, v)?;
                let constant_ok = !v.is_constant() || cert.holds;
                Ok(fail_unless(constant_ok, || json!({ "alpha": render(a), "j": j, "h": render(&cert.h) })))
            })
        }),
    });
    items.push(Item {
        suite: "torus",
        check: "harmonicity-witness",
        run: Box::new(move || {
            single(|| {
                let candidates: Vec<FourierForm> = match model.bindings.get("alpha") {
                    Some(a) => vec![a.clone()],
                    None => ctx
                        .model()
                        .primitive_basis(2)
                        .iter()
                        .filter(|a| a.pure_type() == Some((1, 1)))
                        .cloned()
                        .map(FourierForm::constant)
                        .collect(),
                };
                if candidates.is_empty() {
                    return Ok((true, json!({ "applicable": false })));
                }
                let radius = ctx.mode_set().iter().flatten().map(|x| x.abs()).max().unwrap_or(0).min(2);
                for alpha in &candidates {
                    if let Some((v, cert)) = ctx.find_harmonicity_witness(alpha, 0, radius)? {
                        return Ok((
                            !cert.h.is_zero() && !cert.product_harmonic,
                            json!({ "alpha": render(alpha), "v": render(&v), "h": render(&cert.h) }),
                        ));
                    }
                }
                Ok((false, json!({ "searched": candidates.len(), "radius": radius, "witness": null })))
            })
        }),
    });
    items
}

fn cones_items(model: &Model) -> Vec<Item<'_>> {
    let ctx = &model.torus;
    let n = model.n;
    let mut directions = vec![ctx.omega()];
    directions.extend(real_one_one_basis(n).into_iter().map(FourierForm::constant));
    directions.extend(ctx.single_mode_directions(1));
    let cases: Vec<(FourierForm, usize)> = directions
        .iter()
        .flat_map(|v| (0..n).map(move |i| (v.clone(), i)))
        .collect();
    vec![
        Item {
            suite: "cones",
            check: "tangent-identity",
            run: Box::new(move || {
                tally(&cases, |(v, i)| {
                    let r = tangent_identity_check(v, *i, ctx)?;
                    Ok(fail_unless(r.lemma_holds(), || json!({ "v": render(v), "report": r })))
                })
            }),
        },
        Item {
            suite: "cones",
            check: "cone-criteria",
            run: Box::new(move || {
                single(|| {
                    let r = k0_equivalence_suite(ctx, &[])?;
                    let all_true = r.reports.iter().all(|c| c.criterion_holds);
                    let top = r.reports.last().is_some_and(|c| c.criterion_holds);
                    let summary: Vec<Value> = r
                        .reports
                        .iter()
                        .map(|c| json!({ "i": c.i, "holds": c.criterion_holds, "products": c.witnesses.len() }))
                        .collect();
                    Ok((
                        all_true && top && r.monotone && r.implication_holds,
                        json!({ "criteria": summary, "monotone": r.monotone, "implication": r.implication_holds,
                                "positive_cone": r.positive_cone }),
                    ))
                })
            }),
        },
    ]
}

fn items_for<'a>(model: &'a Model, suite: &str) -> Vec<Item<'a>> {
    match suite {
        "sl2" => sl2_items(model),
        "hodge" => hodge_items(model),
        "torus" => torus_items(model),
        "cones" => cones_items(model),
        _ => Vec::new(),
    }
}

/// Runs the named suite, or all of them for `"all"`.
pub fn run_suite(model: &Model, suite: &str) -> Result<Vec<CheckRecord>> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(Error::Descriptor(format!("unknown suite '{other}'"))),
    };
    let items: Vec<Item<'_>> = names.iter().flat_map(|s| items_for(model, s)).collect();
    let base = fingerprint(model);
    let outcomes: Vec<Outcome> = items.par_iter().map(|it| (it.run)()).collect();
    Ok(items
        .iter()
        .zip(outcomes)
        .map(|(it, o)| CheckRecord {
            suite: it.suite.to_string(),
            check: it.check.to_string(),
            inputs: digest(&format!("{base};suite={};check={}", it.suite, it.check)),
            status: if o.pass { Status::Pass } else { Status::Fail },
            certificate: o.certificate,
        })
        .collect())
}
