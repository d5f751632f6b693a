//! The Weil star operator and its first-order variation `*_ε = * + εT_v`.
//!
//! On a primitive form `α` of type `(p,q)`, `n = p + q`,
//!
//! `*(ωʳα) = (−1)^{n(n+1)/2} · r! · i^{p−q} / (N−n−r)! · ω^{N−n−r} α`,
//!
//! and zero when `n + r > N`. Every other form is handled through its
//! bigraded primitive decomposition.

use crate::error::{Error, Result};
use crate::form::{all_monomials, Form};
use crate::linalg::Solvable;
use crate::scalar::{DualScalar, Ring, Scalar};
use crate::sl2::Sl2Model;

/// A validated star operator, tabulated on the monomial basis.
#[derive(Clone, Debug)]
pub struct StarContext<R: Solvable = Scalar> {
    model: Sl2Model<R>,
    /// Image of `Mono(k)` at index `k`.
    table: Vec<Form<R>>,
}

fn sign(k: i64) -> Scalar {
    Scalar::sign(k)
}

fn int(k: i64) -> Scalar {
    Scalar::from(k)
}

/// `k!` for `k ≥ 0`, `None` otherwise.
fn fact(k: i64) -> Option<Scalar> {
    Scalar::factorial(k)
}

/// The scalar of the Weil formula, or `None` if the term vanishes.
fn weil_coefficient(n_dim: usize, p: usize, q: usize, r: usize) -> Option<Scalar> {
    let n = (p + q) as i64;
    let top = n_dim as i64 - n - r as i64;
    let denom = fact(top)?;
    let c = sign(n * (n + 1) / 2)
        .times(&fact(r as i64)?)
        .times(&Scalar::i_pow(p as i64 - q as i64));
    Some(c.checked_div(&denom).expect("factorials are nonzero"))
}

impl<R: Solvable> StarContext<R> {
    /// Tabulates `*` and checks `*∘* = (−1)ⁿ` and `*(A^{p,q}) ⊂ A^{N−q,N−p}`
    /// on every monomial.
    pub fn new(model: Sl2Model<R>) -> Result<Self> {
        let n = model.dim();
        let pure = model.omega().is_of_bidegree(1, 1);
        let table = all_monomials(n)
            .into_iter()
            .map(|m| star_by_decomposition(&model, &Form::monomial(n, m, R::one())))
            .collect::<Result<Vec<_>>>()?;
        let ctx = StarContext { model, table };
        for m in all_monomials(n) {
            let image = &ctx.table[m.0 as usize];
            let (p, q) = m.bidegree(n);
            if pure && !image.is_zero() && !image.is_of_bidegree(n - q, n - p) {
                return Err(Error::Invariant(format!(
                    "star does not map type ({p},{q}) to ({},{})",
                    n - q,
                    n - p
                )));
            }
            let back = ctx.star(image);
            let expected = Form::monomial(n, m, R::from_scalar(&sign(m.degree() as i64)));
            if back != expected {
                return Err(Error::Invariant(format!(
                    "star squared is not (-1)^n on a form of type ({p},{q})"
                )));
            }
        }
        Ok(ctx)
    }

    pub fn model(&self) -> &Sl2Model<R> {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.model.dim()
    }

    /// `*(ωʳα)` for primitive `α` of pure type.
    pub fn weil_star_primitive(&self, alpha: &Form<R>, r: usize) -> Result<Form<R>> {
        if !self.model.is_primitive(alpha) {
            return Err(Error::NotPrimitive);
        }
        if alpha.is_zero() {
            return Ok(Form::zero(self.dim()));
        }
        let (p, q) = alpha.pure_type().ok_or(Error::NotPureType)?;
        Ok(weil_term(&self.model, alpha, p, q, r))
    }

    /// `*x` for any `x`.
    pub fn star(&self, x: &Form<R>) -> Form<R> {
        let mut acc = Form::zero(self.dim());
        for (m, c) in x.terms() {
            acc = acc + self.table[m.0 as usize].scale(c);
        }
        acc
    }
}

fn weil_term<R: Solvable>(model: &Sl2Model<R>, alpha: &Form<R>, p: usize, q: usize, r: usize) -> Form<R> {
    match weil_coefficient(model.dim(), p, q, r) {
        Some(c) => model
            .lefschetz_pow(alpha, model.dim() - (p + q) - r)
            .scale(&R::from_scalar(&c)),
        None => Form::zero(model.dim()),
    }
}

/// Applies the Weil formula to every piece of the bigraded primitive
/// decomposition of `x`.
fn star_by_decomposition<R: Solvable>(model: &Sl2Model<R>, x: &Form<R>) -> Result<Form<R>> {
    let mut acc = Form::zero(model.dim());
    for (p, q) in x.bidegrees() {
        let d = model.decompose(&x.bidegree_component(p, q))?;
        for (j, beta) in d.parts() {
            if p < j || q < j {
                return Err(Error::NotPureType);
            }
            acc = acc + weil_term(model, beta, p - j, q - j, j);
        }
    }
    Ok(acc)
}

impl StarContext<Scalar> {
    /// The star of `ω + εv` over dual numbers, for `v` of type `(1,1)`.
    pub fn deform(&self, v: &Form<Scalar>) -> Result<StarContext<DualScalar>> {
        if !v.is_of_bidegree(1, 1) && !v.is_zero() {
            return Err(Error::NotOneOne);
        }
        StarContext::new(self.model.deform(v)?)
    }
}

/// `*` for the model's `ω`.
pub fn hodge_star(x: &Form<Scalar>, ctx: &StarContext<Scalar>) -> Form<Scalar> {
    ctx.star(x)
}

fn require_real_one_one(v: &Form<Scalar>) -> Result<()> {
    if v.is_zero() {
        return Ok(());
    }
    if !v.is_of_bidegree(1, 1) {
        return Err(Error::NotOneOne);
    }
    if !v.is_real() {
        return Err(Error::NotReal);
    }
    Ok(())
}

/// `*_ε x` computed from scratch in the model of `ω + εv`.
pub fn deformed_star_oracle(
    x: &Form<Scalar>,
    v: &Form<Scalar>,
    ctx: &StarContext<Scalar>,
) -> Result<Form<DualScalar>> {
    require_real_one_one(v)?;
    Ok(ctx.deform(v)?.star(&x.lift()))
}

/// The data entering the closed form of `T_v(αωʲ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TvDecomposition {
    pub beta0: Form<Scalar>,
    pub beta1: Form<Scalar>,
    pub beta2: Form<Scalar>,
    pub eta: Scalar,
    pub c0: Scalar,
    pub c0_prime: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
}

/// `β_i = Q^i_v(α)` and the constants `η, c₀, c₀', c₁, c₂` for
/// `αωʲ ∈ A^{p,q}`, or `None` when `αωʲ = 0`.
pub fn tv_decomposition(
    alpha: &Form<Scalar>,
    j: usize,
    v: &Form<Scalar>,
    ctx: &StarContext<Scalar>,
) -> Result<Option<TvDecomposition>> {
    let model = ctx.model();
    if !model.is_primitive(alpha) {
        return Err(Error::NotPrimitive);
    }
    if !v.is_of_bidegree(1, 1) && !v.is_zero() {
        return Err(Error::NotOneOne);
    }
    if alpha.is_zero() {
        return Ok(None);
    }
    let (pa, qa) = alpha.pure_type().ok_or(Error::NotPureType)?;
    let m = (pa + qa) as i64;
    let n = m + 2 * j as i64;
    let n_dim = model.dim() as i64;
    let j_i = j as i64;
    let Some(denom) = fact(n_dim - n + j_i) else {
        return Ok(None);
    };
    let q = model.q_triple(v, alpha)?;
    let eta = sign((m - 2) * (m - 1) / 2)
        .times(&fact(j_i).expect("j ≥ 0"))
        .times(&Scalar::i_pow(pa as i64 - qa as i64))
        .checked_div(&denom)
        .expect("factorials are nonzero");
    let c0 = eta.times(&int(-(n_dim - n + j_i)));
    let c0_prime = if j > 0 { c0.clone() } else { Scalar::zero() };
    Ok(Some(TvDecomposition {
        beta0: q.q0,
        beta1: q.q1,
        beta2: q.q2,
        c1: eta.times(&int(j_i)),
        c2: eta.times(&int(n_dim - n + 3 * j_i + 2)),
        c0,
        c0_prime,
        eta,
    }))
}

/// `ωᵏ ∧ x`, zero for negative `k`.
fn omega_term(model: &Sl2Model<Scalar>, x: &Form<Scalar>, k: i64) -> Form<Scalar> {
    if k < 0 {
        Form::zero(model.dim())
    } else {
        model.lefschetz_pow(x, k as usize)
    }
}

/// `T_v(αωʲ) = c₀'β₀ω^{N−n+j−1} + c₁β₁ω^{N−n+j} + c₂β₂ω^{N−n+j+1} + c₀αvω^{N−n+j−1}`
/// for primitive `α` of pure type; zero when `αωʲ = 0`.
pub fn t_v_closed(
    alpha: &Form<Scalar>,
    j: usize,
    v: &Form<Scalar>,
    ctx: &StarContext<Scalar>,
) -> Result<Form<Scalar>> {
    let model = ctx.model();
    let Some(t) = tv_decomposition(alpha, j, v, ctx)? else {
        return Ok(Form::zero(model.dim()));
    };
    let n = alpha.homogeneous_degree().unwrap_or(0) as i64 + 2 * j as i64;
    let e = model.dim() as i64 - n + j as i64;
    Ok(omega_term(model, &t.beta0, e - 1).scale(&t.c0_prime)
        + omega_term(model, &t.beta1, e).scale(&t.c1)
        + omega_term(model, &t.beta2, e + 1).scale(&t.c2)
        + omega_term(model, &alpha.wedge(v), e - 1).scale(&t.c0))
}

/// `T_v x` by linearity over the bigraded primitive decomposition, for any
/// `v` of type `(1,1)`.
pub fn t_v_linear(x: &Form<Scalar>, v: &Form<Scalar>, ctx: &StarContext<Scalar>) -> Result<Form<Scalar>> {
    let model = ctx.model();
    let mut acc = Form::zero(model.dim());
    if v.is_zero() {
        return Ok(acc);
    }
    for (p, q) in x.bidegrees() {
        let d = model.decompose(&x.bidegree_component(p, q))?;
        for (j, beta) in d.parts() {
            acc = acc + t_v_closed(beta, j, v, ctx)?;
        }
    }
    Ok(acc)
}

/// `T_v x` for real `v` of type `(1,1)`.
pub fn t_v(x: &Form<Scalar>, v: &Form<Scalar>, ctx: &StarContext<Scalar>) -> Result<Form<Scalar>> {
    require_real_one_one(v)?;
    t_v_linear(x, v, ctx)
}
