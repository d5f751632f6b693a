//! Linearity criteria for the cones `Kⁱ` of Kähler forms `ω` with
//! `ω^{N−i} ω₀ⁱ = c · ω₀ᴺ`, decided on an explicit torus model.
//!
//! The cones themselves are not represented. Only the polarized
//! harmonicity conditions and the tangent identity are computed. The
//! positive cone is named in reports but has no model.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::form::real_one_one_basis;
use crate::scalar::Scalar;
use crate::torus::{FourierForm, TorusContext};

/// One symmetrized product of basis elements and whether it is harmonic.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConeWitness {
    pub indices: Vec<usize>,
    pub harmonic: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConeReport {
    pub i: usize,
    pub criterion_holds: bool,
    pub witnesses: Vec<ConeWitness>,
}

impl ConeReport {
    pub fn failures(&self) -> impl Iterator<Item = &ConeWitness> {
        self.witnesses.iter().filter(|w| !w.harmonic)
    }
}

/// The constant real `(1,1)` forms, a basis of the harmonic real `(1,1)`
/// forms of a flat torus.
pub fn torus_harmonic_basis(ctx: &TorusContext) -> Vec<FourierForm> {
    real_one_one_basis(ctx.dim())
        .into_iter()
        .map(FourierForm::constant)
        .collect()
}

fn check_basis(basis: &[FourierForm], ctx: &TorusContext) -> Result<()> {
    for (idx, b) in basis.iter().enumerate() {
        if !b.is_of_bidegree(1, 1) || b.is_zero() {
            return Err(Error::BadBasis(format!("element {idx} is not a nonzero (1,1) form")));
        }
        if !b.is_real() {
            return Err(Error::BadBasis(format!("element {idx} is not real")));
        }
        if !ctx.is_harmonic(b) {
            return Err(Error::BadBasis(format!("element {idx} is not harmonic")));
        }
    }
    Ok(())
}

/// Nondecreasing index tuples of length `len` over `0..count`.
fn multisets(count: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                let start = prefix.last().copied().unwrap_or(0);
                (start..count).map(move |k| {
                    let mut p = prefix.clone();
                    p.push(k);
                    p
                })
            })
            .collect();
    }
    out
}

/// Whether `α^{N−i} ω₀ⁱ` is harmonic for every harmonic real `(1,1)` form
/// `α`, decided by polarization: every product `α_{a₁}⋯α_{a_{N−i}} ω₀ⁱ` over
/// the basis is tested.
pub fn ki_linear_criterion(i: usize, basis: &[FourierForm], ctx: &TorusContext) -> Result<ConeReport> {
    let n = ctx.dim();
    if i >= n {
        return Err(Error::InconsistentInput(format!("cone index {i} must be below {n}")));
    }
    check_basis(basis, ctx)?;
    let power = ctx.model().omega_pow(i);
    let mut witnesses = Vec::new();
    for indices in multisets(basis.len(), n - i) {
        let mut product = FourierForm::constant(power.clone());
        for &a in &indices {
            product = product.try_wedge(&basis[a], ctx.mode_set())?;
        }
        witnesses.push(ConeWitness {
            harmonic: ctx.is_harmonic(&product),
            indices,
        });
    }
    Ok(ConeReport {
        i,
        criterion_holds: witnesses.iter().all(|w| w.harmonic),
        witnesses,
    })
}

/// The expansion of `(ω₀ + εv)^{N−i} ω₀ⁱ` and what it says about `v`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TangentReport {
    pub i: usize,
    /// `(ω₀ + εv)^{N−i} ω₀ⁱ = ω₀ᴺ + (N−i) ε ω₀^{N−1} v`.
    pub identity_exact: bool,
    /// The `ε`-part is a constant multiple of `ω₀ᴺ`.
    pub tangent: bool,
    pub v_harmonic: bool,
}

impl TangentReport {
    /// The tangent space to `Kⁱ` consists exactly of the harmonic directions.
    pub fn lemma_holds(&self) -> bool {
        self.identity_exact && self.tangent == self.v_harmonic
    }
}

pub fn tangent_identity_check(v: &FourierForm, i: usize, ctx: &TorusContext) -> Result<TangentReport> {
    let n = ctx.dim();
    if i >= n {
        return Err(Error::InconsistentInput(format!("cone index {i} must be below {n}")));
    }
    ctx.validate_direction(v)?;
    let modes = ctx.mode_set();
    let omega0 = ctx.omega().lift();
    let moving = &omega0 + &v.infinitesimal();
    let mut product = FourierForm::constant(ctx.model().omega_pow(i).lift());
    for _ in 0..n - i {
        product = product.try_wedge(&moving, modes)?;
    }
    let top = ctx.model().omega_pow(n);
    let linear = v
        .wedge_constant(&ctx.model().omega_pow(n - 1))
        .scale(&Scalar::from((n - i) as i64));
    let expected = FourierForm::constant(top).lift() + linear.infinitesimal();
    let slope = product.slope();
    Ok(TangentReport {
        i,
        identity_exact: product == expected,
        tangent: slope.is_constant(),
        v_harmonic: ctx.is_harmonic(v),
    })
}

/// The equivalent characterizations of linearity of `K⁰`, together with the
/// chain `Kⁱ` linear ⇒ `K^{i+1}` linear.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EquivalenceReport {
    pub reports: Vec<ConeReport>,
    /// `αᴺ` harmonic for all harmonic `α`.
    pub top_power_harmonic: bool,
    /// `α²ω^{N−2}` harmonic for all `ω`-harmonic `α`, at `ω₀` and at each
    /// further tested `ω`.
    pub square_criteria: Vec<bool>,
    pub implication_holds: bool,
    pub monotone: bool,
    pub positive_cone: &'static str,
}

/// Evaluates the criteria at `ctx` and the square criterion at every
/// context in `others`.
pub fn k0_equivalence_suite(ctx: &TorusContext, others: &[TorusContext]) -> Result<EquivalenceReport> {
    let n = ctx.dim();
    let basis = torus_harmonic_basis(ctx);
    let reports = (0..n)
        .map(|i| ki_linear_criterion(i, &basis, ctx))
        .collect::<Result<Vec<_>>>()?;
    let top_power_harmonic = reports[0].criterion_holds;
    let square = |c: &TorusContext| -> Result<bool> {
        if n < 2 {
            return Ok(true);
        }
        Ok(ki_linear_criterion(n - 2, &torus_harmonic_basis(c), c)?.criterion_holds)
    };
    let mut square_criteria = vec![square(ctx)?];
    for c in others {
        square_criteria.push(square(c)?);
    }
    let implication_holds = !square_criteria.iter().all(|&b| b) || top_power_harmonic;
    let monotone = reports
        .windows(2)
        .all(|w| !w[0].criterion_holds || w[1].criterion_holds);
    Ok(EquivalenceReport {
        reports,
        top_power_harmonic,
        square_criteria,
        implication_holds,
        monotone,
        positive_cone: "not modeled",
    })
}
