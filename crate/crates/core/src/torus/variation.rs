//! How harmonic forms move when `ω` is deformed to `ω + εv` by a closed real
//! `(1,1)` form `v`.

use std::collections::BTreeMap;

use super::{add_modes, FourierForm, Mode, TorusContext};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::hodge::{tv_decomposition, StarContext};
use crate::scalar::{DualScalar, Ring, Scalar};

/// `*_ε` for `ω + εv` with `v` a Fourier form, built from one dual-number
/// star per mode of `v`.
#[derive(Debug)]
pub struct DeformedStar<'a> {
    ctx: &'a TorusContext,
    stars: BTreeMap<Mode, StarContext<DualScalar>>,
}

impl DeformedStar<'_> {
    /// `Σ e_{k+l} T_{v_l}(x_k)`, each `T_{v_l}` read off a dual-number star.
    pub fn t_v(&self, x: &FourierForm) -> Result<FourierForm> {
        let mut out = FourierForm::zero(self.ctx.dim());
        for (l, star) in &self.stars {
            for (k, xk) in x.modes() {
                let t = star.star(&xk.lift()).slope();
                if t.is_zero() {
                    continue;
                }
                let m = add_modes(k, l);
                if !self.ctx.modes.contains(&m) {
                    return Err(Error::ModeOverflow(m));
                }
                out.accumulate(m, t);
            }
        }
        Ok(out)
    }

    /// `*_ε(x₀ + εx₁) = *x₀ + ε(*x₁ + T_v x₀)`.
    pub fn apply(&self, x: &FourierForm<DualScalar>) -> Result<FourierForm<DualScalar>> {
        let body = x.body();
        let slope = self.ctx.star(&x.slope()) + self.t_v(&body)?;
        Ok(FourierForm::from_parts(&self.ctx.star(&body), &slope))
    }

    /// `d^{*_ε} = −*_ε d *_ε`.
    pub fn codifferential(&self, x: &FourierForm<DualScalar>) -> Result<FourierForm<DualScalar>> {
        Ok(-self.apply(&self.ctx.d(&self.apply(x)?))?)
    }

    /// `Δ_ε = d d^{*_ε} + d^{*_ε} d`.
    pub fn laplacian(&self, x: &FourierForm<DualScalar>) -> Result<FourierForm<DualScalar>> {
        Ok(self.ctx.d(&self.codifferential(x)?) + self.codifferential(&self.ctx.d(x))?)
    }
}

/// `h(v,x) = *dT_v(x)` and `h̃(v,x) = −dG*dT_v(x)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HValue {
    pub h: FourierForm,
    pub h_tilde: FourierForm,
}

/// Pointwise `vα = β₀ + Lβ₁ + L²β₂`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierQTriple {
    pub beta0: FourierForm,
    pub beta1: FourierForm,
    pub beta2: FourierForm,
}

/// `dβ₁ = δ₀ + δ₁ω` together with what it says about closedness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaSplit {
    pub delta0: FourierForm,
    pub delta1: FourierForm,
    pub beta1_closed: bool,
    pub beta0_beta2_closed: bool,
}

impl DeltaSplit {
    /// Whether `dβ₁ = 0` exactly when `dβ₀ = dβ₂ = 0`.
    pub fn closedness_equivalent(&self) -> bool {
        self.beta1_closed == self.beta0_beta2_closed
    }
}

/// Whether `αωʲ` stays harmonic, decided twice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HarmonicityCertificate {
    pub holds: bool,
    /// `αvω^{N−n}` for `j = 0`, `αv` otherwise.
    pub product: FourierForm,
    pub product_harmonic: bool,
    pub h: FourierForm,
}

impl TorusContext {
    /// The deformed star for any `v` of type `(1,1)` on declared modes.
    pub fn deformed_star(&self, v: &FourierForm) -> Result<DeformedStar<'_>> {
        let mut stars = BTreeMap::new();
        for (l, vl) in v.modes() {
            if !self.modes.contains(l) {
                return Err(Error::ModeOverflow(l.clone()));
            }
            stars.insert(l.clone(), self.star.deform(vl)?);
        }
        Ok(DeformedStar { ctx: self, stars })
    }

    fn require_harmonic(&self, x: &FourierForm) -> Result<()> {
        if self.is_harmonic(x) {
            Ok(())
        } else {
            Err(Error::NotHarmonic)
        }
    }

    /// `ℋ_{ω+εv}(α) = α + ε dG*dT_v(α)`, checked to be `d`- and
    /// `d^{*_ε}`-closed with an independently built `*_ε`.
    pub fn deformed_harmonic_part(&self, alpha: &FourierForm, v: &FourierForm) -> Result<FourierForm<DualScalar>> {
        self.require_harmonic(alpha)?;
        self.validate_direction(v)?;
        let t = self.t_v(alpha, v)?;
        let correction = self.d(&self.green(&self.star(&self.d(&t)))?);
        let beta = alpha.lift() + correction.infinitesimal();
        if !self.d(&beta).is_zero() {
            return Err(Error::Invariant("deformed harmonic part is not closed".into()));
        }
        if !self.deformed_star(v)?.codifferential(&beta)?.is_zero() {
            return Err(Error::Invariant("deformed harmonic part is not coclosed".into()));
        }
        Ok(beta)
    }

    /// `h(v,x)` and `h̃(v,x)`; `h` is checked to lie in the image of `d*`.
    pub fn h_map(&self, v: &FourierForm, x: &FourierForm) -> Result<HValue> {
        self.require_harmonic(x)?;
        self.validate_direction(v)?;
        let dt = self.d(&self.t_v(x, v)?);
        let h = self.star(&dt);
        let h_tilde = -self.d(&self.green(&h)?);
        let split = self.hodge_decompose(&h)?;
        if !split.harmonic.is_zero() || !split.d_exact.is_zero() {
            return Err(Error::Invariant("h(v,x) is not in the image of d*".into()));
        }
        if h.is_zero() != h_tilde.is_zero() {
            return Err(Error::Invariant("h and h̃ disagree on vanishing".into()));
        }
        Ok(HValue { h, h_tilde })
    }

    /// The primitive components of `vα`, mode by mode, for pointwise
    /// primitive homogeneous `α`.
    pub fn q_triple(&self, alpha: &FourierForm, v: &FourierForm) -> Result<FourierQTriple> {
        let model = self.model();
        if alpha.modes().any(|(_, a)| !model.is_primitive(a)) {
            return Err(Error::NotPrimitive);
        }
        if !v.is_of_bidegree(1, 1) {
            return Err(Error::NotOneOne);
        }
        let product = alpha.try_wedge(v, &self.modes)?;
        let n = self.dim();
        let (mut b0, mut b1, mut b2) = (Vec::new(), Vec::new(), Vec::new());
        for (k, phi) in product.modes() {
            let d = model.decompose(phi)?;
            if let Some(j) = d.slots().into_iter().find(|&j| j >= 3) {
                return Err(Error::Invariant(format!(
                    "primitive component of slot {j} in v·α is nonzero"
                )));
            }
            b0.push((k.clone(), d.part(0)));
            b1.push((k.clone(), d.part(1)));
            b2.push((k.clone(), d.part(2)));
        }
        Ok(FourierQTriple {
            beta0: FourierForm::from_modes(n, b0),
            beta1: FourierForm::from_modes(n, b1),
            beta2: FourierForm::from_modes(n, b2),
        })
    }

    /// The primitive decomposition `dβ₁ = δ₀ + δ₁ω`.
    fn split_d_beta1(&self, q: &FourierQTriple) -> Result<(FourierForm, FourierForm)> {
        let model = self.model();
        let n = self.dim();
        let (mut d0s, mut d1s) = (Vec::new(), Vec::new());
        for (k, phi) in self.d(&q.beta1).modes() {
            let d = model.decompose(phi)?;
            if d.slots().into_iter().any(|j| j >= 2) {
                return Err(Error::InconsistentInput(
                    "dβ₁ has components beyond δ₀ + δ₁ω".into(),
                ));
            }
            d0s.push((k.clone(), d.part(0)));
            d1s.push((k.clone(), d.part(1)));
        }
        Ok((FourierForm::from_modes(n, d0s), FourierForm::from_modes(n, d1s)))
    }

    /// Splits `dβ₁ = δ₀ + δ₁ω` and checks `dβ₀ = −δ₀ω`, `dβ₂ = −δ₁`.
    pub fn delta_split(&self, q: &FourierQTriple) -> Result<DeltaSplit> {
        let model = self.model();
        let (delta0, delta1) = self.split_d_beta1(q)?;
        let d1 = self.d(&q.beta1);
        let d0 = self.d(&q.beta0);
        let d2 = self.d(&q.beta2);
        if d0 != -delta0.wedge_constant(model.omega()) {
            return Err(Error::InconsistentInput("dβ₀ ≠ −δ₀ω".into()));
        }
        if d2 != -delta1.clone() {
            return Err(Error::InconsistentInput("dβ₂ ≠ −δ₁".into()));
        }
        Ok(DeltaSplit {
            delta0,
            delta1,
            beta1_closed: d1.is_zero(),
            beta0_beta2_closed: d0.is_zero() && d2.is_zero(),
        })
    }

    /// `αωʲ` for a harmonic, pointwise primitive, pure-type `α`, with its
    /// constant coefficient.
    fn admissible(&self, alpha: &FourierForm, j: usize) -> Result<(Form<Scalar>, FourierForm)> {
        self.require_harmonic(alpha)?;
        let a0 = alpha.mean();
        if !self.model().is_primitive(&a0) {
            return Err(Error::NotPrimitive);
        }
        if !a0.is_zero() && a0.pure_type().is_none() {
            return Err(Error::NotPureType);
        }
        let power = self.model().omega_pow(j);
        let lifted = alpha.wedge_constant(&power);
        if lifted.is_zero() {
            return Err(Error::ZeroInput("αωʲ vanishes".into()));
        }
        Ok((a0, lifted))
    }

    /// `h(v,αωʲ) = λ₁*(δ₀ω^{N−n+j}) + λ₂*(δ₁ω^{N−n+j+1})` with
    /// `λ₁ = η(N−n+2j)` for `j > 0`, `λ₁ = 0` for `j = 0`, and `λ₂ = −η(N−n+2j+2)`.
    pub fn h_closed_form(&self, alpha: &FourierForm, j: usize, v: &FourierForm) -> Result<FourierForm> {
        let (a0, _) = self.admissible(alpha, j)?;
        self.validate_direction(v)?;
        let t = tv_decomposition(&a0, j, &Form::zero(self.dim()), &self.star)?
            .ok_or_else(|| Error::ZeroInput("αωʲ vanishes".into()))?;
        let n_dim = self.dim() as i64;
        let n = a0.homogeneous_degree().unwrap_or(0) as i64 + 2 * j as i64;
        let j_i = j as i64;
        let lambda1 = if j > 0 {
            t.eta.times(&Scalar::from(n_dim - n + 2 * j_i))
        } else {
            Scalar::zero()
        };
        let lambda2 = t.eta.times(&Scalar::from(-(n_dim - n + 2 * j_i + 2)));
        let (delta0, delta1) = self.split_d_beta1(&self.q_triple(alpha, v)?)?;
        let e = (n_dim - n + j_i) as usize;
        let model = self.model();
        let first = self.star(&delta0.wedge_constant(&model.omega_pow(e)));
        let second = self.star(&delta1.wedge_constant(&model.omega_pow(e + 1)));
        Ok(first.scale(&lambda1) + second.scale(&lambda2))
    }

    /// `αωʲ` stays harmonic iff `αvω^{N−n}` (for `j = 0`) or `αv` (for
    /// `j > 0`) is harmonic; both this and `h(v,αωʲ) = 0` are evaluated and
    /// must agree.
    pub fn stays_harmonic(&self, alpha: &FourierForm, j: usize, v: &FourierForm) -> Result<HarmonicityCertificate> {
        let (a0, lifted) = self.admissible(alpha, j)?;
        self.validate_direction(v)?;
        let av = alpha.try_wedge(v, &self.modes)?;
        let product = if j == 0 {
            let deg = a0.homogeneous_degree().unwrap_or(0);
            av.wedge_constant(&self.model().omega_pow(self.dim() - deg))
        } else {
            av
        };
        let split = self.hodge_decompose(&product)?;
        let product_harmonic = split.harmonic == product;
        let h = self.h_map(v, &lifted)?.h;
        let holds = h.is_zero();
        if holds != product_harmonic {
            return Err(Error::Invariant(
                "harmonicity of the product and h = 0 disagree".into(),
            ));
        }
        Ok(HarmonicityCertificate {
            holds,
            product,
            product_harmonic,
            h,
        })
    }

    /// The first single-mode direction with `|l|∞ ≤ radius` along which
    /// `αωʲ` stops being harmonic.
    pub fn find_harmonicity_witness(
        &self,
        alpha: &FourierForm,
        j: usize,
        radius: i64,
    ) -> Result<Option<(FourierForm, HarmonicityCertificate)>> {
        for v in self.single_mode_directions(radius) {
            let cert = self.stays_harmonic(alpha, j, &v)?;
            if !cert.holds {
                return Ok(Some((v, cert)));
            }
        }
        Ok(None)
    }
}
