//! Forms on the flat torus `ℂᴺ/Λ` with finitely many Fourier modes.
//!
//! A form is `Σ_k e_k φ_k` with `e_k` the character of `k ∈ ℤ^{2N}` and `φ_k`
//! a constant-coefficient form. With the `2π` dropped,
//! `d(e_k φ) = e_k θ_k ∧ φ` where `θ_k = i Σ_a k_a dx^a`,
//! `dx_j = (dz_j + dz̄_j)/2` and `dx_{N+j} = (dz_j − dz̄_j)/(2i)`.

mod variation;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::form::{all_monomials, standard_kahler_form, Form};
use crate::hodge::{t_v_linear, StarContext};
use crate::linalg::{inverse, Matrix};
use crate::scalar::{DualScalar, Ring, Scalar};
use crate::sl2::{build_model, Sl2Model};

pub use variation::{DeformedStar, DeltaSplit, FourierQTriple, HValue, HarmonicityCertificate};

/// An integer vector of length `2N`.
pub type Mode = Vec<i64>;

/// Largest number of modes a [`ModeSet`] may hold.
pub const MAX_MODES: usize = 20_000;

/// A finite set of modes containing `0` and closed under negation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModeSet {
    n: usize,
    modes: BTreeSet<Mode>,
}

fn negate(k: &[i64]) -> Mode {
    k.iter().map(|x| -x).collect()
}

fn add_modes(k: &[i64], l: &[i64]) -> Mode {
    k.iter().zip(l).map(|(a, b)| a + b).collect()
}

fn is_zero_mode(k: &[i64]) -> bool {
    k.iter().all(|&x| x == 0)
}

impl ModeSet {
    pub fn new(n: usize, modes: impl IntoIterator<Item = Mode>) -> Result<Self> {
        let modes: BTreeSet<Mode> = modes.into_iter().collect();
        if let Some(bad) = modes.iter().find(|k| k.len() != 2 * n) {
            return Err(Error::InvalidModeSet(format!(
                "mode {bad:?} does not have {} entries",
                2 * n
            )));
        }
        if !modes.contains(&vec![0; 2 * n]) {
            return Err(Error::InvalidModeSet("zero mode missing".into()));
        }
        if let Some(k) = modes.iter().find(|k| !modes.contains(&negate(k))) {
            return Err(Error::InvalidModeSet(format!("{k:?} present without its negative")));
        }
        if modes.len() > MAX_MODES {
            return Err(Error::InvalidModeSet(format!("more than {MAX_MODES} modes")));
        }
        Ok(ModeSet { n, modes })
    }

    /// All `k` with `|k|∞ ≤ radius`.
    pub fn cube(n: usize, radius: i64) -> Result<Self> {
        if radius < 0 {
            return Err(Error::InvalidModeSet("negative radius".into()));
        }
        let side = (2 * radius + 1) as usize;
        if side.checked_pow(2 * n as u32).is_none_or(|c| c > MAX_MODES) {
            return Err(Error::InvalidModeSet(format!("more than {MAX_MODES} modes")));
        }
        let mut modes = vec![Vec::new()];
        for _ in 0..2 * n {
            modes = modes
                .into_iter()
                .flat_map(|k: Mode| {
                    (-radius..=radius).map(move |x| {
                        let mut k = k.clone();
                        k.push(x);
                        k
                    })
                })
                .collect();
        }
        ModeSet::new(n, modes)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        self.modes.contains(k)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Mode> {
        self.modes.iter()
    }

    /// One representative of each pair `{k, −k}`, `k ≠ 0`: the one
    /// lexicographically greater than its negative.
    pub fn positive_half(&self) -> Vec<Mode> {
        self.modes
            .iter()
            .filter(|k| **k > negate(k))
            .cloned()
            .collect()
    }
}

/// `Σ_k e_k φ_k` with only nonzero `φ_k` stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FourierForm<R: Ring = Scalar> {
    n: usize,
    modes: BTreeMap<Mode, Form<R>>,
}

impl<R: Ring> FourierForm<R> {
    pub fn zero(n: usize) -> Self {
        FourierForm {
            n,
            modes: BTreeMap::new(),
        }
    }

    pub fn constant(phi: Form<R>) -> Self {
        let n = phi.dim();
        FourierForm::single(vec![0; 2 * n], phi)
    }

    /// `e_k φ`.
    pub fn single(k: Mode, phi: Form<R>) -> Self {
        FourierForm::from_modes(phi.dim(), [(k, phi)])
    }

    /// Sums the given mode components; panics on a mode of the wrong length.
    pub fn from_modes(n: usize, parts: impl IntoIterator<Item = (Mode, Form<R>)>) -> Self {
        let mut out = FourierForm::zero(n);
        for (k, phi) in parts {
            assert_eq!(k.len(), 2 * n, "mode length must be 2N");
            out.accumulate(k, phi);
        }
        out
    }

    fn accumulate(&mut self, k: Mode, phi: Form<R>) {
        if phi.is_zero() {
            return;
        }
        let sum = match self.modes.remove(&k) {
            Some(old) => old + phi,
            None => phi,
        };
        if !sum.is_zero() {
            self.modes.insert(k, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Whether only the zero mode occurs.
    pub fn is_constant(&self) -> bool {
        self.modes.keys().all(|k| is_zero_mode(k))
    }

    pub fn component(&self, k: &[i64]) -> Form<R> {
        self.modes.get(k).cloned().unwrap_or_else(|| Form::zero(self.n))
    }

    /// The zero-mode coefficient.
    pub fn mean(&self) -> Form<R> {
        self.component(&vec![0; 2 * self.n])
    }

    pub fn modes(&self) -> impl Iterator<Item = (&Mode, &Form<R>)> {
        self.modes.iter()
    }

    pub fn support(&self) -> Vec<Mode> {
        self.modes.keys().cloned().collect()
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_modes(|_, phi| phi.scale(c))
    }

    /// Applies a mode-preserving operation to each coefficient.
    pub fn map_modes<S: Ring>(&self, f: impl Fn(&Mode, &Form<R>) -> Form<S>) -> FourierForm<S> {
        FourierForm::from_modes(self.n, self.modes.iter().map(|(k, phi)| (k.clone(), f(k, phi))))
    }

    /// `φ ∧ self` for a constant `φ`.
    pub fn wedge_constant(&self, phi: &Form<R>) -> Self {
        self.map_modes(|_, x| phi.wedge(x))
    }

    /// Pointwise product; `ModeOverflow` if a nonzero product lands outside `modes`.
    pub fn try_wedge(&self, other: &FourierForm<R>, modes: &ModeSet) -> Result<Self> {
        let mut out = FourierForm::zero(self.n);
        for (k, x) in &self.modes {
            for (l, y) in &other.modes {
                let phi = x.wedge(y);
                if phi.is_zero() {
                    continue;
                }
                let m = add_modes(k, l);
                if !modes.contains(&m) {
                    return Err(Error::ModeOverflow(m));
                }
                out.accumulate(m, phi);
            }
        }
        Ok(out)
    }

    pub fn is_of_bidegree(&self, p: usize, q: usize) -> bool {
        self.modes.values().all(|phi| phi.is_of_bidegree(p, q))
    }

    pub fn is_of_degree(&self, degree: usize) -> bool {
        self.modes.values().all(|phi| phi.is_of_degree(degree))
    }

    /// Pointwise conjugation: `e_k φ ↦ e_{−k} φ̄`.
    pub fn conj(&self) -> Self {
        FourierForm::from_modes(self.n, self.modes.iter().map(|(k, phi)| (negate(k), phi.conj())))
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }
}

impl FourierForm<Scalar> {
    pub fn lift(&self) -> FourierForm<DualScalar> {
        self.map_modes(|_, phi| phi.lift())
    }

    pub fn infinitesimal(&self) -> FourierForm<DualScalar> {
        self.map_modes(|_, phi| phi.infinitesimal())
    }
}

impl FourierForm<DualScalar> {
    pub fn body(&self) -> FourierForm<Scalar> {
        self.map_modes(|_, phi| phi.body())
    }

    pub fn slope(&self) -> FourierForm<Scalar> {
        self.map_modes(|_, phi| phi.slope())
    }

    pub fn from_parts(body: &FourierForm<Scalar>, slope: &FourierForm<Scalar>) -> Self {
        body.lift() + slope.infinitesimal()
    }
}

impl<'a, R: Ring> Add<&'a FourierForm<R>> for &'a FourierForm<R> {
    type Output = FourierForm<R>;
    fn add(self, rhs: &'a FourierForm<R>) -> FourierForm<R> {
        assert_eq!(self.n, rhs.n, "sum of Fourier forms over different dimensions");
        let mut out = self.clone();
        for (k, phi) in &rhs.modes {
            out.accumulate(k.clone(), phi.clone());
        }
        out
    }
}

impl<R: Ring> Add for FourierForm<R> {
    type Output = FourierForm<R>;
    fn add(self, rhs: FourierForm<R>) -> FourierForm<R> {
        &self + &rhs
    }
}

impl<R: Ring> Neg for &FourierForm<R> {
    type Output = FourierForm<R>;
    fn neg(self) -> FourierForm<R> {
        self.map_modes(|_, phi| -phi)
    }
}

impl<R: Ring> Neg for FourierForm<R> {
    type Output = FourierForm<R>;
    fn neg(self) -> FourierForm<R> {
        -&self
    }
}

impl<'a, R: Ring> Sub<&'a FourierForm<R>> for &'a FourierForm<R> {
    type Output = FourierForm<R>;
    fn sub(self, rhs: &'a FourierForm<R>) -> FourierForm<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> Sub for FourierForm<R> {
    type Output = FourierForm<R>;
    fn sub(self, rhs: FourierForm<R>) -> FourierForm<R> {
        &self - &rhs
    }
}

impl<R: Ring> fmt::Display for FourierForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modes.is_empty() {
            return write!(f, "0");
        }
        let pieces: Vec<String> = self
            .modes
            .iter()
            .map(|(k, phi)| {
                if is_zero_mode(k) {
                    format!("({phi})")
                } else {
                    let ks: Vec<String> = k.iter().map(i64::to_string).collect();
                    format!("e[{}]^({phi})", ks.join(","))
                }
            })
            .collect();
        write!(f, "{}", pieces.join(" + "))
    }
}

/// `θ_k = i Σ_a k_a dx^a` in the `dz`, `dz̄` basis.
pub fn theta(n: usize, k: &[i64]) -> Form<Scalar> {
    let half = Scalar::rational(1, 2);
    let mut acc = Form::zero(n);
    for j in 0..n {
        let (a, b) = (k[j], k[n + j]);
        let dz = Scalar::gaussian(b, a).times(&half);
        let dzb = Scalar::gaussian(-b, a).times(&half);
        acc = acc + Form::dz(n, j + 1).scale(&dz) + Form::dzb(n, j + 1).scale(&dzb);
    }
    acc
}

/// `Σ_a k_a dx^a` split into its `(1,0)` and `(0,1)` parts.
fn theta_parts(n: usize, k: &[i64]) -> (Form<Scalar>, Form<Scalar>) {
    let t = theta(n, k);
    (t.bidegree_component(1, 0), t.bidegree_component(0, 1))
}

#[derive(Clone, Debug)]
enum Green {
    Scalar(Scalar),
    Block(Matrix<Scalar>),
}

/// The parts `ℋ(x) + dGd*x + d*Gdx` of a Fourier form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HodgeSplit {
    pub harmonic: FourierForm,
    pub d_exact: FourierForm,
    pub dstar_exact: FourierForm,
}

/// The flat torus with Kähler form `ω` and a declared mode set.
#[derive(Clone, Debug)]
pub struct TorusContext {
    star: StarContext,
    modes: ModeSet,
    green: BTreeMap<Mode, Green>,
}

impl TorusContext {
    /// Precomputes the inverse Laplacian on every nonzero mode; fails with
    /// `SingularBlock` if some block is not invertible.
    pub fn new(star: StarContext, modes: ModeSet) -> Result<Self> {
        if modes.dim() != star.dim() {
            return Err(Error::DimensionMismatch(star.dim(), modes.dim()));
        }
        let mut ctx = TorusContext {
            star,
            modes,
            green: BTreeMap::new(),
        };
        let mut green = BTreeMap::new();
        for k in ctx.modes.iter().filter(|k| !is_zero_mode(k)) {
            green.insert(k.clone(), ctx.green_block(k)?);
        }
        ctx.green = green;
        Ok(ctx)
    }

    /// The standard `ω` with modes `|k|∞ ≤ radius`.
    pub fn standard(n: usize, radius: i64) -> Result<Self> {
        let star = StarContext::new(build_model(&standard_kahler_form(n))?)?;
        TorusContext::new(star, ModeSet::cube(n, radius)?)
    }

    pub fn dim(&self) -> usize {
        self.star.dim()
    }

    pub fn star_context(&self) -> &StarContext {
        &self.star
    }

    pub fn model(&self) -> &Sl2Model {
        self.star.model()
    }

    pub fn mode_set(&self) -> &ModeSet {
        &self.modes
    }

    pub fn omega(&self) -> FourierForm {
        FourierForm::constant(self.model().omega().clone())
    }

    /// The matrix of `Δ` on mode `k` in the monomial basis.
    pub fn laplacian_block(&self, k: &[i64]) -> Matrix<Scalar> {
        let basis = all_monomials(self.dim());
        let columns: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|&m| {
                let x = FourierForm::single(k.to_vec(), Form::monomial(self.dim(), m, Scalar::one()));
                self.laplacian(&x).component(k).coords(&basis)
            })
            .collect();
        Matrix::from_columns(basis.len(), &columns)
    }

    /// The eigenvalue of `Δ` on mode `k` when its block is a scalar matrix.
    pub fn laplacian_eigenvalue(&self, k: &[i64]) -> Option<Scalar> {
        let block = self.laplacian_block(k);
        let c = block.get(0, 0).clone();
        (block == Matrix::identity(block.rows()).map(|x: &Scalar| x.times(&c))).then_some(c)
    }

    fn green_block(&self, k: &[i64]) -> Result<Green> {
        let block = self.laplacian_block(k);
        let c = block.get(0, 0).clone();
        if !c.is_zero() && block == Matrix::identity(block.rows()).map(|x: &Scalar| x.times(&c)) {
            return Ok(Green::Scalar(c.inverse().expect("nonzero eigenvalue")));
        }
        inverse(&block)
            .map(Green::Block)
            .map_err(|_| Error::SingularBlock(k.to_vec()))
    }

    /// `d`, mode by mode.
    pub fn d<R: Ring>(&self, x: &FourierForm<R>) -> FourierForm<R> {
        x.map_modes(|k, phi| theta(self.dim(), k).map(R::from_scalar).wedge(phi))
    }

    /// The star acting on coefficients.
    pub fn star(&self, x: &FourierForm) -> FourierForm {
        x.map_modes(|_, phi| self.star.star(phi))
    }

    /// The undeformed star on both layers of a dual form.
    pub fn star_lifted(&self, x: &FourierForm<DualScalar>) -> FourierForm<DualScalar> {
        FourierForm::from_parts(&self.star(&x.body()), &self.star(&x.slope()))
    }

    /// `d* = −*d*`.
    pub fn codifferential(&self, x: &FourierForm) -> FourierForm {
        -self.star(&self.d(&self.star(x)))
    }

    /// `Δ = dd* + d*d`.
    pub fn laplacian(&self, x: &FourierForm) -> FourierForm {
        self.d(&self.codifferential(x)) + self.codifferential(&self.d(x))
    }

    /// The Green operator: zero on mode 0, `Δ⁻¹` on every other mode.
    pub fn green(&self, x: &FourierForm) -> Result<FourierForm> {
        let basis = all_monomials(self.dim());
        let mut out = FourierForm::zero(self.dim());
        for (k, phi) in x.modes() {
            if is_zero_mode(k) {
                continue;
            }
            let computed;
            let g = match self.green.get(k) {
                Some(g) => g,
                None => {
                    computed = self.green_block(k)?;
                    &computed
                }
            };
            let image = match g {
                Green::Scalar(c) => phi.scale(c),
                Green::Block(inv) => Form::from_coords(self.dim(), &basis, &inv.mul_vec(&phi.coords(&basis))),
            };
            out.accumulate(k.clone(), image);
        }
        Ok(out)
    }

    pub fn hodge_decompose(&self, x: &FourierForm) -> Result<HodgeSplit> {
        let harmonic = FourierForm::constant(x.mean());
        let d_exact = self.d(&self.green(&self.codifferential(x))?);
        let dstar_exact = self.codifferential(&self.green(&self.d(x))?);
        if &(&harmonic + &d_exact) + &dstar_exact != *x {
            return Err(Error::Invariant("Hodge parts do not sum to the input".into()));
        }
        Ok(HodgeSplit {
            harmonic,
            d_exact,
            dstar_exact,
        })
    }

    pub fn is_closed(&self, x: &FourierForm) -> bool {
        self.d(x).is_zero()
    }

    /// `dx = 0` and `d*x = 0`.
    pub fn is_harmonic(&self, x: &FourierForm) -> bool {
        self.is_closed(x) && self.codifferential(x).is_zero()
    }

    /// Checks that `v` is a closed real `(1,1)` form on declared modes.
    pub fn validate_direction(&self, v: &FourierForm) -> Result<()> {
        if let Some(k) = v.support().into_iter().find(|k| !self.modes.contains(k)) {
            return Err(Error::ModeOverflow(k));
        }
        if !v.is_of_bidegree(1, 1) {
            return Err(Error::NotOneOne);
        }
        if !v.is_real() {
            return Err(Error::NotReal);
        }
        if !self.is_closed(v) {
            return Err(Error::NotClosed);
        }
        Ok(())
    }

    /// `T_v x = Σ e_{k+l} T_{v_l}(x_k)` with the closed form for each `T_{v_l}`.
    pub fn t_v(&self, x: &FourierForm, v: &FourierForm) -> Result<FourierForm> {
        let mut out = FourierForm::zero(self.dim());
        for (l, vl) in v.modes() {
            if !vl.is_of_bidegree(1, 1) {
                return Err(Error::NotOneOne);
            }
            for (k, xk) in x.modes() {
                let t = t_v_linear(xk, vl, &self.star)?;
                if t.is_zero() {
                    continue;
                }
                let m = add_modes(k, l);
                if !self.modes.contains(&m) {
                    return Err(Error::ModeOverflow(m));
                }
                out.accumulate(m, t);
            }
        }
        Ok(out)
    }

    /// The two real closed `(1,1)` forms carried by the modes `±l`:
    /// `i(e_l + e_{−l})θ'∧θ''` and `(e_l − e_{−l})θ'∧θ''`, with `θ'`, `θ''`
    /// the type components of `Σ l_a dx^a`.
    pub fn closed_one_one_pair(&self, l: &[i64]) -> Result<[FourierForm; 2]> {
        if is_zero_mode(l) {
            return Err(Error::ZeroInput("zero mode carries constant forms only".into()));
        }
        if !self.modes.contains(l) {
            return Err(Error::ModeOverflow(l.to_vec()));
        }
        let (t1, t2) = theta_parts(self.dim(), l);
        let phi = t1.wedge(&t2);
        let neg = negate(l);
        let a = FourierForm::from_modes(
            self.dim(),
            [(l.to_vec(), phi.scale(&Scalar::i())), (neg.clone(), phi.scale(&Scalar::i()))],
        );
        let b = FourierForm::from_modes(self.dim(), [(l.to_vec(), phi.clone()), (neg, -phi)]);
        Ok([a, b])
    }

    /// Every single-mode closed real `(1,1)` form of the above kind, with
    /// `|l|∞ ≤ radius`, in a fixed order.
    pub fn single_mode_directions(&self, radius: i64) -> Vec<FourierForm> {
        self.modes
            .positive_half()
            .into_iter()
            .filter(|l| l.iter().all(|x| x.abs() <= radius))
            .flat_map(|l| self.closed_one_one_pair(&l).expect("declared nonzero mode"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> TorusContext {
        TorusContext::standard(2, 1).unwrap()
    }

    fn rand_form(n: usize, seed: u64) -> FourierForm {
        let mut out = FourierForm::zero(n);
        let mut s = seed;
        for (idx, k) in ModeSet::cube(n, 1).unwrap().iter().enumerate().take(9) {
            for m in all_monomials(n) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if (s >> 60) % 5 == 0 {
                    let c = Scalar::gaussian(((s >> 33) % 5) as i64 - 2, ((s >> 40) % 3) as i64 - 1 + idx as i64 % 2);
                    out = out + FourierForm::single(k.clone(), Form::monomial(n, m, c));
                }
            }
        }
        out
    }

    #[test]
    fn mode_sets_are_validated() {
        assert!(ModeSet::new(1, [vec![0, 0], vec![1, 0]]).is_err());
        assert!(ModeSet::new(1, [vec![1, 0], vec![-1, 0]]).is_err());
        assert!(ModeSet::new(1, [vec![0, 0, 0]]).is_err());
        assert_eq!(ModeSet::cube(2, 1).unwrap().len(), 81);
        assert_eq!(ModeSet::cube(2, 1).unwrap().positive_half().len(), 40);
    }

    #[test]
    fn d_of_a_character() {
        let c = ctx();
        let k = vec![1, 0, 0, 0];
        let e = FourierForm::single(k.clone(), Form::one(2));
        let expected = (Form::dz(2, 1) + Form::dzb(2, 1)).scale(&Scalar::gaussian(0, 1).times(&Scalar::rational(1, 2)));
        assert_eq!(c.d(&e), FourierForm::single(k, expected));
        assert!(c.d(&FourierForm::constant(Form::<Scalar>::dz(2, 2))).is_zero());
    }

    #[test]
    fn complexes_square_to_zero() {
        let c = ctx();
        for seed in 0..4 {
            let x = rand_form(2, seed);
            assert!(c.d(&c.d(&x)).is_zero());
            assert!(c.codifferential(&c.codifferential(&x)).is_zero());
        }
    }

    #[test]
    fn laplacian_blocks_are_scalar() {
        let c = ctx();
        for k in c.mode_set().iter() {
            let ev = c.laplacian_eigenvalue(k).expect("scalar block");
            assert_eq!(ev.is_zero(), is_zero_mode(k));
        }
    }

    #[test]
    fn hodge_decomposition_recomposes() {
        let c = ctx();
        for seed in 0..4 {
            let x = rand_form(2, seed);
            let s = c.hodge_decompose(&x).unwrap();
            assert!(c.is_harmonic(&s.harmonic));
            assert!(c.is_closed(&s.d_exact));
            assert!(c.codifferential(&s.dstar_exact).is_zero());
            let y = c.d(&x);
            let sy = c.hodge_decompose(&y).unwrap();
            assert!(sy.dstar_exact.is_zero() && sy.harmonic.is_zero());
        }
    }

    #[test]
    fn single_mode_directions_are_closed_real_one_one() {
        let c = ctx();
        let dirs = c.single_mode_directions(1);
        assert_eq!(dirs.len(), 80);
        for v in &dirs {
            c.validate_direction(v).unwrap();
            assert!(!v.is_zero());
        }
    }
}
