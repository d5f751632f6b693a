//! The sl₂-representation `(L, Λ, B)` attached to a Lefschetz element `ω`,
//! primitive decompositions, and the first-order deformation `L_ε = L + εv`.
//!
//! `Λ` is never written down as a contraction. It is recovered from the
//! primitive decomposition `x = Σ Lʲβⱼ` through `Λ Lʲβ = j(N − m − j + 1) Lʲ⁻¹β`
//! for primitive `β` of degree `m`. The same code therefore works for any
//! coefficient ring in which the decomposition can be solved, in particular
//! for the dual-number model of `ω + εv`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::form::{binomial, monomials_of_bidegree, monomials_of_degree, Form, Mono};
use crate::linalg::{lift_kernel, DualFactor, Matrix, Solvable};
use crate::linop::{weight_operator, LinOp};
use crate::scalar::{DualScalar, Ring, Scalar};

/// A domain/target pair of monomial lists on which the primitivity map
/// `L^{N−m+1}` is computed.
#[derive(Clone, Debug)]
struct Block {
    domain: Vec<Mono>,
    target: Vec<Mono>,
}

#[derive(Clone, Debug)]
struct Slot {
    j: usize,
    m: usize,
    start: usize,
    len: usize,
}

/// Solves `x = Σ Lʲβⱼ` in one degree against the basis `{Lʲp : p ∈ P^{n−2j}}`.
#[derive(Clone, Debug)]
struct Decomposer<R: Solvable> {
    basis: Vec<Mono>,
    slots: Vec<Slot>,
    matrix: Matrix<R>,
    factor: R::Factor,
}

/// `(L, Λ, B)` for a Lefschetz element `ω ∈ A²`.
#[derive(Clone, Debug)]
pub struct Sl2Model<R: Solvable = Scalar> {
    n: usize,
    omega: Form<R>,
    omega_powers: Vec<Form<R>>,
    primitive: Vec<Vec<Form<R>>>,
    decomposers: Vec<Decomposer<R>>,
}

/// Primitive decomposition `x = Σ Lʲβⱼ` of a homogeneous element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimDecomp<R: Ring = Scalar> {
    n: usize,
    degree: usize,
    parts: BTreeMap<usize, Form<R>>,
}

/// The primitive components `vα = Q⁰ + L Q¹ + L² Q²` of a product with a
/// primitive `α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QTriple<R: Ring = Scalar> {
    pub q0: Form<R>,
    pub q1: Form<R>,
    pub q2: Form<R>,
}

impl<R: Ring> PrimDecomp<R> {
    /// Normalizes the component list: zero components are dropped, and so are
    /// slots `j > N − deg βⱼ`, whose image `Lʲβⱼ` vanishes for primitive `βⱼ`.
    pub fn new(n: usize, degree: usize, parts: impl IntoIterator<Item = (usize, Form<R>)>) -> Self {
        let mut map: BTreeMap<usize, Form<R>> = BTreeMap::new();
        for (j, beta) in parts {
            let slot = map.entry(j).or_insert_with(|| Form::zero(n));
            *slot = &*slot + &beta;
        }
        map.retain(|&j, beta| {
            !beta.is_zero() && 2 * j <= degree && j + (degree - 2 * j) <= n
        });
        PrimDecomp { n, degree, parts: map }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `βⱼ`, zero when absent.
    pub fn part(&self, j: usize) -> Form<R> {
        self.parts.get(&j).cloned().unwrap_or_else(|| Form::zero(self.n))
    }

    pub fn parts(&self) -> impl Iterator<Item = (usize, &Form<R>)> {
        self.parts.iter().map(|(j, f)| (*j, f))
    }

    pub fn slots(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl PrimDecomp<DualScalar> {
    pub fn body(&self) -> PrimDecomp<Scalar> {
        PrimDecomp::new(self.n, self.degree, self.parts().map(|(j, f)| (j, f.body())))
    }
}

impl<R: Ring> fmt::Display for PrimDecomp<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let pieces: Vec<String> = self
            .parts
            .iter()
            .map(|(j, beta)| format!("L^{j}({beta})"))
            .collect();
        write!(f, "{}", pieces.join(" + "))
    }
}

impl<R: Solvable> Sl2Model<R> {
    /// Builds the representation for any degree-two element satisfying hard
    /// Lefschetz. No type or reality condition is imposed, so this also
    /// covers deformed elements `ω + εv` with arbitrary `v ∈ A²`.
    pub fn from_element(omega: Form<R>) -> Result<Self> {
        let n = omega.dim();
        if omega.is_zero() || !omega.is_of_degree(2) {
            return Err(Error::NotLefschetz("element is not a nonzero 2-form".into()));
        }
        let omega_powers: Vec<Form<R>> = (0..=n).map(|k| omega.pow(k)).collect();
        let model_powers = |k: usize| -> Form<R> {
            omega_powers.get(k).cloned().unwrap_or_else(|| Form::zero(n))
        };

        for deg in 0..=n {
            let domain = monomials_of_degree(n, deg);
            let target = monomials_of_degree(n, 2 * n - deg);
            let m = power_matrix(&model_powers(n - deg), &domain, &target);
            if !R::is_invertible(&m) {
                return Err(Error::NotLefschetz(format!(
                    "L^{} : A^{} -> A^{} is not bijective",
                    n - deg,
                    deg,
                    2 * n - deg
                )));
            }
        }

        let pure = omega.is_of_bidegree(1, 1);
        let mut primitive = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let power = model_powers(n - m + 1);
            let mut basis = Vec::new();
            for block in blocks(n, m, pure) {
                let mat = power_matrix(&power, &block.domain, &block.target);
                for k in R::kernel(&mat)? {
                    basis.push(Form::from_coords(n, &block.domain, &k));
                }
            }
            let expected = binomial(2 * n, m) - if m >= 2 { binomial(2 * n, m - 2) } else { 0 };
            if basis.len() != expected {
                return Err(Error::NotLefschetz(format!(
                    "primitive space in degree {m} has dimension {} instead of {expected}",
                    basis.len()
                )));
            }
            primitive.push(basis);
        }

        let decomposers = (0..=2 * n)
            .map(|deg| {
                let (basis, slots, matrix) = decomposition_matrix(n, deg, &omega_powers, &primitive);
                let factor = R::factor(&matrix).map_err(|_| {
                    Error::NotLefschetz(format!("primitive decomposition fails in degree {deg}"))
                })?;
                Ok(Decomposer {
                    basis,
                    slots,
                    matrix,
                    factor,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Sl2Model {
            n,
            omega,
            omega_powers,
            primitive,
            decomposers,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> &Form<R> {
        &self.omega
    }

    /// `ωᵏ`, zero for `k > N`.
    pub fn omega_pow(&self, k: usize) -> Form<R> {
        self.omega_powers
            .get(k)
            .cloned()
            .unwrap_or_else(|| Form::zero(self.n))
    }

    /// `Lᵏx = ωᵏ ∧ x`.
    pub fn lefschetz_pow(&self, x: &Form<R>, k: usize) -> Form<R> {
        self.omega_pow(k).wedge(x)
    }

    pub fn lefschetz(&self, x: &Form<R>) -> Form<R> {
        self.omega.wedge(x)
    }

    /// A basis of `P^m`; by bidegree whenever `ω` has type `(1,1)`.
    pub fn primitive_basis(&self, m: usize) -> &[Form<R>] {
        self.primitive.get(m).map_or(&[], Vec::as_slice)
    }

    /// `x ∈ Aⁿ` with `n ≤ N` is primitive iff `L^{N−n+1}x = 0`; nothing of
    /// degree above `N` is primitive except zero, and neither is a
    /// non-homogeneous form.
    pub fn is_primitive(&self, x: &Form<R>) -> bool {
        if x.is_zero() {
            return true;
        }
        match x.homogeneous_degree() {
            Some(deg) if deg <= self.n => self.lefschetz_pow(x, self.n - deg + 1).is_zero(),
            _ => false,
        }
    }

    fn require_primitive(&self, x: &Form<R>) -> Result<()> {
        if self.is_primitive(x) {
            Ok(())
        } else {
            Err(Error::NotPrimitive)
        }
    }

    /// Decomposes `x ∈ A^degree`.
    pub fn decompose_degree(&self, x: &Form<R>, degree: usize) -> Result<PrimDecomp<R>> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch(self.n, x.dim()));
        }
        if degree > 2 * self.n || !x.is_of_degree(degree) {
            return Err(Error::NotHomogeneous(degree));
        }
        let dec = &self.decomposers[degree];
        let c = R::solve_factored(&dec.factor, &x.coords(&dec.basis));
        let parts = dec.slots.iter().map(|slot| {
            let beta = self.primitive[slot.m]
                .iter()
                .zip(&c[slot.start..slot.start + slot.len])
                .filter(|(_, coeff)| !coeff.is_zero())
                .fold(Form::zero(self.n), |acc, (p, coeff)| acc + p.scale(coeff));
            (slot.j, beta)
        });
        Ok(PrimDecomp::new(self.n, degree, parts))
    }

    /// Decomposes a homogeneous form; the zero form decomposes trivially.
    pub fn decompose(&self, x: &Form<R>) -> Result<PrimDecomp<R>> {
        if x.is_zero() {
            return Ok(PrimDecomp::new(self.n, 0, []));
        }
        let deg = x.homogeneous_degree().ok_or(Error::NotHomogeneous(x.degrees()[0]))?;
        self.decompose_degree(x, deg)
    }

    /// `Σ Lʲβⱼ`.
    pub fn reconstruct(&self, d: &PrimDecomp<R>) -> Form<R> {
        d.parts()
            .fold(Form::zero(self.n), |acc, (j, beta)| acc + self.lefschetz_pow(beta, j))
    }

    /// `Λx`, degree by degree.
    pub fn lambda(&self, x: &Form<R>) -> Form<R> {
        let mut acc = Form::zero(self.n);
        for deg in x.degrees() {
            let d = self
                .decompose_degree(&x.degree_component(deg), deg)
                .expect("validated model decomposes every degree");
            for (j, beta) in d.parts() {
                if j == 0 {
                    continue;
                }
                let m = deg - 2 * j;
                let c = (j * (self.n - m - j + 1)) as i64;
                acc = acc + self.lefschetz_pow(beta, j - 1).scale(&R::from_int(c));
            }
        }
        acc
    }

    pub fn lefschetz_operator(&self) -> LinOp<R> {
        LinOp::left_multiplication(&self.omega, 2).expect("ω has degree two")
    }

    pub fn lambda_operator(&self) -> LinOp<R> {
        LinOp::from_fn(self.n, -2, |x| Ok(self.lambda(x))).expect("Λ has degree −2")
    }

    pub fn weight_operator(&self) -> LinOp<R> {
        weight_operator(self.n)
    }

    /// `vα = Q⁰ + LQ¹ + L²Q²`; fails with `Invariant` if any higher
    /// component survives.
    pub fn q_triple(&self, v: &Form<R>, alpha: &Form<R>) -> Result<QTriple<R>> {
        if !v.is_of_degree(2) {
            return Err(Error::NotHomogeneous(2));
        }
        self.require_primitive(alpha)?;
        let product = v.wedge(alpha);
        let d = self.decompose(&product)?;
        if let Some(j) = d.slots().into_iter().find(|&j| j >= 3) {
            return Err(Error::Invariant(format!(
                "primitive component of slot {j} in v·α is nonzero"
            )));
        }
        Ok(QTriple {
            q0: d.part(0),
            q1: d.part(1),
            q2: d.part(2),
        })
    }

    /// Checks that `d` is a primitive decomposition of `x` in this model.
    pub fn check_decomposition(&self, d: &PrimDecomp<R>, x: &Form<R>) -> Result<()> {
        for (j, beta) in d.parts() {
            if !self.is_primitive(beta) {
                return Err(Error::Invariant(format!("component in slot {j} is not primitive")));
            }
        }
        if self.reconstruct(d) != *x {
            return Err(Error::Invariant("components do not reconstruct the input".into()));
        }
        Ok(())
    }
}

fn blocks(n: usize, m: usize, by_bidegree: bool) -> Vec<Block> {
    let k = n - m + 1;
    if by_bidegree {
        (0..=m.min(n))
            .filter(|&p| m - p <= n)
            .map(|p| {
                let q = m - p;
                let target = if p + k <= n && q + k <= n {
                    monomials_of_bidegree(n, p + k, q + k)
                } else {
                    Vec::new()
                };
                Block {
                    domain: monomials_of_bidegree(n, p, q),
                    target,
                }
            })
            .collect()
    } else {
        let target = if m + 2 * k <= 2 * n {
            monomials_of_degree(n, m + 2 * k)
        } else {
            Vec::new()
        };
        vec![Block {
            domain: monomials_of_degree(n, m),
            target,
        }]
    }
}

/// Matrix of `x ↦ power ∧ x` from `domain` to `target` coordinates.
fn power_matrix<R: Ring>(power: &Form<R>, domain: &[Mono], target: &[Mono]) -> Matrix<R> {
    let n = power.dim();
    let columns: Vec<Vec<R>> = domain
        .iter()
        .map(|&m| power.wedge(&Form::monomial(n, m, R::one())).coords(target))
        .collect();
    Matrix::from_columns(target.len(), &columns)
}

fn decomposition_matrix<R: Ring>(
    n: usize,
    deg: usize,
    powers: &[Form<R>],
    primitive: &[Vec<Form<R>>],
) -> (Vec<Mono>, Vec<Slot>, Matrix<R>) {
    let basis = monomials_of_degree(n, deg);
    let mut slots = Vec::new();
    let mut columns = Vec::new();
    let j_min = deg.saturating_sub(n);
    for j in j_min..=deg / 2 {
        let m = deg - 2 * j;
        let start = columns.len();
        for p in &primitive[m] {
            columns.push(powers[j].wedge(p).coords(&basis));
        }
        slots.push(Slot {
            j,
            m,
            start,
            len: primitive[m].len(),
        });
    }
    let matrix = Matrix::from_columns(basis.len(), &columns);
    (basis, slots, matrix)
}

/// The validated model for a real `(1,1)` Lefschetz element.
pub fn build_model(omega: &Form<Scalar>) -> Result<Sl2Model<Scalar>> {
    if !omega.is_of_bidegree(1, 1) {
        return Err(Error::NotOneOne);
    }
    if !omega.is_real() {
        return Err(Error::NotReal);
    }
    Sl2Model::from_element(omega.clone())
}

impl Sl2Model<Scalar> {
    /// The dual-number model of `ω + εv` for any `v ∈ A²`.
    ///
    /// Reuses the primitive bases and factored decomposition matrices of
    /// `self` as the `ε⁰` layer; only the `ε¹` corrections are solved for.
    pub fn deform(&self, v: &Form<Scalar>) -> Result<Sl2Model<DualScalar>> {
        let n = self.n;
        if v.dim() != n {
            return Err(Error::DimensionMismatch(n, v.dim()));
        }
        if !v.is_of_degree(2) {
            return Err(Error::NotHomogeneous(2));
        }
        let omega = self.omega.lift() + v.infinitesimal();
        let omega_powers: Vec<Form<DualScalar>> = (0..=n).map(|k| omega.pow(k)).collect();

        let pure = self.omega.is_of_bidegree(1, 1) && v.is_of_bidegree(1, 1);
        let mut primitive = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let k = n - m + 1;
            // (ω + εv)ᵏ = ωᵏ + ε·k·v·ωᵏ⁻¹
            let slope_power = v.wedge(&self.omega_pow(k - 1)).scale(&Scalar::from(k as i64));
            let mut lifted_basis = Vec::with_capacity(self.primitive[m].len());
            for block in blocks(n, m, pure) {
                let body = power_matrix(&self.omega_pow(k), &block.domain, &block.target);
                let slope = power_matrix(&slope_power, &block.domain, &block.target);
                let k0: Vec<Vec<Scalar>> = self.primitive[m]
                    .iter()
                    .filter(|p| !pure || p.terms().all(|(mono, _)| block.domain.binary_search(mono).is_ok()))
                    .map(|p| p.coords(&block.domain))
                    .collect();
                for c in lift_kernel(&body, &slope, k0)? {
                    lifted_basis.push(Form::from_coords(n, &block.domain, &c));
                }
            }
            primitive.push(lifted_basis);
        }

        let decomposers = (0..=2 * n)
            .map(|deg| {
                let (basis, slots, matrix) = decomposition_matrix(n, deg, &omega_powers, &primitive);
                let base = &self.decomposers[deg];
                debug_assert_eq!(matrix.map(|c| c.body.clone()), base.matrix);
                let factor = DualFactor::from_parts(base.factor.clone(), matrix.map(|c| c.slope.clone()));
                Decomposer {
                    basis,
                    slots,
                    matrix,
                    factor,
                }
            })
            .collect();

        Ok(Sl2Model {
            n,
            omega,
            omega_powers,
            primitive,
            decomposers,
        })
    }
}

fn int(k: i64) -> Scalar {
    Scalar::from(k)
}

/// The closed-form `ω + εv` decomposition of `Lʲα` for primitive `α`:
///
/// `Lʲα = L_ε^{j+1}(ε(N−n+j+1)Q²) + L_ε^j(α − ε((N−n+2j+1)LQ² + jQ¹)) − L_ε^{j−1}(εjQ⁰)`
///
/// with `n = deg α + 2j` and `Qⁱ = Qⁱ_v(α)`.
pub fn deformed_decompose_closed(
    model: &Sl2Model<Scalar>,
    alpha: &Form<Scalar>,
    j: usize,
    v: &Form<Scalar>,
) -> Result<PrimDecomp<DualScalar>> {
    let n_dim = model.dim() as i64;
    let q = model.q_triple(v, alpha)?;
    let m = alpha.homogeneous_degree().unwrap_or(0);
    let degree = m + 2 * j;
    let n = degree as i64;
    let j_i = j as i64;

    let upper = q.q2.scale(&int(n_dim - n + j_i + 1)).infinitesimal();
    let correction = model.lefschetz(&q.q2).scale(&int(n_dim - n + 2 * j_i + 1)) + q.q1.scale(&int(j_i));
    let middle = alpha.lift() - correction.infinitesimal();
    let mut parts = vec![(j + 1, upper), (j, middle)];
    if j > 0 {
        parts.push((j - 1, q.q0.scale(&int(-j_i)).infinitesimal()));
    }
    Ok(PrimDecomp::new(model.dim(), degree, parts))
}

/// `φ̃(Lʲα) = (N−n+j+1)L^{j+1}Q²_v(α) − jL^{j−1}Q⁰_v(α)`, how `LʲP^{n−2j}`
/// moves into the other slots.
pub fn phi_tilde(
    model: &Sl2Model<Scalar>,
    alpha: &Form<Scalar>,
    j: usize,
    v: &Form<Scalar>,
) -> Result<Form<Scalar>> {
    let q = model.q_triple(v, alpha)?;
    let m = alpha.homogeneous_degree().unwrap_or(0);
    let n = (m + 2 * j) as i64;
    let n_dim = model.dim() as i64;
    let up = model
        .lefschetz_pow(&q.q2, j + 1)
        .scale(&int(n_dim - n + j as i64 + 1));
    if j == 0 {
        return Ok(up);
    }
    Ok(up - model.lefschetz_pow(&q.q0, j - 1).scale(&int(j as i64)))
}

/// Whether primitive `α ∈ Pⁿ` stays primitive for `L + εv`, decided by
/// `L^{N−n}(αv) = 0`; cross-checked against `Q²_v(α) = 0`.
pub fn stays_primitive(model: &Sl2Model<Scalar>, alpha: &Form<Scalar>, v: &Form<Scalar>) -> Result<bool> {
    let q = model.q_triple(v, alpha)?;
    let n = alpha.homogeneous_degree().unwrap_or(0);
    let direct = if n > model.dim() {
        true
    } else {
        model.lefschetz_pow(&alpha.wedge(v), model.dim() - n).is_zero()
    };
    let via_q = q.q2.is_zero();
    if direct != via_q {
        return Err(Error::Invariant(
            "L^{N-n}(αv) = 0 and Q²_v(α) = 0 disagree".into(),
        ));
    }
    Ok(direct)
}

/// `Λ_ε∘Λ − Λ∘Λ_ε` for `Λ_ε` the dual Lefschetz operator of `ω + εv`.
pub fn commutator_lambda_eps(model: &Sl2Model<Scalar>, v: &Form<Scalar>) -> Result<LinOp<DualScalar>> {
    if !v.is_of_bidegree(1, 1) {
        return Err(Error::NotOneOne);
    }
    if !v.is_real() {
        return Err(Error::NotReal);
    }
    let deformed = model.deform(v)?;
    let lambda_eps = deformed.lambda_operator();
    let lambda = model.lambda_operator().lift();
    lambda_eps
        .compose(&lambda)
        .try_sub(&lambda.compose(&lambda_eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{real_one_one_basis, standard_kahler_form};

    fn dd(n: usize, a: usize, b: usize) -> Form {
        Form::dz(n, a).wedge(&Form::dzb(n, b))
    }

    fn std_model(n: usize) -> Sl2Model {
        build_model(&standard_kahler_form(n)).unwrap()
    }

    #[test]
    fn standard_model_is_valid_and_degenerate_is_rejected() {
        std_model(2);
        let rank_one = dd(2, 1, 1).scale(&Scalar::i());
        assert!(matches!(build_model(&rank_one), Err(Error::NotLefschetz(_))));
    }

    #[test]
    fn indefinite_form_satisfies_hard_lefschetz() {
        // L : A¹ → A³ for i(dz1 dzb1 − dz2 dzb2) has nonzero determinant.
        let w = (dd(2, 1, 1) - dd(2, 2, 2)).scale(&Scalar::i());
        let model = build_model(&w).unwrap();
        let basis = monomials_of_degree(2, 1);
        let target = monomials_of_degree(2, 3);
        let m = power_matrix(model.omega(), &basis, &target);
        assert_eq!(crate::linalg::rank(&m), 4);
    }

    #[test]
    fn non_one_one_or_non_real_elements_are_rejected() {
        let w = Form::dz(2, 1).wedge(&Form::dz(2, 2));
        assert_eq!(build_model(&w).unwrap_err(), Error::NotOneOne);
        let w = dd(2, 1, 1) + dd(2, 2, 2);
        assert_eq!(build_model(&w).unwrap_err(), Error::NotReal);
    }

    #[test]
    fn primitivity_examples() {
        let model = std_model(2);
        assert!(model.is_primitive(&Form::one(2)));
        assert!(!model.is_primitive(model.omega()));
        let x = (dd(2, 1, 1) - dd(2, 2, 2)).scale(&Scalar::i());
        assert!(model.is_primitive(&x));
        assert!(!model.is_primitive(&(Form::one(2) + Form::dz(2, 1))));
        assert!(!model.is_primitive(&model.omega_pow(2)));
    }

    #[test]
    fn decompositions_of_powers_and_primitives() {
        let model = std_model(3);
        for j in 0..=3 {
            let d = model.decompose(&model.omega_pow(j)).unwrap();
            assert_eq!(d.slots(), vec![j]);
            assert_eq!(d.part(j), Form::one(3));
        }
        for p in model.primitive_basis(2) {
            let d = model.decompose(p).unwrap();
            assert_eq!(d.slots(), vec![0]);
            assert_eq!(d.part(0), *p);
        }
    }

    #[test]
    fn decomposition_of_a_single_diagonal_term() {
        // dz1∧dzb1 = (dz1∧dzb1 − ω/(2i)) + L(1/(2i)) for N = 2.
        let model = std_model(2);
        let x = dd(2, 1, 1);
        let d = model.decompose(&x).unwrap();
        let trace = Scalar::gaussian(0, -1).times(&Scalar::rational(1, 2));
        assert_eq!(d.part(1), Form::constant(2, trace.clone()));
        assert_eq!(d.part(0), &x - &model.omega().scale(&trace));
        model.check_decomposition(&d, &x).unwrap();
    }

    #[test]
    fn lambda_on_powers() {
        for n in 2..=3 {
            let model = std_model(n);
            for k in 1..=n {
                let expected = model.omega_pow(k - 1).scale(&Scalar::from((k * (n - k + 1)) as i64));
                assert_eq!(model.lambda(&model.omega_pow(k)), expected);
            }
            for m in 0..=n {
                for p in model.primitive_basis(m) {
                    assert!(model.lambda(p).is_zero());
                    if m < n {
                        let lp = model.lefschetz(p);
                        assert_eq!(model.lambda(&lp), p.scale(&Scalar::from((n - m) as i64)));
                    }
                }
            }
        }
    }

    #[test]
    fn q_triple_examples() {
        let model = std_model(2);
        let v0 = (dd(2, 1, 1) - dd(2, 2, 2)).scale(&Scalar::i());
        let q = model.q_triple(&v0, &Form::one(2)).unwrap();
        assert_eq!((q.q0.clone(), q.q1.is_zero(), q.q2.is_zero()), (v0.clone(), true, true));

        let c = Scalar::rational(3, 2);
        let v = &v0 + &model.omega().scale(&c);
        let q = model.q_triple(&v, &Form::one(2)).unwrap();
        assert_eq!(q.q0, v0);
        assert_eq!(q.q1, Form::constant(2, c));
        assert!(q.q2.is_zero());

        assert_eq!(
            model.q_triple(&v, model.omega()).unwrap_err(),
            Error::NotPrimitive
        );
    }

    #[test]
    fn q2_of_primitive_pairs_is_the_top_degree_ratio() {
        // N = 2: Q² = (α v ω^{N−2}) / ω^N.
        let model = std_model(2);
        let top = model.omega_pow(2);
        let (mono, top_c) = top.terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
        for alpha in model.primitive_basis(2).iter().filter(|a| a.is_of_bidegree(1, 1)) {
            for v in model.primitive_basis(2).iter().filter(|a| a.is_of_bidegree(1, 1)) {
                let q = model.q_triple(v, alpha).unwrap();
                let ratio = alpha.wedge(v).coeff(mono).checked_div(&top_c).unwrap();
                assert_eq!(q.q2, Form::constant(2, ratio));
            }
        }
    }

    #[test]
    fn primitivity_under_deformation() {
        let model = std_model(2);
        let x = (dd(2, 1, 1) - dd(2, 2, 2)).scale(&Scalar::i());
        assert!(stays_primitive(&model, &x, &Form::zero(2)).unwrap());
        assert!(!stays_primitive(&model, &x, &x).unwrap());
        // Degree N primitives stay primitive exactly when αv = 0.
        for n in 2..=3 {
            let model = std_model(n);
            for alpha in model.primitive_basis(n) {
                for v in crate::form::degree_two_basis(n) {
                    let answer = stays_primitive(&model, alpha, &v).unwrap();
                    assert_eq!(answer, alpha.wedge(&v).is_zero());
                }
            }
        }
    }

    #[test]
    fn closed_form_special_cases() {
        let model = std_model(3);
        let n = 3;
        // α = 1, v primitive: Lʲ(1) = L_εʲ(1) + L_ε^{j−1}(−jεv)
        let v = (dd(n, 1, 1) - dd(n, 2, 2)).scale(&Scalar::i());
        for j in 1..=n {
            let d = deformed_decompose_closed(&model, &Form::one(n), j, &v).unwrap();
            assert_eq!(d.part(j), Form::one(n).lift());
            if j - 1 <= n - 2 {
                assert_eq!(d.part(j - 1), v.scale(&Scalar::from(-(j as i64))).infinitesimal());
            } else {
                assert!(d.part(j - 1).is_zero());
            }
            assert!(d.part(j + 1).is_zero());
            assert_eq!(phi_tilde(&model, &Form::one(n), 1, &v).unwrap(), -v.clone());
        }
        // v = cω moves nothing across slots.
        let c = Scalar::rational(2, 3);
        let vw = model.omega().scale(&c);
        for m in 0..=n {
            for alpha in model.primitive_basis(m) {
                assert!(phi_tilde(&model, alpha, 0, &vw).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn deform_agrees_with_generic_dual_build() {
        let model = std_model(2);
        let v = real_one_one_basis(2)[2].clone() + Form::dz(2, 1).wedge(&Form::dz(2, 2));
        let fast = model.deform(&v).unwrap();
        let slow = Sl2Model::from_element(model.omega().lift() + v.infinitesimal()).unwrap();
        for m in crate::form::all_monomials(2) {
            let x = Form::<DualScalar>::monomial(2, m, DualScalar::new(Scalar::from(1), Scalar::from(2)));
            let a = fast.decompose(&x).unwrap();
            let b = slow.decompose(&x).unwrap();
            assert_eq!(fast.reconstruct(&a), x);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn commutator_vanishes_for_trivial_directions() {
        let model = std_model(2);
        assert!(commutator_lambda_eps(&model, &Form::zero(2)).unwrap().is_zero());
        assert!(commutator_lambda_eps(&model, &model.omega().clone()).unwrap().is_zero());
    }
}
