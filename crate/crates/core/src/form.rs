//! The complexified exterior algebra of a hermitian space of complex dimension `N`,
//! written in the `dz₁ … dz_N, dz̄₁ … dz̄_N` basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{DualScalar, Ring, Scalar};

/// Largest complex dimension accepted by default; `dim A = 4^N`.
pub const MAX_DIMENSION: usize = 5;

/// Hard ceiling imposed by the bit width of [`Mono`].
const BIT_LIMIT: usize = 8;

/// A canonical monomial `dz_I ∧ dz̄_J`: bit `a < N` is `dz_{a+1}`, bit `N + b`
/// is `dz̄_{b+1}`. Ascending bit order is the canonical factor order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(pub u16);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn bidegree(self, n: usize) -> (usize, usize) {
        let low = (1u16 << n) - 1;
        (
            (self.0 & low).count_ones() as usize,
            (self.0 >> n).count_ones() as usize,
        )
    }

    pub fn contains(self, pos: usize) -> bool {
        self.0 >> pos & 1 == 1
    }

    /// Sign of `self ∧ other` relative to the canonical order of the union, or
    /// `None` when the factors overlap.
    pub fn wedge_sign(self, other: Mono) -> Option<i64> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let y = rest.trailing_zeros();
            inversions += (self.0 >> y).count_ones();
            rest &= rest - 1;
        }
        Some(if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// Factor positions in canonical order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&p| self.contains(p))
    }
}

fn check_dimension(n: usize) {
    assert!(
        (1..=BIT_LIMIT).contains(&n),
        "complex dimension {n} outside 1..={BIT_LIMIT}"
    );
}

/// Validates a user-supplied complex dimension against [`MAX_DIMENSION`].
pub fn validate_dimension(n: usize) -> Result<()> {
    if (1..=MAX_DIMENSION).contains(&n) {
        Ok(())
    } else {
        Err(Error::DimensionOutOfRange(n, MAX_DIMENSION))
    }
}

/// All monomials of total degree `degree`, in ascending mask order.
pub fn monomials_of_degree(n: usize, degree: usize) -> Vec<Mono> {
    check_dimension(n);
    (0u32..1 << (2 * n))
        .map(|m| Mono(m as u16))
        .filter(|m| m.degree() == degree)
        .collect()
}

/// All monomials of bidegree `(p, q)`, in ascending mask order.
pub fn monomials_of_bidegree(n: usize, p: usize, q: usize) -> Vec<Mono> {
    monomials_of_degree(n, p + q)
        .into_iter()
        .filter(|m| m.bidegree(n) == (p, q))
        .collect()
}

/// Every monomial of `A`, in ascending mask order.
pub fn all_monomials(n: usize) -> Vec<Mono> {
    check_dimension(n);
    (0u32..1 << (2 * n)).map(|m| Mono(m as u16)).collect()
}

/// Binomial coefficient, used for dimension counts.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// An element of the exterior algebra with coefficients in `R`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// forms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form<R: Ring = Scalar> {
    n: usize,
    terms: BTreeMap<Mono, R>,
}

impl<R: Ring> Form<R> {
    pub fn zero(n: usize) -> Self {
        check_dimension(n);
        Form {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Form::monomial(n, Mono::ONE, R::one())
    }

    pub fn constant(n: usize, c: R) -> Self {
        Form::monomial(n, Mono::ONE, c)
    }

    pub fn monomial(n: usize, mono: Mono, coeff: R) -> Self {
        let mut f = Form::zero(n);
        assert!(
            (mono.0 as u32) < 1 << (2 * n),
            "monomial outside the algebra"
        );
        f.accumulate(mono, coeff);
        f
    }

    /// `dz_k`, 1-indexed.
    pub fn dz(n: usize, k: usize) -> Self {
        assert!((1..=n).contains(&k));
        Form::monomial(n, Mono(1 << (k - 1)), R::one())
    }

    /// `dz̄_k`, 1-indexed.
    pub fn dzb(n: usize, k: usize) -> Self {
        assert!((1..=n).contains(&k));
        Form::monomial(n, Mono(1 << (n + k - 1)), R::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mono, R)>) -> Self {
        let mut f = Form::zero(n);
        for (m, c) in terms {
            f.accumulate(m, c);
        }
        f
    }

    /// Builds a form from coordinates against an explicit monomial list.
    pub fn from_coords(n: usize, basis: &[Mono], coords: &[R]) -> Self {
        assert_eq!(basis.len(), coords.len());
        Form::from_terms(n, basis.iter().copied().zip(coords.iter().cloned()))
    }

    /// Coordinates against an explicit monomial list; terms outside the list are ignored.
    pub fn coords(&self, basis: &[Mono]) -> Vec<R> {
        basis.iter().map(|m| self.coeff(*m)).collect()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Mono) -> R {
        self.terms.get(&mono).cloned().unwrap_or_else(R::zero)
    }

    fn accumulate(&mut self, mono: Mono, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    fn same_dim(&self, other: &Form<R>) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &Form<R>) -> Result<Form<R>> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Form<R> {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form::from_terms(self.n, self.terms.iter().map(|(m, v)| (*m, v.times(c))))
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Form<R> {
        self.scale(&R::from_scalar(s))
    }

    pub fn try_wedge(&self, other: &Form<R>) -> Result<Form<R>> {
        self.same_dim(other)?;
        let mut out = Form::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(sign) = a.wedge_sign(*b) {
                    let c = x.times(y);
                    let c = if sign < 0 { c.negated() } else { c };
                    out.accumulate(Mono(a.0 | b.0), c);
                }
            }
        }
        Ok(out)
    }

    /// Wedge product. Panics on mismatched dimensions, see [`Form::try_wedge`].
    pub fn wedge(&self, other: &Form<R>) -> Form<R> {
        self.try_wedge(other).expect("wedge of forms over different dimensions")
    }

    /// `self^k` under the wedge product; `self^0 = 1`.
    pub fn pow(&self, k: usize) -> Form<R> {
        let mut acc = Form::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }

    pub fn degree_component(&self, degree: usize) -> Form<R> {
        self.filter(|m| m.degree() == degree)
    }

    pub fn bidegree_component(&self, p: usize, q: usize) -> Form<R> {
        let n = self.n;
        self.filter(|m| m.bidegree(n) == (p, q))
    }

    fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Form<R> {
        Form {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Bidegrees with a nonzero component, ascending.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<(usize, usize)> = self.terms.keys().map(|m| m.bidegree(self.n)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree when the form is homogeneous; `None` for mixed forms.
    /// The zero form is reported as homogeneous of every degree, here `Some(0)`
    /// is avoided and `None` returned instead.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// The bidegree when the form has pure type.
    pub fn pure_type(&self) -> Option<(usize, usize)> {
        match self.bidegrees().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// True when every term has degree `degree` (vacuously for zero).
    pub fn is_of_degree(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn is_of_bidegree(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|m| m.bidegree(self.n) == (p, q))
    }

    /// Complex conjugation: `dz_k ↔ dz̄_k` and conjugate coefficients.
    pub fn conj(&self) -> Form<R> {
        let n = self.n;
        let mut out = Form::zero(n);
        for (m, c) in &self.terms {
            let (mono, sign) = conjugate_mono(n, *m);
            let c = c.conj();
            out.accumulate(mono, if sign < 0 { c.negated() } else { c });
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Form<S> {
        Form::from_terms(self.n, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

/// Image of a monomial under `dz ↔ dz̄`, with the reordering sign.
fn conjugate_mono(n: usize, m: Mono) -> (Mono, i64) {
    let mut acc = Mono::ONE;
    let mut sign = 1;
    for pos in m.positions() {
        let image = if pos < n { pos + n } else { pos - n };
        let g = Mono(1 << image);
        sign *= acc.wedge_sign(g).expect("distinct generators");
        acc = Mono(acc.0 | g.0);
    }
    (acc, sign)
}

impl Form<Scalar> {
    /// Embeds into the dual-number algebra with zero slope.
    pub fn lift(&self) -> Form<DualScalar> {
        self.map(|c| DualScalar::from(c.clone()))
    }

    /// `ε·self`.
    pub fn infinitesimal(&self) -> Form<DualScalar> {
        self.map(|c| DualScalar::infinitesimal(c.clone()))
    }
}

impl Form<DualScalar> {
    /// The `ε⁰` part.
    pub fn body(&self) -> Form<Scalar> {
        self.map(|c| c.body.clone())
    }

    /// The `ε¹` coefficient.
    pub fn slope(&self) -> Form<Scalar> {
        self.map(|c| c.slope.clone())
    }

    pub fn from_parts(body: &Form<Scalar>, slope: &Form<Scalar>) -> Form<DualScalar> {
        body.lift() + slope.infinitesimal()
    }
}

impl<'a, R: Ring> Add<&'a Form<R>> for &'a Form<R> {
    type Output = Form<R>;
    fn add(self, rhs: &'a Form<R>) -> Form<R> {
        self.try_add(rhs).expect("sum of forms over different dimensions")
    }
}

impl<R: Ring> Add for Form<R> {
    type Output = Form<R>;
    fn add(self, rhs: Form<R>) -> Form<R> {
        &self + &rhs
    }
}

impl<'a, R: Ring> Sub<&'a Form<R>> for &'a Form<R> {
    type Output = Form<R>;
    fn sub(self, rhs: &'a Form<R>) -> Form<R> {
        self + &(-rhs)
    }
}

impl<R: Ring> Sub for Form<R> {
    type Output = Form<R>;
    fn sub(self, rhs: Form<R>) -> Form<R> {
        &self - &rhs
    }
}

impl<R: Ring> Neg for &Form<R> {
    type Output = Form<R>;
    fn neg(self) -> Form<R> {
        Form {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect(),
        }
    }
}

impl<R: Ring> Neg for Form<R> {
    type Output = Form<R>;
    fn neg(self) -> Form<R> {
        -&self
    }
}

impl<R: Ring> std::iter::Sum for Form<R> {
    /// Panics on an empty iterator; the dimension cannot be inferred.
    fn sum<I: Iterator<Item = Form<R>>>(mut iter: I) -> Form<R> {
        let first = iter.next().expect("sum of an empty family of forms");
        iter.fold(first, |acc, f| acc + f)
    }
}

/// Writes a monomial in the expression grammar, `dz1^dzb2`.
pub fn mono_name(n: usize, m: Mono) -> String {
    if m == Mono::ONE {
        return "1".into();
    }
    m.positions()
        .map(|p| {
            if p < n {
                format!("dz{}", p + 1)
            } else {
                format!("dzb{}", p - n + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("^")
}

impl<R: Ring> fmt::Display for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mut coeff = c.to_string();
            if coeff.contains(' ') && !coeff.starts_with('(') {
                coeff = format!("({coeff})");
            }
            match (*m == Mono::ONE, c == &R::one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono_name(self.n, *m))?,
                (false, false) => write!(f, "{coeff}*{}", mono_name(self.n, *m))?,
            }
        }
        Ok(())
    }
}

/// `i·Σ dz_k ∧ dz̄_k`, the standard Kähler form.
pub fn standard_kahler_form(n: usize) -> Form<Scalar> {
    (1..=n)
        .map(|k| Form::<Scalar>::dz(n, k).wedge(&Form::dzb(n, k)))
        .sum::<Form<Scalar>>()
        .scale(&Scalar::i())
}

/// `i·Σ h_k dz_k ∧ dz̄_k` for real diagonal weights.
pub fn diagonal_kahler_form(weights: &[Scalar]) -> Form<Scalar> {
    let n = weights.len();
    (1..=n)
        .map(|k| {
            Form::<Scalar>::dz(n, k)
                .wedge(&Form::dzb(n, k))
                .scale(&weights[k - 1].times(&Scalar::i()))
        })
        .sum()
}

/// A real basis of the real `(1,1)`-forms `i·Σ h_ab dz_a ∧ dz̄_b`, `h` hermitian.
/// Its complex span is all of `A^{1,1}`.
pub fn real_one_one_basis(n: usize) -> Vec<Form<Scalar>> {
    let dd = |a: usize, b: usize| Form::<Scalar>::dz(n, a).wedge(&Form::dzb(n, b));
    let mut out = Vec::new();
    for a in 1..=n {
        out.push(dd(a, a).scale(&Scalar::i()));
    }
    for a in 1..=n {
        for b in a + 1..=n {
            out.push((dd(a, b) + dd(b, a)).scale(&Scalar::i()));
            out.push(dd(b, a) - dd(a, b));
        }
    }
    out
}

/// Every degree-2 monomial, a spanning set of `A²`.
pub fn degree_two_basis(n: usize) -> Vec<Form<Scalar>> {
    monomials_of_degree(n, 2)
        .into_iter()
        .map(|m| Form::monomial(n, m, Scalar::from(1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dz(n: usize, k: usize) -> Form {
        Form::dz(n, k)
    }

    fn dzb(n: usize, k: usize) -> Form {
        Form::dzb(n, k)
    }

    #[test]
    fn wedge_examples() {
        assert!(dz(2, 1).wedge(&dz(2, 1)).is_zero());
        assert_eq!(dz(2, 1).wedge(&dz(2, 2)), -dz(2, 2).wedge(&dz(2, 1)));
        let a = dz(2, 1).wedge(&dzb(2, 1));
        let b = dz(2, 2).wedge(&dzb(2, 2));
        assert_eq!(a.wedge(&b), b.wedge(&a));
    }

    #[test]
    fn wedge_dimension_mismatch() {
        assert_eq!(
            dz(2, 1).try_wedge(&dz(3, 1)),
            Err(Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn bidegree_components() {
        let x = dz(2, 1) + dzb(2, 1);
        assert_eq!(x.bidegree_component(1, 0), dz(2, 1));
        let w = standard_kahler_form(2);
        assert_eq!(w.bidegree_component(1, 1), w);
        assert!(dz(2, 1).wedge(&dz(2, 2)).bidegree_component(0, 2).is_zero());
    }

    #[test]
    fn graded_commutativity_on_basis() {
        for n in 1..=3 {
            let basis = all_monomials(n);
            for &a in &basis {
                for &b in &basis {
                    let x = Form::monomial(n, a, Scalar::from(1));
                    let y = Form::monomial(n, b, Scalar::from(1));
                    let sign = Scalar::sign((a.degree() * b.degree()) as i64);
                    assert_eq!(x.wedge(&y), y.wedge(&x).scale(&sign));
                }
            }
        }
    }

    #[test]
    fn dimension_counts() {
        for n in 1..=4 {
            for p in 0..=n {
                for q in 0..=n {
                    assert_eq!(
                        monomials_of_bidegree(n, p, q).len(),
                        binomial(n, p) * binomial(n, q)
                    );
                }
            }
            for d in 0..=2 * n {
                assert_eq!(monomials_of_degree(n, d).len(), binomial(2 * n, d));
            }
        }
    }

    #[test]
    fn kahler_form_is_real_and_conjugation_is_an_involution() {
        let w = standard_kahler_form(3);
        assert!(w.is_real());
        for x in real_one_one_basis(3) {
            assert!(x.is_real(), "{x}");
        }
        let x = dz(3, 1).wedge(&dzb(3, 2)).wedge(&dz(3, 3)).scale(&Scalar::gaussian(2, 5));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn top_power_of_kahler_form() {
        // ω² = 2·i²·dz1 dzb1 dz2 dzb2 in canonical order dz1 dz2 dzb1 dzb2.
        let w = standard_kahler_form(2);
        let top = w.pow(2);
        assert_eq!(top.len(), 1);
        assert!(w.pow(3).is_zero());
        let vol = dz(2, 1).wedge(&dzb(2, 1)).wedge(&dz(2, 2)).wedge(&dzb(2, 2));
        assert_eq!(top, vol.scale(&Scalar::from(-2)));
    }

    #[test]
    fn display_round_trips_through_names() {
        let x = dz(2, 1).wedge(&dzb(2, 2)).scale(&Scalar::rational(-3, 2)) + Form::one(2);
        assert_eq!(x.to_string(), "1 + -3/2*dz1^dzb2");
    }
}
