//! Degree-homogeneous endomorphisms of the exterior algebra, stored as the
//! images of the canonical monomials (a sparse column matrix).

use crate::error::{Error, Result};
use crate::form::{all_monomials, Form, Mono};
use crate::scalar::{DualScalar, Ring, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinOp<R: Ring = Scalar> {
    n: usize,
    offset: i32,
    /// Image of `Mono(k)` at index `k`.
    columns: Vec<Form<R>>,
}

impl<R: Ring> LinOp<R> {
    /// Tabulates `f` on every monomial and checks it shifts degrees by `offset`.
    pub fn from_fn(n: usize, offset: i32, f: impl Fn(&Form<R>) -> Result<Form<R>>) -> Result<Self> {
        let columns = all_monomials(n)
            .into_iter()
            .map(|m| {
                let image = f(&Form::monomial(n, m, R::one()))?;
                let target = m.degree() as i32 + offset;
                if !image.is_zero() && (target < 0 || !image.is_of_degree(target as usize)) {
                    return Err(Error::Invariant(format!(
                        "operator is not homogeneous of degree {offset}"
                    )));
                }
                Ok(image)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinOp { n, offset, columns })
    }

    pub fn identity(n: usize) -> Self {
        LinOp {
            n,
            offset: 0,
            columns: all_monomials(n)
                .into_iter()
                .map(|m| Form::monomial(n, m, R::one()))
                .collect(),
        }
    }

    /// Multiplication by a homogeneous form from the left.
    pub fn left_multiplication(x: &Form<R>, degree: usize) -> Result<Self> {
        LinOp::from_fn(x.dim(), degree as i32, |m| Ok(x.wedge(m)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    pub fn column(&self, m: Mono) -> &Form<R> {
        &self.columns[m.0 as usize]
    }

    pub fn apply(&self, x: &Form<R>) -> Form<R> {
        assert_eq!(x.dim(), self.n);
        let mut acc = Form::zero(self.n);
        for (m, c) in x.terms() {
            acc = acc + self.columns[m.0 as usize].scale(c);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinOp<R>) -> LinOp<R> {
        LinOp {
            n: self.n,
            offset: self.offset + other.offset,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn try_sub(&self, other: &LinOp<R>) -> Result<LinOp<R>> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.offset != other.offset {
            return Err(Error::Invariant(format!(
                "difference of operators of degrees {} and {}",
                self.offset, other.offset
            )));
        }
        Ok(LinOp {
            n: self.n,
            offset: self.offset,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &R) -> LinOp<R> {
        LinOp {
            n: self.n,
            offset: self.offset,
            columns: self.columns.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn commutator(&self, other: &LinOp<R>) -> LinOp<R> {
        self.compose(other)
            .try_sub(&other.compose(self))
            .expect("commutator of operators on one algebra")
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Form::is_zero)
    }

    /// Number of monomials with a nonzero image.
    pub fn support(&self) -> usize {
        self.columns.iter().filter(|f| !f.is_zero()).count()
    }
}

impl LinOp<Scalar> {
    pub fn lift(&self) -> LinOp<DualScalar> {
        LinOp {
            n: self.n,
            offset: self.offset,
            columns: self.columns.iter().map(Form::lift).collect(),
        }
    }
}

impl LinOp<DualScalar> {
    pub fn body(&self) -> LinOp<Scalar> {
        LinOp {
            n: self.n,
            offset: self.offset,
            columns: self.columns.iter().map(Form::body).collect(),
        }
    }

    pub fn slope(&self) -> LinOp<Scalar> {
        LinOp {
            n: self.n,
            offset: self.offset,
            columns: self.columns.iter().map(Form::slope).collect(),
        }
    }
}

/// The counting operator `B|_{A^k} = (N − k)·id`.
pub fn weight_operator<R: Ring>(n: usize) -> LinOp<R> {
    LinOp {
        n,
        offset: 0,
        columns: all_monomials(n)
            .into_iter()
            .map(|m| Form::monomial(n, m, R::from_int(n as i64 - m.degree() as i64)))
            .collect(),
    }
}
