//! Seeded random inputs. Every generator draws from a [`ChaCha8Rng`] seeded
//! with `seed_from_u64`, so a seed fixes the whole stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::form::{monomials_of_degree, real_one_one_basis, Form};
use crate::scalar::Scalar;
use crate::sl2::Sl2Model;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Gaussian integer with both parts in `−2..=2`.
pub fn scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::gaussian(rng.random_range(-2..=2), rng.random_range(-2..=2))
}

/// A form of the given degree where each monomial appears with probability
/// one half.
pub fn form_of_degree(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> Form {
    let terms = monomials_of_degree(n, degree)
        .into_iter()
        .filter_map(|m| rng.random_bool(0.5).then(|| (m, scalar(rng))))
        .collect::<Vec<_>>();
    Form::from_terms(n, terms)
}

/// A real `(1,1)` form with small integer coordinates in the hermitian basis.
pub fn real_one_one(rng: &mut ChaCha8Rng, n: usize) -> Form {
    real_one_one_basis(n)
        .into_iter()
        .map(|b| b.scale(&Scalar::from(rng.random_range(-2..=2))))
        .sum()
}

/// A nonzero primitive form of degree `m` and pure type, or `None` if `Pᵐ = 0`.
pub fn primitive(rng: &mut ChaCha8Rng, model: &Sl2Model, m: usize) -> Option<Form> {
    let basis = model.primitive_basis(m);
    if basis.is_empty() {
        return None;
    }
    let types: Vec<(usize, usize)> = {
        let mut t: Vec<_> = basis.iter().filter_map(Form::pure_type).collect();
        t.dedup();
        t
    };
    let chosen = types[rng.random_range(0..types.len())];
    let pieces: Vec<&Form> = basis.iter().filter(|b| b.pure_type() == Some(chosen)).collect();
    loop {
        let x: Form = pieces
            .iter()
            .map(|b| b.scale(&scalar(rng)))
            .fold(Form::zero(model.dim()), |acc, f| acc + f);
        if !x.is_zero() {
            return Some(x);
        }
    }
}

/// A random degree-two form, not necessarily of type `(1,1)`.
pub fn two_form(rng: &mut ChaCha8Rng, n: usize) -> Form {
    loop {
        let v = form_of_degree(rng, n, 2);
        if !v.is_zero() {
            return v;
        }
    }
}
