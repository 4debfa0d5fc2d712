//! Cyclic potentials and their cyclic derivatives.
//!
//! A potential is a polynomial in the free algebra modulo rotation of
//! words. Each class is stored under its lexicographically least rotation.
//! The derivative with respect to `x` sums, over every occurrence of `x`,
//! the word obtained by rotating that occurrence to the front and deleting
//! it: `d(xyz)/dy = zx`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::ncpoly::{NCPolynomial, Word};
use crate::scalar::Scalar;
use crate::sridharan::SridharanAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PotentialError {
    #[error("potential uses {potential} generators but the algebra has {algebra}")]
    GeneratorMismatch { potential: usize, algebra: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicPotential {
    generators: usize,
    terms: BTreeMap<Word, Scalar>,
}

/// Least rotation of `letters` (empty word stays empty).
pub fn least_rotation(letters: &[usize]) -> Vec<usize> {
    let n = letters.len();
    (0..n.max(1))
        .map(|r| {
            let mut v = letters[r.min(n)..].to_vec();
            v.extend_from_slice(&letters[..r.min(n)]);
            v
        })
        .min()
        .unwrap_or_default()
}

/// Merges words under rotation; `generators` is the size of the alphabet.
pub fn cyclic_reduce(p: &NCPolynomial, generators: usize) -> CyclicPotential {
    let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (w, c) in p.terms() {
        let key = Word(least_rotation(w.letters()));
        let e = terms.entry(key).or_insert_with(Scalar::zero);
        *e += c;
    }
    terms.retain(|_, c| !c.is_zero());
    CyclicPotential {
        generators: generators.max(p.generator_bound()),
        terms,
    }
}

impl CyclicPotential {
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Representative in the free algebra (one word per class).
    pub fn to_polynomial(&self) -> NCPolynomial {
        NCPolynomial::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    pub fn parse(text: &str, names: &[String]) -> Result<Self, crate::ncpoly::PolyParseError> {
        Ok(cyclic_reduce(&NCPolynomial::parse(text, names)?, names.len()))
    }
}

pub fn cyclic_derivative(phi: &CyclicPotential, generator: usize) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for (w, c) in &phi.terms {
        let letters = w.letters();
        for (pos, &g) in letters.iter().enumerate() {
            if g != generator {
                continue;
            }
            let mut rest = letters[pos + 1..].to_vec();
            rest.extend_from_slice(&letters[..pos]);
            out.add_term(Word(rest), c);
        }
    }
    out
}

/// Coordinates of `polys` as rows over the union of their words.
fn span_rank(polys: &[NCPolynomial], words: &[Word]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = polys
        .iter()
        .map(|p| words.iter().map(|w| p.coefficient(w)).collect())
        .collect();
    Matrix::from_rows(rows).expect("rectangular").rank()
}

/// Whether the cyclic derivatives of `phi` span the same subspace of the free
/// algebra as the defining relations of `a`.
pub fn verify_potential(phi: &CyclicPotential, a: &SridharanAlgebra) -> Result<bool, PotentialError> {
    if phi.generators() != a.dim() {
        return Err(PotentialError::GeneratorMismatch {
            potential: phi.generators(),
            algebra: a.dim(),
        });
    }
    let derivatives: Vec<NCPolynomial> = (0..a.dim()).map(|i| cyclic_derivative(phi, i)).collect();
    let relations = a.relations();
    let mut words: Vec<Word> = derivatives
        .iter()
        .chain(&relations)
        .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
        .collect();
    words.sort();
    words.dedup();
    let rd = span_rank(&derivatives, &words);
    let rr = span_rank(&relations, &words);
    let both: Vec<NCPolynomial> = derivatives.into_iter().chain(relations).collect();
    let rb = span_rank(&both, &words);
    Ok(rd == rr && rr == rb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::default_names;

    fn names() -> Vec<String> {
        default_names(3)
    }

    fn pot(s: &str) -> CyclicPotential {
        CyclicPotential::parse(s, &names()).unwrap()
    }

    fn poly(s: &str) -> NCPolynomial {
        NCPolynomial::parse(s, &names()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let p = pot("x*y*z + y*z*x");
        assert_eq!(p.terms().count(), 1);
        assert_eq!(p.terms().next().unwrap(), (&Word(vec![0, 1, 2]), &Scalar::from_int(2)));
        assert_eq!(pot("x*y*z - y*x*z").terms().count(), 2);
        assert!(pot("x - x").is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(cyclic_derivative(&pot("x*y*z"), 1), poly("z*x"));
        assert_eq!(cyclic_derivative(&pot("x*y*z - y*x*z"), 2), poly("x*y - y*x"));
        assert_eq!(cyclic_derivative(&pot("1/2*z^2"), 2), poly("z"));
        assert_eq!(
            cyclic_derivative(&pot("x*y*z - y*x*z - 1/2*z^2 - 2*x*y"), 0),
            poly("y*z - z*y - 2*y")
        );
    }

    #[test]
    fn least_rotation_examples() {
        assert_eq!(least_rotation(&[2, 0, 1]), vec![0, 1, 2]);
        assert_eq!(least_rotation(&[]), Vec::<usize>::new());
        assert_eq!(least_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
    }
}
