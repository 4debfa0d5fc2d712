//! Seeded random instances for property sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lie::{default_names, unit, LieAlgebra, Sextuple};
use crate::linalg::Matrix;
use crate::ncpoly::{NCPolynomial, Word};
use crate::scalar::Scalar;
use crate::sridharan::TwoCocycle;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const SMALL: [(i64, i64); 8] = [(-2, 1), (-1, 1), (-1, 2), (1, 3), (1, 2), (1, 1), (2, 1), (3, 1)];

/// A nonzero rational from a short list (`-2, -1, -1/2, 1/3, 1/2, 1, 2, 3`).
pub fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    let (p, q) = SMALL[rng.gen_range(0..SMALL.len())];
    Scalar::ratio(p, q)
}

/// Zero with probability `1 - density`, otherwise a small rational.
pub fn sparse_rational<R: Rng>(rng: &mut R, density: f64) -> Scalar {
    if rng.gen_bool(density) {
        small_rational(rng)
    } else {
        Scalar::zero()
    }
}

/// `(i, j, [(k, c)])` lists `[x_i, x_j] = sum c x_k`.
type BracketSpec<'a> = (usize, usize, &'a [(usize, i64)]);

fn build(dim: usize, brackets: &[BracketSpec]) -> LieAlgebra {
    let rows: Vec<_> = brackets
        .iter()
        .map(|(i, j, v)| {
            let mut vec = vec![Scalar::zero(); dim];
            for &(k, c) in v.iter() {
                vec[k] = Scalar::from_int(c);
            }
            (*i, *j, vec)
        })
        .collect();
    LieAlgebra::from_brackets(default_names(dim), &rows).expect("seed algebra satisfies Jacobi")
}

/// Hand-picked algebras of each dimension, unimodular and not.
pub fn seed_algebras(dim: usize) -> Vec<LieAlgebra> {
    let (x, y, z, w) = (0, 1, 2, 3);
    match dim {
        1 => vec![LieAlgebra::abelian(1)],
        2 => vec![LieAlgebra::abelian(2), build(2, &[(x, y, &[(y, 1)])])],
        3 => vec![
            LieAlgebra::abelian(3),
            build(3, &[(x, y, &[(z, 1)]), (x, z, &[(x, -2)]), (y, z, &[(y, 2)])]),
            build(3, &[(x, y, &[(y, 1)]), (x, z, &[(z, -1)])]),
            build(3, &[(x, y, &[(z, 1)])]),
            build(3, &[(x, y, &[(y, 1)])]),
            build(3, &[(x, y, &[(y, 1)]), (x, z, &[(y, 1), (z, 1)])]),
            build(3, &[(x, y, &[(y, 1)]), (x, z, &[(z, 2)])]),
            build(3, &[(x, y, &[(y, 1), (z, -1)]), (x, z, &[(y, 1), (z, 1)])]),
        ],
        4 => vec![
            LieAlgebra::abelian(4),
            build(4, &[(x, y, &[(z, 1)]), (x, z, &[(x, -2)]), (y, z, &[(y, 2)])]),
            build(4, &[(x, y, &[(z, 1)])]),
            build(4, &[(x, y, &[(y, 1)]), (z, w, &[(w, 1)])]),
            build(
                4,
                &[
                    (w, x, &[(x, 1)]),
                    (w, y, &[(y, 1)]),
                    (w, z, &[(z, 2)]),
                    (x, y, &[(z, 1)]),
                ],
            ),
            build(4, &[(w, x, &[(x, 1)]), (w, y, &[(y, -1)]), (x, y, &[(z, 1)])]),
            build(4, &[(x, y, &[(y, 1)]), (x, z, &[(z, -1)])]),
            build(4, &[(x, y, &[(y, 1)]), (x, w, &[(w, 1)])]),
        ],
        _ => vec![LieAlgebra::abelian(dim)],
    }
}

/// Invertible matrix with entries in `-2..=2`.
pub fn random_invertible<R: Rng>(rng: &mut R, dim: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..dim)
            .map(|_| (0..dim).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = Matrix::from_rows(rows).expect("square");
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

/// Sparse random structure constants, kept only if Jacobi holds.
pub fn random_sparse_lie<R: Rng>(rng: &mut R, dim: usize, tries: usize) -> Option<LieAlgebra> {
    let density = if dim <= 2 { 0.5 } else { 0.15 };
    for _ in 0..tries {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    let c = sparse_rational(rng, density);
                    if !c.is_zero() {
                        entries.push(((i, j, k), c));
                    }
                }
            }
        }
        if let Ok(l) = LieAlgebra::new(dim, default_names(dim), &entries) {
            return Some(l);
        }
    }
    None
}

/// A seed algebra seen through a random change of basis.
pub fn random_basis_change<R: Rng>(rng: &mut R, dim: usize) -> LieAlgebra {
    let seeds = seed_algebras(dim);
    let seed = seeds.choose(rng).expect("nonempty seed list");
    seed.change_basis(&random_invertible(rng, dim))
        .expect("basis change preserves Jacobi")
}

/// Jacobi-valid algebra of the given dimension, drawn half from sparse
/// constants and half from disguised seeds.
pub fn random_lie_algebra<R: Rng>(rng: &mut R, dim: usize) -> LieAlgebra {
    if rng.gen_bool(0.5) {
        if let Some(l) = random_sparse_lie(rng, dim, 40) {
            return l;
        }
    }
    random_basis_change(rng, dim)
}

pub fn random_sextuple<R: Rng>(rng: &mut R) -> Sextuple {
    let mut s = || sparse_rational(rng, 0.6);
    Sextuple::new(s(), s(), s(), s(), s(), s())
}

/// Random element of the 2-cocycle space of `l`.
pub fn random_cocycle<R: Rng>(rng: &mut R, l: &LieAlgebra) -> TwoCocycle {
    let d = l.dim();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).collect();
    if pairs.is_empty() {
        return TwoCocycle::zero(d);
    }
    // one row per triple i<j<k; column per pair (a,b), a<b
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let mut row = vec![Scalar::zero(); pairs.len()];
                for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
                    let br = l.bracket_basis(q, r);
                    for (m, c) in br.iter().enumerate() {
                        if c.is_zero() || m == p {
                            continue;
                        }
                        let (col, sign) = if p < m { ((p, m), 1) } else { ((m, p), -1) };
                        let idx = pairs.iter().position(|x| *x == col).expect("pair");
                        row[idx] += &(c * &Scalar::from_int(sign));
                    }
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..pairs.len()).map(|n| unit(pairs.len(), n)).collect()
    } else {
        Matrix::from_rows(rows).expect("rectangular").kernel()
    };
    let mut values = vec![Scalar::zero(); pairs.len()];
    for v in &basis {
        let c = sparse_rational(rng, 0.7);
        for (n, e) in v.iter().enumerate() {
            values[n] += &(e * &c);
        }
    }
    let entries: Vec<_> = pairs.iter().zip(values).map(|(&(i, j), v)| (i, j, v)).collect();
    TwoCocycle::new(d, &entries).expect("pairs are in range")
}

/// Up to `max_terms` words of degree at most `max_degree` with coefficients in `-3..=3`.
pub fn random_polynomial<R: Rng>(rng: &mut R, generators: usize, max_degree: usize, max_terms: usize) -> NCPolynomial {
    let mut p = NCPolynomial::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let deg = rng.gen_range(0..=max_degree);
        let w = Word((0..deg).map(|_| rng.gen_range(0..generators)).collect());
        p.add_term(w, &Scalar::from_int(rng.gen_range(-3..=3)));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sridharan::check_two_cocycle;

    #[test]
    fn seeds_build() {
        for d in 1..=4 {
            assert!(!seed_algebras(d).is_empty());
        }
    }

    #[test]
    fn random_cocycles_are_cocycles() {
        let mut r = rng(7);
        for _ in 0..40 {
            let l = random_lie_algebra(&mut r, 3);
            let f = random_cocycle(&mut r, &l);
            assert!(check_two_cocycle(&l, &f).unwrap().holds);
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = random_lie_algebra(&mut rng(3), 4);
        let b = random_lie_algebra(&mut rng(3), 4);
        assert_eq!(a, b);
    }
}
