//! Finite matrix groups acting on Lie algebras by automorphisms, and the
//! homological integral of the skew-group algebra `U(g) # kG`.
//!
//! A group acts on the one-dimensional top exterior power of `g*` through
//! `chi(g) = det(g)^-1`. The left integral of `U(g) # kG` is spanned by
//! `alpha # t'` where `t'` in `kG` solves `g t' = chi(g)^-1 t'` for all `g`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::homology::{is_cy_universal, CyReport, Witness};
use crate::lie::LieAlgebra;
use crate::linalg::{fixed_space, Matrix, Vector};
use crate::scalar::Scalar;

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("group order exceeds the cap of {0} elements")]
    OrderExceedsCap(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no generators given")]
    Empty,
    #[error("generator {generator} is not a Lie automorphism: fails on ({}, {})", pair.0, pair.1)]
    NotLieAction { generator: usize, pair: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixGroup {
    elements: Vec<Matrix>,
    generator_indices: Vec<usize>,
}

impl MatrixGroup {
    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn generators(&self) -> impl Iterator<Item = &Matrix> {
        self.generator_indices.iter().map(|&i| &self.elements[i])
    }

    pub fn degree(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Multiplication table `table[a][b] = index of elements[a] * elements[b]`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        let lookup: HashMap<&Matrix, usize> = self.elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| *lookup.get(&(a * b)).expect("group is closed"))
                    .collect()
            })
            .collect()
    }

    /// Closure and inverses, checked exhaustively.
    pub fn is_closed(&self) -> bool {
        let lookup: HashMap<&Matrix, usize> = self.elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let id = Matrix::identity(self.degree());
        self.elements.iter().all(|a| {
            let mut has_inverse = false;
            for b in &self.elements {
                let p = a * b;
                if !lookup.contains_key(&p) {
                    return false;
                }
                has_inverse |= p == id;
            }
            has_inverse
        })
    }
}

/// Enumerates the group generated by `generators` breadth-first. The
/// identity comes first, followed by the generators in input order.
pub fn group_closure(generators: &[Matrix], cap: usize) -> Result<MatrixGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::Empty)?;
    let n = first.rows();
    for (i, g) in generators.iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(GroupError::DimensionMismatch(format!(
                "generator {i} is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
        if g.determinant().expect("square").is_zero() {
            return Err(GroupError::NotInvertible(i));
        }
    }
    let mut elements = vec![Matrix::identity(n)];
    let mut lookup: HashMap<Matrix, usize> = HashMap::new();
    lookup.insert(elements[0].clone(), 0);
    let mut generator_indices = Vec::new();
    for g in generators {
        let idx = match lookup.get(g) {
            Some(&i) => i,
            None => {
                elements.push(g.clone());
                lookup.insert(g.clone(), elements.len() - 1);
                elements.len() - 1
            }
        };
        generator_indices.push(idx);
    }
    if elements.len() > cap {
        return Err(GroupError::OrderExceedsCap(cap));
    }
    let mut queue: VecDeque<usize> = (1..elements.len()).collect();
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let p = &elements[e] * g;
            if lookup.contains_key(&p) {
                continue;
            }
            if elements.len() >= cap {
                return Err(GroupError::OrderExceedsCap(cap));
            }
            elements.push(p.clone());
            lookup.insert(p, elements.len() - 1);
            queue.push_back(elements.len() - 1);
        }
    }
    Ok(MatrixGroup {
        elements,
        generator_indices,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionCheck {
    pub holds: bool,
    /// `(generator index, basis pair)` of the first failure.
    pub witness: Option<(usize, (usize, usize))>,
}

/// Checks `M [u, v] = [M u, M v]` for every generator on every basis pair.
pub fn is_lie_action(l: &LieAlgebra, g: &MatrixGroup) -> Result<ActionCheck, GroupError> {
    let d = l.dim();
    if g.degree() != d {
        return Err(GroupError::DimensionMismatch(format!(
            "{}x{} matrices acting on a {d}-dimensional algebra",
            g.degree(),
            g.degree()
        )));
    }
    for (gi, m) in g.generators().enumerate() {
        for i in 0..d {
            for j in i + 1..d {
                let lhs = m.mul_vec(l.bracket_basis(i, j)).expect("shape");
                let rhs = l.bracket(&m.column(i), &m.column(j));
                if lhs != rhs {
                    return Ok(ActionCheck {
                        holds: false,
                        witness: Some((gi, (i, j))),
                    });
                }
            }
        }
    }
    Ok(ActionCheck {
        holds: true,
        witness: None,
    })
}

fn require_action(l: &LieAlgebra, g: &MatrixGroup) -> Result<(), GroupError> {
    let check = is_lie_action(l, g)?;
    match check.witness {
        Some((generator, pair)) => Err(GroupError::NotLieAction { generator, pair }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlCheck {
    pub holds: bool,
    pub witness: Option<(usize, Scalar)>,
}

pub fn in_special_linear(g: &MatrixGroup) -> SlCheck {
    for (i, m) in g.elements().iter().enumerate() {
        let det = m.determinant().expect("square");
        if !det.is_one() {
            return SlCheck {
                holds: false,
                witness: Some((i, det)),
            };
        }
    }
    SlCheck {
        holds: true,
        witness: None,
    }
}

/// `U(g) # kG` is CY of dimension `d` iff `U(g)` is and `G` lies in `SL(g)`.
pub fn skew_is_cy(l: &LieAlgebra, g: &MatrixGroup) -> Result<CyReport, GroupError> {
    require_action(l, g)?;
    let mut report = is_cy_universal(l);
    let sl = in_special_linear(g);
    report.group_in_sl = Some(sl.holds);
    if report.verdict && !sl.holds {
        report.verdict = false;
        report.dimension = None;
        let (element, determinant) = sl.witness.expect("witness accompanies failure");
        report.witness = Some(Witness::Determinant { element, determinant });
    }
    Ok(report)
}

/// Character of `G` on `wedge^d g*`, indexed like `G.elements()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralCharacter {
    pub values: Vec<Scalar>,
}

impl IntegralCharacter {
    pub fn is_multiplicative(&self, g: &MatrixGroup) -> bool {
        let table = g.multiplication_table();
        table.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(b, &ab)| self.values[ab] == &self.values[a] * &self.values[b])
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Scalar::is_one)
    }
}

pub fn integral_character(l: &LieAlgebra, g: &MatrixGroup) -> Result<IntegralCharacter, GroupError> {
    require_action(l, g)?;
    let values = g
        .elements()
        .iter()
        .map(|m| {
            m.determinant()
                .expect("square")
                .inv()
                .expect("group elements are invertible")
        })
        .collect();
    let chi = IntegralCharacter { values };
    assert!(chi.is_multiplicative(g), "determinant character must be multiplicative");
    Ok(chi)
}

/// Matrix of left translation by element `a` on the basis `G.elements()`.
pub fn left_translation(table: &[Vec<usize>], a: usize) -> Matrix {
    let n = table.len();
    let mut m = Matrix::zeros(n, n);
    for h in 0..n {
        m[(table[a][h], h)] = Scalar::one();
    }
    m
}

/// The coefficient vector of `t'` over the group basis, scaled so that the
/// identity coordinate is 1.
pub fn skew_integral_invariants(l: &LieAlgebra, g: &MatrixGroup) -> Result<Vector, GroupError> {
    let chi = integral_character(l, g)?;
    let table = g.multiplication_table();
    let translations: Vec<Matrix> = (0..g.order()).map(|a| left_translation(&table, a)).collect();
    let weights: Vec<Scalar> = chi
        .values
        .iter()
        .map(|c| c.inv().expect("roots of unity are invertible"))
        .collect();
    let space = fixed_space(&translations, &weights).expect("consistent shapes");
    assert_eq!(
        space.len(),
        1,
        "a one-dimensional character occurs once in the regular representation"
    );
    let v = space.into_iter().next().expect("one vector");
    let lead = v.iter().find(|c| !c.is_zero()).expect("nonzero solution").clone();
    let inv = lead.inv().expect("nonzero");
    Ok(v.iter().map(|c| c * &inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{cy3_from_sextuple, Sextuple};

    fn heisenberg() -> LieAlgebra {
        cy3_from_sextuple(&Sextuple::from_i64([0, 0, 0, 0, 0, 1]))
    }

    fn diag(v: &[i64]) -> Matrix {
        Matrix::diag(&v.iter().map(|&c| Scalar::from_int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn closure_examples() {
        let g = group_closure(&[diag(&[-1, -1])], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 2);
        let rot = Matrix::from_i64(&[&[0, -1], &[1, 0]]);
        let g = group_closure(std::slice::from_ref(&rot), DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.elements()[1], rot);
        assert_eq!(g.elements()[2], &rot * &rot);
        assert!(g.is_closed());
        let shear = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(group_closure(&[shear], 100), Err(GroupError::OrderExceedsCap(100)));
        assert_eq!(
            group_closure(&[Matrix::from_i64(&[&[1, 0], &[0, 0]])], 100),
            Err(GroupError::NotInvertible(0))
        );
        assert_eq!(group_closure(&[], 100), Err(GroupError::Empty));
    }

    #[test]
    fn lie_action_examples() {
        let g = group_closure(&[diag(&[-1, -1, 1])], DEFAULT_CAP).unwrap();
        assert!(is_lie_action(&heisenberg(), &g).unwrap().holds);
        assert!(is_lie_action(&LieAlgebra::abelian(3), &g).unwrap().holds);
        let bad = group_closure(&[diag(&[-1, 1, 1])], DEFAULT_CAP).unwrap();
        let c = is_lie_action(&heisenberg(), &bad).unwrap();
        assert_eq!(c.witness, Some((0, (0, 1))));
        assert!(matches!(
            skew_is_cy(&heisenberg(), &bad),
            Err(GroupError::NotLieAction { .. })
        ));
        assert!(is_lie_action(&LieAlgebra::abelian(2), &g).is_err());
    }

    #[test]
    fn special_linear_examples() {
        assert!(in_special_linear(&group_closure(&[diag(&[-1, -1])], 10).unwrap()).holds);
        let s = in_special_linear(&group_closure(&[diag(&[1, -1])], 10).unwrap());
        assert_eq!(s.witness, Some((1, Scalar::from_int(-1))));
        assert!(!in_special_linear(&group_closure(&[diag(&[-1, -1, -1])], 10).unwrap()).holds);
    }

    #[test]
    fn skew_examples() {
        let rot = group_closure(&[Matrix::from_i64(&[&[0, -1], &[1, 0]])], 10).unwrap();
        let r = skew_is_cy(&LieAlgebra::abelian(2), &rot).unwrap();
        assert!(r.verdict);
        assert_eq!(r.dimension, Some(2));
        let refl = group_closure(&[diag(&[1, -1])], 10).unwrap();
        let r = skew_is_cy(&LieAlgebra::abelian(2), &refl).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.group_in_sl, Some(false));
        let g = group_closure(&[diag(&[-1, -1, 1])], 10).unwrap();
        assert!(skew_is_cy(&heisenberg(), &g).unwrap().verdict);
    }

    #[test]
    fn character_examples() {
        let w = Scalar::zeta(3);
        let g = group_closure(&[Matrix::diag(&[w.clone(), Scalar::one(), Scalar::one()])], 10).unwrap();
        let chi = integral_character(&LieAlgebra::abelian(3), &g).unwrap();
        assert_eq!(chi.values[1], w.pow(2).unwrap());
        let refl = group_closure(&[diag(&[1, -1])], 10).unwrap();
        let chi = integral_character(&LieAlgebra::abelian(2), &refl).unwrap();
        assert_eq!(chi.values, vec![Scalar::one(), Scalar::from_int(-1)]);
        let rot = group_closure(&[Matrix::from_i64(&[&[0, -1], &[1, 0]])], 10).unwrap();
        assert!(integral_character(&LieAlgebra::abelian(2), &rot).unwrap().is_trivial());
    }

    #[test]
    fn invariant_examples() {
        let trivial = group_closure(&[Matrix::identity(3)], 10).unwrap();
        assert_eq!(
            skew_integral_invariants(&heisenberg(), &trivial).unwrap(),
            vec![Scalar::one()]
        );
        let rot = group_closure(&[Matrix::from_i64(&[&[0, -1], &[1, 0]])], 10).unwrap();
        let t = skew_integral_invariants(&LieAlgebra::abelian(2), &rot).unwrap();
        assert_eq!(t, vec![Scalar::one(); 4]);
    }
}
