//! Chevalley–Eilenberg chains with trivial coefficients and the CY decision
//! for universal enveloping algebras.
//!
//! `C_n = wedge^n g` with basis the increasing index tuples in lexicographic
//! order, and
//!
//! ```text
//! d(x_1 ^ ... ^ x_n) = sum_{i<j} (-1)^(i+j) [x_i, x_j] ^ x_1 ^ .. ^ x_i^ .. ^ x_j^ .. ^ x_n
//! ```
//!
//! with `d_1 = 0`. The cochain complex is the transpose.

use serde::Serialize;

use crate::lie::{LieAlgebra, TraceWitness};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Increasing `n`-subsets of `0..d` in lexicographic order.
pub fn wedge_basis(d: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < n - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, n, &mut Vec::new(), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts `word` in place and returns the sign of the sorting permutation,
/// or `None` when an index repeats.
fn sort_sign(word: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && word[j - 1] == word[j] {
            return None;
        }
    }
    Some(negative)
}

#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// `dims[n] = binomial(d, n)` for `n = 0..=d`.
    pub dims: Vec<usize>,
    /// `diffs[n - 1]` is `d_n : C_n -> C_{n-1}` for `n = 1..=d`.
    pub diffs: Vec<Matrix>,
}

impl ChainComplex {
    pub fn length(&self) -> usize {
        self.dims.len() - 1
    }

    /// `d_n`, or `None` outside `1..=d`.
    pub fn differential(&self, n: usize) -> Option<&Matrix> {
        if n == 0 {
            return None;
        }
        self.diffs.get(n - 1)
    }

    /// Every composite `d_{n-1} d_n` vanishes.
    pub fn squares_to_zero(&self) -> bool {
        self.diffs
            .windows(2)
            .all(|w| w[0].checked_mul(&w[1]).map(|m| m.is_zero()).unwrap_or(false))
    }

    /// Homology dimensions `H_0 .. H_d`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(Matrix::rank).collect();
        let rank = |n: usize| if n == 0 || n > ranks.len() { 0 } else { ranks[n - 1] };
        (0..self.dims.len())
            .map(|n| self.dims[n] - rank(n) - rank(n + 1))
            .collect()
    }

    /// Cohomology dimensions of the dual complex, from the transposed maps.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(|m| m.transpose().rank()).collect();
        let rank = |n: usize| if n == 0 || n > ranks.len() { 0 } else { ranks[n - 1] };
        // d^n : C^n -> C^{n+1} is the transpose of d_{n+1}
        (0..self.dims.len())
            .map(|n| self.dims[n] - rank(n + 1) - rank(n))
            .collect()
    }
}

pub fn ce_chain_complex(l: &LieAlgebra) -> ChainComplex {
    let d = l.dim();
    let bases: Vec<Vec<Vec<usize>>> = (0..=d).map(|n| wedge_basis(d, n)).collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut diffs = Vec::with_capacity(d);
    for n in 1..=d {
        let source = &bases[n];
        let target = &bases[n - 1];
        let mut m = Matrix::zeros(target.len(), source.len());
        if n >= 2 {
            for (col, tuple) in source.iter().enumerate() {
                for p in 0..n {
                    for q in p + 1..n {
                        // positions are 1-based in the sign (-1)^(i+j)
                        let sign_negative = (p + q) % 2 == 1;
                        let rest: Vec<usize> = tuple
                            .iter()
                            .enumerate()
                            .filter(|&(t, _)| t != p && t != q)
                            .map(|(_, &v)| v)
                            .collect();
                        for (k, c) in l.bracket_basis(tuple[p], tuple[q]).iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut word = Vec::with_capacity(n - 1);
                            word.push(k);
                            word.extend_from_slice(&rest);
                            let Some(perm_negative) = sort_sign(&mut word) else {
                                continue;
                            };
                            let row = target.binary_search(&word).expect("sorted wedge tuple");
                            let term = if sign_negative ^ perm_negative { -c } else { c.clone() };
                            m[(row, col)] += &term;
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    ChainComplex { dims, diffs }
}

pub fn betti_numbers(l: &LieAlgebra) -> Vec<usize> {
    ce_chain_complex(l).homology_dims()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyRoutes {
    pub trace_condition: bool,
    pub top_differential_zero: bool,
    pub top_homology_nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A basis element with nonzero `tr ad`.
    Trace(TraceWitness),
    /// A group element with determinant different from 1.
    Determinant { element: usize, determinant: Scalar },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyReport {
    pub verdict: bool,
    /// The CY dimension when `verdict` holds.
    pub dimension: Option<usize>,
    pub routes: CyRoutes,
    pub witness: Option<Witness>,
    /// Set for Sridharan queries: the 2-cocycle was checked and plays no part in the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle_validated: Option<bool>,
    /// Set for skew-group queries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_in_sl: Option<bool>,
}

/// The three CY tests evaluated separately.
pub fn cy_routes(l: &LieAlgebra) -> CyRoutes {
    let d = l.dim();
    let complex = ce_chain_complex(l);
    let top = complex.differential(d).expect("positive dimension");
    CyRoutes {
        trace_condition: l.is_unimodular().holds,
        top_differential_zero: top.is_zero(),
        top_homology_nonzero: complex.cohomology_dims()[d] != 0,
    }
}

impl CyRoutes {
    pub fn agree(&self) -> bool {
        self.trace_condition == self.top_differential_zero && self.trace_condition == self.top_homology_nonzero
    }
}

/// Decides whether `U(g)` is CY by three independent routes and insists they agree.
pub fn is_cy_universal(l: &LieAlgebra) -> CyReport {
    let d = l.dim();
    let uni = l.is_unimodular();
    let routes = cy_routes(l);
    assert!(routes.agree(), "CY criteria disagree on {l:?}: {routes:?}");
    CyReport {
        verdict: uni.holds,
        dimension: uni.holds.then_some(d),
        routes,
        witness: uni.witness.map(Witness::Trace),
        cocycle_validated: None,
        group_in_sl: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{cy3_from_sextuple, default_names, Sextuple};

    fn heisenberg() -> LieAlgebra {
        cy3_from_sextuple(&Sextuple::from_i64([0, 0, 0, 0, 0, 1]))
    }

    fn sl2() -> LieAlgebra {
        cy3_from_sextuple(&Sextuple::from_i64([0, 0, -2, 0, 0, 1]))
    }

    #[test]
    fn wedge_basis_order() {
        assert_eq!(wedge_basis(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(wedge_basis(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(binomial(4, 2), 6);
    }

    #[test]
    fn abelian_complex_is_zero() {
        let c = ce_chain_complex(&LieAlgebra::abelian(3));
        assert_eq!(c.dims, vec![1, 3, 3, 1]);
        assert!(c.diffs.iter().all(Matrix::is_zero));
        assert_eq!(c.homology_dims(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn heisenberg_differentials() {
        let c = ce_chain_complex(&heisenberg());
        let d2 = c.differential(2).unwrap();
        // d(x^y) = -z, other columns zero
        let mut expected = Matrix::zeros(3, 3);
        expected[(2, 0)] = Scalar::from_int(-1);
        assert_eq!(d2, &expected);
        assert!(c.differential(3).unwrap().is_zero());
        assert!(c.differential(1).unwrap().is_zero());
        assert_eq!(c.homology_dims(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn sl2_differentials() {
        let c = ce_chain_complex(&sl2());
        assert!(c.differential(3).unwrap().is_zero());
        assert_eq!(c.differential(2).unwrap().rank(), 3);
        assert!(c.squares_to_zero());
        assert_eq!(betti_numbers(&sl2()), vec![1, 0, 0, 1]);
    }

    #[test]
    fn cy_reports() {
        let r = is_cy_universal(&heisenberg());
        assert!(r.verdict);
        assert_eq!(r.dimension, Some(3));
        let two = LieAlgebra::from_brackets(default_names(2), &[(0, 1, vec![Scalar::zero(), Scalar::one()])]).unwrap();
        let r = is_cy_universal(&two);
        assert!(!r.verdict);
        assert_eq!(r.dimension, None);
        assert!(!r.routes.top_differential_zero && !r.routes.top_homology_nonzero);
        match r.witness {
            Some(Witness::Trace(w)) => assert_eq!((w.index, w.trace), (0, Scalar::one())),
            other => panic!("unexpected witness {other:?}"),
        }
    }
}
