//! Finite-dimensional Lie algebras given by structure constants.
//!
//! `[x_i, x_j] = sum_k c_ij^k x_k`. Construction checks the Jacobi identity
//! on every basis triple, so a [`LieAlgebra`] value is always a Lie algebra.
//! The 3-dimensional helpers cover the family of brackets
//!
//! ```text
//! [x,y] = a x + b y + w z
//! [x,z] = c x + v y - b z
//! [y,z] = u x - c y + a z
//! ```
//!
//! which is exactly the set of unimodular brackets on a 3-dimensional space.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("Jacobi identity fails on ({}, {}, {}) with residual ({})", triple.0, triple.1, triple.2, join_scalars(residual))]
    JacobiViolation {
        triple: (usize, usize, usize),
        residual: Vec<Scalar>,
    },
    #[error("structure constant index ({0}, {1}, {2}) out of range")]
    IndexOutOfBounds(usize, usize, usize),
    #[error("bracket of x_{0} with itself must vanish")]
    DiagonalBracket(usize),
    #[error("bracket [x_{0}, x_{1}] given twice with conflicting values")]
    ConflictingBracket(usize, usize),
    #[error("expected {expected} basis names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("basis name {0:?} is repeated")]
    DuplicateName(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra has dimension {0}, expected 3")]
    NotDimensionThree(usize),
    #[error("not unimodular: tr ad({name}) = {trace}")]
    NotUnimodular { index: usize, name: String, trace: Scalar },
    #[error("bracket is not of unimodular sextuple form: {0}")]
    NotCYForm(String),
}

fn join_scalars(v: &[Scalar]) -> String {
    v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    /// `consts[(i * dim + j) * dim + k] = c_ij^k`, full antisymmetric table.
    consts: Vec<Scalar>,
}

/// Conventional names: `x, y, z, w` up to dimension 4, `x1..xd` beyond.
pub fn default_names(dim: usize) -> Vec<String> {
    if dim <= 4 {
        ["x", "y", "z", "w"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

impl LieAlgebra {
    /// Builds and validates an algebra from entries `((i, j, k), c_ij^k)`.
    /// Entries with `i > j` are read through antisymmetry.
    pub fn new(
        dim: usize,
        names: Vec<String>,
        constants: &[((usize, usize, usize), Scalar)],
    ) -> Result<Self, LieError> {
        let mut table = vec![Scalar::zero(); dim * dim * dim];
        let mut seen = vec![false; dim * dim * dim];
        for ((i, j, k), c) in constants {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(LieError::IndexOutOfBounds(i, j, k));
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(LieError::DiagonalBracket(i));
            }
            let (a, b, val) = if i < j { (i, j, c.clone()) } else { (j, i, -c) };
            let idx = (a * dim + b) * dim + k;
            if seen[idx] && table[idx] != val {
                return Err(LieError::ConflictingBracket(a, b));
            }
            seen[idx] = true;
            table[idx] = val.clone();
            table[(b * dim + a) * dim + k] = -&val;
        }
        Self::from_table(dim, names, table)
    }

    /// Builds from bracket vectors `[x_i, x_j] = value` for listed pairs.
    pub fn from_brackets(names: Vec<String>, brackets: &[(usize, usize, Vector)]) -> Result<Self, LieError> {
        let dim = names.len();
        let mut entries = Vec::new();
        for (i, j, v) in brackets {
            if v.len() != dim {
                return Err(LieError::DimensionMismatch(format!(
                    "bracket vector of length {} in dimension {dim}",
                    v.len()
                )));
            }
            for (k, c) in v.iter().enumerate() {
                entries.push(((*i, *j, k), c.clone()));
            }
        }
        Self::new(dim, names, &entries)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_table(dim, default_names(dim), vec![Scalar::zero(); dim * dim * dim]).expect("abelian is Lie")
    }

    fn from_table(dim: usize, names: Vec<String>, consts: Vec<Scalar>) -> Result<Self, LieError> {
        if names.len() != dim {
            return Err(LieError::NameCount {
                expected: dim,
                got: names.len(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(LieError::DuplicateName(n.clone()));
            }
        }
        let alg = Self { dim, names, consts };
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<(), LieError> {
        let d = self.dim;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let e = |n: usize| unit(d, n);
                    let t1 = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let t2 = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let t3 = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    let residual: Vector = (0..d).map(|n| &(&t1[n] + &t2[n]) + &t3[n]).collect();
                    if residual.iter().any(|c| !c.is_zero()) {
                        return Err(LieError::JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.consts[start..start + self.dim]
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let d = self.dim;
        let mut out = vec![Scalar::zero(); d];
        for (i, ui) in u.iter().enumerate().take(d) {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(d) {
                if vj.is_zero() || i == j {
                    continue;
                }
                let coef = ui * vj;
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&coef * c);
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(Scalar::is_zero)
    }

    /// Matrix of `ad(v) = [v, -]`; column `j` holds `[v, x_j]`.
    pub fn adjoint_matrix(&self, v: &[Scalar]) -> Result<Matrix, LieError> {
        if v.len() != self.dim {
            return Err(LieError::DimensionMismatch(format!(
                "vector of length {} in dimension {}",
                v.len(),
                self.dim
            )));
        }
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.bracket(v, &unit(self.dim, j))).collect();
        Ok(Matrix::from_columns(self.dim, &cols).expect("square adjoint"))
    }

    pub fn ad_trace(&self, i: usize) -> Scalar {
        (0..self.dim).map(|j| self.constant(i, j, j).clone()).sum()
    }

    /// Checks `tr ad(x_i) = 0` for every basis element.
    pub fn is_unimodular(&self) -> Unimodularity {
        for i in 0..self.dim {
            let t = self
                .adjoint_matrix(&unit(self.dim, i))
                .and_then(|m| m.trace().map_err(|e| LieError::DimensionMismatch(e.to_string())))
                .expect("adjoint matrices are square");
            if !t.is_zero() {
                return Unimodularity {
                    holds: false,
                    witness: Some(TraceWitness {
                        index: i,
                        name: self.names[i].clone(),
                        trace: t,
                    }),
                };
            }
        }
        Unimodularity {
            holds: true,
            witness: None,
        }
    }

    /// The trace form `x_i -> tr ad(x_i)`.
    pub fn trace_form(&self) -> Vector {
        (0..self.dim).map(|i| self.ad_trace(i)).collect()
    }

    /// All brackets `[x_i, x_j]`, `i < j`, as rows of a matrix.
    fn bracket_rows(&self) -> Matrix {
        let mut rows = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                rows.push(self.bracket_basis(i, j).to_vec());
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(0, self.dim);
        }
        Matrix::from_rows(rows).expect("rectangular")
    }

    /// Basis of the derived subalgebra `[g, g]`.
    pub fn derived_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.bracket_rows().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn derived_dimension(&self) -> usize {
        self.bracket_rows().rank()
    }

    /// Basis of the center, the common kernel of all `ad(x_i)`.
    pub fn center_basis(&self) -> Vec<Vector> {
        let blocks: Vec<Matrix> = (0..self.dim)
            .map(|i| self.adjoint_matrix(&unit(self.dim, i)).expect("basis vector"))
            .collect();
        // ad(x_i) v = -[v, x_i]; v central iff every ad(x_i) kills v
        Matrix::vstack(&blocks).expect("same shapes").kernel()
    }

    /// Whether `[g, g]` lies in the center.
    pub fn derived_is_central(&self) -> bool {
        let center = self.center_basis();
        let derived = self.derived_basis();
        if derived.is_empty() {
            return true;
        }
        let mut all = center.clone();
        let base_rank = rank_of(&center);
        all.extend(derived);
        rank_of(&all) == base_rank
    }

    /// Structure constants after the change of basis `x'_i = sum_k P[k][i] x_k`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self, LieError> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return Err(LieError::DimensionMismatch(
                "change-of-basis matrix has wrong shape".into(),
            ));
        }
        let pinv = p
            .inverse()
            .map_err(|_| LieError::DimensionMismatch("change-of-basis matrix is singular".into()))?;
        let mut table = vec![Scalar::zero(); d * d * d];
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket(&p.column(i), &p.column(j));
                let newc = pinv.mul_vec(&b).expect("shape");
                for k in 0..d {
                    table[(i * d + j) * d + k] = newc[k].clone();
                    table[(j * d + i) * d + k] = -&newc[k];
                }
            }
        }
        Self::from_table(d, self.names.clone(), table)
    }

    /// Same algebra with basis names replaced.
    pub fn with_names(&self, names: Vec<String>) -> Result<Self, LieError> {
        Self::from_table(self.dim, names, self.consts.clone())
    }

    pub fn sextuple(&self) -> Result<Sextuple, LieError> {
        sextuple_extract(self)
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra(dim={}", self.dim)?;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if v.iter().any(|c| !c.is_zero()) {
                    write!(
                        f,
                        ", [{},{}]={}",
                        self.names[i],
                        self.names[j],
                        format_vector(v, &self.names)
                    )?;
                }
            }
        }
        write!(f, ")")
    }
}

pub(crate) fn format_vector(v: &[Scalar], names: &[String]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, n)| if c.is_one() { n.clone() } else { format!("({c})*{n}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn rank_of(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).expect("rectangular").rank()
}

pub fn unit(dim: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceWitness {
    pub index: usize,
    pub name: String,
    pub trace: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unimodularity {
    pub holds: bool,
    pub witness: Option<TraceWitness>,
}

/// Coordinates `(a, b, c, u, v, w)` of a unimodular 3-dimensional bracket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sextuple {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub u: Scalar,
    pub v: Scalar,
    pub w: Scalar,
}

impl Sextuple {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, u: Scalar, v: Scalar, w: Scalar) -> Self {
        Self { a, b, c, u, v, w }
    }

    pub fn from_i64(vals: [i64; 6]) -> Self {
        let [a, b, c, u, v, w] = vals.map(Scalar::from_int);
        Self { a, b, c, u, v, w }
    }
}

/// Builds the algebra of a sextuple on basis `x, y, z`. Never fails.
pub fn cy3_from_sextuple(s: &Sextuple) -> LieAlgebra {
    let Sextuple { a, b, c, u, v, w } = s;
    let brackets = vec![
        (0, 1, vec![a.clone(), b.clone(), w.clone()]),
        (0, 2, vec![c.clone(), v.clone(), -b]),
        (1, 2, vec![u.clone(), -c, a.clone()]),
    ];
    LieAlgebra::from_brackets(default_names(3), &brackets).expect("every sextuple bracket satisfies Jacobi")
}

/// Reads the sextuple back; fails unless `k11 = k33`, `k12 = -k23`, `k21 = -k32`
/// for the rows `[x,y], [x,z], [y,z]`.
pub fn sextuple_extract(l: &LieAlgebra) -> Result<Sextuple, LieError> {
    if l.dim() != 3 {
        return Err(LieError::NotDimensionThree(l.dim()));
    }
    let k = |row: usize, col: usize| -> Scalar {
        let (i, j) = [(0, 1), (0, 2), (1, 2)][row];
        l.constant(i, j, col).clone()
    };
    let mut failures = Vec::new();
    if k(0, 0) != k(2, 2) {
        failures.push(format!("k11 = {} but k33 = {}", k(0, 0), k(2, 2)));
    }
    if k(0, 1) != -k(1, 2) {
        failures.push(format!("k12 = {} but -k23 = {}", k(0, 1), -k(1, 2)));
    }
    if k(1, 0) != -k(2, 1) {
        failures.push(format!("k21 = {} but -k32 = {}", k(1, 0), -k(2, 1)));
    }
    if !failures.is_empty() {
        return Err(LieError::NotCYForm(failures.join("; ")));
    }
    Ok(Sextuple {
        a: k(0, 0),
        b: k(0, 1),
        c: k(1, 0),
        u: k(2, 0),
        v: k(1, 1),
        w: k(0, 2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Cy3Class {
    Sl2,
    SolvableIi,
    Heisenberg,
    Abelian,
}

impl Cy3Class {
    pub fn label(self) -> &'static str {
        match self {
            Cy3Class::Sl2 => "SL2",
            Cy3Class::SolvableIi => "SOLVABLE_II",
            Cy3Class::Heisenberg => "HEISENBERG",
            Cy3Class::Abelian => "ABELIAN",
        }
    }
}

impl std::fmt::Display for Cy3Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies a unimodular 3-dimensional algebra by `dim [g, g]`.
pub fn classify_cy3(l: &LieAlgebra) -> Result<Cy3Class, LieError> {
    if l.dim() != 3 {
        return Err(LieError::NotDimensionThree(l.dim()));
    }
    let uni = l.is_unimodular();
    if let Some(w) = uni.witness {
        return Err(LieError::NotUnimodular {
            index: w.index,
            name: w.name,
            trace: w.trace,
        });
    }
    Ok(match l.derived_dimension() {
        3 => Cy3Class::Sl2,
        2 => Cy3Class::SolvableIi,
        1 => {
            debug_assert!(
                l.derived_is_central(),
                "unimodular with 1-dim derived algebra is Heisenberg"
            );
            Cy3Class::Heisenberg
        }
        _ => Cy3Class::Abelian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg() -> LieAlgebra {
        cy3_from_sextuple(&Sextuple::from_i64([0, 0, 0, 0, 0, 1]))
    }

    fn alg(brackets: &[(usize, usize, [i64; 3])]) -> Result<LieAlgebra, LieError> {
        let b: Vec<_> = brackets
            .iter()
            .map(|(i, j, v)| (*i, *j, v.iter().map(|&c| Scalar::from_int(c)).collect()))
            .collect();
        LieAlgebra::from_brackets(default_names(3), &b)
    }

    #[test]
    fn heisenberg_and_abelian_accepted() {
        let h = alg(&[(0, 1, [0, 0, 1])]).unwrap();
        assert_eq!(h, heisenberg());
        assert!(alg(&[]).unwrap().is_abelian());
    }

    #[test]
    fn jacobi_violation_reported() {
        // [x,y]=z, [y,z]=x, [x,z]=x
        let err = alg(&[(0, 1, [0, 0, 1]), (1, 2, [1, 0, 0]), (0, 2, [1, 0, 0])]).unwrap_err();
        match err {
            LieError::JacobiViolation { triple, residual } => {
                assert_eq!(triple, (0, 1, 2));
                assert!(residual.iter().any(|c| !c.is_zero()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn adjoint_examples() {
        let ab = LieAlgebra::abelian(3);
        assert!(ab.adjoint_matrix(&unit(3, 1)).unwrap().is_zero());
        let ii = alg(&[(0, 1, [0, 1, 0]), (0, 2, [0, 0, -1])]).unwrap();
        let m = ii.adjoint_matrix(&unit(3, 0)).unwrap();
        assert_eq!(m, Matrix::diag(&[Scalar::zero(), Scalar::one(), Scalar::from_int(-1)]));
        let m = heisenberg().adjoint_matrix(&unit(3, 0)).unwrap();
        let mut expected = Matrix::zeros(3, 3);
        expected[(2, 1)] = Scalar::one();
        assert_eq!(m, expected);
        assert!(heisenberg().adjoint_matrix(&unit(2, 0)).is_err());
    }

    #[test]
    fn unimodularity_witnesses() {
        assert!(heisenberg().is_unimodular().holds);
        let two = LieAlgebra::from_brackets(default_names(2), &[(0, 1, vec![Scalar::zero(), Scalar::one()])]).unwrap();
        let u = two.is_unimodular();
        assert!(!u.holds);
        let w = u.witness.unwrap();
        assert_eq!((w.index, w.trace), (0, Scalar::one()));
        let b2 = alg(&[(0, 1, [0, 1, 0]), (0, 2, [0, 1, 1])]).unwrap();
        let w = b2.is_unimodular().witness.unwrap();
        assert_eq!((w.index, w.trace), (0, Scalar::from_int(2)));
    }

    #[test]
    fn sextuple_examples() {
        assert!(cy3_from_sextuple(&Sextuple::from_i64([0; 6])).is_abelian());
        let sl2 = cy3_from_sextuple(&Sextuple::from_i64([0, 0, -2, 0, 0, 1]));
        assert_eq!(
            sl2,
            alg(&[(0, 1, [0, 0, 1]), (0, 2, [-2, 0, 0]), (1, 2, [0, 2, 0])]).unwrap()
        );
        assert_eq!(
            sextuple_extract(&heisenberg()).unwrap(),
            Sextuple::from_i64([0, 0, 0, 0, 0, 1])
        );
        let b2 = alg(&[(0, 1, [0, 1, 0]), (0, 2, [0, 1, 1])]).unwrap();
        assert!(matches!(sextuple_extract(&b2), Err(LieError::NotCYForm(_))));
        assert!(matches!(
            sextuple_extract(&LieAlgebra::abelian(2)),
            Err(LieError::NotDimensionThree(2))
        ));
    }

    #[test]
    fn classification_examples() {
        let sl2 = cy3_from_sextuple(&Sextuple::from_i64([0, 0, -2, 0, 0, 1]));
        assert_eq!(classify_cy3(&sl2).unwrap(), Cy3Class::Sl2);
        let ii = alg(&[(0, 1, [0, 1, 0]), (0, 2, [0, 0, -1])]).unwrap();
        assert_eq!(classify_cy3(&ii).unwrap(), Cy3Class::SolvableIi);
        assert_eq!(classify_cy3(&heisenberg()).unwrap(), Cy3Class::Heisenberg);
        assert_eq!(classify_cy3(&LieAlgebra::abelian(3)).unwrap(), Cy3Class::Abelian);
        // (1,0,0,0,0,0): [x,y]=x, [y,z]=z; derived algebra spanned by x and z
        let s = cy3_from_sextuple(&Sextuple::from_i64([1, 0, 0, 0, 0, 0]));
        assert_eq!(s.derived_dimension(), 2);
        assert_eq!(classify_cy3(&s).unwrap(), Cy3Class::SolvableIi);
        let b3 = alg(&[(0, 1, [0, 1, 0])]).unwrap();
        assert!(matches!(
            classify_cy3(&b3),
            Err(LieError::NotUnimodular { index: 0, .. })
        ));
    }

    #[test]
    fn center_and_derived() {
        let h = heisenberg();
        assert_eq!(h.center_basis(), vec![unit(3, 2)]);
        assert!(h.derived_is_central());
        let b3 = alg(&[(0, 1, [0, 1, 0])]).unwrap();
        assert!(!b3.derived_is_central());
    }

    #[test]
    fn change_basis_permutation() {
        let ii = alg(&[(0, 1, [0, 1, 0]), (0, 2, [0, 0, -1])]).unwrap();
        let p = Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let q = ii.change_basis(&p).unwrap();
        // x' = y, y' = z, z' = x: [x', z'] = [y, x] = -y = -x'
        assert_eq!(
            q.bracket_basis(0, 2),
            &[Scalar::from_int(-1), Scalar::zero(), Scalar::zero()]
        );
    }
}
