//! Sridharan enveloping algebras `U_f(g) = T(g) / (xy - yx - [x,y] - f(x,y))`.
//!
//! Elements are reduced to PBW normal form (nondecreasing generator indices)
//! by the rules `x_j x_i -> x_i x_j - [x_i, x_j] - f(x_i, x_j)` for `j > i`.
//! Each rule replaces a word by strictly smaller words in degree-lex order,
//! so rewriting terminates; confluence is checked on every overlap
//! `x_k x_j x_i` when the algebra is built.

use serde::Serialize;
use thiserror::Error;

use crate::homology::{is_cy_universal, CyReport};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{Matrix, Vector};
use crate::ncpoly::{NCPolynomial, Word};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SridharanError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("2-cocycle identity fails on ({}, {}, {}): residual {residual}", triple.0, triple.1, triple.2)]
    CocycleInvalid {
        triple: (usize, usize, usize),
        residual: Scalar,
    },
    #[error("rewriting is not confluent on overlap ({}, {}, {})", .0.0, .0.1, .0.2)]
    ConfluenceFailure((usize, usize, usize)),
    #[error("1-cocycle does not vanish on [x_{i}, x_{j}]: value {value}")]
    InvalidOneCocycle { i: usize, j: usize, value: Scalar },
    #[error("map does not preserve the defining relation for (x_{0}, x_{1})")]
    RelationNotPreserved(usize, usize),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Antisymmetric bilinear form `f(x_i, x_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCocycle {
    dim: usize,
    values: Vec<Scalar>,
}

impl TwoCocycle {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            values: vec![Scalar::zero(); dim * dim],
        }
    }

    /// Entries `(i, j, f(x_i, x_j))`; `i > j` is read through antisymmetry.
    pub fn new(dim: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self, SridharanError> {
        let mut f = Self::zero(dim);
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(SridharanError::DimensionMismatch(format!(
                    "cocycle index ({i}, {j}) outside dimension {dim}"
                )));
            }
            if i == j {
                if !v.is_zero() {
                    return Err(SridharanError::DimensionMismatch(format!(
                        "f(x_{i}, x_{i}) must vanish"
                    )));
                }
                continue;
            }
            f.values[i * dim + j] = v.clone();
            f.values[j * dim + i] = -v;
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, i: usize, j: usize) -> &Scalar {
        &self.values[i * self.dim + j]
    }

    /// `f(x_i, v)` for a coordinate vector `v`.
    pub fn eval_right(&self, i: usize, v: &[Scalar]) -> Scalar {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| c * self.value(i, m))
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Nonzero upper-triangular entries.
    pub fn entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.value(i, j);
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }
}

/// Linear functional `h` with `h([g, g]) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCocycle {
    values: Vector,
}

impl OneCocycle {
    pub fn new(l: &LieAlgebra, values: Vector) -> Result<Self, SridharanError> {
        if values.len() != l.dim() {
            return Err(SridharanError::DimensionMismatch(format!(
                "1-cocycle of length {} in dimension {}",
                values.len(),
                l.dim()
            )));
        }
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let v: Scalar = l.bracket_basis(i, j).iter().zip(&values).map(|(a, b)| a * b).sum();
                if !v.is_zero() {
                    return Err(SridharanError::InvalidOneCocycle { i, j, value: v });
                }
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleCheck {
    pub holds: bool,
    pub witness: Option<((usize, usize, usize), Scalar)>,
}

/// Checks `f(x,[y,z]) + f(y,[z,x]) + f(z,[x,y]) = 0` on all basis triples.
pub fn check_two_cocycle(l: &LieAlgebra, f: &TwoCocycle) -> Result<CocycleCheck, SridharanError> {
    if l.dim() != f.dim() {
        return Err(SridharanError::DimensionMismatch(format!(
            "Lie algebra of dimension {} with a cocycle of dimension {}",
            l.dim(),
            f.dim()
        )));
    }
    let d = l.dim();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let r = &(&f.eval_right(i, l.bracket_basis(j, k)) + &f.eval_right(j, l.bracket_basis(k, i)))
                    + &f.eval_right(k, l.bracket_basis(i, j));
                if !r.is_zero() {
                    return Ok(CocycleCheck {
                        holds: false,
                        witness: Some(((i, j, k), r)),
                    });
                }
            }
        }
    }
    Ok(CocycleCheck {
        holds: true,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfluenceCertificate {
    /// Number of overlaps `x_k x_j x_i` (`k > j > i`) resolved.
    pub overlaps_checked: usize,
}

#[derive(Debug, Clone)]
pub struct SridharanAlgebra {
    lie: LieAlgebra,
    cocycle: TwoCocycle,
    certificate: ConfluenceCertificate,
}

impl SridharanAlgebra {
    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn cocycle(&self) -> &TwoCocycle {
        &self.cocycle
    }

    pub fn certificate(&self) -> ConfluenceCertificate {
        self.certificate
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// `[x_i, x_j] + f(x_i, x_j)` as a polynomial of degree at most one.
    pub fn commutator(&self, i: usize, j: usize) -> NCPolynomial {
        let mut p = NCPolynomial::linear(self.lie.bracket_basis(i, j));
        p.add_term(Word::empty(), self.cocycle.value(i, j));
        p
    }

    /// Defining relation `x_i x_j - x_j x_i - [x_i, x_j] - f(x_i, x_j)`.
    pub fn relation(&self, i: usize, j: usize) -> NCPolynomial {
        let swap = &NCPolynomial::word(&[i, j]) - &NCPolynomial::word(&[j, i]);
        &swap - &self.commutator(i, j)
    }

    /// All relations with `i < j`.
    pub fn relations(&self) -> Vec<NCPolynomial> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                out.push(self.relation(i, j));
            }
        }
        out
    }

    /// Rewrites the descent `x_j x_i` (`j > i`) at `pos`, or `None` if there is none.
    pub fn rewrite_at(&self, w: &Word, pos: usize) -> Option<NCPolynomial> {
        let letters = w.letters();
        if pos + 1 >= letters.len() || letters[pos] <= letters[pos + 1] {
            return None;
        }
        let (j, i) = (letters[pos], letters[pos + 1]);
        let prefix = &letters[..pos];
        let suffix = &letters[pos + 2..];
        let mut out = NCPolynomial::zero();
        let mut swapped = prefix.to_vec();
        swapped.extend_from_slice(&[i, j]);
        swapped.extend_from_slice(suffix);
        out.add_term(Word(swapped), &Scalar::one());
        for (k, c) in self.lie.bracket_basis(i, j).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut v = prefix.to_vec();
            v.push(k);
            v.extend_from_slice(suffix);
            out.add_term(Word(v), &-c);
        }
        let f = self.cocycle.value(i, j);
        if !f.is_zero() {
            let mut v = prefix.to_vec();
            v.extend_from_slice(suffix);
            out.add_term(Word(v), &-f);
        }
        Some(out)
    }

    /// PBW normal form. The largest pending word is always rewritten first,
    /// so every word is expanded at most once.
    pub fn normal_form(&self, p: &NCPolynomial) -> NCPolynomial {
        let mut pending = p.clone().into_terms();
        let mut done = NCPolynomial::zero();
        while let Some((w, c)) = pending.pop_last() {
            let Some(pos) = w.letters().windows(2).position(|x| x[0] > x[1]) else {
                done.add_term(w, &c);
                continue;
            };
            let image = self.rewrite_at(&w, pos).expect("descent found");
            for (u, a) in image.terms() {
                let v = a * &c;
                let entry = pending.entry(u.clone()).or_insert_with(Scalar::zero);
                *entry += &v;
                if entry.is_zero() {
                    pending.remove(u);
                }
            }
        }
        done
    }

    /// Product in `U_f(g)`, in normal form.
    pub fn mul(&self, p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
        self.normal_form(&(p * q))
    }

    /// Rank of the normal forms of all words of degree `<= max_degree`,
    /// together with the number of sorted words of that degree bound.
    pub fn pbw_check(&self, max_degree: usize) -> PbwCheck {
        let d = self.dim();
        let mut words = vec![Vec::<usize>::new()];
        let mut frontier = vec![Vec::<usize>::new()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..d {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let sorted: Vec<Word> = words.iter().map(|w| Word(w.clone())).filter(Word::is_sorted).collect();
        let mut all_sorted_terms = true;
        let mut fixed_points = true;
        let mut rows = Vec::new();
        for w in &words {
            let w = Word(w.clone());
            let nf = self.normal_form(&NCPolynomial::monomial(w.clone(), Scalar::one()));
            if nf.terms().any(|(u, _)| !u.is_sorted()) {
                all_sorted_terms = false;
            }
            if w.is_sorted() && nf != NCPolynomial::monomial(w.clone(), Scalar::one()) {
                fixed_points = false;
            }
            rows.push(sorted.iter().map(|s| nf.coefficient(s)).collect::<Vec<_>>());
        }
        let rank = Matrix::from_rows(rows).map(|m| m.rank()).unwrap_or(0);
        PbwCheck {
            max_degree,
            words: words.len(),
            sorted_words: sorted.len(),
            rank,
            all_sorted_terms,
            sorted_words_fixed: fixed_points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PbwCheck {
    pub max_degree: usize,
    pub words: usize,
    pub sorted_words: usize,
    pub rank: usize,
    pub all_sorted_terms: bool,
    pub sorted_words_fixed: bool,
}

impl PbwCheck {
    pub fn passed(&self) -> bool {
        self.all_sorted_terms && self.sorted_words_fixed && self.rank == self.sorted_words
    }
}

/// Validates `f` and certifies confluence of the PBW rewriting system.
pub fn build_sridharan(l: &LieAlgebra, f: &TwoCocycle) -> Result<SridharanAlgebra, SridharanError> {
    let check = check_two_cocycle(l, f)?;
    if let Some((triple, residual)) = check.witness {
        return Err(SridharanError::CocycleInvalid { triple, residual });
    }
    let mut alg = SridharanAlgebra {
        lie: l.clone(),
        cocycle: f.clone(),
        certificate: ConfluenceCertificate { overlaps_checked: 0 },
    };
    let d = l.dim();
    let mut overlaps = 0;
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let w = Word(vec![k, j, i]);
                let left = alg.normal_form(&alg.rewrite_at(&w, 0).expect("descent"));
                let right = alg.normal_form(&alg.rewrite_at(&w, 1).expect("descent"));
                if left != right {
                    return Err(SridharanError::ConfluenceFailure((k, j, i)));
                }
                overlaps += 1;
            }
        }
    }
    alg.certificate.overlaps_checked = overlaps;
    Ok(alg)
}

/// Decides CY for `U_f(g)`: the verdict is that of `U(g)` once `f` is validated.
pub fn is_cy_sridharan(l: &LieAlgebra, f: &TwoCocycle) -> Result<CyReport, SridharanError> {
    let check = check_two_cocycle(l, f)?;
    if let Some((triple, residual)) = check.witness {
        return Err(SridharanError::CocycleInvalid { triple, residual });
    }
    let mut report = is_cy_universal(l);
    report.cocycle_validated = Some(true);
    Ok(report)
}

/// Filtered endomorphism `x_i -> sum_k linear[k][i] x_k + shift[i]` on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMap {
    pub linear: Matrix,
    pub shift: Vector,
}

impl GeneratorMap {
    pub fn identity(dim: usize) -> Self {
        Self {
            linear: Matrix::identity(dim),
            shift: vec![Scalar::zero(); dim],
        }
    }

    pub fn translation(shift: Vector) -> Self {
        Self {
            linear: Matrix::identity(shift.len()),
            shift,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear == Matrix::identity(self.shift.len()) && self.shift.iter().all(Scalar::is_zero)
    }

    pub fn image_of_generator(&self, i: usize) -> NCPolynomial {
        let mut p = NCPolynomial::linear(&self.linear.column(i));
        p.add_term(Word::empty(), &self.shift[i]);
        p
    }

    /// Substitutes the generator images into `p` (in the free algebra).
    pub fn apply(&self, p: &NCPolynomial) -> NCPolynomial {
        let images: Vec<NCPolynomial> = (0..self.shift.len()).map(|i| self.image_of_generator(i)).collect();
        let mut out = NCPolynomial::zero();
        for (w, c) in p.terms() {
            let mut term = NCPolynomial::constant(c.clone());
            for &g in w.letters() {
                term = &term * &images[g];
            }
            out = &out + &term;
        }
        out
    }

    /// Whether every defining relation maps into the relation ideal.
    pub fn preserves_relations(&self, a: &SridharanAlgebra) -> Result<(), SridharanError> {
        let d = a.dim();
        for i in 0..d {
            for j in i + 1..d {
                if !a.normal_form(&self.apply(&a.relation(i, j))).is_zero() {
                    return Err(SridharanError::RelationNotPreserved(i, j));
                }
            }
        }
        Ok(())
    }
}

/// `xi(x) = x + h(x)` for a 1-cocycle `h`, checked against the relations.
pub fn xi_automorphism(a: &SridharanAlgebra, h: &[Scalar]) -> Result<GeneratorMap, SridharanError> {
    let h = OneCocycle::new(a.lie(), h.to_vec())?;
    let map = GeneratorMap::translation(h.values().to_vec());
    map.preserves_relations(a)?;
    Ok(map)
}

/// `zeta(x) = x - tr ad(x)`.
pub fn zeta_dualizing_automorphism(a: &SridharanAlgebra) -> Result<GeneratorMap, SridharanError> {
    let shift: Vector = a.lie().trace_form().iter().map(|t| -t).collect();
    xi_automorphism(a, &shift)
}

/// Splits a commutator table `{x_i, x_j} = p_ij` (degree <= 1) into the bracket
/// (linear part) and the 2-cocycle (constant part).
pub fn from_commutator_table(
    names: Vec<String>,
    table: &[(usize, usize, NCPolynomial)],
) -> Result<SridharanAlgebra, SridharanError> {
    let d = names.len();
    let mut brackets = Vec::new();
    let mut f_entries = Vec::new();
    for (i, j, p) in table {
        if p.degree().unwrap_or(0) > 1 {
            return Err(SridharanError::DimensionMismatch(format!(
                "commutator of x_{i}, x_{j} has degree above one"
            )));
        }
        let mut linear = vec![Scalar::zero(); d];
        for (w, c) in p.terms() {
            match w.letters() {
                [] => f_entries.push((*i, *j, c.clone())),
                [k] if *k < d => linear[*k] = c.clone(),
                _ => {
                    return Err(SridharanError::DimensionMismatch(format!(
                        "generator outside dimension {d}"
                    )))
                }
            }
        }
        brackets.push((*i, *j, linear));
    }
    let lie = LieAlgebra::from_brackets(names, &brackets)?;
    let f = TwoCocycle::new(d, &f_entries)?;
    build_sridharan(&lie, &f)
}
