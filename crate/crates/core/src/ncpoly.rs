//! Polynomials in the free associative algebra on `d` generators.
//!
//! Text grammar: a sum of terms such as `3/2*x*y*z - z + 1`, where a term is
//! an optional coefficient followed by `*`-separated generator names. A
//! generator may carry a power (`z^2`). Cyclotomic coefficients go in
//! parentheses using the scalar grammar, e.g. `(1*z@3)*x`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyParseError {
    #[error("unknown generator {name:?} in {input:?}")]
    UnknownGenerator { name: String, input: String },
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Syntax { input: String, reason: String },
}

/// A word in the generators, ordered by degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(Word(vec![i]), Scalar::one())
    }

    pub fn word(letters: &[usize]) -> Self {
        Self::monomial(Word(letters.to_vec()), Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, &c);
        p
    }

    /// `sum_k v[k] x_k`.
    pub fn linear(v: &[Scalar]) -> Self {
        let mut p = Self::zero();
        for (k, c) in v.iter().enumerate() {
            p.add_term(Word(vec![k]), c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    /// Largest generator index used, plus one.
    pub fn generator_bound(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.0.iter().map(|&i| i + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn parse(input: &str, names: &[String]) -> Result<Self, PolyParseError> {
        Parser::new(input, names).parse()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

impl Add for &NCPolynomial {
    type Output = NCPolynomial;
    fn add(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &NCPolynomial {
    type Output = NCPolynomial;
    fn sub(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &NCPolynomial {
    type Output = NCPolynomial;
    fn neg(self) -> NCPolynomial {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Product in the free algebra (concatenation of words).
impl Mul for &NCPolynomial {
    type Output = NCPolynomial;
    fn mul(self, rhs: &NCPolynomial) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bound = self.generator_bound();
        let names = crate::lie::default_names(bound.max(1));
        write!(f, "{}", self.display_with(&names))
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a NCPolynomial,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    /// Highest degree first, words of equal degree in lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let name = |i: usize| self.names.get(i).cloned().unwrap_or_else(|| format!("g{i}"));
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| a.0.cmp(&b.0)));
        for (n, (w, c)) in terms.into_iter().enumerate() {
            let (negative, mag) = match c.as_rational() {
                Some(r) if r < &num_rational::BigRational::from_integer(0.into()) => (true, -c),
                Some(_) => (false, c.clone()),
                None => (false, c.clone()),
            };
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let letters: Vec<String> = w.0.iter().map(|&i| name(i)).collect();
            let coef = if mag.is_rational() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if letters.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", letters.join("*"))?;
            } else {
                write!(f, "{coef}*{}", letters.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, names: &'a [String]) -> Self {
        let chars = input.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        Self {
            input,
            chars,
            pos: 0,
            names,
        }
    }

    fn err(&self, reason: impl Into<String>) -> PolyParseError {
        PolyParseError::Syntax {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<NCPolynomial, PolyParseError> {
        let mut out = NCPolynomial::zero();
        let mut first = true;
        loop {
            let mut negative = false;
            match self.peek() {
                None if first => return Err(self.err("empty expression")),
                None => break,
                Some('+') => {
                    self.pos += 1;
                }
                Some('-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(_) if first => {}
                Some(c) => return Err(self.err(format!("expected '+' or '-' at {c:?}"))),
            }
            first = false;
            let (w, c) = self.term()?;
            out.add_term(w, &if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Word, Scalar), PolyParseError> {
        let mut coef = Scalar::one();
        let mut letters = Vec::new();
        let mut expect_factor = true;
        while expect_factor {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let start = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
                        self.pos += 1;
                    }
                    if self.pos == self.chars.len() {
                        return Err(self.err("unclosed parenthesis"));
                    }
                    let text: String = self.chars[start..self.pos].iter().collect();
                    self.pos += 1;
                    let s: Scalar = text
                        .parse()
                        .map_err(|e: crate::scalar::ScalarError| self.err(e.to_string()))?;
                    coef = &coef * &s;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.chars.len()
                        && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                    {
                        self.pos += 1;
                    }
                    let text: String = self.chars[start..self.pos].iter().collect();
                    let s: Scalar = text
                        .parse()
                        .map_err(|e: crate::scalar::ScalarError| self.err(e.to_string()))?;
                    coef = &coef * &s;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self.pos < self.chars.len()
                        && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                    {
                        self.pos += 1;
                    }
                    let name: String = self.chars[start..self.pos].iter().collect();
                    let idx =
                        self.names
                            .iter()
                            .position(|n| *n == name)
                            .ok_or_else(|| PolyParseError::UnknownGenerator {
                                name: name.clone(),
                                input: self.input.to_string(),
                            })?;
                    let mut power = 1usize;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let start = self.pos;
                        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                            self.pos += 1;
                        }
                        let text: String = self.chars[start..self.pos].iter().collect();
                        power = text.parse().map_err(|_| self.err("bad exponent"))?;
                    }
                    letters.extend(std::iter::repeat_n(idx, power));
                }
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
                None => return Err(self.err("dangling operator")),
            }
            expect_factor = if self.peek() == Some('*') {
                self.pos += 1;
                true
            } else {
                false
            };
        }
        Ok((Word(letters), coef))
    }
}
