//! Free groups, integral group rings and Fox derivatives, and the action of a
//! conjugating element on derivations `Der(H, A)` of a free group `H`.
//!
//! Convention: `∂(uv)/∂b = ∂u/∂b + u·∂v/∂b` and `∂(b^{-1})/∂b = −b^{-1}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::laurent::{CoeffJson, LaurentPoly};
use crate::matrix::{Matrix, QMatrix};
use crate::ring::{Field, Ring};
use crate::zeta::{det_one_minus, ZetaFunction};

/// A freely reduced word; letters are `(generator index ≥ 1, ±1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        Self { letters: vec![(i, 1)] }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Result<Self> {
        let mut w = Self::identity();
        for (g, s) in letters {
            if g == 0 || (s != 1 && s != -1) {
                return Err(Error::InvalidInput(format!("bad letter ({}, {})", g, s)));
            }
            w.push(g, s);
        }
        Ok(w)
    }

    fn push(&mut self, g: usize, s: i8) {
        if self.letters.last() == Some(&(g, -s)) {
            self.letters.pop();
        } else {
            self.letters.push((g, s));
        }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.0).max().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut w = self.clone();
        for &(g, s) in &rhs.letters {
            w.push(g, s);
        }
        w
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|&(g, s)| (g, -s)).collect() }
    }

    /// `u^{-1} · self · u`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.inverse().mul(self).mul(u)
    }

    /// Exponent sum of each generator `1..=mu`.
    pub fn abelianization(&self, mu: usize) -> Vec<i64> {
        let mut v = vec![0; mu];
        for &(g, s) in &self.letters {
            if g <= mu {
                v[g - 1] += s as i64;
            }
        }
        v
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.letters.iter().map(|&(g, s)| if s > 0 { format!("b{}", g) } else { format!("b{}^-1", g) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `ℤ[F]`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(FreeWord::identity())
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: FreeWord, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(w.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }

    /// `u · self`.
    pub fn left_mul_word(&self, u: &FreeWord) -> Self {
        let mut out = Self::zero();
        for (w, &c) in &self.terms {
            out.add_term(u.mul(w), c);
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{}*[{}]", c, w)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Left Fox derivative `∂w/∂b_j`.
pub fn fox_derivative(w: &FreeWord, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &(g, s) in &w.letters {
        if g == j {
            if s > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                let mut p = prefix.clone();
                p.push(g, -1);
                out.add_term(p, -1);
            }
        }
        prefix.push(g, s);
    }
    out
}

/// `ρ` on the free generators `b_1, …, b_μ`, with the inverse images.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<R: Ring> {
    dim: usize,
    images: Vec<Matrix<R>>,
    inverses: Vec<Matrix<R>>,
}

impl<R: Ring> Representation<R> {
    /// `images[j]` and `inverses[j]` are `ρ(b_{j+1})` and its inverse.
    pub fn with_inverses(images: Vec<Matrix<R>>, inverses: Vec<Matrix<R>>) -> Result<Self> {
        let dim = images.first().map_or(0, |m| m.rows());
        if images.len() != inverses.len() {
            return Err(Error::DimensionMismatch { expected: images.len(), got: inverses.len() });
        }
        for (k, (a, b)) in images.iter().zip(&inverses).enumerate() {
            if !a.is_square() || a.rows() != dim || !b.is_square() || b.rows() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: a.rows() });
            }
            if a.mul(b) != Matrix::identity(dim) {
                return Err(Error::NonInvertible(k + 1));
            }
        }
        Ok(Self { dim, images, inverses })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mu(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, j: usize) -> &Matrix<R> {
        &self.images[j - 1]
    }

    pub fn eval_word(&self, w: &FreeWord) -> Result<Matrix<R>> {
        let mut acc = Matrix::identity(self.dim);
        for &(g, s) in &w.letters {
            if g > self.mu() {
                return Err(Error::IndexOutOfRange { index: g, max: self.mu() });
            }
            acc = acc.mul(if s > 0 { &self.images[g - 1] } else { &self.inverses[g - 1] });
        }
        Ok(acc)
    }

    /// `ρ̃` extended linearly to `ℤ[F]`.
    pub fn eval_ring(&self, x: &GroupRingElement) -> Result<Matrix<R>> {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (w, c) in x.terms() {
            acc = acc.add(&self.eval_word(w)?.scale(&R::from_i64(c)));
        }
        Ok(acc)
    }
}

impl<F: Field> Representation<F> {
    pub fn new(images: Vec<Matrix<F>>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(images.len());
        for (k, m) in images.iter().enumerate() {
            inverses.push(m.inverse().ok_or(Error::NonInvertible(k + 1))?);
        }
        Self::with_inverses(images, inverses)
    }
}

/// Block matrix with `(i, j)` block `ρ(h) · ρ̃(∂w_i/∂b_j)`, the action of `h`
/// on `Der(H, A) ≅ A^μ` where `w_i = h^{-1} b_i h`.
pub fn h_der_matrix<R: Ring>(words: &[FreeWord], rho: &Representation<R>, rho_h: &Matrix<R>) -> Result<Matrix<R>> {
    let mu = rho.mu();
    let d = rho.dim();
    if words.len() != mu {
        return Err(Error::DimensionMismatch { expected: mu, got: words.len() });
    }
    if !rho_h.is_square() || rho_h.rows() != d {
        return Err(Error::DimensionMismatch { expected: d, got: rho_h.rows() });
    }
    let mut out = Matrix::zeros(mu * d, mu * d);
    for (i, w) in words.iter().enumerate() {
        if w.max_generator() > mu {
            return Err(Error::IndexOutOfRange { index: w.max_generator(), max: mu });
        }
        for j in 0..mu {
            let block = rho_h.mul(&rho.eval_ring(&fox_derivative(w, j + 1))?);
            out.set_block(i * d, j * d, &block);
        }
    }
    Ok(out)
}

/// `δ: A → Der(H, A)`, `δ(a)(b_j) = (ρ(b_j) − 1)a`, as a `μd × d` matrix.
pub fn delta_matrix<R: Ring>(rho: &Representation<R>) -> Matrix<R> {
    let d = rho.dim();
    let mut out = Matrix::zeros(rho.mu() * d, d);
    for j in 0..rho.mu() {
        out.set_block(j * d, 0, &rho.images[j].sub(&Matrix::identity(d)));
    }
    out
}

/// Whether `h_Der ∘ δ = δ ∘ ρ(h)`.
pub fn ladder_commutes<R: Ring>(words: &[FreeWord], rho: &Representation<R>, rho_h: &Matrix<R>) -> Result<bool> {
    let hder = h_der_matrix(words, rho, rho_h)?;
    let delta = delta_matrix(rho);
    Ok(hder.mul(&delta) == delta.mul(rho_h))
}

/// Dimensions in `0 → H⁰ → A → Der(H, A) → H¹ → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSequenceDims {
    pub h0: usize,
    pub a: usize,
    pub der: usize,
    pub h1: usize,
}

impl ExactSequenceDims {
    /// Alternating sum, zero for an exact sequence.
    pub fn alternating_sum(&self) -> i64 {
        self.h0 as i64 - self.a as i64 + self.der as i64 - self.h1 as i64
    }
}

pub fn exact_sequence_dims<F: Field>(rho: &Representation<F>) -> ExactSequenceDims {
    let delta = delta_matrix(rho);
    let rank = delta.rank();
    let d = rho.dim();
    let der = rho.mu() * d;
    ExactSequenceDims { h0: d - rank, a: d, der, h1: der - rank }
}

/// `det(I − λρ(h)) / det(I − λ h_Der)`.
pub fn zeta_gd_component(rho_h: &QMatrix, hder: &QMatrix) -> Result<ZetaFunction> {
    ZetaFunction::new(det_one_minus(rho_h, 1), det_one_minus(hder, 1))
}

/// `det(I − M)` for a matrix over Laurent polynomials.
pub fn det_one_minus_laurent(m: &Matrix<LaurentPoly>) -> LaurentPoly {
    crate::zeta::det_poly(&Matrix::identity(m.rows()).sub(m))
}

// ---------------------------------------------------------------------------
// JSON

/// `{"mu": 2, "words": [[[1,1],[2,1],[1,-1]], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordsJson {
    pub mu: usize,
    pub words: Vec<Vec<(usize, i8)>>,
}

impl WordsJson {
    pub fn to_words(&self) -> Result<Vec<FreeWord>> {
        if self.words.len() != self.mu {
            return Err(Error::DimensionMismatch { expected: self.mu, got: self.words.len() });
        }
        self.words
            .iter()
            .map(|w| {
                let fw = FreeWord::from_letters(w.iter().copied())?;
                if fw.max_generator() > self.mu {
                    return Err(Error::IndexOutOfRange { index: fw.max_generator(), max: self.mu });
                }
                Ok(fw)
            })
            .collect()
    }
}

/// Generator names `b1, …, bμ` and `h`, each mapped to a matrix.
pub type RepresentationJson = BTreeMap<String, Vec<Vec<CoeffJson>>>;

pub fn matrix_from_json(rows: &[Vec<CoeffJson>]) -> Result<QMatrix> {
    let rows: Vec<Vec<GaussianRational>> =
        rows.iter().map(|r| r.iter().map(|c| c.to_value()).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let n = rows.len();
    let m = QMatrix::from_rows(rows).ok_or_else(|| Error::InvalidInput("ragged matrix".into()))?;
    if m.cols() != n {
        return Err(Error::InvalidInput("matrix is not square".into()));
    }
    Ok(m)
}

pub fn matrix_to_json(m: &QMatrix) -> Vec<Vec<CoeffJson>> {
    m.to_rows().iter().map(|r| r.iter().map(CoeffJson::from_value).collect()).collect()
}

/// Reads `b1..bμ` and `h` from a representation map.
pub fn representation_from_json(j: &RepresentationJson, mu: usize) -> Result<(Representation<GaussianRational>, QMatrix)> {
    let mut images = Vec::with_capacity(mu);
    for k in 1..=mu {
        let key = format!("b{}", k);
        let m = j.get(&key).ok_or_else(|| Error::InvalidInput(format!("representation is missing '{}'", key)))?;
        images.push(matrix_from_json(m)?);
    }
    let h = j.get("h").ok_or_else(|| Error::InvalidInput("representation is missing 'h'".into()))?;
    let rho = Representation::new(images)?;
    let rho_h = matrix_from_json(h)?;
    if rho_h.rows() != rho.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: rho_h.rows() });
    }
    if rho_h.inverse().is_none() {
        return Err(Error::NonInvertible(0));
    }
    Ok((rho, rho_h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, i8)]) -> FreeWord {
        FreeWord::from_letters(letters.iter().copied()).unwrap()
    }

    #[test]
    fn reduction_and_inverse() {
        assert!(w(&[(1, 1), (2, 1), (2, -1), (1, -1)]).is_empty());
        let u = w(&[(1, 1), (2, -1)]);
        assert!(u.mul(&u.inverse()).is_empty());
        assert_eq!(w(&[(2, 1)]).conjugate_by(&w(&[(1, 1)])), w(&[(1, -1), (2, 1), (1, 1)]));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(fox_derivative(&w(&[(1, 1), (2, 1)]), 1), GroupRingElement::one());
        let mut e = GroupRingElement::zero();
        e.add_term(w(&[(1, -1)]), -1);
        assert_eq!(fox_derivative(&w(&[(1, -1)]), 1), e);
        assert_eq!(fox_derivative(&w(&[(1, 1), (2, 1), (1, -1)]), 2), GroupRingElement::from_word(w(&[(1, 1)])));
    }

    #[test]
    fn fundamental_identity_small() {
        let word = w(&[(1, 1), (2, 1), (1, -1), (2, 1), (2, 1), (1, -1)]);
        let mut rhs = GroupRingElement::zero();
        for j in 1..=2 {
            let bj = GroupRingElement::from_word(FreeWord::generator(j)).sub(&GroupRingElement::one());
            rhs = rhs.add(&fox_derivative(&word, j).mul(&bj));
        }
        assert_eq!(GroupRingElement::from_word(word).sub(&GroupRingElement::one()), rhs);
    }

    #[test]
    fn h_der_trivial_cases() {
        let rho = Representation::new(vec![QMatrix::identity(1), QMatrix::identity(1)]).unwrap();
        let words = vec![FreeWord::generator(1), FreeWord::generator(2)];
        let hder = h_der_matrix(&words, &rho, &QMatrix::identity(1)).unwrap();
        assert_eq!(hder, QMatrix::identity(2));

        let m = QMatrix::from_int_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let n = m.mul(&m);
        let rho = Representation::new(vec![m]).unwrap();
        assert_eq!(h_der_matrix(&[FreeWord::generator(1)], &rho, &n).unwrap(), n);
    }

    #[test]
    fn zeta_components() {
        let one = QMatrix::identity(1);
        assert!(zeta_gd_component(&one, &one).unwrap().is_one());
        let perm = QMatrix::cyclic_permutation(2);
        let z = zeta_gd_component(&one, &perm).unwrap();
        assert_eq!(z, ZetaFunction::from_int_coeffs(&[1], &[1, 1]).unwrap());
    }

    #[test]
    fn exact_sequence_trivial() {
        let rho = Representation::new(vec![QMatrix::identity(2), QMatrix::identity(2)]).unwrap();
        let dims = exact_sequence_dims(&rho);
        assert_eq!(dims, ExactSequenceDims { h0: 2, a: 2, der: 4, h1: 4 });
        assert_eq!(dims.alternating_sum(), 0);
    }

    #[test]
    fn json_inputs() {
        let words: WordsJson = serde_json::from_str(r#"{"mu":2,"words":[[[1,1],[2,1],[1,-1]],[[2,1]]]}"#).unwrap();
        let ws = words.to_words().unwrap();
        assert_eq!(ws[0], w(&[(1, 1), (2, 1), (1, -1)]));
        let rep: RepresentationJson = serde_json::from_str(r#"{"b1":[[1]],"b2":[[1]],"h":[[1]]}"#).unwrap();
        let (rho, h) = representation_from_json(&rep, 2).unwrap();
        assert_eq!((rho.dim(), h.rows()), (1, 1));
        let bad: RepresentationJson = serde_json::from_str(r#"{"b1":[[0]],"b2":[[1]],"h":[[1]]}"#).unwrap();
        assert!(representation_from_json(&bad, 2).is_err());
    }
}
