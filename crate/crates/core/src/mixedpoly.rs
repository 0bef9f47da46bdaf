//! Mixed polynomials `g(z, z̄) = Σ c_{ν,μ} z^ν z̄^μ` with Gaussian-rational coefficients.
//!
//! The textual form accepted by [`parse`]:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := atom ('^' nat)?
//! atom    := number ['i'] | 'i' | 'z' nat | 'bar(' 'z' nat ')' | '|' 'z' nat '|' | '(' expr ')'
//! number  := digits ['.' digits] ['/' digits]
//! ```
//!
//! `|zj|^(2k)` is sugar for `(zj*bar(zj))^k`. A `/` is only legal inside a
//! rational literal such as `3/4`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

/// A set of 1-based coordinate indices, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CoordSubset(u64);

impl CoordSubset {
    pub const MAX_VARS: usize = 63;

    pub fn empty() -> Self {
        Self(0)
    }

    pub fn full(n: usize) -> Self {
        Self((1u64 << n) - 1)
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0u64;
        for i in idx {
            assert!(i >= 1 && i <= Self::MAX_VARS, "coordinate index out of range");
            bits |= 1 << (i - 1);
        }
        Self(bits)
    }

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && (self.0 >> (i - 1)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=64).filter(|&i| self.contains(i)).collect()
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(&self, n: usize) -> Self {
        Self(!self.0 & Self::full(n).0)
    }

    /// All nonempty subsets of `{1..n}`, ordered by size then lexicographically.
    pub fn all_nonempty(n: usize) -> Vec<Self> {
        let mut v: Vec<Self> = (1..(1u64 << n)).map(Self).collect();
        v.sort_by_key(|s| (s.len(), s.indices()));
        v
    }
}

impl fmt::Display for CoordSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for CoordSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CoordSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoordSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i == 0 || i > Self::MAX_VARS) {
            return Err(serde::de::Error::custom("coordinate index out of range"));
        }
        Ok(Self::from_indices(v))
    }
}

/// Exponent pair `(ν, μ)` of `z^ν z̄^μ`.
pub type MonomialKey = (Vec<u32>, Vec<u32>);

/// One stored term `c z^ν z̄^μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedMonomial {
    pub coeff: GaussianRational,
    pub nu: Vec<u32>,
    pub mu: Vec<u32>,
}

impl MixedMonomial {
    /// `ν + μ`, the lattice point of the term.
    pub fn lattice_point(&self) -> Vec<u32> {
        self.nu.iter().zip(&self.mu).map(|(a, b)| a + b).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MixedPolynomial {
    n: usize,
    terms: BTreeMap<MonomialKey, GaussianRational>,
}

impl MixedPolynomial {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "a mixed polynomial needs at least one variable");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational, n: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], vec![0; n], c);
        p
    }

    /// `z_j` (1-based).
    pub fn var(j: usize, n: usize) -> Self {
        let mut nu = vec![0; n];
        nu[j - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(nu, vec![0; n], GaussianRational::one());
        p
    }

    /// `z̄_j` (1-based).
    pub fn conj_var(j: usize, n: usize) -> Self {
        let mut mu = vec![0; n];
        mu[j - 1] = 1;
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], mu, GaussianRational::one());
        p
    }

    pub fn monomial(coeff: GaussianRational, nu: Vec<u32>, mu: Vec<u32>) -> Self {
        assert_eq!(nu.len(), mu.len());
        let mut p = Self::zero(nu.len());
        p.add_term(nu, mu, coeff);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = MixedMonomial>) -> Self {
        let mut p = Self::zero(n);
        for t in terms {
            p.add_term(t.nu, t.mu, t.coeff);
        }
        p
    }

    pub fn add_term(&mut self, nu: Vec<u32>, mu: Vec<u32>, c: GaussianRational) {
        assert!(nu.len() == self.n && mu.len() == self.n, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        let key = (nu, mu);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = MixedMonomial> + '_ {
        self.terms.iter().map(|((nu, mu), c)| MixedMonomial { coeff: c.clone(), nu: nu.clone(), mu: mu.clone() })
    }

    pub fn term_map(&self) -> &BTreeMap<MonomialKey, GaussianRational> {
        &self.terms
    }

    pub fn coeff(&self, nu: &[u32], mu: &[u32]) -> GaussianRational {
        self.terms.get(&(nu.to_vec(), mu.to_vec())).cloned().unwrap_or_default()
    }

    /// No `z̄` appears.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|(_, mu)| mu.iter().all(|&m| m == 0))
    }

    /// Indices (1-based) of variables that actually occur.
    pub fn variables_used(&self) -> CoordSubset {
        let mut s = 0u64;
        for (nu, mu) in self.terms.keys() {
            for j in 0..self.n {
                if nu[j] + mu[j] > 0 {
                    s |= 1 << j;
                }
            }
        }
        CoordSubset::from_bits(s)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.0.clone(), k.1.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&GaussianRational::from_int(-1)))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.n);
        for (k, v) in &self.terms {
            out.add_term(k.0.clone(), k.1.clone(), v * c);
        }
        out
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        assert_eq!(self.n, rhs.n);
        let mut out = Self::zero(self.n);
        for ((na, ma), ca) in &self.terms {
            for ((nb, mb), cb) in &rhs.terms {
                out.add_term(add_exps(na, nb)?, add_exps(ma, mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("exponent overflow")
    }

    pub fn checked_pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(GaussianRational::one(), self.n);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// `conj(g)(z) = Σ c̄ z^μ z̄^ν`, so that `conj_poly(g)(z) = conj(g(z))`.
    pub fn conj_poly(&self) -> Self {
        let mut out = Self::zero(self.n);
        for ((nu, mu), c) in &self.terms {
            out.add_term(mu.clone(), nu.clone(), c.conj());
        }
        out
    }

    /// Exact value at a Gaussian-rational point.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: point.len() });
        }
        let conj: Vec<GaussianRational> = point.iter().map(|z| z.conj()).collect();
        let mut acc = GaussianRational::zero();
        for ((nu, mu), c) in &self.terms {
            let mut t = c.clone();
            for j in 0..self.n {
                if nu[j] > 0 {
                    t = &t * &point[j].pow(nu[j]);
                }
                if mu[j] > 0 {
                    t = &t * &conj[j].pow(mu[j]);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Floating-point value at a complex point.
    pub fn evaluate_f64(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: point.len() });
        }
        Ok(self.eval_f64_unchecked(point))
    }

    pub(crate) fn eval_f64_unchecked(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((nu, mu), c) in &self.terms {
            let mut t = c.to_complex();
            for j in 0..self.n {
                if nu[j] > 0 {
                    t *= point[j].powu(nu[j]);
                }
                if mu[j] > 0 {
                    t *= point[j].conj().powu(mu[j]);
                }
            }
            acc += t;
        }
        acc
    }

    /// Formal Wirtinger derivative `∂/∂z_j` or `∂/∂z̄_j` (1-based `j`).
    pub fn wirtinger(&self, j: usize, kind: Wirtinger) -> Result<Self> {
        if j == 0 || j > self.n {
            return Err(Error::IndexOutOfRange { index: j, max: self.n });
        }
        let mut out = Self::zero(self.n);
        for ((nu, mu), c) in &self.terms {
            let (mut nu, mut mu) = (nu.clone(), mu.clone());
            let slot = match kind {
                Wirtinger::Holomorphic => &mut nu[j - 1],
                Wirtinger::Antiholomorphic => &mut mu[j - 1],
            };
            if *slot == 0 {
                continue;
            }
            let factor = GaussianRational::from_int(*slot as i64);
            *slot -= 1;
            out.add_term(nu, mu, c * &factor);
        }
        Ok(out)
    }

    /// `g^I`: keeps exactly the terms supported on the coordinates in `subset`.
    pub fn restrict(&self, subset: CoordSubset) -> Self {
        let mut out = Self::zero(self.n);
        for ((nu, mu), c) in &self.terms {
            let keep = (0..self.n).all(|i| subset.contains(i + 1) || (nu[i] == 0 && mu[i] == 0));
            if keep {
                out.add_term(nu.clone(), mu.clone(), c.clone());
            }
        }
        out
    }

    /// Partition of the nonempty coordinate subsets into `(I_nv, I_v)`.
    pub fn index_sets(&self) -> (Vec<CoordSubset>, Vec<CoordSubset>) {
        CoordSubset::all_nonempty(self.n).into_iter().partition(|&s| !self.restrict(s).is_zero())
    }

    /// Every single-axis restriction is nonzero.
    pub fn is_convenient(&self) -> bool {
        (1..=self.n).all(|j| !self.restrict(CoordSubset::from_indices([j])).is_zero())
    }

    /// Fixes the variables in `fixed` (1-based index → value) and returns a
    /// polynomial in the remaining variables, renumbered in increasing order.
    pub fn substitute(&self, fixed: &BTreeMap<usize, GaussianRational>) -> Result<Self> {
        for &i in fixed.keys() {
            if i == 0 || i > self.n {
                return Err(Error::IndexOutOfRange { index: i, max: self.n });
            }
        }
        let keep: Vec<usize> = (1..=self.n).filter(|i| !fixed.contains_key(i)).collect();
        if keep.is_empty() {
            return Err(Error::InvalidArgument("cannot fix every variable".into()));
        }
        let mut out = Self::zero(keep.len());
        for ((nu, mu), c) in &self.terms {
            let mut coeff = c.clone();
            for (&i, a) in fixed {
                coeff = &coeff * &a.pow(nu[i - 1]);
                coeff = &coeff * &a.conj().pow(mu[i - 1]);
            }
            let nn = keep.iter().map(|&i| nu[i - 1]).collect();
            let mm = keep.iter().map(|&i| mu[i - 1]).collect();
            out.add_term(nn, mm, coeff);
        }
        Ok(out)
    }

    /// Keeps only the variables in `subset`, renumbered. Terms using other
    /// variables must not exist.
    pub fn project(&self, subset: CoordSubset) -> Self {
        let keep = subset.indices();
        let mut out = Self::zero(keep.len().max(1));
        for ((nu, mu), c) in &self.terms {
            let nn = if keep.is_empty() { vec![0] } else { keep.iter().map(|&i| nu[i - 1]).collect() };
            let mm = if keep.is_empty() { vec![0] } else { keep.iter().map(|&i| mu[i - 1]).collect() };
            out.add_term(nn, mm, c.clone());
        }
        out
    }

    /// Canonical textual form; `parse(format(p), n) == p`.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wirtinger {
    Holomorphic,
    Antiholomorphic,
}

impl fmt::Display for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((nu, mu), c)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for j in 0..self.n {
                match nu[j] {
                    0 => {}
                    1 => factors.push(format!("z{}", j + 1)),
                    e => factors.push(format!("z{}^{}", j + 1, e)),
                }
                match mu[j] {
                    0 => {}
                    1 => factors.push(format!("bar(z{})", j + 1)),
                    e => factors.push(format!("bar(z{})^{}", j + 1, e)),
                }
            }
            let neg = (c.is_real() || c.re.is_zero()) && c.leading_sign() < 0;
            let cabs = if neg { -c } else { c.clone() };
            let body = if factors.is_empty() {
                cabs.to_string()
            } else if cabs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", cabs, factors.join("*"))
            };
            match (k, neg) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MixedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedPolynomial[n={}]({})", self.n, self)
    }
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", ch as char)))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            std::str::from_utf8(&self.src[start..self.pos]).ok()
        }
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let d = self.digits().ok_or_else(|| self.err("expected a natural number"))?;
        d.parse::<u32>().map_err(|_| Error::ExponentOverflow)
    }

    fn var_index(&mut self) -> Result<usize> {
        self.skip_ws();
        if self.src.get(self.pos) != Some(&b'z') {
            return Err(self.err("expected a variable 'z<k>'"));
        }
        self.pos += 1;
        let d = self.digits().ok_or_else(|| self.err("expected a variable index after 'z'"))?;
        let idx: usize = d.parse().map_err(|_| self.err("variable index too large"))?;
        if idx == 0 || idx > self.n {
            return Err(Error::VariableOutOfRange { index: idx, n: self.n });
        }
        Ok(idx)
    }

    fn expr(&mut self) -> Result<MixedPolynomial> {
        let mut acc = MixedPolynomial::zero(self.n);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MixedPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.checked_mul(&f)?;
                }
                Some(b'/') => return Err(Error::DivisionInInput { position: self.pos }),
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MixedPolynomial> {
        let (base, modulus_of) = self.atom()?;
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            Some(self.nat()?)
        } else {
            None
        };
        if let Some(j) = modulus_of {
            let e = exp.ok_or_else(|| self.err("|z| must be raised to an even power"))?;
            if e % 2 != 0 {
                return Err(self.err("|z| must be raised to an even power"));
            }
            let zz = MixedPolynomial::var(j, self.n).mul(&MixedPolynomial::conj_var(j, self.n));
            return zz.checked_pow(e / 2);
        }
        match exp {
            Some(e) => base.checked_pow(e),
            None => Ok(base),
        }
    }

    /// Returns the atom and, for `|zj|`, the index `j`.
    fn atom(&mut self) -> Result<(MixedPolynomial, Option<usize>)> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok((e, None))
            }
            Some(b'|') => {
                self.pos += 1;
                let j = self.var_index()?;
                self.expect(b'|')?;
                Ok((MixedPolynomial::zero(self.n), Some(j)))
            }
            Some(b'z') => {
                let j = self.var_index()?;
                Ok((MixedPolynomial::var(j, self.n), None))
            }
            Some(b'b') => {
                if !self.src[self.pos..].starts_with(b"bar") {
                    return Err(self.err("unexpected identifier"));
                }
                self.pos += 3;
                self.expect(b'(')?;
                let j = self.var_index()?;
                self.expect(b')')?;
                Ok((MixedPolynomial::conj_var(j, self.n), None))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok((MixedPolynomial::constant(GaussianRational::i(), self.n), None))
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.number()?;
                let c = if self.src.get(self.pos) == Some(&b'i') {
                    self.pos += 1;
                    GaussianRational::new(BigRational::zero(), value)
                } else {
                    GaussianRational::from_real(value)
                };
                Ok((MixedPolynomial::constant(c, self.n), None))
            }
            Some(b'/') => Err(Error::DivisionInInput { position: self.pos }),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<BigRational> {
        let int_part = self.digits().ok_or_else(|| self.err("expected a number"))?;
        let mut value = BigRational::from_integer(int_part.parse::<BigInt>().expect("digits"));
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac = self.digits().ok_or_else(|| self.err("expected digits after '.'"))?;
            let num: BigInt = frac.parse().expect("digits");
            let den = BigInt::from(10u32).pow(frac.len() as u32);
            value += BigRational::new(num, den);
        }
        if self.src.get(self.pos) == Some(&b'/') {
            let slash = self.pos;
            self.pos += 1;
            match self.digits() {
                Some(d) => {
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(Error::Syntax { position: slash, message: "zero denominator".into() });
                    }
                    value /= BigRational::from_integer(den);
                }
                None => return Err(Error::DivisionInInput { position: slash }),
            }
        }
        Ok(value)
    }
}

/// Parses an expression in `n` variables into canonical form.
pub fn parse(text: &str, n: usize) -> Result<MixedPolynomial> {
    if n == 0 || n > CoordSubset::MAX_VARS {
        return Err(Error::InvalidArgument(format!("variable count {} not supported", n)));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, n };
    if p.peek().is_none() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        if p.peek() == Some(b'/') {
            return Err(Error::DivisionInInput { position: p.pos });
        }
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a variable-free literal such as `"-3/4"` or `"(1+2i)"`.
pub fn parse_constant(text: &str) -> Result<GaussianRational> {
    let p = parse(text, 1)?;
    match p.num_terms() {
        0 => Ok(GaussianRational::zero()),
        1 => {
            let t = p.terms().next().expect("one term");
            if t.nu[0] == 0 && t.mu[0] == 0 {
                Ok(t.coeff)
            } else {
                Err(Error::InvalidInput(format!("'{}' is not a constant", text)))
            }
        }
        _ => Err(Error::InvalidInput(format!("'{}' is not a constant", text))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn parse_examples() {
        let p = parse("z1^2 + z2^3", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[2, 0], &[0, 0]), g(1, 0));
        assert_eq!(p.coeff(&[0, 3], &[0, 0]), g(1, 0));

        let q = parse("z1*z2^2*bar(z2)", 2).unwrap();
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.coeff(&[1, 2], &[0, 1]), g(1, 0));

        assert!(parse("0", 2).unwrap().is_zero());
    }

    #[test]
    fn parse_sugar_and_literals() {
        let a = parse("|z1|^2", 1).unwrap();
        assert_eq!(a, parse("z1*bar(z1)", 1).unwrap());
        let b = parse("(1/2 - 3i)*z1 + 0.25", 1).unwrap();
        assert_eq!(b.coeff(&[1], &[0]), GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into())));
        assert_eq!(b.coeff(&[0], &[0]), GaussianRational::from_ratio(1, 4));
        assert_eq!(parse("(z1+z2)^2 - z1^2 - z2^2", 2).unwrap(), parse("2*z1*z2", 2).unwrap());
        assert_eq!(parse("-z1 + z1", 1).unwrap(), MixedPolynomial::zero(1));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("z1 +", 2), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z3", 2), Err(Error::VariableOutOfRange { index: 3, n: 2 })));
        assert!(matches!(parse("z1/z2", 2), Err(Error::DivisionInInput { .. })));
        assert!(matches!(parse("1/(z1)", 2), Err(Error::DivisionInInput { .. })));
        assert!(matches!(parse("|z1|^3", 1), Err(Error::Syntax { .. })));
        assert!(matches!(parse("z1^99999999999", 1), Err(Error::ExponentOverflow)));
        assert!(matches!(parse("", 1), Err(Error::Syntax { .. })));
    }

    #[test]
    fn evaluate_examples() {
        let p = parse("z1*bar(z1)", 1).unwrap();
        assert_eq!(p.evaluate(&[g(3, 4)]).unwrap(), g(25, 0));
        let q = parse("z1^2 + z2^3", 2).unwrap();
        assert_eq!(q.evaluate(&[g(1, 0), g(1, 0)]).unwrap(), g(2, 0));
        let r = parse("z1*z2^2*bar(z2)", 2).unwrap();
        assert_eq!(r.evaluate(&[g(1, 0), g(0, 1)]).unwrap(), g(0, 1));
        assert!(matches!(r.evaluate(&[g(1, 0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn wirtinger_examples() {
        let p = parse("z1*bar(z1)", 1).unwrap();
        assert_eq!(p.wirtinger(1, Wirtinger::Holomorphic).unwrap(), parse("bar(z1)", 1).unwrap());
        let q = parse("z1^2+z2^3", 2).unwrap();
        assert!(q.wirtinger(1, Wirtinger::Antiholomorphic).unwrap().is_zero());
        let r = parse("z1*z2^2*bar(z2)", 2).unwrap();
        assert_eq!(r.wirtinger(2, Wirtinger::Antiholomorphic).unwrap(), parse("z1*z2^2", 2).unwrap());
        assert!(matches!(r.wirtinger(3, Wirtinger::Holomorphic), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn restriction_and_index_sets() {
        let p = parse("z1^2+z2^3", 2).unwrap();
        let one = CoordSubset::from_indices([1]);
        assert_eq!(p.restrict(one), parse("z1^2", 2).unwrap());
        assert_eq!(p.restrict(CoordSubset::full(2)), p);
        let (nv, v) = p.index_sets();
        assert_eq!(nv.len(), 3);
        assert!(v.is_empty());
        assert!(p.is_convenient());

        let q = parse("z1*z2^2*bar(z2)", 2).unwrap();
        assert!(q.restrict(one).is_zero());
        let (nv, v) = q.index_sets();
        assert_eq!(v, vec![CoordSubset::from_indices([1]), CoordSubset::from_indices([2])]);
        assert_eq!(nv, vec![CoordSubset::full(2)]);
        assert!(!q.is_convenient());

        let (nv, v) = MixedPolynomial::zero(2).index_sets();
        assert!(nv.is_empty());
        assert_eq!(v.len(), 3);

        assert!(parse("z1*bar(z1)+z2", 2).unwrap().is_convenient());
    }

    #[test]
    fn format_reparses() {
        for s in ["z1^2 + z2^3", "-(1/2)*z1*bar(z2)^2 + (2-3i)*z2 - 7", "i*z1 - 2i*bar(z1)^3", "0"] {
            let p = parse(s, 2).unwrap();
            assert_eq!(parse(&p.format(), 2).unwrap(), p, "round trip of {}", s);
        }
        assert_eq!(parse("z2^3 + z1^2", 2).unwrap().format(), "z1^2 + z2^3");
    }

    #[test]
    fn substitution_fixes_variables() {
        let p = parse("z1*z2^2*bar(z2)", 2).unwrap();
        let mut fixed = BTreeMap::new();
        fixed.insert(1, g(0, 2));
        let r = p.substitute(&fixed).unwrap();
        assert_eq!(r.n(), 1);
        assert_eq!(r, parse("2i*z1^2*bar(z1)", 1).unwrap());
    }
}
