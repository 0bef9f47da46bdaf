//! Sparse multivariate Laurent polynomials over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::ring::{IntegralDomain, Ring};

/// Exponent vector with trailing zeros trimmed, so keys are independent of
/// the ambient variable count.
pub type Exponents = Vec<i64>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_at(e: &[i64], i: usize) -> i64 {
    e.get(i).copied().unwrap_or(0)
}

fn exp_add(a: &[i64], b: &[i64]) -> Exponents {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| exp_at(a, i) + exp_at(b, i)).collect())
}

fn exp_sub(a: &[i64], b: &[i64]) -> Exponents {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| exp_at(a, i) - exp_at(b, i)).collect())
}

/// `Σ c_e λ^e` with `e ∈ ℤ^vars`. Zero coefficients are never stored.
#[derive(Clone, Default)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    pub fn zero_in(vars: usize) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(c: GaussianRational, vars: usize) -> Self {
        Self::monomial(c, vec![0; vars])
    }

    pub fn monomial(c: GaussianRational, exps: Exponents) -> Self {
        let vars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        Self { vars, terms }
    }

    /// The variable `λ_{index+1}` in a ring of `vars` variables.
    pub fn var(index: usize, vars: usize) -> Self {
        let mut e = vec![0; vars.max(index + 1)];
        e[index] = 1;
        Self::monomial(GaussianRational::one(), e)
    }

    /// `λ^k` in one variable.
    pub fn lambda_pow(k: i64) -> Self {
        Self::monomial(GaussianRational::one(), vec![k])
    }

    /// Univariate polynomial from `(exponent, integer coefficient)` pairs.
    pub fn from_int_terms(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero_in(1);
        for &(e, c) in pairs {
            p.add_term(vec![e], GaussianRational::from_int(c));
        }
        p
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Exponents, GaussianRational)>) -> Self {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            p.vars = p.vars.max(e.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exps: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        self.vars = self.vars.max(exps.len());
        let key = trim(exps);
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

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn with_vars(mut self, vars: usize) -> Self {
        self.vars = self.vars.max(vars);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// A single term `c·λ^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Terms in canonical order, exponents padded to `vars()`.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &GaussianRational)> + '_ {
        let n = self.vars;
        self.terms.iter().map(move |(e, c)| {
            let mut full = e.clone();
            full.resize(n.max(e.len()), 0);
            (full, c)
        })
    }

    pub fn coeff(&self, exps: &[i64]) -> GaussianRational {
        self.terms.get(&trim(exps.to_vec())).cloned().unwrap_or_default()
    }

    /// Componentwise minimum exponent; zero vector for the zero polynomial.
    pub fn min_exponents(&self) -> Exponents {
        let mut m = vec![0i64; self.vars];
        for (k, e) in self.terms.keys().enumerate() {
            for (i, slot) in m.iter_mut().enumerate() {
                let v = exp_at(e, i);
                if k == 0 || v < *slot {
                    *slot = v;
                }
            }
        }
        m
    }

    pub fn max_exponents(&self) -> Exponents {
        let mut m = vec![0i64; self.vars];
        for (k, e) in self.terms.keys().enumerate() {
            for (i, slot) in m.iter_mut().enumerate() {
                let v = exp_at(e, i);
                if k == 0 || v > *slot {
                    *slot = v;
                }
            }
        }
        m
    }

    pub fn mul_monomial(&self, c: &GaussianRational, exps: &[i64]) -> Self {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(e, v)| (exp_add(e, exps), v * c)).collect()
        };
        Self { vars: self.vars.max(exps.len()), terms }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.mul_monomial(c, &[])
    }

    /// Multiplies by a monomial so every exponent is non-negative with minimum
    /// zero in each variable. Returns the shifted polynomial and the shift.
    pub fn shift_to_nonnegative(&self) -> (Self, Exponents) {
        let shift: Exponents = self.min_exponents().into_iter().map(|m| -m).collect();
        (self.mul_monomial(&GaussianRational::one(), &shift), shift)
    }

    /// `λ_var ↦ λ_var^k`. A zero exponent would collapse the variable and is rejected.
    pub fn substitute_power(&self, var: usize, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("substitution exponent must be nonzero".into()));
        }
        let mut out = Self::zero_in(self.vars.max(var + 1));
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            if e2.len() <= var {
                e2.resize(var + 1, 0);
            }
            e2[var] *= k;
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        Ring::pow_u(self, exp as u64).with_vars(self.vars)
    }

    pub fn conj_coeffs(&self) -> Self {
        Self { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect() }
    }

    pub fn eval(&self, point: &[GaussianRational]) -> Option<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                let x = point.get(i)?;
                t = &t * &x.powi(k)?;
            }
            acc += &t;
        }
        Some(acc)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, &k) in e.iter().enumerate() {
                t *= point[i].powi(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    /// Canonical representative of the class `{±λ^u · self}`.
    pub fn normalized_up_to_unit(&self) -> Self {
        let (mut p, _) = self.shift_to_nonnegative();
        if let Some((_, c)) = p.leading_term() {
            if c.leading_sign() < 0 {
                p = p.scale(&GaussianRational::from_int(-1));
            }
        }
        p
    }

    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.normalized_up_to_unit() == other.normalized_up_to_unit()
    }

    /// Exact quotient of polynomials (non-negative exponents) by lex division.
    fn poly_div_exact(a: &Self, b: &Self) -> Option<Self> {
        let (lt_e, lt_c) = b.leading_term()?;
        let lt_e = lt_e.clone();
        let lt_c = lt_c.clone();
        let mut r = a.clone();
        let mut q = Self::zero_in(a.vars.max(b.vars));
        while let Some((e, c)) = r.leading_term() {
            let de = exp_sub(e, &lt_e);
            if de.iter().any(|&x| x < 0) {
                return None;
            }
            let dc = c.checked_div(&lt_c)?;
            r = r.sub_ref(&b.mul_monomial(&dc, &de));
            q.add_term(de, dc);
        }
        Some(q)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { names(i) } else { format!("{}^{}", names(i), x) })
                .collect();
            let neg = c.is_real() && c.leading_sign() < 0;
            let cabs = if neg { -c } else { c.clone() };
            let body = if mono.is_empty() {
                cabs.to_string()
            } else if cabs.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", cabs, mono.join("*"))
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

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars <= 1 {
            self.fmt_with(f, &|_| "lambda".to_string())
        } else {
            self.fmt_with(f, &|i| format!("lambda{}", i + 1))
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        Self::zero_in(0)
    }

    fn one() -> Self {
        Self::constant(GaussianRational::one(), 0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.vars = out.vars.max(rhs.vars);
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.vars = out.vars.max(rhs.vars);
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = Self::zero_in(self.vars.max(rhs.vars));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(exp_add(ea, eb), ca * cb);
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Self { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl IntegralDomain for LaurentPoly {
    /// Exact quotient in the Laurent ring. Both operands are shifted to
    /// polynomials with no monomial factor; in that form any Laurent quotient
    /// is itself a polynomial, so ordinary division decides divisibility.
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero_in(self.vars.max(rhs.vars)));
        }
        if rhs.is_monomial() {
            let (e, c) = rhs.leading_term()?;
            let inv_e: Exponents = e.iter().map(|x| -x).collect();
            return Some(self.mul_monomial(&c.inv()?, &inv_e));
        }
        let (a, sa) = self.shift_to_nonnegative();
        let (b, sb) = rhs.shift_to_nonnegative();
        let q = Self::poly_div_exact(&a, &b)?;
        // self = a·λ^{-sa}, rhs = b·λ^{-sb}  ⇒  self/rhs = q·λ^{sb-sa}
        Some(q.mul_monomial(&GaussianRational::one(), &exp_sub(&sb, &sa)))
    }
}

/// JSON form `{"vars": r, "terms": [{"c": 1, "e": [3, 2, 6]}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LaurentJson {
    pub vars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub c: CoeffJson,
    pub e: Vec<i64>,
}

/// An integer coefficient or a Gaussian-rational literal such as `"1/2"` or `"(1+2i)"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Text(String),
}

impl CoeffJson {
    pub fn from_value(c: &GaussianRational) -> Self {
        match c.to_integer().and_then(|v| i64::try_from(v).ok()) {
            Some(v) => CoeffJson::Int(v),
            None => CoeffJson::Text(c.to_string()),
        }
    }

    pub fn to_value(&self) -> Result<GaussianRational> {
        match self {
            CoeffJson::Int(v) => Ok(GaussianRational::from_int(*v)),
            CoeffJson::Text(s) => crate::mixedpoly::parse_constant(s),
        }
    }
}

impl LaurentPoly {
    pub fn to_json(&self) -> LaurentJson {
        LaurentJson {
            vars: self.vars,
            terms: self.terms().map(|(e, c)| TermJson { c: CoeffJson::from_value(c), e }).collect(),
        }
    }

    pub fn from_json(j: &LaurentJson) -> Result<Self> {
        let mut p = Self::zero_in(j.vars);
        for t in &j.terms {
            if t.e.len() != j.vars {
                return Err(Error::InvalidInput(format!(
                    "exponent vector {:?} does not have {} entries",
                    t.e, j.vars
                )));
            }
            p.add_term(t.e.clone(), t.c.to_value()?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(pairs)
    }

    #[test]
    fn ring_arithmetic() {
        let a = uni(&[(1, 1), (0, -1)]);
        let b = uni(&[(1, 1), (0, 1)]);
        assert_eq!(a.mul_ref(&b), uni(&[(2, 1), (0, -1)]));
        assert!(a.sub_ref(&a).is_zero());
    }

    #[test]
    fn power_substitution() {
        let p = uni(&[(2, 1), (0, -1)]);
        assert_eq!(p.substitute_power(0, 3).unwrap(), uni(&[(6, 1), (0, -1)]));
        assert!(p.substitute_power(0, 0).is_err());
    }

    #[test]
    fn exact_division_laurent() {
        let num = uni(&[(6, 1), (0, -1)]);
        let den = uni(&[(2, 1), (0, -1)]);
        assert_eq!(num.div_exact(&den).unwrap(), uni(&[(4, 1), (2, 1), (0, 1)]));
        let shifted = num.mul_monomial(&GaussianRational::one(), &[-3]);
        assert_eq!(shifted.div_exact(&den).unwrap(), uni(&[(1, 1), (-1, 1), (-3, 1)]));
        assert!(uni(&[(1, 1), (0, 1)]).div_exact(&den).is_none());
    }

    #[test]
    fn multivariate_division() {
        let x = LaurentPoly::var(0, 2);
        let y = LaurentPoly::var(1, 2);
        let one = LaurentPoly::one();
        let f = x.mul_ref(&y).sub_ref(&one);
        let g = x.add_ref(&y);
        let prod = f.mul_ref(&g);
        assert_eq!(prod.div_exact(&g).unwrap(), f);
        assert!(prod.add_ref(&one).div_exact(&g).is_none());
    }

    #[test]
    fn unit_equivalence() {
        let a = uni(&[(1, 1), (0, -1)]);
        let b = uni(&[(0, 1), (1, -1)]).mul_monomial(&GaussianRational::one(), &[5]);
        assert!(a.eq_up_to_unit(&b));
        assert!(!a.eq_up_to_unit(&uni(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn display() {
        assert_eq!(uni(&[(4, 1), (2, 1), (0, 1)]).to_string(), "lambda^4 + lambda^2 + 1");
        let x = LaurentPoly::var(0, 3).pow(3);
        assert_eq!(x.sub_ref(&LaurentPoly::one()).to_string(), "lambda1^3 - 1");
    }
}
