//! Dense univariate polynomials over exact fields, integer PRS gcd, Sturm
//! sequences over ℚ and a floating-point simultaneous root finder.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::gaussian::GaussianRational;
use crate::ring::Field;

/// `Σ coeffs[i] t^i`, trimmed so the last coefficient is nonzero.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

pub type QiPoly = Poly<GaussianRational>;
pub type QPoly = Poly<BigRational>;

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `c t^k`.
    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The variable `t`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lead(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Multiplicity of the root `t = 0`.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `t^k` for the largest possible `k`.
    pub fn strip_t(&self) -> Self {
        Self::new(self.coeffs[self.trailing_zeros().min(self.coeffs.len())..].to_vec())
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add_ref(&rhs.coeff(i))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).sub_ref(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul_ref(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `t^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![F::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let Some(dr) = self.degree() else { return (Self::zero(), Self::zero()) };
        if dr < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); dr - dd + 1];
        for k in (0..=dr - dd).rev() {
            let c = r[k + dd].mul_ref(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub_ref(&c.mul_ref(dj));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(inv) if !self.is_zero() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_ref(&F::from_i64(i as i64))).collect())
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_ref(x).add_ref(c);
        }
        acc
    }

    /// Composition `self(q(t))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Yun's square-free decomposition: monic, pairwise coprime square-free
    /// `f_i` with `self = lead · ∏ f_i^i`, returned as `(f_i, i)` for
    /// nonconstant `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_exact(&a).expect("gcd divides");
            let nc = d.div_exact(&a).expect("gcd divides");
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        out
    }

    /// `f / gcd(f, f')`, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        self.div_exact(&self.gcd(&self.derivative())).expect("gcd divides").monic()
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("{}*t", c),
                _ => format!("{}*t^{}", c, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field + fmt::Display> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl QiPoly {
    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.to_complex()).collect()
    }

    /// Coefficient-wise conjugate.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Real parts, if every coefficient is real.
    pub fn to_rational(&self) -> Option<QPoly> {
        self.coeffs.iter().all(|c| c.is_real()).then(|| QPoly::new(self.coeffs.iter().map(|c| c.re.clone()).collect()))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner_complex(&self.to_complex(), z)
    }
}

// ---------------------------------------------------------------------------
// Sturm sequences over ℚ

impl QPoly {
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        sign(&self.eval(x))
    }

    fn sign_at_infinity(&self, positive: bool) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = sign(&self.lead());
                if positive || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Canonical Sturm sequence `p, p', −rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<QPoly> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let r = seq.last().expect("nonempty").rem(&next).neg();
            seq.push(next);
            next = r;
        }
        seq
    }

    fn variations(values: impl Iterator<Item = i32>) -> usize {
        let signs: Vec<i32> = values.filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        if self.is_zero() {
            panic!("the zero polynomial has infinitely many roots");
        }
        let seq = self.sturm_sequence();
        let lo = Self::variations(seq.iter().map(|p| p.sign_at_infinity(false)));
        let hi = Self::variations(seq.iter().map(|p| p.sign_at_infinity(true)));
        lo - hi
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_in(&self, a: &BigRational, b: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        let va = Self::variations(seq.iter().map(|p| p.sign_at(a)));
        let vb = Self::variations(seq.iter().map(|p| p.sign_at(b)));
        va.saturating_sub(vb)
    }

    /// Cauchy bound: every root has `|x| < bound`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let m = self.coeffs.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::from_integer(1.into())
    }

    /// Disjoint intervals `(a, b]` each containing exactly one real root, in
    /// increasing order. Intervals are refined until narrower than `width`.
    pub fn isolate_real_roots(&self, width: &BigRational) -> Vec<(BigRational, BigRational)> {
        let sf = self.squarefree_part();
        let bound = sf.root_bound();
        let mut stack = vec![(-bound.clone(), bound)];
        let mut out = Vec::new();
        let two = BigRational::from_integer(2.into());
        while let Some((a, b)) = stack.pop() {
            let k = sf.count_roots_in(&a, &b);
            if k == 0 {
                continue;
            }
            if k == 1 && (&b - &a) <= *width {
                out.push((a, b));
                continue;
            }
            let m = (&a + &b) / &two;
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        out.sort();
        out
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials

/// Content (gcd of coefficients, non-negative).
pub fn int_content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn trim_int(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn int_primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = int_content(p);
    if c.is_zero() {
        return Vec::new();
    }
    trim_int(p.iter().map(|x| x / &c).collect())
}

/// Pseudo-remainder `lc(b)^{deg a − deg b + 1} a mod b`.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        r = trim_int(r);
    }
    r
}

/// Primitive gcd of two integer polynomials (coefficient lists, lowest
/// degree first) by the primitive pseudo-remainder sequence. The result has
/// positive leading coefficient; `gcd(0, 0) = 0`.
pub fn int_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (int_primitive(a), int_primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = int_primitive(&int_prem(&a, &b));
        a = b;
        b = r;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// Exact quotient of integer polynomials, if it exists.
pub fn int_poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a = trim_int(a.to_vec());
    let b = trim_int(b.to_vec());
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(|x| x.is_zero()).then(|| trim_int(q))
}

// ---------------------------------------------------------------------------
// Floating-point roots

pub fn horner_complex(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
}

/// All complex roots (with multiplicity) by the Aberth–Ehrlich iteration.
/// `coeffs` lists coefficients from the constant term up; the leading one
/// must be nonzero.
pub fn aberth_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let deriv: Vec<Complex64> = monic.iter().enumerate().skip(1).map(|(i, c)| c * i as f64).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let r0 = radius.min(1e6) * 0.5 + 0.1;
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(r0, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4)).collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let p = horner_complex(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let dp = horner_complex(&deriv, z[k]);
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> QPoly {
        QPoly::new(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    fn qi(v: &[i64]) -> QiPoly {
        QiPoly::new(v.iter().map(|&x| GaussianRational::from_int(x)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = qi(&[-1, 0, 1]);
        let b = qi(&[1, 1]);
        let (quo, r) = a.divrem(&b);
        assert_eq!(quo, qi(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&qi(&[-1, 1])), qi(&[-1, 1]));
        assert_eq!(qi(&[1, 2, 1]).derivative(), qi(&[2, 2]));
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^3 (t+2)^2 t
        let f = qi(&[-1, 1]).pow(3).mul(&qi(&[2, 1]).pow(2)).mul(&qi(&[0, 1]));
        let d = f.squarefree_decomposition();
        let mut rebuilt = QiPoly::one();
        for (p, m) in &d {
            rebuilt = rebuilt.mul(&p.pow(*m));
        }
        assert_eq!(rebuilt, f.monic());
        let mults: Vec<u32> = d.iter().map(|x| x.1).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(q(&[-2, 0, 1]).count_real_roots(), 2);
        assert_eq!(q(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(q(&[0, -1, 0, 1]).count_real_roots(), 3);
        // (t-1)^2 (t+3): two distinct roots
        assert_eq!(q(&[-1, 1]).pow(2).mul(&q(&[3, 1])).count_real_roots(), 2);
        let iso = q(&[-2, 0, 1]).isolate_real_roots(&BigRational::new(1.into(), 1000.into()));
        assert_eq!(iso.len(), 2);
        assert!(iso[1].0 < BigRational::new(1415.into(), 1000.into()) && iso[1].1 > BigRational::new(1414.into(), 1000.into()));
    }

    #[test]
    fn integer_prs_gcd() {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        // (λ^6 - 1) and (λ^2 - 1) share λ^2 - 1
        assert_eq!(int_poly_gcd(&big(&[-1, 0, 0, 0, 0, 0, 1]), &big(&[-1, 0, 1])), big(&[-1, 0, 1]));
        assert_eq!(int_poly_gcd(&big(&[2, 2]), &big(&[3, -3])), big(&[1]));
        assert_eq!(int_poly_div_exact(&big(&[-1, 0, 0, 0, 0, 0, 1]), &big(&[-1, 0, 1])), Some(big(&[1, 0, 1, 0, 1])));
        assert_eq!(int_poly_div_exact(&big(&[1, 0, 1]), &big(&[1, 1])), None);
    }

    #[test]
    fn aberth_finds_roots() {
        let c = [-1.0, 0.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let roots = aberth_roots(&c);
        assert_eq!(roots.len(), 3);
        for r in roots {
            assert!((r.powu(3) - 1.0).norm() < 1e-12);
        }
    }
}
