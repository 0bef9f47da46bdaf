//! Semi-decision checks for strong non-degeneracy of face functions and for
//! local tameness along vanishing coordinate subspaces.
//!
//! VERIFIED is only ever produced by an exact rule. REFUTED always carries a
//! torus witness; numerical witnesses are promoted only after an exact
//! re-check or when an exact rule already proved existence.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaussian::{approx_rational, GaussianRational};
use crate::laurent::LaurentPoly;
use crate::mixedpoly::{CoordSubset, MixedPolynomial, Wirtinger};
use crate::newton::{affine_dim, compact_faces, face_function, support, weight_classes, Face};
use crate::upoly::{aberth_roots, QiPoly};
use crate::zeta::{det_poly, LMatrix};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DegeneracyConfig {
    /// Multistarts per face for the numerical search.
    pub starts: usize,
    /// Objective evaluations per start.
    pub max_evals: usize,
    /// Residual below which a floating witness counts as critical.
    pub tolerance: f64,
    pub seed: u64,
    /// Sample radii `r_I` for local tameness.
    pub radii: Vec<f64>,
    pub samples_per_radius: usize,
    /// Bound on free weight entries when enumerating `Δ(P)` classes.
    pub weight_bound: u32,
}

impl Default for DegeneracyConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            max_evals: 2000,
            tolerance: 1e-9,
            seed: 0,
            radii: vec![0.5, 0.25, 0.125],
            samples_per_radius: 4,
            weight_bound: 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "VERIFIED",
            Status::Refuted => "REFUTED",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WitnessPoint {
    Exact(Vec<GaussianRational>),
    Float(Vec<Complex64>),
}

impl WitnessPoint {
    pub fn to_complex(&self) -> Vec<Complex64> {
        match self {
            WitnessPoint::Exact(v) => v.iter().map(|z| z.to_complex()).collect(),
            WitnessPoint::Float(v) => v.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, WitnessPoint::Exact(_))
    }

    /// Embeds the point into `n` coordinates at `positions` (1-based),
    /// filling the others from `fill`.
    fn embed(&self, n: usize, positions: &[usize], fill: &BTreeMap<usize, GaussianRational>) -> Self {
        let value = |i: usize| fill.get(&i).cloned().unwrap_or_else(GaussianRational::one);
        match self {
            WitnessPoint::Exact(v) => {
                let mut out: Vec<GaussianRational> = (1..=n).map(value).collect();
                for (k, &i) in positions.iter().enumerate() {
                    out[i - 1] = v[k].clone();
                }
                WitnessPoint::Exact(out)
            }
            WitnessPoint::Float(v) => {
                let mut out: Vec<Complex64> = (1..=n).map(|i| value(i).to_complex()).collect();
                for (k, &i) in positions.iter().enumerate() {
                    out[i - 1] = v[k];
                }
                WitnessPoint::Float(out)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub point: WitnessPoint,
    /// Criticality residual of the checked function at the point.
    pub residual: f64,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 3)?;
        st.serialize_field("exact", &self.point.is_exact())?;
        match &self.point {
            WitnessPoint::Exact(v) => {
                let txt: Vec<String> = v.iter().map(|z| z.to_string()).collect();
                st.serialize_field("point", &txt)?;
            }
            WitnessPoint::Float(v) => {
                let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
                st.serialize_field("point", &pairs)?;
            }
        }
        st.serialize_field("residual", &self.residual)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: Option<String>,
    pub witness: Option<Witness>,
    pub evidence: String,
}

impl Verdict {
    fn verified(rule: &str, evidence: impl Into<String>) -> Self {
        Self { status: Status::Verified, rule: Some(rule.into()), witness: None, evidence: evidence.into() }
    }

    fn refuted(rule: &str, witness: Witness, evidence: impl Into<String>) -> Self {
        Self { status: Status::Refuted, rule: Some(rule.into()), witness: Some(witness), evidence: evidence.into() }
    }

    fn unknown(rule: Option<&str>, witness: Option<Witness>, evidence: impl Into<String>) -> Self {
        Self { status: Status::Unknown, rule: rule.map(Into::into), witness, evidence: evidence.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FaceVerdict {
    pub face: Face,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TamenessVerdict {
    pub subset: CoordSubset,
    /// Distinct `Δ(P)` classes with `I(P) = subset`.
    pub classes: usize,
    /// Restricted functions checked.
    pub instances: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
}

// ---------------------------------------------------------------------------
// Criticality

/// First-order data of `p`: the Wirtinger partials.
struct Jet {
    dz: Vec<MixedPolynomial>,
    dzb: Vec<MixedPolynomial>,
    /// `(|c|, ν + μ)` per term, for the gradient scale.
    terms: Vec<(f64, Vec<u32>)>,
}

impl Jet {
    fn new(p: &MixedPolynomial) -> Self {
        let d = |k| (1..=p.n()).map(|j| p.wirtinger(j, k).expect("index in range")).collect();
        let terms = p.terms().map(|t| (t.coeff.to_complex().norm(), t.lattice_point())).collect();
        Self { dz: d(Wirtinger::Holomorphic), dzb: d(Wirtinger::Antiholomorphic), terms }
    }

    /// Upper bound for the Jacobian norm from the term magnitudes.
    fn scale(&self, z: &[Complex64]) -> f64 {
        let r: Vec<f64> = z.iter().map(|w| w.norm()).collect();
        self.terms
            .iter()
            .map(|(c, e)| {
                let size: f64 = c * e.iter().zip(&r).map(|(k, x)| x.powi(*k as i32)).product::<f64>();
                size * e.iter().zip(&r).map(|(k, x)| *k as f64 / x).sum::<f64>()
            })
            .sum()
    }

    /// Columns of the real Jacobian of `(Re p, Im p)` as complex numbers:
    /// `∂/∂x_j = P + Q`, `∂/∂y_j = i(P − Q)`.
    fn columns(&self, z: &[Complex64]) -> Vec<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let mut out = Vec::with_capacity(2 * z.len());
        for j in 0..z.len() {
            let p = self.dz[j].eval_f64_unchecked(z);
            let q = self.dzb[j].eval_f64_unchecked(z);
            out.push(p + q);
            out.push(i * (p - q));
        }
        out
    }

    fn exact_columns(&self, z: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        let i = GaussianRational::i();
        let mut out = Vec::with_capacity(2 * z.len());
        for j in 0..z.len() {
            let p = self.dz[j].evaluate(z)?;
            let q = self.dzb[j].evaluate(z)?;
            out.push(&p + &q);
            out.push(&i * &(&p - &q));
        }
        Ok(out)
    }

    /// `(σ_min, σ_max)` of the real `2 × 2n` Jacobian.
    fn singular_values(&self, z: &[Complex64]) -> (f64, f64) {
        singular_values(&self.columns(z))
    }
}

fn singular_values(cols: &[Complex64]) -> (f64, f64) {
    let a: f64 = cols.iter().map(|c| c.re * c.re).sum();
    let c: f64 = cols.iter().map(|c| c.im * c.im).sum();
    let b: f64 = cols.iter().map(|c| c.re * c.im).sum();
    // det(JJᵀ) as a sum of squared 2×2 minors avoids cancellation.
    let mut det = 0.0;
    for k in 0..cols.len() {
        for l in k + 1..cols.len() {
            let m = cols[k].re * cols[l].im - cols[k].im * cols[l].re;
            det += m * m;
        }
    }
    let half = 0.5 * (a - c);
    let lmax = 0.5 * (a + c) + (half * half + b * b).sqrt();
    if lmax <= 0.0 {
        return (0.0, 0.0);
    }
    ((det / lmax).max(0.0).sqrt(), lmax.sqrt())
}

fn check_torus<T>(point: &[T], is_zero: impl Fn(&T) -> bool) -> Result<()> {
    match point.iter().position(is_zero) {
        Some(k) => Err(Error::ZeroCoordinate(k + 1)),
        None => Ok(()),
    }
}

/// Smallest singular value of the real Jacobian of `(Re p, Im p)` at a torus
/// point.
pub fn criticality_residual(p: &MixedPolynomial, point: &[Complex64]) -> Result<f64> {
    if point.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: point.len() });
    }
    check_torus(point, |z| *z == Complex64::new(0.0, 0.0))?;
    Ok(Jet::new(p).singular_values(point).0)
}

/// Exact test that the real Jacobian has rank below 2 at a torus point.
pub fn is_critical_exact(p: &MixedPolynomial, point: &[GaussianRational]) -> Result<bool> {
    if point.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: point.len() });
    }
    check_torus(point, |z| z.is_zero())?;
    let cols = Jet::new(p).exact_columns(point)?;
    for k in 0..cols.len() {
        for l in k + 1..cols.len() {
            let m = &(&cols[k].re * &cols[l].im) - &(&cols[k].im * &cols[l].re);
            if !m.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn exact_witness(f: &MixedPolynomial, point: Vec<GaussianRational>) -> Witness {
    let residual = criticality_residual(f, &point.iter().map(|z| z.to_complex()).collect::<Vec<_>>()).unwrap_or(f64::NAN);
    Witness { point: WitnessPoint::Exact(point), residual }
}

fn float_witness(f: &MixedPolynomial, point: Vec<Complex64>) -> Witness {
    let residual = criticality_residual(f, &point).unwrap_or(f64::NAN);
    Witness { point: WitnessPoint::Float(point), residual }
}

// ---------------------------------------------------------------------------
// Single-function check

/// Decides whether `f` has a critical point on the torus `(ℂ*)ⁿ`.
/// VERIFIED means no critical point.
pub fn check_function(f: &MixedPolynomial, cfg: &DegeneracyConfig) -> Verdict {
    let n = f.n();
    if f.is_zero() {
        return Verdict::refuted("zero", exact_witness(f, vec![GaussianRational::one(); n]), "the function vanishes identically");
    }
    if f.num_terms() == 1 {
        let t = f.terms().next().expect("one term");
        return if t.nu == t.mu {
            Verdict::refuted(
                "monomial",
                exact_witness(f, vec![GaussianRational::one(); n]),
                "single term with equal holomorphic and antiholomorphic exponents is real up to a constant",
            )
        } else {
            Verdict::verified("monomial", "single term with distinct holomorphic and antiholomorphic exponents")
        };
    }
    let used = f.variables_used();
    if used.len() < n {
        let positions = used.indices();
        let mut v = check_function(&f.project(used), cfg);
        if let Some(w) = v.witness.take() {
            v.witness = Some(Witness { point: w.point.embed(n, &positions, &BTreeMap::new()), residual: w.residual });
        }
        return v;
    }
    if n == 1 {
        if let Some(d) = homogeneous_degree(f) {
            return one_variable_circle(f, d);
        }
    }
    if n == 2 && f.is_holomorphic() {
        if let Some(v) = holomorphic_two_variables(f) {
            return v;
        }
    }
    numeric_search(f, cfg)
}

fn homogeneous_degree(f: &MixedPolynomial) -> Option<u32> {
    let mut degs = f.terms().map(|t| t.lattice_point().iter().sum::<u32>());
    let d = degs.next()?;
    degs.all(|e| e == d).then_some(d)
}

/// One variable, `f = Σ c_ν z^ν z̄^(d−ν) = z̄^d P(z/z̄)`. A torus point is
/// critical iff `|tP′(t)| = |dP(t) − tP′(t)|` at `t = z/z̄` on the unit circle.
fn one_variable_circle(f: &MixedPolynomial, d: u32) -> Verdict {
    const RULE: &str = "one-variable-circle";
    let d = d as usize;
    let mut c = vec![GaussianRational::zero(); d + 1];
    for t in f.terms() {
        c[t.nu[0] as usize] = t.coeff.clone();
    }
    let a: Vec<GaussianRational> = (0..=d).map(|v| &c[v] * &GaussianRational::from_int(v as i64)).collect();
    let b: Vec<GaussianRational> = (0..=d).map(|v| &c[v] * &GaussianRational::from_int((d - v) as i64)).collect();
    // q[k + d] is the coefficient of t^k in A(t)Ā(1/t) − B(t)B̄(1/t).
    let mut q = vec![GaussianRational::zero(); 2 * d + 1];
    for x in 0..=d {
        for y in 0..=d {
            let term = &(&a[x] * &a[y].conj()) - &(&b[x] * &b[y].conj());
            q[x + d - y] += &term;
        }
    }
    if q.iter().all(|x| x.is_zero()) {
        return Verdict::refuted(
            RULE,
            exact_witness(f, vec![GaussianRational::one()]),
            "|∂f/∂z| = |∂f/∂z̄| identically on the torus; every point is critical",
        );
    }
    let at_minus_one: GaussianRational =
        q.iter().enumerate().map(|(k, x)| if (k + d) % 2 == 0 { x.clone() } else { -x }).sum();
    if at_minus_one.is_zero() {
        return Verdict::refuted(RULE, exact_witness(f, vec![GaussianRational::i()]), "critical along z/z̄ = −1");
    }
    // Cayley substitution t = (1+is)/(1−is) clears the circle to the real line.
    let plus = QiPoly::new(vec![GaussianRational::one(), GaussianRational::i()]);
    let minus = QiPoly::new(vec![GaussianRational::one(), -GaussianRational::i()]);
    let mut r = QiPoly::zero();
    for (k, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let term = plus.pow(k as u32).mul(&minus.pow((2 * d - k) as u32)).scale(x);
        r = r.add(&term);
    }
    let Some(r) = r.to_rational() else {
        return Verdict::unknown(Some(RULE), None, "circle polynomial is not real; rule not applicable");
    };
    if r.count_real_roots() == 0 {
        return Verdict::verified(RULE, "|∂f/∂z|² − |∂f/∂z̄|² has no zero on the unit circle (Sturm count)");
    }
    let evidence = "|∂f/∂z|² − |∂f/∂z̄|² vanishes on the unit circle (Sturm count)";
    let width = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
    let roots = r.isolate_real_roots(&width);
    let sf = r.squarefree_part();
    for (lo, hi) in &roots {
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        let s = approx_rational(num_traits::ToPrimitive::to_f64(&mid).unwrap_or(0.0), 1_000_000);
        if sf.sign_at(&s) == 0 {
            let z = GaussianRational::new(BigRational::one(), s);
            return Verdict::refuted(RULE, exact_witness(f, vec![z]), evidence);
        }
    }
    let (lo, hi) = &roots[0];
    let mid = num_traits::ToPrimitive::to_f64(&((lo + hi) / BigRational::from_integer(2.into()))).unwrap_or(0.0);
    Verdict::refuted(RULE, float_witness(f, vec![Complex64::new(1.0, mid)]), evidence)
}

// ---------------------------------------------------------------------------
// Holomorphic functions of two variables

/// Divides out the largest monomial factor of a holomorphic polynomial.
fn strip_monomial(f: &MixedPolynomial) -> MixedPolynomial {
    let n = f.n();
    let mut low = vec![u32::MAX; n];
    for t in f.terms() {
        for j in 0..n {
            low[j] = low[j].min(t.nu[j]);
        }
    }
    let mut out = MixedPolynomial::zero(n);
    for t in f.terms() {
        let nu = t.nu.iter().zip(&low).map(|(a, b)| a - b).collect();
        out.add_term(nu, t.mu.clone(), t.coeff.clone());
    }
    out
}

fn degree_in(f: &MixedPolynomial, var: usize) -> u32 {
    f.terms().map(|t| t.nu[var]).max().unwrap_or(0)
}

/// Coefficients in the `outer` variable (0-based), each a polynomial in the
/// other one.
fn to_bipoly(f: &MixedPolynomial, outer: usize) -> Vec<QiPoly> {
    let inner = 1 - outer;
    let deg = degree_in(f, outer) as usize;
    let mut rows = vec![Vec::<GaussianRational>::new(); deg + 1];
    for t in f.terms() {
        let row = &mut rows[t.nu[outer] as usize];
        let k = t.nu[inner] as usize;
        if row.len() <= k {
            row.resize(k + 1, GaussianRational::zero());
        }
        row[k] = t.coeff.clone();
    }
    rows.into_iter().map(QiPoly::new).collect()
}

/// A holomorphic polynomial in one variable as a `QiPoly`.
fn univariate(f: &MixedPolynomial, var: usize) -> QiPoly {
    let mut c = vec![GaussianRational::zero(); degree_in(f, var) as usize + 1];
    for t in f.terms() {
        c[t.nu[var] as usize] = t.coeff.clone();
    }
    QiPoly::new(c)
}

fn to_laurent(p: &QiPoly) -> LaurentPoly {
    LaurentPoly::from_terms(
        1,
        p.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (vec![k as i64], c.clone())),
    )
}

fn from_laurent(p: &LaurentPoly) -> QiPoly {
    let (shifted, _) = p.shift_to_nonnegative();
    let top = shifted.terms().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
    let mut c = vec![GaussianRational::zero(); top + 1];
    for (e, v) in shifted.terms() {
        c[e[0] as usize] = v.clone();
    }
    QiPoly::new(c)
}

/// Sylvester resultant of two polynomials given by their coefficient lists
/// in the eliminated variable.
fn resultant(a: &[QiPoly], b: &[QiPoly]) -> QiPoly {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return QiPoly::one();
    }
    let mut mat = LMatrix::from_fn(size, size, |_, _| LaurentPoly::zero_in(1));
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat.set(i, i + k, to_laurent(c));
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat.set(n + i, i + k, to_laurent(c));
        }
    }
    let det = det_poly(&mat);
    if det.is_zero() {
        QiPoly::zero()
    } else {
        from_laurent(&det)
    }
}

fn has_nonzero_root(p: &QiPoly) -> bool {
    p.strip_t().degree().is_some_and(|d| d > 0)
}

/// Nonzero roots of a univariate polynomial, exact ones first.
fn nonzero_roots(g: &QiPoly) -> (Vec<GaussianRational>, Vec<Complex64>) {
    let g = g.strip_t().squarefree_part();
    if g.degree() == Some(1) {
        let r = -(&g.coeff(0) / &g.coeff(1));
        return (vec![r], Vec::new());
    }
    let mut exact = Vec::new();
    let mut approx = Vec::new();
    for z in aberth_roots(&g.to_complex()) {
        if z.norm() < 1e-12 {
            continue;
        }
        let q = GaussianRational::approximate(z, 1_000_000);
        if !q.is_zero() && g.eval(&q).is_zero() {
            exact.push(q);
        } else {
            approx.push(z);
        }
    }
    (exact, approx)
}

const SLICES: [(i64, i64); 8] = [(1, 0), (2, 0), (-1, 0), (0, 1), (3, 0), (1, -1), (-2, 0), (2, 3)];

/// Searches for a common torus zero of `f1`, `f2` on slices where variable
/// `fixed` (1-based) takes one of the given values.
fn common_zero_witness(
    f: &MixedPolynomial,
    f1: &MixedPolynomial,
    f2: &MixedPolynomial,
    slices: &[(usize, GaussianRational)],
) -> Option<Witness> {
    let mut fallback: Option<Witness> = None;
    for (fixed, c) in slices {
        let (fixed, c) = (*fixed, c.clone());
        let free = 2 - fixed;
        let at = BTreeMap::from([(fixed, c.clone())]);
        let (Ok(g1), Ok(g2)) = (f1.substitute(&at), f2.substitute(&at)) else { continue };
        let g = univariate(&g1, 0).gcd(&univariate(&g2, 0));
        if g.is_zero() || !has_nonzero_root(&g) {
            continue;
        }
        let place = |b: GaussianRational| if fixed == 1 { vec![c.clone(), b] } else { vec![b, c.clone()] };
        let (exact, approx) = nonzero_roots(&g);
        for b in exact {
            let pt = place(b);
            if is_critical_exact(f, &pt).unwrap_or(false) {
                return Some(exact_witness(f, pt));
            }
        }
        if fallback.is_none() {
            if let Some(&b) = approx.first() {
                let mut pt = vec![c.to_complex(); 2];
                pt[free] = b;
                fallback = Some(float_witness(f, pt));
            }
        }
    }
    fallback
}

fn holomorphic_two_variables(f: &MixedPolynomial) -> Option<Verdict> {
    const RULE: &str = "holomorphic-resultant";
    let f1 = strip_monomial(&f.wirtinger(1, Wirtinger::Holomorphic).ok()?);
    let f2 = strip_monomial(&f.wirtinger(2, Wirtinger::Holomorphic).ok()?);
    let default_slices: Vec<(usize, GaussianRational)> = [1usize, 2]
        .iter()
        .flat_map(|&k| SLICES.iter().map(move |&(a, b)| (k, GaussianRational::from_ints(a, b))))
        .collect();
    let common = |evidence: &str| match common_zero_witness(f, &f1, &f2, &default_slices) {
        Some(w) => Verdict::refuted(RULE, w, evidence),
        None => Verdict::unknown(Some(RULE), None, format!("{evidence}; no witness located")),
    };
    if f1.is_zero() || f2.is_zero() {
        let g = if f1.is_zero() { &f2 } else { &f1 };
        return Some(if g.num_terms() == 1 {
            Verdict::verified(RULE, "the only nonzero partial derivative is a monomial")
        } else {
            common("the only nonzero partial derivative has torus zeros")
        });
    }
    if f1.num_terms() == 1 || f2.num_terms() == 1 {
        return Some(Verdict::verified(RULE, "a partial derivative is a monomial times a constant"));
    }
    for var in [0usize, 1] {
        let other = 1 - var;
        if degree_in(&f1, other) == 0 && degree_in(&f2, other) == 0 {
            let g = univariate(&f1, var).gcd(&univariate(&f2, var));
            return Some(if has_nonzero_root(&g) {
                common("the partial derivatives share a one-variable factor")
            } else {
                Verdict::verified(RULE, "the partial derivatives have no common nonzero root")
            });
        }
    }
    let r2 = resultant(&to_bipoly(&f1, 1), &to_bipoly(&f2, 1));
    let r1 = resultant(&to_bipoly(&f1, 0), &to_bipoly(&f2, 0));
    if r1.is_zero() || r2.is_zero() {
        return Some(common("the partial derivatives share a non-monomial factor"));
    }
    if !has_nonzero_root(&r1) || !has_nonzero_root(&r2) {
        return Some(Verdict::verified(RULE, "a resultant of the partial derivatives has no nonzero root"));
    }
    let (roots1, _) = nonzero_roots(&r2);
    let (roots2, _) = nonzero_roots(&r1);
    let slices: Vec<(usize, GaussianRational)> =
        roots1.into_iter().map(|a| (1, a)).chain(roots2.into_iter().map(|b| (2, b))).collect();
    if let Some(w) = common_zero_witness(f, &f1, &f2, &slices).filter(|w| w.point.is_exact()) {
        return Some(Verdict::refuted(RULE, w, "common zero of the partial derivatives over a rational root of a resultant"));
    }
    let pts = support(f).ok()?;
    if affine_dim(&pts) <= 1 {
        return Some(Verdict::verified(
            RULE,
            "collinear support: the critical locus is finite and invariant under a weighted ℂ* action, so it misses the torus",
        ));
    }
    None
}

// ---------------------------------------------------------------------------
// Numerical search

/// Downhill simplex minimization. Returns `(value, point)`.
fn nelder_mead(f: &impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, max_evals: usize) -> (f64, Vec<f64>) {
    let n = x0.len();
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    simplex.push((f(x0), x0.to_vec()));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        simplex.push((f(&x), x));
    }
    let mut evals = n + 1;
    let blend = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect() };
    loop {
        simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
        let spread = simplex[n].0 - simplex[0].0;
        if evals >= max_evals || spread <= 1e-15 * (1.0 + simplex[0].0.abs()) {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (_, x) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].1.clone();
        let xr = blend(&centroid, &worst, -1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < simplex[0].0 {
            let xe = blend(&centroid, &worst, -2.0);
            let fe = f(&xe);
            evals += 1;
            simplex[n] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < simplex[n - 1].0 {
            simplex[n] = (fr, xr);
        } else {
            let (xc, fc) = if fr < simplex[n].0 {
                let x = blend(&centroid, &xr, 0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = blend(&centroid, &worst, 0.5);
                let v = f(&x);
                (x, v)
            };
            evals += 1;
            if fc < fr.min(simplex[n].0) {
                simplex[n] = (fc, xc);
            } else {
                let best = simplex[0].1.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let x = blend(&best, &entry.1, 0.5);
                    *entry = (f(&x), x);
                }
                evals += n;
            }
        }
    }
    simplex.sort_by(|a, b| a.0.total_cmp(&b.0));
    simplex.swap_remove(0)
}

fn to_point(x: &[f64]) -> Vec<Complex64> {
    x.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

fn numeric_search(f: &MixedPolynomial, cfg: &DegeneracyConfig) -> Verdict {
    const RULE: &str = "numeric-multistart";
    let n = f.n();
    let jet = Jet::new(f);
    let objective = |x: &[f64]| -> f64 {
        let z = to_point(x);
        let mut barrier = 0.0;
        for w in &z {
            let r = w.norm();
            barrier += (0.2 - r).max(0.0) * 10.0 + (r - 5.0).max(0.0);
        }
        let (lo, _) = jet.singular_values(&z);
        let scale = jet.scale(&z);
        let ratio = if scale > 0.0 { lo / scale } else { 0.0 };
        ratio + barrier
    };
    let runs: Vec<(f64, Vec<f64>)> = (0..cfg.starts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k as u64);
            let x0: Vec<f64> = (0..n)
                .flat_map(|_| {
                    let r: f64 = rng.gen_range(0.5..2.0);
                    let th: f64 = rng.gen_range(0.0..TAU);
                    [r * th.cos(), r * th.sin()]
                })
                .collect();
            nelder_mead(&objective, &x0, 0.25, cfg.max_evals)
        })
        .collect();
    let mut best = &runs[0];
    for r in &runs[1..] {
        if r.0 < best.0 {
            best = r;
        }
    }
    let (mut val, mut x) = best.clone();
    for step in [1e-3, 1e-6] {
        let (v, y) = nelder_mead(&objective, &x, step, cfg.max_evals);
        if v < val {
            val = v;
            x = y;
        }
    }
    let budget = format!("{} starts, {} evaluations each, seed {}", cfg.starts, cfg.max_evals, cfg.seed);
    let z = to_point(&x);
    if val < 1e-6 {
        for max_den in [10_000u64, 1_000_000] {
            let q: Vec<GaussianRational> = z.iter().map(|w| GaussianRational::approximate(*w, max_den)).collect();
            if q.iter().all(|w| !w.is_zero()) && is_critical_exact(f, &q).unwrap_or(false) {
                return Verdict::refuted(RULE, exact_witness(f, q), format!("critical point confirmed exactly ({budget})"));
            }
        }
    }
    if val < cfg.tolerance {
        return Verdict::unknown(
            Some(RULE),
            Some(float_witness(f, z)),
            format!("suspected critical point, not confirmed exactly ({budget})"),
        );
    }
    Verdict::unknown(None, None, format!("no critical point found; minimal relative residual {val:.3e} ({budget})"))
}

// ---------------------------------------------------------------------------
// Faces and tameness

/// Spot-check of image coverage: number of the 8 argument sectors hit by
/// sampled torus values.
fn argument_sectors(f: &MixedPolynomial, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut hit = [false; 8];
    for _ in 0..512 {
        let z: Vec<Complex64> = (0..f.n())
            .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU)))
            .collect();
        let v = f.eval_f64_unchecked(&z);
        if v.norm() > 0.0 {
            let s = ((v.arg() + std::f64::consts::PI) / TAU * 8.0).floor() as usize;
            hit[s.min(7)] = true;
        }
    }
    hit.iter().filter(|h| **h).count()
}

/// Checks every compact face function of `p` for torus critical points.
pub fn check_strong_nondegeneracy(p: &MixedPolynomial, cfg: &DegeneracyConfig) -> Result<Vec<FaceVerdict>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let poly = compact_faces(p)?;
    let mut out = Vec::with_capacity(poly.faces.len());
    for face in poly.faces {
        let g = face_function(p, &face);
        let mut verdict = check_function(&g, cfg);
        if face.dim >= 1 {
            let k = argument_sectors(&g, cfg.seed);
            verdict.evidence = format!("{}; surjectivity spot-check: {k}/8 argument sectors hit (not a certificate)", verdict.evidence);
        }
        out.push(FaceVerdict { face, verdict });
    }
    Ok(out)
}

fn sample_parameters(subset: CoordSubset, cfg: &DegeneracyConfig) -> Vec<BTreeMap<usize, GaussianRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(subset.bits());
    let size = subset.len() as i64;
    let mut out = Vec::new();
    for &r in &cfg.radii {
        // Each coordinate has modulus at most r/(√2·|I|).
        let scale = approx_rational(r, 1 << 30) / BigRational::from_integer(BigInt::from(32 * size));
        for _ in 0..cfg.samples_per_radius {
            let mut a = BTreeMap::new();
            for j in subset.indices() {
                let (x, y) = loop {
                    let x: i64 = rng.gen_range(-16..=16);
                    let y: i64 = rng.gen_range(-16..=16);
                    if x != 0 || y != 0 {
                        break (x, y);
                    }
                };
                let re = BigRational::from_integer(x.into()) * &scale;
                let im = BigRational::from_integer(y.into()) * &scale;
                a.insert(j, GaussianRational::new(re, im));
            }
            out.push(a);
        }
    }
    out
}

/// For each vanishing subset `I`, checks the face functions `g_P` with
/// `I(P) = I` after fixing `z_I` to sampled small torus values.
pub fn check_local_tameness(p: &MixedPolynomial, cfg: &DegeneracyConfig) -> Result<Vec<TamenessVerdict>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if cfg.radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::InvalidArgument("radii must be positive".into()));
    }
    let n = p.n();
    let (_, vanishing) = p.index_sets();
    let mut out = Vec::new();
    for subset in vanishing {
        if subset.len() == n {
            continue;
        }
        let free = subset.complement(n).indices();
        let classes = weight_classes(p, subset, cfg.weight_bound)?;
        let samples = sample_parameters(subset, cfg);
        let mut instances = 0;
        let mut rules: Vec<String> = Vec::new();
        let mut refuted: Option<Verdict> = None;
        let mut unknown: Option<String> = None;
        'classes: for (w, face) in &classes {
            let g = face_function(p, face);
            for a in &samples {
                let h = g.substitute(a)?;
                let describe = |extra: &str| format!("weight {w}, z_I = {}{extra}", fmt_params(a));
                instances += 1;
                if h.is_zero() {
                    let pt = WitnessPoint::Exact(vec![GaussianRational::one(); free.len()]).embed(n, &free, a);
                    let wit = Witness { point: pt, residual: 0.0 };
                    refuted = Some(Verdict::refuted("zero", wit, describe(": restricted function vanishes")));
                    break 'classes;
                }
                for hf in compact_faces(&h)?.faces {
                    let hg = face_function(&h, &hf);
                    let v = check_function(&hg, cfg);
                    match v.status {
                        Status::Refuted => {
                            let w0 = v.witness.expect("refutation carries a witness");
                            let pt = w0.point.embed(n, &free, a);
                            let wit = Witness { point: pt, residual: w0.residual };
                            let ev = describe(&format!(", face {hf}: {}", v.evidence));
                            refuted = Some(Verdict { status: Status::Refuted, rule: v.rule, witness: Some(wit), evidence: ev });
                            break 'classes;
                        }
                        Status::Unknown => {
                            unknown.get_or_insert_with(|| describe(&format!(", face {hf}: {}", v.evidence)));
                        }
                        Status::Verified => {
                            let rule = v.rule.unwrap_or_default();
                            if !rules.contains(&rule) {
                                rules.push(rule);
                            }
                        }
                    }
                }
            }
        }
        let verdict = if let Some(v) = refuted {
            v
        } else if let Some(ev) = unknown {
            Verdict::unknown(None, None, format!("undecided instance: {ev}"))
        } else {
            let uniform = rules.iter().all(|r| r == "monomial");
            let scope = if uniform {
                "certificate is uniform in the fixed coordinates"
            } else {
                "certificate holds at the sampled fixed coordinates"
            };
            Verdict {
                status: Status::Verified,
                rule: Some(rules.join("+")),
                witness: None,
                evidence: format!("{} weight classes, {instances} instances, radii {:?}; {scope}", classes.len(), cfg.radii),
            }
        };
        out.push(TamenessVerdict { subset, classes: classes.len(), instances, verdict });
    }
    Ok(out)
}

fn fmt_params(a: &BTreeMap<usize, GaussianRational>) -> String {
    let parts: Vec<String> = a.iter().map(|(j, v)| format!("z{j}={v}")).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixedpoly::parse;

    fn cfg() -> DegeneracyConfig {
        DegeneracyConfig::default()
    }

    #[test]
    fn residual_examples() {
        let one = Complex64::new(1.0, 0.0);
        let p = parse("z1^2 + z2^3", 2).unwrap();
        assert!(criticality_residual(&p, &[one, one]).unwrap() > 0.1);
        let q = parse("z1*bar(z1)", 1).unwrap();
        assert!(criticality_residual(&q, &[Complex64::new(0.3, -1.2)]).unwrap() < 1e-12);
        let r = parse("z1^2*bar(z1)", 1).unwrap();
        assert!(criticality_residual(&r, &[one]).unwrap() > 0.5);
        assert_eq!(criticality_residual(&p, &[one, Complex64::new(0.0, 0.0)]), Err(Error::ZeroCoordinate(2)));
    }

    #[test]
    fn monomial_rule() {
        assert_eq!(check_function(&parse("z1*z2*bar(z2)", 2).unwrap(), &cfg()).status, Status::Verified);
        let v = check_function(&parse("3*z1*bar(z1)*z2^2*bar(z2)^2", 2).unwrap(), &cfg());
        assert_eq!(v.status, Status::Refuted);
    }

    #[test]
    fn one_variable_rule() {
        let v = check_function(&parse("z1^2*bar(z1) + z1*bar(z1)^2", 1).unwrap(), &cfg());
        // z²z̄ + zz̄² = |z|²(z + z̄) is real-valued.
        assert_eq!(v.status, Status::Refuted);
        assert_eq!(v.rule.as_deref(), Some("one-variable-circle"));
        let v = check_function(&parse("z1^3 + bar(z1)^3", 1).unwrap(), &cfg());
        assert_eq!(v.status, Status::Refuted);
        let w = v.witness.unwrap();
        assert!(w.residual < 1e-9);
        let v = check_function(&parse("z1^3 + 1/2*bar(z1)^3", 1).unwrap(), &cfg());
        assert_eq!(v.status, Status::Verified);
        let v = check_function(&parse("z1^2*bar(z1) + 2*z1*bar(z1)^2", 1).unwrap(), &cfg());
        assert_eq!(v.status, Status::Verified);
        // Critical where cos θ = −7/8 with t = e^{iθ}: an irrational point.
        let v = check_function(&parse("z1^3 + 2*z1^2*bar(z1)", 1).unwrap(), &cfg());
        assert_eq!(v.status, Status::Refuted);
        let w = v.witness.unwrap();
        assert!(!w.point.is_exact());
        assert!(w.residual < 1e-9, "residual {}", w.residual);
        let v = check_function(&parse("z1^3 + 3*z1^2*bar(z1)", 1).unwrap(), &cfg());
        assert_eq!(v.witness.unwrap().point, WitnessPoint::Exact(vec![GaussianRational::i()]));
    }

    #[test]
    fn holomorphic_rule() {
        for (text, status) in [
            ("z1^2 + z2^3", Status::Verified),
            ("z1^2*z2 + z2^4", Status::Verified),
            ("(z1 + z2)^2", Status::Refuted),
            ("z1^3 + z2^3 - 3*z1*z2", Status::Refuted),
            ("z1^3 + z2^3 + z1*z2", Status::Refuted),
        ] {
            let p = parse(text, 2).unwrap();
            let v = check_function(&p, &cfg());
            assert_eq!(v.status, status, "{text}: {}", v.evidence);
            if let Some(w) = v.witness {
                assert!(w.residual < 1e-9, "{text}");
            }
        }
    }

    #[test]
    fn numeric_search_refutes_real_product() {
        // Real-valued in two variables: every point is critical.
        let p = parse("z1*bar(z1) + z2*bar(z2)", 2).unwrap();
        let v = check_function(&p, &cfg());
        assert_eq!(v.status, Status::Refuted);
        assert!(v.witness.unwrap().point.is_exact());
    }

    #[test]
    fn tameness_discriminates() {
        let bad = parse("z1*z2*bar(z2)", 2).unwrap();
        let v = check_local_tameness(&bad, &cfg()).unwrap();
        let one = v.iter().find(|t| t.subset == CoordSubset::from_indices([1])).unwrap();
        assert_eq!(one.verdict.status, Status::Refuted);
        let good = parse("z1*z2^2*bar(z2)", 2).unwrap();
        let v = check_local_tameness(&good, &cfg()).unwrap();
        assert!(v.iter().all(|t| t.verdict.status == Status::Verified));
        assert!(check_local_tameness(&parse("z1^2 + z2^3", 2).unwrap(), &cfg()).unwrap().is_empty());
    }

    #[test]
    fn face_checks_and_json() {
        let p = parse("z1^2 + z2^3", 2).unwrap();
        let v = check_strong_nondegeneracy(&p, &cfg()).unwrap();
        assert!(v.iter().all(|f| f.verdict.status == Status::Verified));
        let json = serde_json::to_value(&v[0]).unwrap();
        for key in ["face", "status", "rule", "witness", "evidence"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json["status"], "VERIFIED");
    }
}
