//! Axis fiber counts, the join formula for the monodromy zeta function of
//! `g(f₁, f₂)`, the Euler characteristic formula and cross-checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::One;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::degeneracy::criticality_residual;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::interval::{eval_mixed, CInterval, Interval};
use crate::linkalex::{lambda_times, substitute_matrices, MultilinkData};
use crate::matrix::QMatrix;
use crate::mixedpoly::{parse, CoordSubset, MixedPolynomial, Wirtinger};
use crate::upoly::{aberth_roots, QiPoly};
use crate::zeta::{
    cyclic_block, det_poly, euler_from_zeta, graded_e, join_degrees, zeta_from_monodromy, CyclicConvention,
    GradedMonodromy, ZetaFunction,
};

// ---------------------------------------------------------------------------
// Lowest-degree part

#[derive(Clone, Debug, PartialEq)]
pub struct LowestFactor {
    /// `δ` in the factor `(z + δ z̄)`.
    pub delta: Complex64,
    /// Exact value of `δ` when it is a Gaussian rational.
    pub exact: Option<GaussianRational>,
    pub mu: u32,
}

impl LowestFactor {
    /// `|δ| > 1`, or `None` when a floating value is too close to 1.
    pub fn outside_unit_disk(&self) -> Option<bool> {
        match &self.exact {
            Some(d) => Some(d.norm_sqr() > num_rational::BigRational::one()),
            None => {
                let r = self.delta.norm();
                if (r - 1.0).abs() < 1e-9 {
                    None
                } else {
                    Some(r > 1.0)
                }
            }
        }
    }
}

impl Serialize for LowestFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LowestFactor", 3)?;
        match &self.exact {
            Some(d) => st.serialize_field("delta", &d.to_string())?,
            None => st.serialize_field("delta", &[self.delta.re, self.delta.im])?,
        }
        st.serialize_field("exact", &self.exact.is_some())?;
        st.serialize_field("mu", &self.mu)?;
        st.end()
    }
}

/// `g′_{d_low} = c z^a z̄^b ∏ (z + δ_k z̄)^{μ_k}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowestFactorization {
    #[serde(serialize_with = "as_string")]
    pub c: GaussianRational,
    pub a: u32,
    pub b: u32,
    pub factors: Vec<LowestFactor>,
    pub d_low: u32,
    pub d_high: u32,
}

fn as_string<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl LowestFactorization {
    /// `a − b + Σ μ_k`.
    pub fn formula_count(&self) -> i64 {
        self.a as i64 - self.b as i64 + self.factors.iter().map(|f| f.mu as i64).sum::<i64>()
    }
}

fn require_one_variable(gp: &MixedPolynomial) -> Result<()> {
    if gp.n() != 1 {
        return Err(Error::InvalidArgument(format!("expected a 1-variable polynomial, got {} variables", gp.n())));
    }
    if gp.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

/// Factors the lowest-degree homogeneous part of a 1-variable mixed
/// polynomial through `P(t) = Σ_{ν+μ=d_low} c_{ν,μ} t^ν`.
pub fn lowest_part_factorization(gp: &MixedPolynomial) -> Result<LowestFactorization> {
    require_one_variable(gp)?;
    let degree = |t: &crate::mixedpoly::MixedMonomial| t.nu[0] + t.mu[0];
    let d_low = gp.terms().map(|t| degree(&t)).min().expect("nonzero");
    let d_high = gp.terms().map(|t| degree(&t)).max().expect("nonzero");
    let mut coeffs = vec![GaussianRational::zero(); d_low as usize + 1];
    for t in gp.terms().filter(|t| degree(t) == d_low) {
        coeffs[t.nu[0] as usize] = t.coeff.clone();
    }
    let p = QiPoly::new(coeffs);
    let a = p.trailing_zeros() as u32;
    let c = p.lead();
    let rest = p.strip_t();
    let mut factors = Vec::new();
    for (part, mult) in rest.squarefree_decomposition() {
        for (exact, approx) in polynomial_roots(&part) {
            let delta = -approx;
            factors.push(LowestFactor { delta, exact: exact.map(|r| -r), mu: mult });
        }
    }
    factors.sort_by(|x, y| x.delta.re.total_cmp(&y.delta.re).then(x.delta.im.total_cmp(&y.delta.im)));
    let sum: u32 = factors.iter().map(|f| f.mu).sum();
    let b = d_low - a - sum;
    Ok(LowestFactorization { c, a, b, factors, d_low, d_high })
}

/// Roots of a squarefree polynomial, exact where Gaussian rational.
fn polynomial_roots(p: &QiPoly) -> Vec<(Option<GaussianRational>, Complex64)> {
    match p.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => {
            let r = -(&p.coeff(0) / &p.coeff(1));
            let z = r.to_complex();
            vec![(Some(r), z)]
        }
        Some(_) => aberth_roots(&p.to_complex())
            .into_iter()
            .map(|z| {
                let q = GaussianRational::approximate(z, 1_000_000);
                if p.eval(&q).is_zero() {
                    (Some(q.clone()), q.to_complex())
                } else {
                    (None, z)
                }
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Numeric fiber count

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountConfig {
    /// The value `δ̃` whose preimage is counted.
    pub target: f64,
    /// Radius of the open disk.
    pub radius: f64,
    /// Maximum number of subdivision cells examined.
    pub budget: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self { target: 1e-3, radius: 0.5, budget: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleCount {
    pub lower: u64,
    pub upper: u64,
    #[serde(serialize_with = "complex_pairs")]
    pub solutions: Vec<Complex64>,
    pub cells: usize,
    /// Smallest criticality residual at a solution, relative to the
    /// gradient scale.
    pub min_relative_residual: f64,
}

fn complex_pairs<S: Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

impl OracleCount {
    pub fn exact(&self) -> Option<u64> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

#[derive(Clone, Copy, Debug)]
struct Cell {
    x: f64,
    y: f64,
    w: f64,
}

impl Cell {
    fn boxed(&self) -> CInterval {
        CInterval::new(Interval::new(self.x, self.x + self.w), Interval::new(self.y, self.y + self.w))
    }

    fn center(&self) -> Complex64 {
        Complex64::new(self.x + 0.5 * self.w, self.y + 0.5 * self.w)
    }

    fn min_norm(&self) -> f64 {
        let cx = 0.0f64.clamp(self.x, self.x + self.w);
        let cy = 0.0f64.clamp(self.y, self.y + self.w);
        cx.hypot(cy)
    }

    fn split(&self) -> [Cell; 4] {
        let h = 0.5 * self.w;
        [
            Cell { x: self.x, y: self.y, w: h },
            Cell { x: self.x + h, y: self.y, w: h },
            Cell { x: self.x, y: self.y + h, w: h },
            Cell { x: self.x + h, y: self.y + h, w: h },
        ]
    }
}

struct Solver<'a> {
    f: &'a MixedPolynomial,
    dz: MixedPolynomial,
    dzb: MixedPolynomial,
    target: Complex64,
}

impl Solver<'_> {
    fn residual(&self, z: Complex64) -> Complex64 {
        self.f.eval_f64_unchecked(&[z]) - self.target
    }

    /// Real Newton iteration on `(Re, Im)` of `f − target`.
    fn newton(&self, mut z: Complex64) -> Option<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        for _ in 0..100 {
            let r = self.residual(z);
            let p = self.dz.eval_f64_unchecked(&[z]);
            let q = self.dzb.eval_f64_unchecked(&[z]);
            let u = p + q;
            let v = i * (p - q);
            let det = u.re * v.im - u.im * v.re;
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = -(v.im * r.re - v.re * r.im) / det;
            let dy = -(-u.im * r.re + u.re * r.im) / det;
            z += Complex64::new(dx, dy);
            if !z.re.is_finite() || z.norm() > 1e6 {
                return None;
            }
            if dx.hypot(dy) <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        (self.residual(z).norm() <= 1e-12 * self.target.norm().max(1e-300).max(1e-3)).then_some(z)
    }
}

/// Counts the distinct solutions of `gp(z, z̄) = target` in the open disk
/// `|z| < radius` by subdivision with interval exclusion and Newton
/// polishing. When undecided cells remain, returns a bound pair.
pub fn numeric_count_oracle(gp: &MixedPolynomial, cfg: &CountConfig) -> Result<OracleCount> {
    require_one_variable(gp)?;
    if !(cfg.radius > 0.0) || !cfg.target.is_finite() || cfg.target == 0.0 {
        return Err(Error::InvalidArgument("radius must be positive and target nonzero".into()));
    }
    const GRID: usize = 8;
    const DEPTH: i32 = 12;
    let r = cfg.radius;
    let top_w = 2.0 * r / GRID as f64;
    let leaf_w = top_w / 2f64.powi(DEPTH);
    let target = CInterval::point(cfg.target, 0.0);
    let per_cell = (cfg.budget / (GRID * GRID)).max(1);
    let tops: Vec<Cell> = (0..GRID * GRID)
        .map(|k| Cell { x: -r + (k % GRID) as f64 * top_w, y: -r + (k / GRID) as f64 * top_w, w: top_w })
        .collect();
    let results: Vec<(Vec<Cell>, usize, usize)> = tops
        .par_iter()
        .map(|top| {
            let mut leaves = Vec::new();
            let mut undecided = 0;
            let mut used = 0;
            let mut stack = vec![*top];
            while let Some(c) = stack.pop() {
                if c.min_norm() >= r {
                    continue;
                }
                if used >= per_cell {
                    undecided += 1;
                    continue;
                }
                used += 1;
                let v = eval_mixed(gp, &[c.boxed()]) - target;
                if !v.contains_zero() {
                    continue;
                }
                if c.w <= leaf_w {
                    leaves.push(c);
                } else {
                    let parts = c.split();
                    stack.extend(parts.iter().rev());
                }
            }
            (leaves, undecided, used)
        })
        .collect();
    let solver = Solver {
        f: gp,
        dz: gp.wirtinger(1, Wirtinger::Holomorphic)?,
        dzb: gp.wirtinger(1, Wirtinger::Antiholomorphic)?,
        target: Complex64::new(cfg.target, 0.0),
    };
    let leaves: Vec<Cell> = results.iter().flat_map(|(l, _, _)| l.iter().copied()).collect();
    let budget_undecided: usize = results.iter().map(|(_, u, _)| u).sum();
    let cells: usize = results.iter().map(|(_, _, c)| c).sum();
    let mut solutions: Vec<Complex64> = Vec::new();
    let mut boundary = 0usize;
    let near = 2.0 * leaf_w;
    let mut record = |s: Complex64, solutions: &mut Vec<Complex64>| {
        if (s.norm() - r).abs() < 1e-9 {
            boundary += 1;
        } else if s.norm() < r && solutions.iter().all(|t| (t - s).norm() > 1e-8) {
            solutions.push(s);
        }
    };
    for leaf in &leaves {
        if let Some(s) = solver.newton(leaf.center()) {
            record(s, &mut solutions);
        }
    }
    let explained = |leaf: &Cell, sols: &[Complex64]| {
        let c = leaf.center();
        sols.iter().any(|s| (s - c).norm() <= near)
    };
    let mut unexplained = 0usize;
    for leaf in &leaves {
        if explained(leaf, &solutions) {
            continue;
        }
        let corners = [
            Complex64::new(leaf.x, leaf.y),
            Complex64::new(leaf.x + leaf.w, leaf.y),
            Complex64::new(leaf.x, leaf.y + leaf.w),
            Complex64::new(leaf.x + leaf.w, leaf.y + leaf.w),
        ];
        for z in corners {
            if let Some(s) = solver.newton(z) {
                record(s, &mut solutions);
            }
        }
        if !explained(leaf, &solutions) {
            unexplained += 1;
        }
    }
    solutions.sort_by(|a, b| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));
    let lower = solutions.len() as u64;
    let upper = if unexplained == 0 && budget_undecided == 0 && boundary == 0 {
        lower
    } else {
        // Bezout bound for the real system (Re, Im) of degree d_high.
        let d = gp.terms().map(|t| (t.nu[0] + t.mu[0]) as u64).max().unwrap_or(0);
        (d * d).max(lower)
    };
    let mut min_rel = f64::INFINITY;
    for s in &solutions {
        let sigma = criticality_residual(gp, &[*s])?;
        let p = solver.dz.eval_f64_unchecked(&[*s]).norm() + solver.dzb.eval_f64_unchecked(&[*s]).norm();
        min_rel = min_rel.min(if p > 0.0 { sigma / p } else { 0.0 });
    }
    Ok(OracleCount { lower, upper, solutions, cells, min_relative_residual: min_rel })
}

// ---------------------------------------------------------------------------
// Fiber-point counts on the axes

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    Formula,
    Oracle,
    MismatchReport,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberCount {
    /// `j` in `{z_j = 0}`; `0` for a bare 1-variable input.
    pub axis: usize,
    pub count: Option<u64>,
    pub method: CountMethod,
    pub formula: Option<i64>,
    pub oracle: Option<OracleCount>,
    pub factorization: Option<LowestFactorization>,
    /// Every `|δ_k| > 1`; `None` when undecidable numerically.
    pub deltas_outside_unit_disk: Option<bool>,
    pub regular_at_solutions: Option<bool>,
    pub note: String,
}

/// Threshold below which the relative residual at a fiber point counts as
/// critical.
const REGULARITY_THRESHOLD: f64 = 1e-6;

/// Counts the fiber points of a 1-variable restriction `g′` by the
/// lowest-part formula and the oracle.
pub fn count_axis_function(gp: &MixedPolynomial, axis: usize, cfg: &CountConfig) -> Result<FiberCount> {
    let fact = lowest_part_factorization(gp)?;
    let formula = fact.formula_count();
    let outside = fact.factors.iter().try_fold(true, |acc, f| f.outside_unit_disk().map(|o| acc && o));
    let oracle = numeric_count_oracle(gp, cfg)?;
    let regular = !oracle.solutions.is_empty() && oracle.min_relative_residual > REGULARITY_THRESHOLD
        || oracle.solutions.is_empty();
    let hypotheses = outside == Some(true) && regular;
    let (count, method, note) = match oracle.exact() {
        Some(k) if formula == k as i64 && hypotheses => (Some(k), CountMethod::Formula, "formula and oracle agree".to_string()),
        Some(k) if formula == k as i64 => {
            (Some(k), CountMethod::Oracle, "formula hypotheses not confirmed; the oracle count agrees with it".to_string())
        }
        Some(k) => (
            Some(k),
            CountMethod::MismatchReport,
            format!("formula gives {formula}, oracle counts {k} fiber points; returning the oracle count"),
        ),
        None if hypotheses && formula >= oracle.lower as i64 && formula <= oracle.upper as i64 => (
            Some(formula as u64),
            CountMethod::Formula,
            format!("oracle undecided within [{}, {}]; formula inside the bounds", oracle.lower, oracle.upper),
        ),
        None => (
            None,
            CountMethod::MismatchReport,
            format!("oracle undecided within [{}, {}]; formula gives {formula}", oracle.lower, oracle.upper),
        ),
    };
    Ok(FiberCount {
        axis,
        count,
        method,
        formula: Some(formula),
        oracle: Some(oracle),
        factorization: Some(fact),
        deltas_outside_unit_disk: outside,
        regular_at_solutions: Some(regular),
        note,
    })
}

/// The restriction `g|_{z_axis = 0}` as a function of the other variable.
pub fn axis_restriction(g: &MixedPolynomial, axis: usize) -> Result<MixedPolynomial> {
    if g.n() != 2 {
        return Err(Error::InvalidArgument("fiber counts need a 2-variable g".into()));
    }
    if axis != 1 && axis != 2 {
        return Err(Error::IndexOutOfRange { index: axis, max: 2 });
    }
    let other = CoordSubset::from_indices([3 - axis]);
    Ok(g.restrict(other).project(other))
}

/// Number of points of `g⁻¹(δ̃)` on the axis `{z_axis = 0}` near the origin.
pub fn count_fiber_points(g: &MixedPolynomial, axis: usize, cfg: &CountConfig) -> Result<FiberCount> {
    let gp = axis_restriction(g, axis)?;
    if gp.is_zero() {
        return Ok(FiberCount {
            axis,
            count: None,
            method: CountMethod::Undefined,
            formula: None,
            oracle: None,
            factorization: None,
            deltas_outside_unit_disk: None,
            regular_at_solutions: None,
            note: format!("g vanishes on {{z{axis} = 0}}; the link carries a nonzero multiplicity there"),
        });
    }
    count_axis_function(&gp, axis, cfg)
}

// ---------------------------------------------------------------------------
// Join

#[derive(Clone, Debug, PartialEq)]
pub struct JoinInput {
    pub g: MixedPolynomial,
    pub mono1: GradedMonodromy,
    pub mono2: GradedMonodromy,
    pub link: MultilinkData,
    /// `(n₁, n₂)` overriding the computed counts.
    pub counts: Option<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JoinConfig {
    /// Reject links violating the axis rule instead of flagging them.
    pub strict_axis: bool,
    pub count: CountConfig,
    /// Block layout for the cyclic prefactor cross-check.
    pub convention: CyclicConvention,
}

impl Default for JoinConfig {
    fn default() -> Self {
        Self { strict_axis: true, count: CountConfig::default(), convention: CyclicConvention::OneTwist }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeFactor {
    pub q: i64,
    /// `(−1)^q`.
    pub exponent: i64,
    /// `det Δ_L(λ^{m₁}E_{q,1}, λ^{m₂}E_{q,2}, λ^{m₃}I, …)` up to unit.
    pub det: ZetaFunction,
    pub det_text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JoinReport {
    pub n1: u64,
    pub n2: u64,
    pub counts_supplied: bool,
    pub fiber_counts: Vec<FiberCount>,
    /// `ζ_{f₁}(λ^{n₂})`, or 1 when `n₂ = 0`.
    pub prefactor_f1: ZetaFunction,
    /// `ζ_{f₂}(λ^{n₁})`, or 1 when `n₁ = 0`.
    pub prefactor_f2: ZetaFunction,
    pub prefactor: ZetaFunction,
    pub factors: Vec<DegreeFactor>,
    /// Axes `j` with `m_j = 0 ⇔ g|_{z_j=0} ≢ 0` violated, with whether the
    /// restriction vanishes.
    pub axis_violations: Vec<(usize, bool)>,
    pub zeta: ZetaFunction,
    pub zeta_text: String,
}

fn resolve_counts(input: &JoinInput, cfg: &JoinConfig) -> Result<(u64, u64, Vec<FiberCount>)> {
    if let Some((n1, n2)) = input.counts {
        return Ok((n1, n2, Vec::new()));
    }
    let mut counts = Vec::new();
    let mut ns = [0u64; 2];
    for axis in 1..=2 {
        let fc = count_fiber_points(&input.g, axis, &cfg.count)?;
        ns[axis - 1] = match (fc.method, fc.count) {
            (CountMethod::Undefined, _) => 0,
            (_, Some(k)) => k,
            (_, None) => {
                return Err(Error::InvalidInput(format!("fiber count on axis {axis} is undecided ({}); supply counts", fc.note)))
            }
        };
        counts.push(fc);
    }
    Ok((ns[0], ns[1], counts))
}

fn prefactor(mono: &GradedMonodromy, n: u64) -> Result<ZetaFunction> {
    if n == 0 {
        return Ok(ZetaFunction::one());
    }
    zeta_from_monodromy(mono)?.substitute_power(n as i64)
}

/// `ζ_f = ζ_{f₁}(λ^{n₂}) ζ_{f₂}(λ^{n₁}) ∏_q det Δ_L(λ^{m₁}E_{q,1}, λ^{m₂}E_{q,2}, λ^{m₃}I, …)^{(−1)^q}`
/// up to `±λ^u`. A reversed axis component receives `E_{q,j}^{-1}`.
pub fn join_zeta(input: &JoinInput, cfg: &JoinConfig) -> Result<JoinReport> {
    let g = &input.g;
    if g.n() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: g.n() });
    }
    let link = &input.link;
    let violations = link.axis_rule_violations(g)?;
    if cfg.strict_axis {
        link.check_axis_rule(g)?;
    }
    let (n1, n2, fiber_counts) = resolve_counts(input, cfg)?;
    let prefactor_f1 = prefactor(&input.mono1, n2)?;
    let prefactor_f2 = prefactor(&input.mono2, n1)?;
    let pre = prefactor_f1.mul(&prefactor_f2);
    let m = link.multiplicities();
    let mut zeta = pre.clone();
    let mut factors = Vec::new();
    for q in join_degrees(&input.mono1, &input.mono2) {
        let (e1, e2) = graded_e(&input.mono1, &input.mono2, q);
        let dim = e1.rows();
        let axis_arg = |e: QMatrix, j: usize| -> Result<_> {
            let e = if link.is_reversed(j) { e.inverse().ok_or(Error::NonInvertible(j))? } else { e };
            Ok(lambda_times(&e, m[j - 1]))
        };
        let mut args = vec![axis_arg(e1, 1)?, axis_arg(e2, 2)?];
        for &mj in &m[2..] {
            args.push(lambda_times(&QMatrix::identity(dim), mj));
        }
        let det = det_poly(&substitute_matrices(link.alexander(), &args)?);
        if det.is_zero() {
            return Err(Error::InvalidInput(format!("the substituted Alexander determinant vanishes in degree {q}")));
        }
        let det = ZetaFunction::from_poly(det)?;
        let exponent = if q.rem_euclid(2) == 0 { 1 } else { -1 };
        zeta = zeta.mul(&det.powi(exponent)?);
        factors.push(DegreeFactor { q, exponent, det_text: det.to_string(), det });
    }
    let zeta_text = zeta.to_string();
    Ok(JoinReport {
        n1,
        n2,
        counts_supplied: input.counts.is_some(),
        fiber_counts,
        prefactor_f1,
        prefactor_f2,
        prefactor: pre,
        factors,
        axis_violations: violations,
        zeta,
        zeta_text,
    })
}

/// `χ(F_f) = χ(F_g ∖ axes)χ(F₁)χ(F₂) + n₁χ(F₂) + n₂χ(F₁)`.
pub fn euler_join(chi_g_minus_axes: i64, chi1: i64, chi2: i64, n1: i64, n2: i64) -> i64 {
    chi_g_minus_axes * chi1 * chi2 + n1 * chi2 + n2 * chi1
}

/// Euler data of the fiber of `g`, in one of three equivalent forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChiData {
    /// `χ(F_g ∖ {z₁z₂ = 0})` directly.
    ChiGMinusAxes(i64),
    /// `χ(F_g)`; the axis points `n₁ + n₂` are removed.
    ChiG(i64),
    /// Milnor number of a holomorphic `g`: `χ(F_g) = 1 − μ`.
    MilnorNumber(i64),
}

impl ChiData {
    pub fn chi_g_minus_axes(&self, n1: u64, n2: u64) -> i64 {
        let axes = n1 as i64 + n2 as i64;
        match *self {
            ChiData::ChiGMinusAxes(x) => x,
            ChiData::ChiG(x) => x - axes,
            ChiData::MilnorNumber(mu) => 1 - mu - axes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub checks: Vec<Check>,
}

impl CrossCheck {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn cyclic_monodromy(mono: &GradedMonodromy, n: u64, conv: CyclicConvention) -> Result<GradedMonodromy> {
    let blocks: Vec<(i64, QMatrix)> =
        mono.blocks().iter().map(|(q, h)| Ok((*q, cyclic_block(h, n as usize, conv)?))).collect::<Result<_>>()?;
    GradedMonodromy::new(blocks)
}

/// Consistency checks on a finished join: axis rule, Euler characteristic,
/// cyclic prefactor and orientation-reversal invariance.
pub fn cross_check(input: &JoinInput, report: &JoinReport, chi: Option<ChiData>, cfg: &JoinConfig) -> Result<CrossCheck> {
    let mut checks = Vec::new();
    checks.push(Check {
        name: "axis-rule".into(),
        passed: report.axis_violations.is_empty(),
        detail: if report.axis_violations.is_empty() {
            "m_j = 0 exactly on the non-vanishing axes".into()
        } else {
            let v: Vec<String> = report
                .axis_violations
                .iter()
                .map(|(j, van)| format!("m{j} = {} but g|{{z{j}=0}} {}", input.link.multiplicities()[j - 1], if *van { "vanishes" } else { "does not vanish" }))
                .collect();
            v.join("; ")
        },
    });
    let chi1 = input.mono1.euler_characteristic();
    let chi2 = input.mono2.euler_characteristic();
    let from_zeta = euler_from_zeta(&report.zeta);
    match chi {
        Some(c) => {
            let base = c.chi_g_minus_axes(report.n1, report.n2);
            let expected = euler_join(base, chi1, chi2, report.n1 as i64, report.n2 as i64);
            checks.push(Check {
                name: "euler".into(),
                passed: expected == from_zeta,
                detail: format!(
                    "from zeta {from_zeta}; formula {base}·{chi1}·{chi2} + {}·{chi2} + {}·{chi1} = {expected}",
                    report.n1, report.n2
                ),
            });
        }
        None => checks.push(Check {
            name: "euler".into(),
            passed: true,
            detail: format!("skipped: no Euler data for g; zeta gives {from_zeta}"),
        }),
    }
    let mut cyclic_ok = true;
    let mut detail = String::new();
    for (mono, n, expected, name) in
        [(&input.mono1, report.n2, &report.prefactor_f1, "f1"), (&input.mono2, report.n1, &report.prefactor_f2, "f2")]
    {
        if n == 0 {
            let _ = write!(detail, "{name}: n = 0, factor 1; ");
            continue;
        }
        let z = zeta_from_monodromy(&cyclic_monodromy(mono, n, cfg.convention)?)?;
        let ok = &z == expected;
        cyclic_ok &= ok;
        let _ = write!(detail, "{name}: {} ({}); ", z, if ok { "match" } else { "differs" });
    }
    checks.push(Check { name: "prefactor-cyclic".into(), passed: cyclic_ok, detail: detail.trim_end_matches("; ").into() });
    let fixed = JoinInput { counts: Some((report.n1, report.n2)), ..input.clone() };
    let lenient = JoinConfig { strict_axis: false, ..cfg.clone() };
    for j in 1..=input.link.r() {
        let reversed = JoinInput { link: input.link.reverse_orientation(j)?, ..fixed.clone() };
        let other = join_zeta(&reversed, &lenient)?;
        let ok = other.zeta == report.zeta;
        checks.push(Check {
            name: format!("orientation-{}", input.link.labels()[j - 1]),
            passed: ok,
            detail: if ok { "unchanged up to unit".into() } else { format!("reversed gives {}", other.zeta) },
        });
    }
    Ok(CrossCheck { checks })
}

// ---------------------------------------------------------------------------
// Bundles

/// File form of a join problem.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bundle {
    /// Expression for `g` in `z1, z2`.
    pub g: String,
    pub mono1: GradedMonodromy,
    pub mono2: GradedMonodromy,
    pub link: MultilinkData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<ChiData>,
}

impl Bundle {
    pub fn to_input(&self) -> Result<JoinInput> {
        Ok(JoinInput {
            g: parse(&self.g, 2)?,
            mono1: self.mono1.clone(),
            mono2: self.mono2.clone(),
            link: self.link.clone(),
            counts: self.counts.map(|[a, b]| (a, b)),
        })
    }
}

impl JoinReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n1 = {}, n2 = {}{}", self.n1, self.n2, if self.counts_supplied { " (supplied)" } else { "" });
        for fc in &self.fiber_counts {
            let count = fc.count.map_or("undefined".to_string(), |k| k.to_string());
            let _ = writeln!(s, "  axis {}: {} [{}] {}", fc.axis, count, method_name(fc.method), fc.note);
        }
        let _ = writeln!(s, "zeta_f1(lambda^n2) = {}", self.prefactor_f1);
        let _ = writeln!(s, "zeta_f2(lambda^n1) = {}", self.prefactor_f2);
        let _ = writeln!(s, "prefactor = {}", self.prefactor);
        for f in &self.factors {
            let _ = writeln!(s, "q = {}: det = {} (exponent {})", f.q, f.det_text, f.exponent);
        }
        for (j, van) in &self.axis_violations {
            let _ = writeln!(s, "warning: axis {j} multiplicity inconsistent with g (restriction {})", if *van { "vanishes" } else { "nonzero" });
        }
        let _ = writeln!(s, "zeta = {}  (up to ±lambda^u)", self.zeta_text);
        s
    }
}

pub fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Formula => "formula",
        CountMethod::Oracle => "oracle",
        CountMethod::MismatchReport => "mismatch-report",
        CountMethod::Undefined => "undefined",
    }
}

/// Built-in demonstration bundles keyed by name.
pub fn builtin_bundles() -> BTreeMap<&'static str, Bundle> {
    let perm2 = GradedMonodromy::degree_zero(QMatrix::cyclic_permutation(2)).expect("invertible");
    let one = GradedMonodromy::degree_zero(QMatrix::identity(1)).expect("invertible");
    let mut out = BTreeMap::new();
    out.insert(
        "cusp-join",
        Bundle {
            g: "z1^2 + z2^3".into(),
            mono1: one,
            mono2: perm2.clone(),
            link: MultilinkData::brieskorn_with_axes(2, 3).expect("valid"),
            counts: None,
            chi: Some(ChiData::MilnorNumber(2)),
        },
    );
    out.insert(
        "hopf-join",
        Bundle {
            g: "z1 + z2".into(),
            mono1: perm2.clone(),
            mono2: perm2,
            link: MultilinkData::hopf(3).expect("valid"),
            counts: None,
            chi: Some(ChiData::MilnorNumber(0)),
        },
    );
    out
}
