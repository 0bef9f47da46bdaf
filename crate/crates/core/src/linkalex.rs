//! Multilinks with multiplicities and multivariable Alexander polynomials.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::laurent::{LaurentJson, LaurentPoly};
use crate::matrix::QMatrix;
use crate::mixedpoly::{CoordSubset, MixedPolynomial};
use crate::zeta::LMatrix;

/// Components `K_1, …, K_r` with multiplicities and `Δ_L(λ_1, …, λ_r)`.
/// `K_1 = {z_1 = 0}` and `K_2 = {z_2 = 0}` are the axes.
#[derive(Clone, PartialEq, Debug)]
pub struct MultilinkData {
    labels: Vec<String>,
    multiplicities: Vec<i64>,
    reversed: Vec<bool>,
    alexander: LaurentPoly,
    /// Exponent of the monomial `λ^u` absorbed by the last normalization.
    unit: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    BrieskornWithAxes,
    OkaFamily,
    Hopf,
}

impl Family {
    pub fn parse(name: &str) -> Result<(Self, Option<usize>)> {
        match name {
            "brieskorn-with-axes" => Ok((Family::BrieskornWithAxes, None)),
            "oka-family" => Ok((Family::OkaFamily, None)),
            "hopf" => Ok((Family::Hopf, None)),
            _ => match name.strip_prefix("hopf-").and_then(|r| r.parse::<usize>().ok()) {
                Some(r) => Ok((Family::Hopf, Some(r))),
                None => Err(Error::InvalidInput(format!("unknown link family '{}'", name))),
            },
        }
    }
}

fn check_params(params: &[i64], count: usize, family: &str) -> Result<()> {
    if params.len() != count {
        return Err(Error::InvalidInput(format!("{} expects {} parameters, got {}", family, count, params.len())));
    }
    Ok(())
}

impl MultilinkData {
    pub fn new(labels: Vec<String>, multiplicities: Vec<i64>, alexander: LaurentPoly) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::InvalidInput("a link needs at least one component".into()));
        }
        if multiplicities.len() != r {
            return Err(Error::DimensionMismatch { expected: r, got: multiplicities.len() });
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != r {
            return Err(Error::InvalidInput("component labels must be distinct".into()));
        }
        if alexander.terms().any(|(e, _)| e.len() > r) {
            return Err(Error::InvalidInput(format!("Alexander polynomial uses more than {} variables", r)));
        }
        let alexander = alexander.with_vars(r);
        Ok(Self { labels, multiplicities, reversed: vec![false; r], alexander, unit: vec![0; r] })
    }

    /// Built-in families by name: `brieskorn-with-axes [p1, p2]`,
    /// `oka-family [p1, p2, k, l]`, `hopf-r` (or `hopf [r]`).
    pub fn builtin(name: &str, params: &[i64]) -> Result<Self> {
        let (family, suffix) = Family::parse(name)?;
        match family {
            Family::BrieskornWithAxes => {
                check_params(params, 2, name)?;
                let (p1, p2) = (params[0], params[1]);
                if p1 < 1 || p2 < 1 {
                    return Err(Error::InvalidInput("brieskorn-with-axes needs p1, p2 >= 1".into()));
                }
                Self::brieskorn_with_axes(p1, p2)
            }
            Family::OkaFamily => {
                check_params(params, 4, name)?;
                let (p1, p2, k, l) = (params[0], params[1], params[2], params[3]);
                if p1 < 1 || p2 < 1 || k < 0 || l < 0 || k + l < 1 {
                    return Err(Error::InvalidInput("oka-family needs p1, p2 >= 1, k, l >= 0, k + l >= 1".into()));
                }
                Self::oka_family(p1, p2, k as usize, l as usize)
            }
            Family::Hopf => {
                let r = match (suffix, params) {
                    (Some(r), []) => r,
                    (None, [r]) if *r >= 0 => *r as usize,
                    _ => return Err(Error::InvalidInput("hopf takes the component count r".into())),
                };
                if r < 3 {
                    return Err(Error::InvalidInput("hopf-r needs r >= 3".into()));
                }
                Self::hopf(r)
            }
        }
    }

    fn axis_labels() -> Vec<String> {
        vec!["axis-z1".to_string(), "axis-z2".to_string()]
    }

    /// `Δ = λ1^{p2} λ2^{p1} λ3^{p1 p2} − 1`, `m = (0, 0, 1)`.
    pub fn brieskorn_with_axes(p1: i64, p2: i64) -> Result<Self> {
        let mut labels = Self::axis_labels();
        labels.push("curve".into());
        let delta = LaurentPoly::from_terms(
            3,
            [(vec![p2, p1, p1 * p2], GaussianRational::one()), (vec![0, 0, 0], GaussianRational::from_int(-1))],
        );
        Self::new(labels, vec![0, 0, 1], delta)
    }

    /// `Δ = (λ1^{p2} λ2^{p1} (λ3 ⋯ λr)^{p1 p2} − 1)^{k+l}` with `r = k + l + 2`
    /// and every multiplicity `1`. The last `l` labels mark conjugated
    /// components; their orientation is left to the caller.
    pub fn oka_family(p1: i64, p2: i64, k: usize, l: usize) -> Result<Self> {
        let r = k + l + 2;
        let mut labels = Self::axis_labels();
        labels.extend((1..=k).map(|i| format!("branch-{}", i)));
        labels.extend((1..=l).map(|i| format!("conj-branch-{}", i)));
        let mut e = vec![p2, p1];
        e.extend(std::iter::repeat_n(p1 * p2, k + l));
        let base = LaurentPoly::from_terms(r, [(e, GaussianRational::one()), (vec![0; r], GaussianRational::from_int(-1))]);
        Self::new(labels, vec![1; r], base.pow((k + l) as u32))
    }

    /// `Δ = (λ1 ⋯ λr − 1)^{r−2}`, `m = (0, 0, 1, …, 1)`.
    pub fn hopf(r: usize) -> Result<Self> {
        let mut labels = Self::axis_labels();
        labels.extend((3..=r).map(|i| format!("line-{}", i)));
        let base = LaurentPoly::from_terms(r, [(vec![1; r], GaussianRational::one()), (vec![0; r], GaussianRational::from_int(-1))]);
        let mut m = vec![0, 0];
        m.extend(std::iter::repeat_n(1, r - 2));
        Self::new(labels, m, base.pow((r - 2) as u32))
    }

    pub fn r(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    pub fn alexander(&self) -> &LaurentPoly {
        &self.alexander
    }

    pub fn is_reversed(&self, j: usize) -> bool {
        self.reversed[j - 1]
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    pub fn with_multiplicities(&self, m: Vec<i64>) -> Result<Self> {
        if m.len() != self.r() {
            return Err(Error::DimensionMismatch { expected: self.r(), got: m.len() });
        }
        Ok(Self { multiplicities: m, ..self.clone() })
    }

    /// `m_j ↦ −m_j` and `λ_j ↦ λ_j^{−1}`, renormalized to non-negative
    /// exponents; the absorbed monomial is recorded in [`Self::unit`].
    pub fn reverse_orientation(&self, j: usize) -> Result<Self> {
        if j == 0 || j > self.r() {
            return Err(Error::IndexOutOfRange { index: j, max: self.r() });
        }
        let mut out = self.clone();
        out.multiplicities[j - 1] = -out.multiplicities[j - 1];
        out.reversed[j - 1] = !out.reversed[j - 1];
        let (shifted, shift) = self.alexander.substitute_power(j - 1, -1)?.shift_to_nonnegative();
        out.alexander = shifted.with_vars(self.r());
        out.unit = (0..self.r()).map(|i| shift.get(i).copied().unwrap_or(0)).collect();
        Ok(out)
    }

    /// Checks `m_j = 0 ⇔ g|_{z_j = 0} ≢ 0` for the two axes.
    pub fn check_axis_rule(&self, g: &MixedPolynomial) -> Result<()> {
        for (j, violation) in self.axis_rule_violations(g)? {
            return Err(Error::AxisMultiplicity { component: j, m: self.multiplicities[j - 1], restriction_vanishes: violation });
        }
        Ok(())
    }

    /// Axes violating the rule, with whether `g|_{z_j = 0}` vanishes.
    pub fn axis_rule_violations(&self, g: &MixedPolynomial) -> Result<Vec<(usize, bool)>> {
        if g.n() != 2 {
            return Err(Error::InvalidArgument("the axis rule needs a 2-variable g".into()));
        }
        if self.r() < 2 {
            return Err(Error::InvalidInput("a link for the join needs both axis components".into()));
        }
        let mut out = Vec::new();
        for j in 1..=2 {
            let vanishes = g.restrict(CoordSubset::from_indices([3 - j])).is_zero();
            let m = self.multiplicities[j - 1];
            if (m == 0) == vanishes {
                out.push((j, vanishes));
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> LinkJson {
        LinkJson::Explicit {
            components: (0..self.r())
                .map(|i| ComponentJson { label: self.labels[i].clone(), m: self.multiplicities[i], reversed: self.reversed[i] })
                .collect(),
            alexander: self.alexander.to_json(),
        }
    }

    pub fn from_json(j: &LinkJson) -> Result<Self> {
        match j {
            LinkJson::Builtin { builtin, params } => Self::builtin(builtin, params),
            LinkJson::Explicit { components, alexander } => {
                let delta = LaurentPoly::from_json(alexander)?;
                if alexander.vars != components.len() {
                    return Err(Error::DimensionMismatch { expected: components.len(), got: alexander.vars });
                }
                let mut link = Self::new(
                    components.iter().map(|c| c.label.clone()).collect(),
                    components.iter().map(|c| c.m).collect(),
                    delta,
                )?;
                link.reversed = components.iter().map(|c| c.reversed).collect();
                Ok(link)
            }
        }
    }
}

impl fmt::Display for MultilinkData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = (0..self.r())
            .map(|i| format!("{}{}(m={})", if self.reversed[i] { "-" } else { "" }, self.labels[i], self.multiplicities[i]))
            .collect();
        write!(f, "[{}] Delta = {}", comps.join(", "), self.alexander)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinkJson {
    Builtin { builtin: String, params: Vec<i64> },
    Explicit { components: Vec<ComponentJson>, alexander: LaurentJson },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentJson {
    pub label: String,
    pub m: i64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reversed: bool,
}

impl Serialize for MultilinkData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultilinkData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LinkJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// If every nonzero entry of `m` is `c_ij λ^k` for one common exponent
/// vector `k`, returns `k` and the constant matrix `(c_ij)`.
fn split_scalar_monomial(m: &LMatrix) -> Option<(Vec<i64>, QMatrix)> {
    let n = m.rows();
    let mut exp: Option<Vec<i64>> = None;
    let mut c = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j);
            if e.is_zero() {
                continue;
            }
            if !e.is_monomial() {
                return None;
            }
            let (k, v) = e.leading_term()?;
            match &exp {
                Some(x) if x != k => return None,
                Some(_) => {}
                None => exp = Some(k.clone()),
            }
            c.set(i, j, v.clone());
        }
    }
    Some((exp.unwrap_or_default(), c))
}

fn inverse_of(m: &LMatrix, index: usize) -> Result<LMatrix> {
    let (k, c) = split_scalar_monomial(m).ok_or(Error::NonInvertible(index))?;
    let inv = c.inverse().ok_or(Error::NonInvertible(index))?;
    let neg: Vec<i64> = k.iter().map(|x| -x).collect();
    let vars = (0..m.rows()).flat_map(|i| m.row(i).iter().map(|e| e.vars())).max().unwrap_or(1);
    Ok(inv.map(|v| LaurentPoly::monomial(v.clone(), neg.clone()).with_vars(vars)))
}

/// `Δ(A_1, …, A_r) = Σ c_e ∏ A_t^{e_t}` for pairwise commuting square `A_t`.
/// Negative exponents need `A_t = λ^k C` with `C` constant and invertible.
pub fn substitute_matrices(delta: &LaurentPoly, args: &[LMatrix]) -> Result<LMatrix> {
    let r = args.len();
    if delta.terms().any(|(e, _)| e.len() > r) {
        return Err(Error::DimensionMismatch { expected: delta.vars(), got: r });
    }
    let n = args.first().map_or(0, |a| a.rows());
    for a in args {
        if !a.is_square() || a.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.rows() });
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if !args[i].commutes_with(&args[j]) {
                return Err(Error::NonCommuting(i + 1, j + 1));
            }
        }
    }
    let mut max_pos = vec![0u64; r];
    let mut max_neg = vec![0u64; r];
    for (e, _) in delta.terms() {
        for (t, &x) in e.iter().enumerate() {
            if x > 0 {
                max_pos[t] = max_pos[t].max(x as u64);
            } else if x < 0 {
                max_neg[t] = max_neg[t].max(x.unsigned_abs());
            }
        }
    }
    let mut pos_powers: Vec<Vec<LMatrix>> = Vec::with_capacity(r);
    let mut neg_powers: Vec<Vec<LMatrix>> = Vec::with_capacity(r);
    for t in 0..r {
        pos_powers.push(power_table(&args[t], max_pos[t]));
        neg_powers.push(if max_neg[t] > 0 { power_table(&inverse_of(&args[t], t + 1)?, max_neg[t]) } else { vec![LMatrix::identity(n)] });
    }
    let mut acc = LMatrix::zeros(n, n);
    for (e, c) in delta.terms() {
        let mut term = LMatrix::scalar(n, &LaurentPoly::constant(c.clone(), 1));
        for (t, &x) in e.iter().enumerate() {
            if x > 0 {
                term = term.mul(&pos_powers[t][x as usize]);
            } else if x < 0 {
                term = term.mul(&neg_powers[t][x.unsigned_abs() as usize]);
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

fn power_table(a: &LMatrix, max: u64) -> Vec<LMatrix> {
    let mut out = vec![LMatrix::identity(a.rows())];
    for k in 1..=max as usize {
        let next = out[k - 1].mul(a);
        out.push(next);
    }
    out
}

/// `λ^k · M` as a univariate Laurent matrix.
pub fn lambda_times(m: &QMatrix, k: i64) -> LMatrix {
    m.map(|c| if c.is_zero() { LaurentPoly::zero_in(1) } else { LaurentPoly::monomial(c.clone(), vec![k]).with_vars(1) })
}
