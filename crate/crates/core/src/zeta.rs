//! Zeta functions as reduced rational functions in `λ`, graded monodromies,
//! and the matrix constructions used by the join formula.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::laurent::{CoeffJson, LaurentPoly};
use crate::matrix::{Matrix, QMatrix};
use crate::ring::{IntegralDomain, Ring};
use crate::upoly::{int_poly_div_exact, int_poly_gcd, QiPoly};

pub type LMatrix = Matrix<LaurentPoly>;

/// Exact determinant of a matrix of Laurent polynomials. Each row is first
/// multiplied by a monomial so that all its entries are polynomials, then
/// fraction-free elimination runs on the result.
pub fn det_poly(m: &LMatrix) -> LaurentPoly {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::one();
    }
    let vars = (0..n).flat_map(|i| m.row(i).iter().map(|e| e.vars())).max().unwrap_or(0);
    let mut total: Vec<i64> = vec![0; vars];
    let mut cleared = m.clone();
    for i in 0..n {
        let mut mins = vec![0i64; vars];
        for e in m.row(i) {
            if e.is_zero() {
                continue;
            }
            for (k, v) in e.min_exponents().into_iter().enumerate() {
                mins[k] = mins[k].min(v);
            }
        }
        if mins.iter().any(|&x| x < 0) {
            let shift: Vec<i64> = mins.iter().map(|x| -x).collect();
            for j in 0..n {
                let v = m.get(i, j).mul_monomial(&GaussianRational::one(), &shift);
                cleared.set(i, j, v);
            }
            for k in 0..vars {
                total[k] += mins[k];
            }
        }
    }
    let det = cleared.det_bareiss();
    det.mul_monomial(&GaussianRational::one(), &total).with_vars(vars.max(det.vars()))
}

/// Embeds a constant matrix into univariate Laurent matrices.
pub fn lift(m: &QMatrix) -> LMatrix {
    m.map(|c| LaurentPoly::constant(c.clone(), 1))
}

/// `det(I − λ^k H)` as a univariate Laurent polynomial.
pub fn det_one_minus(h: &QMatrix, k: i64) -> LaurentPoly {
    let n = h.rows();
    let lam = LaurentPoly::lambda_pow(k);
    let m = LMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { LaurentPoly::constant(GaussianRational::one(), 1) } else { LaurentPoly::zero_in(1) };
        id.sub_ref(&lam.scale(h.get(i, j)))
    });
    det_poly(&m)
}

// ---------------------------------------------------------------------------
// Zeta functions

/// `num / den`, univariate. Values built through the public API are always in
/// normal form, so `==` is equality up to `±λ^u`.
#[derive(Clone, PartialEq, Eq)]
pub struct ZetaFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

fn univariate_coeffs(p: &LaurentPoly) -> Result<(i64, Vec<GaussianRational>)> {
    if p.is_zero() {
        return Ok((0, Vec::new()));
    }
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (e, _) in p.terms() {
        if e.iter().skip(1).any(|&x| x != 0) {
            return Err(Error::InvalidArgument("zeta functions are univariate".into()));
        }
        let k = e.first().copied().unwrap_or(0);
        lo = lo.min(k);
        hi = hi.max(k);
    }
    let mut v = vec![GaussianRational::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        v[(e.first().copied().unwrap_or(0) - lo) as usize] = c.clone();
    }
    Ok((lo, v))
}

fn from_coeffs(v: &[GaussianRational]) -> LaurentPoly {
    LaurentPoly::from_terms(1, v.iter().enumerate().map(|(i, c)| (vec![i as i64], c.clone())))
}

fn all_rational(v: &[GaussianRational]) -> bool {
    v.iter().all(|c| c.is_real())
}

fn to_integers(v: &[GaussianRational], scale: &BigInt) -> Vec<BigInt> {
    v.iter()
        .map(|c| {
            let x = &c.re * BigRational::from_integer(scale.clone());
            assert!(x.is_integer(), "denominators were cleared");
            x.to_integer()
        })
        .collect()
}

impl ZetaFunction {
    /// Builds `num/den` and brings it to normal form.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (_, n) = univariate_coeffs(&num)?;
        let (_, d) = univariate_coeffs(&den)?;
        if n.is_empty() {
            return Ok(Self { num: LaurentPoly::zero_in(1), den: LaurentPoly::constant(GaussianRational::one(), 1) });
        }
        let (n, d) = if all_rational(&n) && all_rational(&d) {
            let lcm = n.iter().chain(d.iter()).fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()));
            let ni = to_integers(&n, &lcm);
            let di = to_integers(&d, &lcm);
            let g = int_poly_gcd(&ni, &di);
            let mut ni = int_poly_div_exact(&ni, &g).expect("gcd divides");
            let mut di = int_poly_div_exact(&di, &g).expect("gcd divides");
            let content = ni.iter().chain(di.iter()).fold(BigInt::zero(), |acc, c| acc.gcd(c));
            for c in ni.iter_mut().chain(di.iter_mut()) {
                *c /= &content;
            }
            if ni[0].is_negative() {
                ni.iter_mut().for_each(|c| *c = -c.clone());
            }
            if di[0].is_negative() {
                di.iter_mut().for_each(|c| *c = -c.clone());
            }
            (
                ni.into_iter().map(GaussianRational::from_bigint).collect::<Vec<_>>(),
                di.into_iter().map(GaussianRational::from_bigint).collect::<Vec<_>>(),
            )
        } else {
            let pn = QiPoly::new(n);
            let pd = QiPoly::new(d);
            let g = pn.gcd(&pd);
            let pn = pn.div_exact(&g).expect("gcd divides");
            let pd = pd.div_exact(&g).expect("gcd divides");
            let sn = pn.coeff(0).inv().expect("nonzero constant term");
            let sd = pd.coeff(0).inv().expect("nonzero constant term");
            (pn.scale(&sn).coeffs().to_vec(), pd.scale(&sd).coeffs().to_vec())
        };
        Ok(Self { num: from_coeffs(&n), den: from_coeffs(&d) })
    }

    pub fn from_poly(p: LaurentPoly) -> Result<Self> {
        Self::new(p, LaurentPoly::constant(GaussianRational::one(), 1))
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::constant(GaussianRational::one(), 1)).expect("nonzero")
    }

    /// `1 / (1 − λ^k)`-style helpers are built from integer coefficient lists.
    pub fn from_int_coeffs(num: &[i64], den: &[i64]) -> Result<Self> {
        let f = |v: &[i64]| from_coeffs(&v.iter().map(|&x| GaussianRational::from_int(x)).collect::<Vec<_>>());
        Self::new(f(num), f(den))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Degree of the normalized numerator or denominator.
    fn degree(p: &LaurentPoly) -> i64 {
        p.max_exponents().first().copied().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(self.num.mul_ref(&rhs.num), self.den.mul_ref(&rhs.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Self::new(base.num.pow(e), base.den.pow(e))
    }

    /// `λ ↦ λ^k` for `k ≠ 0`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        Self::new(self.num.substitute_power(0, k)?, self.den.substitute_power(0, k)?)
    }

    /// Same class modulo `±λ^u` (normal forms compared).
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self == other
    }

    /// `χ = −(deg num − deg den)`.
    pub fn euler_characteristic(&self) -> i64 {
        -(Self::degree(&self.num) - Self::degree(&self.den))
    }

    /// Greedy display as a product of `(1 − λ^a)` powers when possible; any
    /// leftover factor is printed expanded.
    pub fn display_factored(&self) -> String {
        let (nf, nr) = extract_cyclic(&self.num);
        let (df, dr) = extract_cyclic(&self.den);
        let mut exps: BTreeMap<i64, i64> = BTreeMap::new();
        for (a, k) in nf {
            *exps.entry(a).or_default() += k;
        }
        for (a, k) in df {
            *exps.entry(a).or_default() -= k;
        }
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for (a, k) in exps.iter().rev() {
            let base = if *a == 1 { "(1 - lambda)".to_string() } else { format!("(1 - lambda^{})", a) };
            let s = if k.abs() == 1 { base } else { format!("{}^{}", base, k.abs()) };
            if *k > 0 {
                top.push(s);
            } else if *k < 0 {
                bottom.push(s);
            }
        }
        let one = LaurentPoly::constant(GaussianRational::one(), 1);
        if nr != one {
            top.push(format!("({})", nr));
        }
        if dr != one {
            bottom.push(format!("({})", dr));
        }
        let t = if top.is_empty() { "1".to_string() } else { top.join("") };
        if bottom.is_empty() {
            t
        } else {
            format!("{}/({})", t, bottom.join(""))
        }
    }
}

/// Repeatedly divides by the largest possible `1 − λ^a`. Returns the
/// extracted `(a, multiplicity)` pairs and the remaining cofactor.
fn extract_cyclic(p: &LaurentPoly) -> (Vec<(i64, i64)>, LaurentPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    let mut a = ZetaFunction::degree(&rest);
    while a >= 1 {
        let f = LaurentPoly::from_int_terms(&[(0, 1), (a, -1)]);
        let mut k = 0;
        while let Some(q) = rest.div_exact(&f) {
            if ZetaFunction::degree(&q) < 0 || q.min_exponents().first().copied().unwrap_or(0) < 0 {
                break;
            }
            rest = q;
            k += 1;
        }
        if k > 0 {
            found.push((a, k));
        }
        a = (a - 1).min(ZetaFunction::degree(&rest));
    }
    if rest.terms().next().is_some_and(|(_, c)| c.leading_sign() < 0) {
        rest = rest.scale(&GaussianRational::from_int(-1));
    }
    (found, rest)
}

impl fmt::Display for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = LaurentPoly::constant(GaussianRational::one(), 1);
        if self.den == one {
            write!(f, "{}", self.num)
        } else if self.num.len() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ZetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZetaFunction({})", self)
    }
}

/// JSON form: exponent/coefficient pairs for numerator and denominator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ZetaJson {
    pub num: PolyPairsJson,
    pub den: PolyPairsJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyPairsJson {
    pub terms: Vec<(i64, CoeffJson)>,
}

fn pairs_of(p: &LaurentPoly) -> PolyPairsJson {
    PolyPairsJson {
        terms: p.terms().map(|(e, c)| (e.first().copied().unwrap_or(0), CoeffJson::from_value(c))).collect(),
    }
}

fn poly_of(j: &PolyPairsJson) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero_in(1);
    for (e, c) in &j.terms {
        p.add_term(vec![*e], c.to_value()?);
    }
    Ok(p)
}

impl ZetaFunction {
    pub fn to_json(&self) -> ZetaJson {
        ZetaJson { num: pairs_of(&self.num), den: pairs_of(&self.den) }
    }

    pub fn from_json(j: &ZetaJson) -> Result<Self> {
        Self::new(poly_of(&j.num)?, poly_of(&j.den)?)
    }
}

impl Serialize for ZetaFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZetaFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ZetaJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Graded monodromy

/// Homology monodromies `H_k`, one square invertible matrix per degree.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct GradedMonodromy {
    blocks: BTreeMap<i64, QMatrix>,
}

impl GradedMonodromy {
    pub fn new(blocks: impl IntoIterator<Item = (i64, QMatrix)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (q, m) in blocks {
            if !m.is_square() {
                return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
            }
            if m.rows() > 0 && m.det_bareiss().is_zero() {
                return Err(Error::SingularBlock(q));
            }
            if map.insert(q, m).is_some() {
                return Err(Error::InvalidInput(format!("degree {} listed twice", q)));
            }
        }
        Ok(Self { blocks: map })
    }

    /// A single block in degree 0.
    pub fn degree_zero(m: QMatrix) -> Result<Self> {
        Self::new([(0, m)])
    }

    pub fn blocks(&self) -> &BTreeMap<i64, QMatrix> {
        &self.blocks
    }

    pub fn block(&self, q: i64) -> Option<&QMatrix> {
        self.blocks.get(&q)
    }

    pub fn dim(&self, q: i64) -> usize {
        self.blocks.get(&q).map_or(0, |m| m.rows())
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(|m| m.rows()).sum()
    }

    /// `Σ (−1)^k dim H_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.blocks.iter().map(|(q, m)| if q % 2 == 0 { m.rows() as i64 } else { -(m.rows() as i64) }).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut blocks = self.blocks.clone();
        for (q, m) in &other.blocks {
            let merged = match blocks.get(q) {
                Some(a) => QMatrix::block_diag(&[a.clone(), m.clone()]),
                None => m.clone(),
            };
            blocks.insert(*q, merged);
        }
        Self { blocks }
    }

    pub fn to_json(&self) -> MonodromyJson {
        MonodromyJson {
            blocks: self
                .blocks
                .iter()
                .map(|(q, m)| BlockJson {
                    q: *q,
                    matrix: m.to_rows().iter().map(|r| r.iter().map(CoeffJson::from_value).collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MonodromyJson) -> Result<Self> {
        let mut blocks = Vec::new();
        for b in &j.blocks {
            let rows: Vec<Vec<GaussianRational>> =
                b.matrix.iter().map(|r| r.iter().map(|c| c.to_value()).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
            let n = rows.len();
            let m = QMatrix::from_rows(rows).ok_or_else(|| Error::InvalidInput(format!("ragged matrix in degree {}", b.q)))?;
            if m.cols() != n {
                return Err(Error::InvalidInput(format!("block in degree {} is not square", b.q)));
            }
            blocks.push((b.q, m));
        }
        Self::new(blocks)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonodromyJson {
    pub blocks: Vec<BlockJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockJson {
    pub q: i64,
    pub matrix: Vec<Vec<CoeffJson>>,
}

impl Serialize for GradedMonodromy {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedMonodromy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MonodromyJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// `∏_k det(I − λH_k)^{(−1)^{k+1}}`.
pub fn zeta_from_monodromy(m: &GradedMonodromy) -> Result<ZetaFunction> {
    let mut num = LaurentPoly::constant(GaussianRational::one(), 1);
    let mut den = LaurentPoly::constant(GaussianRational::one(), 1);
    for (q, h) in &m.blocks {
        let p = det_one_minus(h, 1);
        if p.is_zero() {
            return Err(Error::SingularBlock(*q));
        }
        if q.rem_euclid(2) == 1 {
            num = num.mul_ref(&p);
        } else {
            den = den.mul_ref(&p);
        }
    }
    ZetaFunction::new(num, den)
}

pub fn euler_from_zeta(z: &ZetaFunction) -> i64 {
    z.euler_characteristic()
}

/// `(E_{q,1}, E_{q,2})`: block-diagonal over `i + j = q` (increasing `i`) of
/// `H_{1,i} ⊗ I` and `I ⊗ H_{2,j}`.
pub fn graded_e(m1: &GradedMonodromy, m2: &GradedMonodromy, q: i64) -> (QMatrix, QMatrix) {
    let mut e1 = Vec::new();
    let mut e2 = Vec::new();
    for (i, h1) in &m1.blocks {
        if let Some(h2) = m2.blocks.get(&(q - i)) {
            e1.push(h1.kron(&QMatrix::identity(h2.rows())));
            e2.push(QMatrix::identity(h1.rows()).kron(h2));
        }
    }
    (QMatrix::block_diag(&e1), QMatrix::block_diag(&e2))
}

/// Every `q = i + j` with both blocks present, increasing.
pub fn join_degrees(m1: &GradedMonodromy, m2: &GradedMonodromy) -> Vec<i64> {
    let mut qs: Vec<i64> = m1.blocks.keys().flat_map(|i| m2.blocks.keys().map(move |j| i + j)).collect();
    qs.sort_unstable();
    qs.dedup();
    qs
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CyclicConvention {
    /// `H` in the corner block, identities on the subdiagonal.
    #[default]
    OneTwist,
    /// `H` in every nonzero block.
    AllTwist,
}

/// `n × n` block circulant built from `H`.
pub fn cyclic_block(h: &QMatrix, n: usize, convention: CyclicConvention) -> Result<QMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic block needs at least one copy".into()));
    }
    let d = h.rows();
    let id = QMatrix::identity(d);
    let sub = match convention {
        CyclicConvention::OneTwist => &id,
        CyclicConvention::AllTwist => h,
    };
    let mut out = QMatrix::zeros(n * d, n * d);
    out.set_block(0, (n - 1) * d, h);
    for i in 1..n {
        out.set_block(i * d, (i - 1) * d, sub);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(pairs)
    }

    fn perm2() -> QMatrix {
        QMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn laurent_examples() {
        assert_eq!(lp(&[(1, 1), (0, -1)]).mul_ref(&lp(&[(1, 1), (0, 1)])), lp(&[(2, 1), (0, -1)]));
        assert_eq!(lp(&[(2, 1), (0, -1)]).substitute_power(0, 3).unwrap(), lp(&[(6, 1), (0, -1)]));
        assert!(lp(&[(2, 1)]).substitute_power(0, 0).is_err());
    }

    #[test]
    fn normal_forms() {
        let z = ZetaFunction::new(lp(&[(6, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(z.num(), &lp(&[(0, 1), (2, 1), (4, 1)]));
        assert_eq!(z.den(), &lp(&[(0, 1)]));
        assert_eq!(z.to_string(), "lambda^4 + lambda^2 + 1");
        let a = ZetaFunction::from_poly(lp(&[(0, 1), (1, -1)])).unwrap();
        let b = ZetaFunction::from_poly(lp(&[(1, 1), (0, -1)])).unwrap();
        assert!(a.eq_up_to_unit(&b));
        let c = ZetaFunction::new(lp(&[(5, 1), (3, -1)]), lp(&[(1, 1)])).unwrap();
        let d = ZetaFunction::from_poly(lp(&[(2, 1), (0, -1)]).mul_ref(&lp(&[(2, 1)]))).unwrap();
        assert!(c.eq_up_to_unit(&d));
        assert!(matches!(ZetaFunction::new(lp(&[(0, 1)]), LaurentPoly::zero_in(1)), Err(Error::ZeroDenominator)));
        let e = ZetaFunction::new(lp(&[(0, 2)]), lp(&[(0, 4)])).unwrap();
        assert_eq!(e.to_string(), "1/(2)");
    }

    #[test]
    fn monodromy_zetas() {
        let z = zeta_from_monodromy(&GradedMonodromy::degree_zero(QMatrix::identity(1)).unwrap()).unwrap();
        assert_eq!(z, ZetaFunction::from_int_coeffs(&[1], &[1, -1]).unwrap());
        assert_eq!(z.euler_characteristic(), 1);

        let z2 = zeta_from_monodromy(&GradedMonodromy::degree_zero(perm2()).unwrap()).unwrap();
        assert!(z2.eq_up_to_unit(&ZetaFunction::from_int_coeffs(&[1], &[-1, 0, 1]).unwrap()));
        assert_eq!(z2.euler_characteristic(), 2);

        let companion = QMatrix::from_int_rows(&[vec![0, -1], vec![1, 1]]).unwrap();
        let m = GradedMonodromy::new([(0, QMatrix::identity(1)), (1, companion)]).unwrap();
        let z3 = zeta_from_monodromy(&m).unwrap();
        assert_eq!(z3, ZetaFunction::from_int_coeffs(&[1, -1, 1], &[1, -1]).unwrap());
        assert_eq!(z3.euler_characteristic(), -1);

        let sing = QMatrix::from_int_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(GradedMonodromy::degree_zero(sing), Err(Error::SingularBlock(0))));
    }

    #[test]
    fn euler_of_cusp_join() {
        let z = ZetaFunction::new(lp(&[(6, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(euler_from_zeta(&z), -4);
    }

    #[test]
    fn graded_e_examples() {
        let m1 = GradedMonodromy::degree_zero(QMatrix::identity(1)).unwrap();
        let m2 = GradedMonodromy::degree_zero(perm2()).unwrap();
        let (e1, e2) = graded_e(&m1, &m2, 0);
        assert_eq!(e1, QMatrix::identity(2));
        assert_eq!(e2, perm2());
        let (e1, e2) = graded_e(&m1, &m2, 1);
        assert_eq!((e1.rows(), e2.rows()), (0, 0));
        let a = GradedMonodromy::degree_zero(QMatrix::identity(2)).unwrap();
        let b = GradedMonodromy::degree_zero(QMatrix::identity(3)).unwrap();
        let (e1, e2) = graded_e(&a, &b, 0);
        assert_eq!(e1, QMatrix::identity(6));
        assert_eq!(e2, QMatrix::identity(6));
    }

    #[test]
    fn cyclic_blocks() {
        let p = cyclic_block(&QMatrix::identity(1), 3, CyclicConvention::OneTwist).unwrap();
        assert_eq!(det_one_minus(&p, 1), lp(&[(0, 1), (3, -1)]));
        let h = QMatrix::from_int_rows(&[vec![2, 1], vec![-1, 3]]).unwrap();
        let c = cyclic_block(&h, 2, CyclicConvention::OneTwist).unwrap();
        assert_eq!(det_one_minus(&c, 1), det_one_minus(&h, 2));
        let h1 = QMatrix::from_int_rows(&[vec![5]]).unwrap();
        let a = cyclic_block(&h1, 2, CyclicConvention::AllTwist).unwrap();
        assert_eq!(det_one_minus(&a, 1), lp(&[(0, 1), (2, -25)]));
        assert!(cyclic_block(&h, 0, CyclicConvention::OneTwist).is_err());
    }

    #[test]
    fn det_poly_examples() {
        let f = lp(&[(6, 1), (0, -1)]);
        let z = LaurentPoly::zero_in(1);
        let m = LMatrix::from_rows(vec![vec![f.clone(), z.clone()], vec![z, f.clone()]]).unwrap();
        assert_eq!(det_poly(&m), f.mul_ref(&f));
        assert_eq!(det_poly(&LMatrix::zeros(0, 0)), LaurentPoly::one());
        // Negative exponents are cleared per row.
        let m = LMatrix::from_rows(vec![vec![lp(&[(-1, 1)]), lp(&[(0, 1)])], vec![lp(&[(0, 1)]), lp(&[(-2, 1)])]]).unwrap();
        assert_eq!(det_poly(&m), lp(&[(-3, 1), (0, -1)]));
    }

    #[test]
    fn factored_display() {
        let z = ZetaFunction::from_int_coeffs(&[1], &[1, 0, -1]).unwrap().mul(&ZetaFunction::from_int_coeffs(&[1], &[1, 0, 0, 0, 0, 0, -1]).unwrap());
        assert_eq!(z.display_factored(), "1/((1 - lambda^6)(1 - lambda^2))");
        let w = ZetaFunction::from_int_coeffs(&[1, -1, 1], &[1, -1]).unwrap();
        assert_eq!(w.display_factored(), "(lambda^2 - lambda + 1)/((1 - lambda))");
    }

    #[test]
    fn json_round_trip() {
        let z = ZetaFunction::new(lp(&[(6, 1), (0, -1)]), lp(&[(2, 1), (0, -1)])).unwrap();
        let v = serde_json::to_value(&z).unwrap();
        assert_eq!(v, serde_json::json!({"num":{"terms":[[0,1],[2,1],[4,1]]},"den":{"terms":[[0,1]]}}));
        let back: ZetaFunction = serde_json::from_value(v).unwrap();
        assert_eq!(back, z);
        let m: GradedMonodromy = serde_json::from_str(r#"{"blocks":[{"q":0,"matrix":[[0,1],[1,0]]}]}"#).unwrap();
        assert_eq!(m.block(0), Some(&perm2()));
    }
}
