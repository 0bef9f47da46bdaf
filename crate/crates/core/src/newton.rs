//! Newton polygon of a mixed polynomial: support, compact faces, weight data,
//! face functions and the canonical stratification descriptors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixedpoly::{CoordSubset, MixedPolynomial};

/// A point `ν + μ` of the support.
pub type LatticePoint = Vec<u32>;

/// Weight vector `P`; entries are non-negative and not all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<u32>);

impl WeightVector {
    pub fn new(p: Vec<u32>) -> Result<Self> {
        if p.is_empty() || p.iter().all(|&x| x == 0) {
            return Err(Error::InvalidArgument("weight vector must be nonzero".into()));
        }
        Ok(Self(p))
    }

    /// `ℓ_P(ξ) = Σ p_j ξ_j`.
    pub fn eval(&self, xi: &[u32]) -> u64 {
        self.0.iter().zip(xi).map(|(&p, &x)| p as u64 * x as u64).sum()
    }

    /// `I(P) = {i | p_i = 0}` (1-based).
    pub fn zero_set(&self) -> CoordSubset {
        CoordSubset::from_indices((1..=self.0.len()).filter(|&i| self.0[i - 1] == 0))
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self(self.0.iter().map(|&x| x * k).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub dim: usize,
    #[serde(rename = "points")]
    pub lattice_points: Vec<LatticePoint>,
    #[serde(rename = "weight")]
    pub supporting_weight: WeightVector,
}

impl Face {
    pub fn is_vertex(&self) -> bool {
        self.dim == 0
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.lattice_points.iter().map(|p| WeightVector(p.clone()).to_string()).collect();
        let kind = if self.dim == 0 { "vertex".to_string() } else { format!("{}-face", self.dim) };
        write!(f, "{} [{}] weight {}", kind, pts.join(" "), self.supporting_weight)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub n: usize,
    pub support: Vec<LatticePoint>,
    /// Compact faces: vertices and bounded edges (higher faces for `n > 2`).
    pub faces: Vec<Face>,
    /// Faces cut out by weights with zero entries, such as the axis weights
    /// `(1,0)` and `(0,1)` for `n = 2`. They need not be compact.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub noncompact: Vec<Face>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.dim == 0)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.dim == 1)
    }
}

/// The set `{ν + μ}` over stored terms, sorted.
pub fn support(p: &MixedPolynomial) -> Result<Vec<LatticePoint>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let set: BTreeSet<LatticePoint> = p.terms().map(|t| t.lattice_point()).collect();
    Ok(set.into_iter().collect())
}

/// `(d(P), Δ(P))` for an arbitrary nonzero weight.
pub fn weight_data(p: &MixedPolynomial, weight: &WeightVector) -> Result<(u64, Face)> {
    let pts = support(p)?;
    if weight.0.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), got: weight.0.len() });
    }
    let (d, arg) = argmin(&pts, weight);
    Ok((d, Face { dim: affine_dim(&arg), lattice_points: arg, supporting_weight: weight.clone() }))
}

fn argmin(pts: &[LatticePoint], w: &WeightVector) -> (u64, Vec<LatticePoint>) {
    let d = pts.iter().map(|x| w.eval(x)).min().expect("nonempty support");
    (d, pts.iter().filter(|x| w.eval(x) == d).cloned().collect())
}

/// Sum of the terms of `p` whose lattice point lies in `points`.
pub fn face_function_on(p: &MixedPolynomial, points: &[LatticePoint]) -> MixedPolynomial {
    let set: BTreeSet<&LatticePoint> = points.iter().collect();
    MixedPolynomial::from_terms(p.n(), p.terms().filter(|t| set.contains(&t.lattice_point())))
}

pub fn face_function(p: &MixedPolynomial, face: &Face) -> MixedPolynomial {
    face_function_on(p, &face.lattice_points)
}

/// The weight face function `g_P`.
pub fn weight_face(p: &MixedPolynomial, weight: &WeightVector) -> Result<MixedPolynomial> {
    let (_, face) = weight_data(p, weight)?;
    Ok(face_function(p, &face))
}

/// Compact faces of `Γ₊`. Exact staircase hull for `n ≤ 2`; for larger `n`
/// faces are found by enumerating positive weights with small entries, which
/// is only intended for tiny examples.
pub fn compact_faces(p: &MixedPolynomial) -> Result<NewtonPolygon> {
    let pts = support(p)?;
    let n = p.n();
    let (faces, noncompact) = match n {
        1 => {
            let w = WeightVector(vec![1]);
            let (_, arg) = argmin(&pts, &w);
            (vec![Face { dim: 0, lattice_points: arg, supporting_weight: w }], Vec::new())
        }
        2 => planar_faces(&pts),
        _ => (brute_force_faces(&pts, n, default_brute_bound(n)), Vec::new()),
    };
    Ok(NewtonPolygon { n, support: pts, faces, noncompact })
}

fn default_brute_bound(n: usize) -> u32 {
    match n {
        3 => 12,
        4 => 6,
        _ => 3,
    }
}

fn planar_faces(pts: &[LatticePoint]) -> (Vec<Face>, Vec<Face>) {
    // Pareto-minimal staircase: for each x keep the smallest y, then keep
    // points whose y strictly drops as x grows.
    let mut best: BTreeMap<u32, u32> = BTreeMap::new();
    for q in pts {
        let e = best.entry(q[0]).or_insert(q[1]);
        *e = (*e).min(q[1]);
    }
    let mut stair: Vec<(i64, i64)> = Vec::new();
    for (&x, &y) in &best {
        if stair.last().map_or(true, |&(_, ly)| (y as i64) < ly) {
            stair.push((x as i64, y as i64));
        }
    }
    // Lower convex chain, dropping collinear middle points.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &q in &stair {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (q.1 - a.1) - (b.1 - a.1) * (q.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(q);
    }

    let mut faces = Vec::new();
    for (k, &v) in hull.iter().enumerate() {
        let w = isolating_weight(pts, v);
        faces.push(Face { dim: 0, lattice_points: vec![vec![v.0 as u32, v.1 as u32]], supporting_weight: w });
        if let Some(&u) = hull.get(k + 1) {
            let (a, b) = (v.1 - u.1, u.0 - v.0);
            let g = a.gcd(&b);
            let w = WeightVector(vec![(a / g) as u32, (b / g) as u32]);
            let (_, arg) = argmin(pts, &w);
            faces.push(Face { dim: 1, lattice_points: arg, supporting_weight: w });
        }
    }

    let noncompact = [vec![1, 0], vec![0, 1]]
        .into_iter()
        .map(|w| {
            let w = WeightVector(w);
            let (_, arg) = argmin(pts, &w);
            Face { dim: affine_dim(&arg), lattice_points: arg, supporting_weight: w }
        })
        .collect();
    (faces, noncompact)
}

/// Lexicographically smallest primitive positive weight whose minimum over
/// the support is attained only at `v`.
fn isolating_weight(pts: &[LatticePoint], v: (i64, i64)) -> WeightVector {
    for p1 in 1i64.. {
        // Constraint per point s: p2 (v.y - s.y) < p1 (s.x - v.x).
        let mut lo: Option<(i64, i64)> = None; // p2 > num/den
        let mut hi: Option<(i64, i64)> = None; // p2 < num/den
        let mut feasible = true;
        for s in pts {
            let (sx, sy) = (s[0] as i64, s[1] as i64);
            if (sx, sy) == v {
                continue;
            }
            let a = v.1 - sy;
            let b = p1 * (sx - v.0);
            if a == 0 {
                if b <= 0 {
                    feasible = false;
                }
            } else if a > 0 {
                // p2 < b / a
                if hi.map_or(true, |(n, d)| b * d < n * a) {
                    hi = Some((b, a));
                }
            } else {
                // p2 > b / a = (-b) / (-a)
                let (n, d) = (-b, -a);
                if lo.map_or(true, |(ln, ld)| n * ld > ln * d) {
                    lo = Some((n, d));
                }
            }
        }
        if !feasible {
            continue;
        }
        let start = match lo {
            Some((n, d)) => (Integer::div_floor(&n, &d) + 1).max(1),
            None => 1,
        };
        let mut p2 = start;
        loop {
            if let Some((n, d)) = hi {
                if p2 * d >= n {
                    break;
                }
            }
            if p1.gcd(&p2) == 1 {
                return WeightVector(vec![p1 as u32, p2 as u32]);
            }
            p2 += 1;
        }
    }
    unreachable!("a hull vertex always has an isolating weight")
}

/// Distinct argmin sets over positive weights with entries `1..=bound`,
/// each labelled by the first (lexicographically smallest) weight attaining it.
pub fn brute_force_faces(pts: &[LatticePoint], n: usize, bound: u32) -> Vec<Face> {
    let mut seen: BTreeMap<Vec<LatticePoint>, WeightVector> = BTreeMap::new();
    for w in weights_in_box(n, CoordSubset::empty(), bound) {
        let (_, arg) = argmin(pts, &w);
        seen.entry(arg).or_insert(w);
    }
    let mut faces: Vec<Face> = seen
        .into_iter()
        .map(|(arg, w)| Face { dim: affine_dim(&arg), lattice_points: arg, supporting_weight: w })
        .collect();
    faces.sort_by(|a, b| a.lattice_points[0].cmp(&b.lattice_points[0]).then(a.dim.cmp(&b.dim)));
    faces
}

/// All weights with `p_i = 0` for `i ∈ zeros` and `1 ≤ p_i ≤ bound` otherwise,
/// in lexicographic order.
pub fn weights_in_box(n: usize, zeros: CoordSubset, bound: u32) -> Vec<WeightVector> {
    let free: Vec<usize> = (0..n).filter(|&i| !zeros.contains(i + 1)).collect();
    let mut out = Vec::new();
    if free.is_empty() {
        return out;
    }
    let mut cur = vec![1u32; free.len()];
    loop {
        let mut p = vec![0u32; n];
        for (k, &i) in free.iter().enumerate() {
            p[i] = cur[k];
        }
        out.push(WeightVector(p));
        let mut k = free.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < bound {
                cur[k] += 1;
                for c in cur.iter_mut().skip(k + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}

/// Distinct `Δ(P)` over weights with `I(P) = zeros` and free entries `≤ bound`.
pub fn weight_classes(p: &MixedPolynomial, zeros: CoordSubset, bound: u32) -> Result<Vec<(WeightVector, Face)>> {
    let pts = support(p)?;
    let mut seen: BTreeMap<Vec<LatticePoint>, WeightVector> = BTreeMap::new();
    for w in weights_in_box(p.n(), zeros, bound) {
        let (_, arg) = argmin(&pts, &w);
        seen.entry(arg).or_insert(w);
    }
    let mut out: Vec<(WeightVector, Face)> = seen
        .into_iter()
        .map(|(arg, w)| (w.clone(), Face { dim: affine_dim(&arg), lattice_points: arg, supporting_weight: w }))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Dimension of the affine span of a point set.
pub fn affine_dim(pts: &[LatticePoint]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let base = &pts[0];
    let mut rows: Vec<Vec<i64>> =
        pts[1..].iter().map(|q| q.iter().zip(base).map(|(&a, &b)| a as i64 - b as i64).collect()).collect();
    // Integer row reduction; entries stay small for lattice data.
    let cols = base.len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                let g = a.gcd(&b);
                let (fa, fb) = (b / g, a / g);
                for k in 0..cols {
                    rows[r][k] = rows[r][k] * fb - rows[rank][k] * fa;
                }
                let gr = rows[r].iter().fold(0i64, |acc, &x| acc.gcd(&x));
                if gr > 1 {
                    rows[r].iter_mut().for_each(|x| *x /= gr);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StratumKind {
    /// `g⁻¹(0) ∩ ℂ*^I` for `I ∈ I_nv`.
    ZeroLocus,
    /// `ℂ*^I ∖ g⁻¹(0)` for `I ∈ I_nv`.
    Complement,
    /// `ℂ*^I` for `I ∈ I_v`.
    VanishingTorus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub subset: CoordSubset,
    pub kind: StratumKind,
    pub label: String,
}

impl Stratum {
    /// Membership test for a point, given exact knowledge of whether
    /// `g` vanishes there.
    pub fn contains(&self, nonzero_coords: CoordSubset, g_vanishes: bool) -> bool {
        nonzero_coords == self.subset
            && match self.kind {
                StratumKind::ZeroLocus => g_vanishes,
                StratumKind::Complement => !g_vanishes,
                StratumKind::VanishingTorus => true,
            }
    }
}

/// Symbolic descriptors of the canonical stratification.
pub fn canonical_strata(p: &MixedPolynomial) -> Result<Vec<Stratum>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (nv, v) = p.index_sets();
    let mut out = Vec::new();
    for i in nv {
        out.push(Stratum { subset: i, kind: StratumKind::ZeroLocus, label: format!("g^-1(0) in C*^{}", i) });
        out.push(Stratum { subset: i, kind: StratumKind::Complement, label: format!("C*^{} minus g^-1(0)", i) });
    }
    for i in v {
        out.push(Stratum { subset: i, kind: StratumKind::VanishingTorus, label: format!("C*^{}", i) });
    }
    Ok(out)
}
