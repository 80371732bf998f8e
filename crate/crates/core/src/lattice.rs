//! Exact verification toolbox for small positive-definite integral
//! lattices: rational LDL positive-definiteness, Fincke-Pohst short-vector
//! enumeration, theta fingerprints, and a complete backtracking isometry
//! test that returns an explicit unimodular witness.

use crate::matrix::IntMatrix;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Hard cap for short-vector enumeration.
pub const ENUM_MAX_DIM: usize = 16;
/// Default cap for the isometry search (overridable up to ENUM_MAX_DIM).
pub const ISOMETRY_DEFAULT_CAP: usize = 12;

fn require_symmetric(g: &IntMatrix) -> Result<()> {
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            if g.get(i, j) != g.get(j, i) {
                return Err(Error::NotSymmetric { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

/// Exact rational LDL: positive definite iff every pivot is positive.
pub fn is_positive_definite(g: &IntMatrix) -> Result<bool> {
    require_symmetric(g)?;
    let n = g.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(g.get(i, j).clone()))
                .collect()
        })
        .collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return Ok(false);
        }
        for i in k + 1..n {
            let factor = &a[i][k] / &a[k][k];
            for j in k + 1..n {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    Ok(true)
}

/// A lattice vector in basis coordinates, with its exact norm v^T G v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortVector {
    pub coords: Vec<i64>,
    pub norm: BigInt,
}

fn exact_norm(g: &IntMatrix, coords: &[i64]) -> BigInt {
    let n = g.dim();
    let mut acc = BigInt::zero();
    for i in 0..n {
        if coords[i] == 0 {
            continue;
        }
        for j in 0..n {
            if coords[j] == 0 {
                continue;
            }
            acc += g.get(i, j) * BigInt::from(coords[i]) * BigInt::from(coords[j]);
        }
    }
    acc
}

/// Fincke-Pohst preprocessing: express x^T G x as
/// sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2, all rationals exact.
fn quadratic_completion(g: &IntMatrix) -> Result<Vec<Vec<BigRational>>> {
    let n = g.dim();
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(g.get(i, j).clone()))
                .collect()
        })
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            let scaled = &q[i][j] / &q[i][i];
            q[j][i] = q[i][j].clone(); // keep the unscaled copy below the diagonal
            q[i][j] = scaled;
        }
        for k in i + 1..n {
            for l in k..n {
                let sub = q[k][i].clone() * &q[i][l];
                q[k][l] -= sub;
            }
        }
    }
    Ok(q)
}

/// Conservative integer upper bound for sqrt(t) of a nonnegative rational.
fn sqrt_upper(t: &BigRational) -> BigInt {
    if !t.is_positive() {
        return BigInt::zero();
    }
    let prod = t.numer() * t.denom();
    let root = prod.sqrt(); // floor
    (root + BigInt::one()) / t.denom() + BigInt::one()
}

/// All v with 0 < v^T G v <= bound, one representative per {v, -v} pair
/// (first nonzero coordinate positive), sorted by (norm, coordinates).
pub fn short_vectors(g: &IntMatrix, bound: &BigInt) -> Result<Vec<ShortVector>> {
    require_symmetric(g)?;
    let n = g.dim();
    if n > ENUM_MAX_DIM {
        return Err(Error::DimensionCapExceeded {
            dim: n,
            cap: ENUM_MAX_DIM,
            operation: "short vector enumeration",
        });
    }
    if bound.is_negative() {
        return Err(Error::InvalidArgument("enumeration bound must be >= 0".into()));
    }
    let q = quadratic_completion(g)?;
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    let budget = BigRational::from_integer(bound.clone());
    enumerate_level(g, &q, n - 1, &budget, &mut coords, &mut out);
    out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.coords.cmp(&b.coords)));
    Ok(out)
}

fn enumerate_level(
    g: &IntMatrix,
    q: &[Vec<BigRational>],
    level: usize,
    budget: &BigRational,
    coords: &mut Vec<i64>,
    out: &mut Vec<ShortVector>,
) {
    // u = sum_{j > level} q[level][j] * x_j
    let n = coords.len();
    let mut u = BigRational::zero();
    for j in level + 1..n {
        if coords[j] != 0 {
            u += &q[level][j] * BigRational::from_integer(BigInt::from(coords[j]));
        }
    }
    let radius = sqrt_upper(&(budget / &q[level][level]));
    let center = -&u;
    let lo = (&center - BigRational::from_integer(radius.clone())).floor().to_integer();
    let hi = (&center + BigRational::from_integer(radius)).ceil().to_integer();
    let mut x = lo.clone();
    while x <= hi {
        let xi = x.to_i64().expect("coordinates stay desk-scale");
        let offset = BigRational::from_integer(x.clone()) + &u;
        let used = &q[level][level] * &offset * &offset;
        if &used <= budget {
            coords[level] = xi;
            if level == 0 {
                if coords.iter().any(|&c| c != 0) {
                    // canonical representative: first nonzero coordinate positive
                    if coords.iter().find(|&&c| c != 0).copied().unwrap_or(0) > 0 {
                        let norm = exact_norm(g, coords);
                        if norm.is_positive() {
                            out.push(ShortVector {
                                coords: coords.clone(),
                                norm,
                            });
                        }
                    }
                }
            } else {
                let rest = budget - &used;
                enumerate_level(g, q, level - 1, &rest, coords, out);
            }
            coords[level] = 0;
        }
        x += BigInt::one();
    }
}

/// Canonical invariants of a positive definite lattice: determinant,
/// minimum, and the theta counts N(k) = #\{v : v^T G v = k\} for k up to
/// the requested bound (full vector counts, so every k > 0 count is even).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFingerprint {
    pub dimension: usize,
    pub determinant: BigInt,
    pub minimum: BigInt,
    pub theta: BTreeMap<BigInt, u64>,
}

/// Smallest nonzero norm; basis vectors bound the search.
pub fn minimum(g: &IntMatrix) -> Result<BigInt> {
    let diag_min = (0..g.dim())
        .map(|i| g.get(i, i).clone())
        .min()
        .expect("nonempty matrix");
    let vs = short_vectors(g, &diag_min)?;
    vs.first()
        .map(|v| v.norm.clone())
        .ok_or_else(|| Error::InternalInvariant("basis vector missing from enumeration".into()))
}

pub fn fingerprint(g: &IntMatrix, theta_bound: &BigInt) -> Result<LatticeFingerprint> {
    if !is_positive_definite(g)? {
        return Err(Error::NotPositiveDefinite);
    }
    let min = minimum(g)?;
    let mut theta: BTreeMap<BigInt, u64> = BTreeMap::new();
    theta.insert(BigInt::zero(), 1);
    for v in short_vectors(g, theta_bound)? {
        *theta.entry(v.norm).or_insert(0) += 2;
    }
    Ok(LatticeFingerprint {
        dimension: g.dim(),
        determinant: g.det_exact(),
        minimum: min,
        theta,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Isometric,
    NotIsometric,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Isometric => "isometric",
            Verdict::NotIsometric => "not_isometric",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Why two lattices are not isometric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonIsometryEvidence {
    Dimension { left: usize, right: usize },
    Determinant { left: BigInt, right: BigInt },
    Minimum { left: BigInt, right: BigInt },
    ThetaCount { norm: BigInt, left: u64, right: u64 },
    SearchExhausted,
}

impl std::fmt::Display for NonIsometryEvidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Dimension { left, right } => write!(f, "dimension {left} != {right}"),
            Self::Determinant { left, right } => write!(f, "determinant {left} != {right}"),
            Self::Minimum { left, right } => write!(f, "minimum {left} != {right}"),
            Self::ThetaCount { norm, left, right } => {
                write!(f, "theta coefficient N({norm}) = {left} vs {right}")
            }
            Self::SearchExhausted => write!(f, "exhaustive search found no basis image"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IsometryReport {
    pub verdict: Verdict,
    /// Unimodular U with U^T G1 U = G2, present exactly for isometric pairs.
    pub witness: Option<IntMatrix>,
    pub evidence: Option<NonIsometryEvidence>,
}

impl IsometryReport {
    fn isometric(witness: IntMatrix) -> Self {
        Self {
            verdict: Verdict::Isometric,
            witness: Some(witness),
            evidence: None,
        }
    }

    fn not_isometric(evidence: NonIsometryEvidence) -> Self {
        Self {
            verdict: Verdict::NotIsometric,
            witness: None,
            evidence: Some(evidence),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("verdict".into(), self.verdict.as_str().into());
        if let Some(w) = &self.witness {
            map.insert("witness".into(), w.to_json());
        }
        if let Some(e) = &self.evidence {
            let sep = match e {
                NonIsometryEvidence::Dimension { left, right } => serde_json::json!({
                    "invariant": "dimension", "left": left, "right": right }),
                NonIsometryEvidence::Determinant { left, right } => serde_json::json!({
                    "invariant": "determinant",
                    "left": left.to_string(), "right": right.to_string() }),
                NonIsometryEvidence::Minimum { left, right } => serde_json::json!({
                    "invariant": "minimum",
                    "left": left.to_string(), "right": right.to_string() }),
                NonIsometryEvidence::ThetaCount { norm, left, right } => serde_json::json!({
                    "invariant": "theta_coefficient", "norm": norm.to_string(),
                    "left": left, "right": right }),
                NonIsometryEvidence::SearchExhausted => serde_json::json!({
                    "invariant": "exhaustive_search",
                    "note": "no norm-and-product compatible basis image exists" }),
            };
            map.insert("separating".into(), sep);
        }
        serde_json::Value::Object(map)
    }
}

/// Isometry test with the default dimension cap.
pub fn isometric(g1: &IntMatrix, g2: &IntMatrix) -> Result<IsometryReport> {
    isometric_with_cap(g1, g2, ISOMETRY_DEFAULT_CAP)
}

/// Complete backtracking search for a unimodular congruence U^T G1 U = G2.
/// Candidate images of the G2 basis are lattice vectors of G1 with matching
/// norms, pruned by pairwise inner products; theta fingerprints separate
/// cheap non-isometric pairs first. Every isometric verdict re-verifies the
/// witness by exact multiplication.
pub fn isometric_with_cap(g1: &IntMatrix, g2: &IntMatrix, cap: usize) -> Result<IsometryReport> {
    let cap = cap.min(ENUM_MAX_DIM);
    if g1.dim() != g2.dim() {
        return Err(Error::DimensionMismatch {
            left: g1.dim(),
            right: g2.dim(),
        });
    }
    let n = g1.dim();
    if n > cap {
        return Err(Error::DimensionCapExceeded {
            dim: n,
            cap,
            operation: "isometry search",
        });
    }
    if !is_positive_definite(g1)? || !is_positive_definite(g2)? {
        return Err(Error::NotPositiveDefinite);
    }
    let (det1, det2) = (g1.det_exact(), g2.det_exact());
    if det1 != det2 {
        return Ok(IsometryReport::not_isometric(
            NonIsometryEvidence::Determinant {
                left: det1,
                right: det2,
            },
        ));
    }
    let (min1, min2) = (minimum(g1)?, minimum(g2)?);
    if min1 != min2 {
        return Ok(IsometryReport::not_isometric(NonIsometryEvidence::Minimum {
            left: min1,
            right: min2,
        }));
    }
    // common enumeration bound: the largest diagonal entry on either side
    let bound = (0..n)
        .flat_map(|i| [g1.get(i, i).clone(), g2.get(i, i).clone()])
        .max()
        .expect("nonempty");
    let sv1 = short_vectors(g1, &bound)?;
    let sv2 = short_vectors(g2, &bound)?;
    // theta comparison up to the bound
    let mut counts1: BTreeMap<&BigInt, u64> = BTreeMap::new();
    for v in &sv1 {
        *counts1.entry(&v.norm).or_insert(0) += 2;
    }
    let mut counts2: BTreeMap<&BigInt, u64> = BTreeMap::new();
    for v in &sv2 {
        *counts2.entry(&v.norm).or_insert(0) += 2;
    }
    let norms: std::collections::BTreeSet<&BigInt> =
        counts1.keys().chain(counts2.keys()).copied().collect();
    for norm in norms {
        let l = counts1.get(norm).copied().unwrap_or(0);
        let r = counts2.get(norm).copied().unwrap_or(0);
        if l != r {
            return Ok(IsometryReport::not_isometric(
                NonIsometryEvidence::ThetaCount {
                    norm: norm.clone(),
                    left: l,
                    right: r,
                },
            ));
        }
    }
    // signed candidates per target norm, lexicographically ordered
    let mut by_norm: BTreeMap<BigInt, Vec<Vec<i64>>> = BTreeMap::new();
    for v in &sv1 {
        let neg: Vec<i64> = v.coords.iter().map(|c| -c).collect();
        let entry = by_norm.entry(v.norm.clone()).or_default();
        entry.push(v.coords.clone());
        entry.push(neg);
    }
    for list in by_norm.values_mut() {
        list.sort();
    }
    let empty: Vec<Vec<i64>> = Vec::new();
    let candidates: Vec<&Vec<Vec<i64>>> = (0..n)
        .map(|j| by_norm.get(g2.get(j, j)).unwrap_or(&empty))
        .collect();
    // precompute G1 * v for each candidate via a cache keyed by coords
    let mut chosen: Vec<(&Vec<i64>, Vec<BigInt>)> = Vec::with_capacity(n);
    if search(g1, g2, &candidates, &mut chosen) {
        let mut u = IntMatrix::zero(n);
        for (j, (coords, _)) in chosen.iter().enumerate() {
            for i in 0..n {
                u.set(i, j, BigInt::from(coords[i]));
            }
        }
        // soundness: re-verify the witness exactly
        let check = crate::matrix::congruence(&u, g1)?;
        let det_u = u.det_exact();
        if &check != g2 || !(det_u == BigInt::one() || det_u == -BigInt::one()) {
            return Err(Error::InternalInvariant(
                "isometry witness failed re-verification".into(),
            ));
        }
        return Ok(IsometryReport::isometric(u));
    }
    Ok(IsometryReport::not_isometric(
        NonIsometryEvidence::SearchExhausted,
    ))
}

fn mat_vec(g: &IntMatrix, v: &[i64]) -> Vec<BigInt> {
    let n = g.dim();
    (0..n)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..n {
                if v[j] != 0 {
                    acc += g.get(i, j) * BigInt::from(v[j]);
                }
            }
            acc
        })
        .collect()
}

fn dot(v: &[i64], w: &[BigInt]) -> BigInt {
    v.iter()
        .zip(w)
        .filter(|(c, _)| **c != 0)
        .map(|(c, x)| BigInt::from(*c) * x)
        .sum()
}

fn search<'a>(
    g1: &IntMatrix,
    g2: &IntMatrix,
    candidates: &[&'a Vec<Vec<i64>>],
    chosen: &mut Vec<(&'a Vec<i64>, Vec<BigInt>)>,
) -> bool {
    let j = chosen.len();
    if j == candidates.len() {
        return true;
    }
    'next: for cand in candidates[j] {
        // pairwise inner products against already placed columns
        for (i, (_, g1prev)) in chosen.iter().enumerate() {
            if &dot(cand, g1prev) != g2.get(i, j) {
                continue 'next;
            }
        }
        let g1v = mat_vec(g1, cand);
        chosen.push((cand, g1v));
        if search(g1, g2, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_root_a, IntMatrix};

    fn diag(entries: &[i64]) -> IntMatrix {
        let n = entries.len();
        let mut m = IntMatrix::zero(n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(e));
        }
        m
    }

    #[test]
    fn positive_definiteness() {
        assert!(is_positive_definite(&build_root_a(8).unwrap()).unwrap());
        assert!(!is_positive_definite(&crate::matrix::build_extended_a(5).unwrap()).unwrap());
        assert!(!is_positive_definite(&diag(&[-6])).unwrap());
        let ns = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert!(matches!(
            is_positive_definite(&ns),
            Err(Error::NotSymmetric { .. })
        ));
    }

    /// Sylvester oracle: positive definite iff every leading principal
    /// minor determinant is positive.
    fn sylvester(g: &IntMatrix) -> bool {
        (1..=g.dim()).all(|k| {
            let mut lead = IntMatrix::zero(k);
            for i in 0..k {
                for j in 0..k {
                    lead.set(i, j, g.get(i, j).clone());
                }
            }
            lead.det_exact() > BigInt::zero()
        })
    }

    #[test]
    fn ldl_agrees_with_leading_minor_signs() {
        let mut state = 0xd1ce_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..60 {
            let n = 1 + (next() % 6) as usize;
            let mut v = IntMatrix::zero(n);
            for i in 0..n {
                for j in 0..n {
                    v.set(i, j, BigInt::from((next() % 7) as i64 - 3));
                }
            }
            // v^T v + (trial % 3 - 1) I: definite, semidefinite or indefinite
            let mut g = v.transpose().mul(&v).unwrap();
            let shift = BigInt::from(trial % 3) - BigInt::one();
            for i in 0..n {
                let bumped = g.get(i, i) + &shift;
                g.set(i, i, bumped);
            }
            assert_eq!(is_positive_definite(&g).unwrap(), sylvester(&g));
        }
        assert!(sylvester(&build_root_a(5).unwrap()));
    }

    /// Naive independent oracle: scan the full coordinate box allowed by
    /// the ellipsoid bound |x_i| <= sqrt(bound * (G^-1)_ii).
    fn box_count_by_norm(g: &IntMatrix, bound: i64) -> BTreeMap<BigInt, u64> {
        let n = g.dim();
        let det = g.det_exact();
        // (G^-1)_ii = det(minor_ii) / det(G)
        let mut radii = Vec::new();
        for i in 0..n {
            let mut minor = IntMatrix::zero(n - 1);
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in rows.iter().enumerate() {
                    minor.set(a, b, g.get(r, c).clone());
                }
            }
            let num = BigInt::from(bound) * minor.det_exact();
            let q = &num / &det; // floor is fine for a conservative radius
            let r = q.max(BigInt::zero()).sqrt() + BigInt::one();
            radii.push(r.to_i64().unwrap());
        }
        let mut counts = BTreeMap::new();
        let mut coords = vec![0i64; n];
        fn rec(
            g: &IntMatrix,
            radii: &[i64],
            coords: &mut Vec<i64>,
            level: usize,
            bound: i64,
            counts: &mut BTreeMap<BigInt, u64>,
        ) {
            if level == coords.len() {
                if coords.iter().any(|&c| c != 0) {
                    let norm = exact_norm(g, coords);
                    if norm.is_positive() && norm <= BigInt::from(bound) {
                        *counts.entry(norm).or_insert(0) += 1;
                    }
                }
                return;
            }
            for x in -radii[level]..=radii[level] {
                coords[level] = x;
                rec(g, radii, coords, level + 1, bound, counts);
            }
            coords[level] = 0;
        }
        rec(g, &radii, &mut coords, 0, bound, &mut counts);
        counts
    }

    #[test]
    fn short_vector_examples() {
        // A_2 has 3 vector pairs of norm 2
        let a2 = build_root_a(2).unwrap();
        let vs = short_vectors(&a2, &BigInt::from(2)).unwrap();
        assert_eq!(vs.len(), 3);
        assert!(vs.iter().all(|v| v.norm == BigInt::from(2)));
        // 11 * A_4 has minimum 22; nothing at bound 21
        let scaled = build_root_a(4).unwrap().scaled(&BigInt::from(11));
        assert!(short_vectors(&scaled, &BigInt::from(21)).unwrap().is_empty());
        assert_eq!(minimum(&scaled).unwrap(), BigInt::from(22));
        // 1x1 matrix (2): one pair at bound 2
        assert_eq!(short_vectors(&diag(&[2]), &BigInt::from(2)).unwrap().len(), 1);
        // dimension cap
        let too_big = IntMatrix::identity(17).scaled(&BigInt::from(2));
        assert!(matches!(
            short_vectors(&too_big, &BigInt::from(2)),
            Err(Error::DimensionCapExceeded { .. })
        ));
        // indefinite input refused
        assert!(short_vectors(&diag(&[-6]), &BigInt::from(4)).is_err());
    }

    #[test]
    fn theta_counts_match_box_oracle() {
        for g in [
            build_root_a(2).unwrap(),
            build_root_a(3).unwrap(),
            build_root_a(4).unwrap(),
            diag(&[2, 2, 2]),
            IntMatrix::from_i64_rows(&[&[2, 1, 0], &[1, 4, 1], &[0, 1, 6]]).unwrap(),
        ] {
            let bound = 8i64;
            let oracle = box_count_by_norm(&g, bound);
            let mut ours: BTreeMap<BigInt, u64> = BTreeMap::new();
            for v in short_vectors(&g, &BigInt::from(bound)).unwrap() {
                *ours.entry(v.norm).or_insert(0) += 2;
            }
            assert_eq!(ours, oracle);
        }
    }

    #[test]
    fn fingerprint_examples() {
        let fp = fingerprint(&build_root_a(3).unwrap(), &BigInt::from(2)).unwrap();
        assert_eq!(fp.minimum, BigInt::from(2));
        assert_eq!(fp.theta[&BigInt::from(2)], 12);
        assert_eq!(fp.theta[&BigInt::zero()], 1);
        let fp = fingerprint(&diag(&[2, 2, 2]), &BigInt::from(2)).unwrap();
        assert_eq!(fp.theta[&BigInt::from(2)], 6);
        let fp = fingerprint(&build_root_a(4).unwrap(), &BigInt::from(2)).unwrap();
        assert_eq!(fp.determinant, BigInt::from(5));
        // all counts above 0 are even
        assert!(fp.theta.iter().all(|(k, c)| k.is_zero() || c % 2 == 0));
    }

    #[test]
    fn isometry_examples() {
        // A_2 vs 2*A_2: separated by determinant
        let a2 = build_root_a(2).unwrap();
        let r = isometric(&a2, &a2.scaled(&BigInt::from(2))).unwrap();
        assert_eq!(r.verdict, Verdict::NotIsometric);
        assert!(matches!(
            r.evidence,
            Some(NonIsometryEvidence::Determinant { .. })
        ));
        // A_3 vs diag(2,2,2): N(2) = 12 vs 6, and the determinants 4 vs 8
        // already differ, so the cheapest invariant separates first
        let fp1 = fingerprint(&build_root_a(3).unwrap(), &BigInt::from(2)).unwrap();
        let fp2 = fingerprint(&diag(&[2, 2, 2]), &BigInt::from(2)).unwrap();
        assert_eq!(fp1.theta[&BigInt::from(2)], 12);
        assert_eq!(fp2.theta[&BigInt::from(2)], 6);
        let r = isometric(&build_root_a(3).unwrap(), &diag(&[2, 2, 2])).unwrap();
        assert_eq!(r.verdict, Verdict::NotIsometric);
        assert!(matches!(
            r.evidence,
            Some(NonIsometryEvidence::Determinant { .. })
        ));
        // equal determinant and minimum, separated by a theta count
        let r = isometric(&diag(&[2, 2, 9]), &diag(&[2, 3, 6])).unwrap();
        assert_eq!(r.verdict, Verdict::NotIsometric);
        match r.evidence {
            Some(NonIsometryEvidence::ThetaCount { norm, left, right }) => {
                assert_eq!(norm, BigInt::from(2));
                assert_eq!((left, right), (4, 2));
            }
            other => panic!("expected theta separation, got {other:?}"),
        }
        // identical matrices: isometric with identity-like witness
        let r = isometric(&a2, &a2).unwrap();
        assert_eq!(r.verdict, Verdict::Isometric);
        let w = r.witness.unwrap();
        assert_eq!(crate::matrix::congruence(&w, &a2).unwrap(), a2);
        // conjugated by a fixed unimodular matrix
        let u = IntMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        let g = build_root_a(3).unwrap();
        let conj = crate::matrix::congruence(&u, &g).unwrap();
        let r = isometric(&g, &conj).unwrap();
        assert_eq!(r.verdict, Verdict::Isometric);
        let w = r.witness.unwrap();
        assert_eq!(crate::matrix::congruence(&w, &g).unwrap(), conj);
        let det_w = w.det_exact();
        assert!(det_w == BigInt::one() || det_w == -BigInt::one());
        // dimension cap error
        let big = IntMatrix::identity(13).scaled(&BigInt::from(2));
        assert!(matches!(
            isometric(&big, &big),
            Err(Error::DimensionCapExceeded { .. })
        ));
        assert!(isometric_with_cap(&big, &big, 13).unwrap().verdict == Verdict::Isometric);
    }

    #[test]
    fn report_json_shape() {
        let a2 = build_root_a(2).unwrap();
        let r = isometric(&a2, &a2).unwrap();
        let j = r.to_json();
        assert_eq!(j["verdict"], "isometric");
        assert!(j["witness"]["rows"].is_array());
        let r = isometric(&a2, &a2.scaled(&BigInt::from(2))).unwrap();
        let j = r.to_json();
        assert_eq!(j["verdict"], "not_isometric");
        assert_eq!(j["separating"]["invariant"], "determinant");
        assert_eq!(j["separating"]["left"], "3");
        assert_eq!(j["separating"]["right"], "12");
    }
}
