//! Assembly of the trace-zero Gram matrix A(d) and the full trace-form Gram
//! matrix from a coefficient table, plus the discriminant/shape equivalence
//! decisions they support.

use crate::arith::{divisors, nth_root_exact};
use crate::coeffs::{coeff_table, CoefficientTable};
use crate::disc::FactoredDiscriminant;
use crate::lattice::{is_positive_definite, isometric, Verdict};
use crate::matrix::{build_a_d, build_b, congruence, kronecker_ones, minor_11, IntMatrix};
use crate::ramification::{Mode, RamificationProfile};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// The (m-1)-dimensional Gram matrix of the integral trace-zero form,
/// together with the data it was assembled from.
#[derive(Debug, Clone)]
pub struct TraceZeroForm {
    m: u64,
    disc: FactoredDiscriminant,
    gram: IntMatrix,
    table: CoefficientTable,
}

/// The m-dimensional Gram matrix sum_{d | m} a_d A_d of the full trace
/// form; all row sums are 1 and det = disc.
#[derive(Debug, Clone)]
pub struct FullTraceForm {
    m: u64,
    disc: FactoredDiscriminant,
    gram: IntMatrix,
    table: CoefficientTable,
}

impl TraceZeroForm {
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn disc(&self) -> &FactoredDiscriminant {
        &self.disc
    }
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }
    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }
}

impl FullTraceForm {
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn disc(&self) -> &FactoredDiscriminant {
        &self.disc
    }
    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }
    pub fn table(&self) -> &CoefficientTable {
        &self.table
    }
}

/// A_hat_d: the (1,1) minor of B^T A_d B.
pub fn a_hat(m: u64, d: u64) -> Result<IntMatrix> {
    let b = build_b(m)?;
    minor_11(&congruence(&b, &build_a_d(m, d)?)?)
}

fn assemble_trace_zero(table: &CoefficientTable, m: u64) -> Result<IntMatrix> {
    let b = build_b(m)?;
    let mut acc = IntMatrix::zero(m as usize - 1);
    for d in divisors(m) {
        if d == m {
            continue; // B^T A_m B = 0
        }
        let hat = minor_11(&congruence(&b, &build_a_d(m, d)?)?)?;
        acc.add_scaled(table.get(d)?, &hat)?;
    }
    Ok(acc)
}

/// Build the trace-zero form for (m, disc) in the given validation mode.
pub fn build_trace_zero(
    m: u64,
    disc: &FactoredDiscriminant,
    mode: Mode,
) -> Result<TraceZeroForm> {
    let profile = RamificationProfile::validate(m, disc, mode)?;
    let table = coeff_table(&profile)?;
    let gram = assemble_trace_zero(&table, m)?;
    Ok(TraceZeroForm {
        m,
        disc: disc.clone(),
        gram,
        table,
    })
}

/// Build the full m x m trace-form Gram matrix sum_{d | m} a_d A_d.
pub fn build_full_trace(
    m: u64,
    disc: &FactoredDiscriminant,
    mode: Mode,
) -> Result<FullTraceForm> {
    let profile = RamificationProfile::validate(m, disc, mode)?;
    let table = coeff_table(&profile)?;
    let mut gram = IntMatrix::zero(m as usize);
    for d in divisors(m) {
        gram.add_scaled(table.get(d)?, &build_a_d(m, d)?)?;
    }
    Ok(FullTraceForm {
        m,
        disc: disc.clone(),
        gram,
        table,
    })
}

/// Alternative assembly along equation-style Kronecker blocks: the (1,1)
/// minor of sum_{d | m, d < m} a_d (1_d tensor A'_{m/d}). Exposed so the
/// two routes can be compared; they must agree entrywise.
pub fn trace_zero_via_kronecker(table: &CoefficientTable, m: u64) -> Result<IntMatrix> {
    let mut acc = IntMatrix::zero(m as usize);
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let block = kronecker_ones(d, &crate::matrix::build_extended_a(m / d)?)?;
        acc.add_scaled(table.get(d)?, &block)?;
    }
    minor_11(&acc)
}

/// The coefficients c_{i,j} (1-based, i <= j) of the quadratic form
/// sum c_{i,j} x_i x_j carried by the trace-zero Gram matrix: diagonal
/// entries as-is, cross terms doubled.
pub fn quad_form_coeffs(
    m: u64,
    disc: &FactoredDiscriminant,
    mode: Mode,
) -> Result<BTreeMap<(u64, u64), BigInt>> {
    let form = build_trace_zero(m, disc, mode)?;
    let g = form.gram();
    let mut out = BTreeMap::new();
    for i in 0..g.dim() {
        for j in i..g.dim() {
            let c = if i == j {
                g.get(i, i).clone()
            } else {
                BigInt::from(2) * g.get(i, j)
            };
            out.insert((i as u64 + 1, j as u64 + 1), c);
        }
    }
    Ok(out)
}

/// Trace-zero forms of two strict discriminants of the same degree coincide
/// exactly when the discriminants are equal. The implied matrix identities
/// are re-verified and any breach is surfaced as an internal error.
pub fn same_trace_zero_class(
    m: u64,
    disc1: &FactoredDiscriminant,
    disc2: &FactoredDiscriminant,
) -> Result<bool> {
    let f1 = build_trace_zero(m, disc1, Mode::Strict)?;
    let f2 = build_trace_zero(m, disc2, Mode::Strict)?;
    if disc1 == disc2 {
        if f1.gram() != f2.gram() {
            return Err(Error::InternalInvariant(
                "equal discriminants produced different matrices".into(),
            ));
        }
        return Ok(true);
    }
    // distinct discriminants: det m*d1 != m*d2 always separates
    let det1 = f1.gram().det_exact();
    let det2 = f2.gram().det_exact();
    if det1 != det2 {
        return Ok(false);
    }
    // unreachable for valid inputs; fall back to the isometry search
    let report = isometric(f1.gram(), f2.gram())?;
    if report.verdict == Verdict::Isometric {
        return Err(Error::InternalInvariant(
            "distinct discriminants produced isometric forms".into(),
        ));
    }
    Ok(false)
}

/// Decide whether two positive-definite trace-zero forms have the same
/// shape, i.e. are unimodularly congruent after scaling. The determinant
/// ratio fixes the only possible rational scale; if it is not an exact
/// (m-1)-th power of a rational the shapes differ, otherwise the
/// cross-scaled matrices are handed to the isometry search.
pub fn shape_equal(f1: &TraceZeroForm, f2: &TraceZeroForm) -> Result<bool> {
    shape_equal_grams(f1.gram(), f2.gram()).map(|r| r.is_some())
}

/// Same as `shape_equal` on bare Gram matrices; returns the scale (p, q)
/// with q * G2 congruent to p * G1 when the shapes agree.
pub fn shape_equal_grams(g1: &IntMatrix, g2: &IntMatrix) -> Result<Option<(BigInt, BigInt)>> {
    if g1.dim() != g2.dim() {
        return Err(Error::DimensionMismatch {
            left: g1.dim(),
            right: g2.dim(),
        });
    }
    if !is_positive_definite(g1)? || !is_positive_definite(g2)? {
        return Err(Error::IndefiniteShape);
    }
    let n = g1.dim() as u32;
    let det1 = g1.det_exact();
    let det2 = g2.det_exact();
    // lambda^n = det2/det1 in lowest terms
    let g = num_integer::gcd(det1.clone(), det2.clone());
    let num = (&det2 / &g).to_biguint().expect("positive determinant");
    let den = (&det1 / &g).to_biguint().expect("positive determinant");
    let (p, q) = match (nth_root_exact(&num, n), nth_root_exact(&den, n)) {
        (Some(p), Some(q)) => (BigInt::from(p), BigInt::from(q)),
        _ => return Ok(None), // scale is irrational: shapes differ
    };
    let left = g1.scaled(&p);
    let right = g2.scaled(&q);
    let report = isometric(&left, &right)?;
    Ok((report.verdict == Verdict::Isometric).then_some((p, q)))
}

/// Check that a form's determinant obeys det A(d) = m * d.
pub fn det_law_holds(form: &TraceZeroForm) -> bool {
    form.gram().det_exact() == BigInt::from(form.m()) * form.disc().value()
}

/// Row sums of the full trace Gram are all 1 and its determinant is the
/// discriminant.
pub fn full_form_invariants_hold(form: &FullTraceForm) -> bool {
    form.gram().row_sums().iter().all(|s| s == &BigInt::from(1))
        && form.gram().det_exact() == form.disc().value()
}

impl TraceZeroForm {
    /// Entry check used by tests: the gram matrix must be symmetric with
    /// the claimed invariants.
    pub fn check_internal(&self) -> Result<()> {
        if !self.gram.is_symmetric() {
            return Err(Error::InternalInvariant("gram not symmetric".into()));
        }
        if self.gram.dim() + 1 != self.m as usize {
            return Err(Error::InternalInvariant("gram dimension != m - 1".into()));
        }
        Ok(())
    }
}
