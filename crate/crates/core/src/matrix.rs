//! Exact dense integer matrices and the structured constructions the trace
//! form is assembled from: the congruence-pattern matrices A_d, the
//! difference matrix B_n, the root lattice Gram A_n, its degenerate
//! circulant extension A'_n, Kronecker blocks, congruence transforms,
//! minors and fraction-free determinants.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Maximum supported dimension; the forms are desk-scale by design.
pub const MAX_DIM: usize = 512;

/// Square matrix with exact integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_DIM, "dimension out of range");
        Self {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// All-ones matrix 1_n.
    pub fn ones(n: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries.iter_mut().for_each(|e| *e = BigInt::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::BadDimension(n));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadDimension(n));
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// self += c * other
    pub fn add_scaled(&mut self, c: &BigInt, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += c * b;
        }
        Ok(())
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).sum())
            .collect()
    }

    /// Fraction-free Bareiss elimination; exact determinant without
    /// rational intermediates.
    pub fn det_exact(&self) -> BigInt {
        let n = self.n;
        let mut a: Vec<BigInt> = self.entries.clone();
        let at = |a: &[BigInt], i: usize, j: usize| a[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                // pivot search below row k
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            if k == n - 1 {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&a, k, k) * at(&a, i, j) - at(&a, i, k) * at(&a, k, j);
                    a[i * n + j] = num / &prev; // exact by Bareiss
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        sign * at(&a, n - 1, n - 1)
    }

    /// {"dim": n, "rows": [["...", ...], ...]} with decimal-string entries.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.n)
            .map(|i| {
                serde_json::Value::Array(
                    (0..self.n)
                        .map(|j| serde_json::Value::from(self.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({ "dim": self.n, "rows": rows })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::ParseFailure("matrix must be a JSON object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::ParseFailure("missing or invalid \"dim\"".into()))?
            as usize;
        let rows = obj
            .get("rows")
            .and_then(|r| r.as_array())
            .ok_or_else(|| Error::ParseFailure("missing or invalid \"rows\"".into()))?;
        if rows.len() != dim {
            return Err(Error::ParseFailure("row count != dim".into()));
        }
        let mut parsed = Vec::with_capacity(dim);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == dim)
                .ok_or_else(|| Error::ParseFailure("ragged matrix rows".into()))?;
            let mut out = Vec::with_capacity(dim);
            for cell in row {
                let value = match cell {
                    serde_json::Value::Number(x) => x
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| Error::ParseFailure("non-integer entry".into()))?,
                    serde_json::Value::String(s) => s
                        .parse()
                        .map_err(|_| Error::ParseFailure(format!("bad entry {s:?}")))?,
                    _ => return Err(Error::ParseFailure("bad matrix entry".into())),
                };
                out.push(value);
            }
            parsed.push(out);
        }
        Self::from_rows(parsed)
    }

    /// Plain-text grid, columns right-aligned to their own width.
    pub fn render_text(&self) -> String {
        let widths: Vec<usize> = (0..self.n)
            .map(|j| {
                (0..self.n)
                    .map(|i| self.get(i, j).to_string().len())
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{:>w$}", self.get(i, j), w = widths[j]));
            }
            out.push('\n');
        }
        out
    }
}

/// A_d: the m x m 0/1 matrix with 1 exactly where (m/d) | (i - j).
pub fn build_a_d(m: u64, d: u64) -> Result<IntMatrix> {
    if d == 0 || m % d != 0 {
        return Err(Error::NotADivisor(d));
    }
    let n = m as usize;
    if n < 1 || n > MAX_DIM {
        return Err(Error::BadDimension(n));
    }
    let step = (m / d) as usize;
    let mut out = IntMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if (i + n - j) % step == 0 {
                out.set(i, j, BigInt::one());
            }
        }
    }
    Ok(out)
}

/// B_n: 1 on the diagonal, -1 on the subdiagonal and at (1, n). Columns sum
/// to zero, so the matrix is singular.
pub fn build_b(n: u64) -> Result<IntMatrix> {
    let n = n as usize;
    if n < 2 || n > MAX_DIM {
        return Err(Error::BadDimension(n));
    }
    let mut out = IntMatrix::zero(n);
    for i in 0..n {
        out.set(i, i, BigInt::one());
        if i > 0 {
            out.set(i, i - 1, -BigInt::one());
        }
    }
    out.set(0, n - 1, -BigInt::one());
    Ok(out)
}

/// Root lattice Gram A_n: tridiagonal 2 / -1.
pub fn build_root_a(n: u64) -> Result<IntMatrix> {
    let n = n as usize;
    if n < 1 || n > MAX_DIM {
        return Err(Error::BadDimension(n));
    }
    let mut out = IntMatrix::zero(n);
    for i in 0..n {
        out.set(i, i, BigInt::from(2));
        if i > 0 {
            out.set(i, i - 1, -BigInt::one());
            out.set(i - 1, i, -BigInt::one());
        }
    }
    Ok(out)
}

/// Extended lattice Gram A'_n = B_n^T B_n. For n >= 3 this is the circulant
/// 2 / -1 with -1 corners; at n = 2 the corner and subdiagonal coincide and
/// the off-diagonal entries are -2.
pub fn build_extended_a(n: u64) -> Result<IntMatrix> {
    let b = build_b(n)?;
    b.transpose().mul(&b)
}

/// B^T M B.
pub fn congruence(b: &IntMatrix, m: &IntMatrix) -> Result<IntMatrix> {
    b.transpose().mul(&m.mul(b)?)
}

/// Delete the first row and column.
pub fn minor_11(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.dim();
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    let mut out = IntMatrix::zero(n - 1);
    for i in 1..n {
        for j in 1..n {
            out.set(i - 1, j - 1, m.get(i, j).clone());
        }
    }
    Ok(out)
}

/// 1_d tensor X: d x d blocks, every block equal to X.
pub fn kronecker_ones(d: u64, x: &IntMatrix) -> Result<IntMatrix> {
    let d = d as usize;
    if d < 1 {
        return Err(Error::BadDimension(d));
    }
    let n = x.dim();
    let big = d * n;
    if big > MAX_DIM {
        return Err(Error::BadDimension(big));
    }
    let mut out = IntMatrix::zero(big);
    for bi in 0..d {
        for bj in 0..d {
            for i in 0..n {
                for j in 0..n {
                    out.set(bi * n + i, bj * n + j, x.get(i, j).clone());
                }
            }
        }
    }
    Ok(out)
}
