//! Dense matrices over F_p and exact linear solving.
//!
//! Entries are stored reduced, one byte each, row-major.  Reduction uses
//! full Gauss-Jordan with deterministic pivoting (first nonzero in the
//! leftmost eligible column), so the echelon form, and everything derived
//! from it, is reproducible across feature flags and thread counts.

use crate::error::{Error, Result};
use crate::fp::{Fp, PrimeField};
use crate::par;

#[derive(Clone)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialEq for FpMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.p() == other.field.p()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
impl Eq for FpMatrix {}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} mod {} [", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0u8; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<Fp>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = FpMatrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "ragged rows: expected {c} entries, row {i} has {}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = v.0;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> Fp {
        Fp(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fp) {
        self.data[i * self.cols + j] = v.0;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "matmul shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p() as u32;
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.data[i * self.cols + k] as u32
                        * other.data[k * other.cols + j] as u32;
                    if acc >= 1 << 24 {
                        acc %= p;
                    }
                }
                out.data[i * other.cols + j] = (acc % p) as u8;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fp]) -> Result<Vec<Fp>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "mul_vec length mismatch: {} cols vs {} entries",
                self.cols,
                v.len()
            )));
        }
        let p = self.field.p() as u32;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = 0u32;
                for j in 0..self.cols {
                    acc += self.data[i * self.cols + j] as u32 * v[j].0 as u32;
                    if acc >= 1 << 24 {
                        acc %= p;
                    }
                }
                Fp((acc % p) as u8)
            })
            .collect())
    }

    /// In-place reduced row echelon form.  Returns pivot columns in
    /// increasing order.
    pub fn rref(&mut self) -> Vec<usize> {
        match self.field.p() {
            2 => self.rref_impl::<2>(),
            3 => self.rref_impl::<3>(),
            5 => self.rref_impl::<5>(),
            7 => self.rref_impl::<7>(),
            _ => unreachable!("field construction rejects other moduli"),
        }
    }

    fn rref_impl<const P: u16>(&mut self) -> Vec<usize> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        if cols == 0 || self.rows == 0 {
            return pivots;
        }
        let mut scratch = vec![0u8; cols];
        let mut r = 0usize;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(i) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if i != r {
                for k in c..cols {
                    self.data.swap(i * cols + k, r * cols + k);
                }
            }
            let lead = self.data[r * cols + c];
            if lead != 1 {
                let inv = self.field.inv(Fp(lead)).expect("nonzero pivot").0;
                scale_row::<P>(&mut self.data[r * cols + c..(r + 1) * cols], inv);
            }
            scratch.copy_from_slice(&self.data[r * cols..(r + 1) * cols]);
            let src = &scratch;
            par::for_each_chunk_mut(&mut self.data, cols, |i2, row| {
                if i2 == r {
                    return;
                }
                let m = row[c];
                if m == 0 {
                    return;
                }
                let mneg = (P as u8 - m) % P as u8;
                axpy::<P>(&mut row[c..], &src[c..], mneg);
            });
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(mut self) -> usize {
        self.rref().len()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.data[i * n + j];
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = FpMatrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.data[i * 2 * n + n + j];
            }
        }
        Some(inv)
    }
}

#[inline]
fn axpy<const P: u16>(dst: &mut [u8], src: &[u8], mul: u8) {
    if mul == 0 {
        return;
    }
    let m = mul as u16;
    for (d, &s) in dst.iter_mut().zip(src.iter()) {
        *d = ((*d as u16 + m * s as u16) % P) as u8;
    }
}

#[inline]
fn scale_row<const P: u16>(row: &mut [u8], mul: u8) {
    let m = mul as u16;
    for d in row.iter_mut() {
        *d = ((*d as u16 * m) % P) as u8;
    }
}

/// Outcome of an exact linear solve.
pub enum LinearOutcome {
    Solved(LinearSolution),
    /// No solution.  The certificate u is a row vector with u A = 0 and
    /// u b != 0, so it witnesses inconsistency independently of the
    /// elimination that produced it.
    Unsat { certificate: Vec<Fp> },
}

pub struct LinearSolution {
    field: PrimeField,
    ncols: usize,
    pivots: Vec<usize>,
    /// RREF of the augmented matrix [A | b], trimmed to the nonzero rows.
    reduced: FpMatrix,
    pub particular: Vec<Fp>,
}

impl LinearSolution {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.ncols - self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Fp>> {
        let pivot_set: std::collections::HashSet<usize> = self.pivots.iter().copied().collect();
        let mut basis = Vec::with_capacity(self.kernel_dim());
        for f in 0..self.ncols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Fp::ZERO; self.ncols];
            v[f] = Fp::ONE;
            for (row, &c) in self.pivots.iter().enumerate() {
                v[c] = self.field.neg(self.reduced.get(row, f));
            }
            basis.push(v);
        }
        basis
    }
}

/// Solve A x = b exactly.  Consumes A (reduction happens in place).
pub fn solve_linear(a: FpMatrix, b: &[Fp]) -> Result<LinearOutcome> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!(
            "solve shape mismatch: {} rows vs {} rhs entries",
            a.rows,
            b.len()
        )));
    }
    let field = a.field;
    let (rows, ncols) = (a.rows, a.cols);
    let mut aug = FpMatrix::zeros(field, rows, ncols + 1);
    for i in 0..rows {
        aug.data[i * (ncols + 1)..i * (ncols + 1) + ncols]
            .copy_from_slice(&a.data[i * ncols..(i + 1) * ncols]);
        aug.data[i * (ncols + 1) + ncols] = b[i].0;
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&ncols) {
        // Inconsistent.  Redo with transform tracking to extract a left
        // null vector certifying it.
        let certificate = unsat_certificate(&a, b)?;
        return Ok(LinearOutcome::Unsat { certificate });
    }
    let mut particular = vec![Fp::ZERO; ncols];
    for (row, &c) in pivots.iter().enumerate() {
        particular[c] = aug.get(row, ncols);
    }
    let rank = pivots.len();
    let mut reduced = FpMatrix::zeros(field, rank, ncols + 1);
    for i in 0..rank {
        reduced
            .row_mut(i)
            .copy_from_slice(&aug.data[i * (ncols + 1)..(i + 1) * (ncols + 1)]);
    }
    Ok(LinearOutcome::Solved(LinearSolution {
        field,
        ncols,
        pivots,
        reduced,
        particular,
    }))
}

fn unsat_certificate(a: &FpMatrix, b: &[Fp]) -> Result<Vec<Fp>> {
    let field = a.field;
    let (rows, ncols) = (a.rows, a.cols);
    let w = ncols + 1 + rows;
    let mut aug = FpMatrix::zeros(field, rows, w);
    for i in 0..rows {
        aug.data[i * w..i * w + ncols].copy_from_slice(&a.data[i * ncols..(i + 1) * ncols]);
        aug.data[i * w + ncols] = b[i].0;
        aug.data[i * w + ncols + 1 + i] = 1;
    }
    let pivots = aug.rref();
    let bad = pivots
        .iter()
        .position(|&c| c == ncols)
        .ok_or_else(|| Error::Invalid("certificate requested for a solvable system".into()))?;
    let certificate: Vec<Fp> = (0..rows).map(|j| aug.get(bad, ncols + 1 + j)).collect();
    debug_assert!({
        let ua: Vec<Fp> = (0..ncols)
            .map(|j| {
                let mut acc = 0u32;
                for (i, u) in certificate.iter().enumerate() {
                    acc += u.0 as u32 * a.data[i * ncols + j] as u32;
                }
                Fp((acc % field.p() as u32) as u8)
            })
            .collect();
        let ub = {
            let mut acc = 0u32;
            for (i, u) in certificate.iter().enumerate() {
                acc += u.0 as u32 * b[i].0 as u32;
            }
            Fp((acc % field.p() as u32) as u8)
        };
        ua.iter().all(|c| c.is_zero()) && !ub.is_zero()
    });
    Ok(certificate)
}
