//! Permanents of small integer matrices.
//!
//! The workhorse is Ryser's inclusion-exclusion formula with Gray-code
//! subset updates, O(2^n * n) for side n.  Sides are capped at
//! [`MAX_SIDE`] so the subset mask fits comfortably in a machine word
//! and runtimes stay bounded.  The exact kernel accumulates in i128 and
//! refuses to wrap: any overflow aborts with an error.

use crate::error::{Error, Result};
use crate::invariant::KdsiMatrix;

/// Largest matrix side accepted by the permanent kernels.
pub const MAX_SIDE: usize = 24;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::invalid("ragged rows in matrix literal"));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// The whole row block repeated `copies` times.
    pub fn stacked(&self, copies: usize) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len() * copies);
        for _ in 0..copies {
            data.extend_from_slice(&self.data);
        }
        IntMatrix {
            rows: self.rows * copies,
            cols: self.cols,
            data,
        }
    }

    /// Rows and columns rearranged by the given index lists.
    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(row_ids.len(), col_ids.len());
        for (i, &r) in row_ids.iter().enumerate() {
            for (j, &c) in col_ids.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }
}

fn check_square(m: &IntMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows > MAX_SIDE {
        return Err(Error::SideTooLarge {
            side: m.rows,
            max: MAX_SIDE,
        });
    }
    Ok(m.rows)
}

/// Exact permanent by Ryser's formula.
///
/// Perm(A) = sum over nonempty column subsets S of (-1)^(n-|S|) * prod_i
/// (sum of row i over S), walked in Gray-code order so each step updates
/// the row sums by a single column.
pub fn permanent_exact(m: &IntMatrix) -> Result<i128> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(1);
    }
    let mut row_sums = vec![0i128; n];
    let mut total = 0i128;
    for s in 1u32..=((1u32 << n) - 1) {
        let j = s.trailing_zeros() as usize;
        let gray = s ^ (s >> 1);
        if (gray >> j) & 1 == 1 {
            for (r, sum) in row_sums.iter_mut().enumerate() {
                *sum += m.get(r, j) as i128;
            }
        } else {
            for (r, sum) in row_sums.iter_mut().enumerate() {
                *sum -= m.get(r, j) as i128;
            }
        }
        let mut prod = 1i128;
        for &sum in &row_sums {
            prod = prod.checked_mul(sum).ok_or(Error::Overflow)?;
            if prod == 0 {
                break;
            }
        }
        total = if (n as u32).wrapping_sub(gray.count_ones()) % 2 == 0 {
            total.checked_add(prod)
        } else {
            total.checked_sub(prod)
        }
        .ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// Permanent modulo `modulus` (same Gray-code walk, residue arithmetic).
pub fn permanent_mod(m: &IntMatrix, modulus: u64) -> Result<u64> {
    if !(2..=(1 << 31)).contains(&modulus) {
        return Err(Error::invalid(format!(
            "modulus {modulus} out of range (need 2..=2^31)"
        )));
    }
    let n = check_square(m)?;
    if n == 0 {
        return Ok(1 % modulus);
    }
    // entries reduced once up front
    let reduce = |v: i64| -> u64 { v.rem_euclid(modulus as i64) as u64 };
    let mut cols_reduced = vec![0u64; n * n]; // column-major
    for c in 0..n {
        for r in 0..n {
            cols_reduced[c * n + r] = reduce(m.get(r, c));
        }
    }
    let mut row_sums = vec![0u64; n];
    let mut total = 0u64;
    for s in 1u32..=((1u32 << n) - 1) {
        let j = s.trailing_zeros() as usize;
        let gray = s ^ (s >> 1);
        let col = &cols_reduced[j * n..(j + 1) * n];
        if (gray >> j) & 1 == 1 {
            for (sum, &v) in row_sums.iter_mut().zip(col) {
                *sum = (*sum + v) % modulus;
            }
        } else {
            for (sum, &v) in row_sums.iter_mut().zip(col) {
                *sum = (*sum + modulus - v) % modulus;
            }
        }
        let mut prod = 1u64;
        for &sum in &row_sums {
            prod = prod * sum % modulus;
            if prod == 0 {
                break;
            }
        }
        if (n as u32).wrapping_sub(gray.count_ones()) % 2 == 0 {
            total = (total + prod) % modulus;
        } else {
            total = (total + modulus - prod) % modulus;
        }
    }
    Ok(total)
}

/// Row-reduced form of a stacked incidence matrix.
///
/// The single block is brought to `[I A]` by integer row operations
/// (performed implicitly in every copy of the block at once).  Adding a
/// multiple of a row that occurs in all k blocks preserves the permanent
/// modulo k+1, and flipping a row's sign in all k blocks multiplies it
/// by (-1)^k, so modulo k+1:
///
///   Perm(kDSI) = sign * k^block_rows * Perm(A stacked k-1 times)
///
/// where the k^block_rows counts the block choices that cover the
/// identity columns.
#[derive(Debug, Clone)]
pub struct ReducedForm {
    pub a: IntMatrix,
    /// Number of stacked blocks (the k of the kDSI).
    pub stack_count: usize,
    /// Extracted scalar is scalar_base^scalar_exponent.
    pub scalar_base: u64,
    pub scalar_exponent: usize,
    pub sign: i8,
}

impl ReducedForm {
    pub fn modulus(&self) -> u64 {
        self.stack_count as u64 + 1
    }

    /// Permanent of the original stacked matrix modulo k+1, via the
    /// reduced block.  Bit-for-bit equal to `permanent_mod` on the full
    /// matrix, but exponentially cheaper: the inner permanent has side
    /// (k-1) * block_rows instead of k * block_rows.
    pub fn permanent_mod(&self) -> Result<u64> {
        let modulus = self.modulus();
        let stack = self.a.stacked(self.stack_count - 1);
        let inner = permanent_mod(&stack, modulus)?;
        let mut scalar = 1u64;
        for _ in 0..self.scalar_exponent {
            scalar = scalar * (self.scalar_base % modulus) % modulus;
        }
        let unsigned = scalar * inner % modulus;
        Ok(if self.sign < 0 {
            (modulus - unsigned) % modulus
        } else {
            unsigned
        })
    }
}

/// Reduce one block of a kDSI matrix to `[I A]` with unit pivots.
///
/// Pivots in an incidence-derived block are always +-1 (total
/// unimodularity is preserved by the elimination); hitting anything else
/// is a bug, not a user error.
pub fn block_reduce(m: &KdsiMatrix) -> Result<ReducedForm> {
    let block = m.block();
    let r = block.rows();
    let c = block.cols();
    let mut w: Vec<Vec<i64>> = (0..r).map(|i| block.row(i).to_vec()).collect();
    let mut row_pivoted = vec![false; r];
    let mut col_is_pivot = vec![false; c];
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col) in pivot order
    let mut sign_flips = 0usize;

    for _ in 0..r {
        let mut found = None;
        'scan: for col in 0..c {
            if col_is_pivot[col] {
                continue;
            }
            for row in 0..r {
                if !row_pivoted[row] && w[row][col] != 0 {
                    found = Some((row, col));
                    break 'scan;
                }
            }
        }
        let (pr, pc) = match found {
            Some(p) => p,
            None => return Err(Error::NotConnected),
        };
        match w[pr][pc] {
            1 => {}
            -1 => {
                for v in w[pr].iter_mut() {
                    *v = -*v;
                }
                sign_flips += 1;
            }
            other => {
                return Err(Error::internal(format!(
                    "non-unit pivot {other} during block reduction"
                )))
            }
        }
        let pivot_row = w[pr].clone();
        for (q, row) in w.iter_mut().enumerate().take(r) {
            if q == pr || row[pc] == 0 {
                continue;
            }
            let f = row[pc];
            for (entry, &p) in row.iter_mut().zip(&pivot_row) {
                *entry -= f * p;
            }
        }
        row_pivoted[pr] = true;
        col_is_pivot[pc] = true;
        pivots.push((pr, pc));
    }

    let nonpivot_cols: Vec<usize> = (0..c).filter(|&col| !col_is_pivot[col]).collect();
    let mut a = IntMatrix::zeros(r, nonpivot_cols.len());
    for (i, &(pr, _)) in pivots.iter().enumerate() {
        for (j, &col) in nonpivot_cols.iter().enumerate() {
            a.set(i, j, w[pr][col]);
        }
    }
    let sign = if m.k % 2 == 1 && sign_flips % 2 == 1 {
        -1
    } else {
        1
    };
    Ok(ReducedForm {
        a,
        stack_count: m.k,
        scalar_base: m.k as u64,
        scalar_exponent: r,
        sign,
    })
}
