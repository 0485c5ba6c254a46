//! Dense linear algebra over prime fields GF(p), 2 <= p <= 251.
//!
//! Everything downstream (structure constants, module actions, intertwiners,
//! cocycles) is a [`Matrix`] over one fixed prime. Elimination is
//! deterministic: pivots are taken in the lowest column, from the lowest
//! available row, so every basis this module returns is reproducible.

use std::fmt;

use thiserror::Error;

/// Largest prime accepted as a modulus.
pub const MAX_PRIME: u32 = 251;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not a prime in [2, {MAX_PRIME}]")]
    InvalidModulus(u32),
    #[error("entry {value} at ({row}, {col}) is not a residue mod {p}")]
    EntryOutOfRange { row: usize, col: usize, value: u64, p: u32 },
    #[error("modulus mismatch: GF({0}) vs GF({1})")]
    ModulusMismatch(u32, u32),
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<(), LinalgError> {
    if p <= MAX_PRIME && is_prime(p) {
        Ok(())
    } else {
        Err(LinalgError::InvalidModulus(p))
    }
}

/// Multiplicative inverse of a nonzero residue.
#[inline]
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) {}x{} [", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        debug_assert!(check_prime(p).is_ok());
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major residues, rejecting bad moduli and entries.
    pub fn from_vec(p: u32, rows: usize, cols: usize, values: &[u64]) -> Result<Self, LinalgError> {
        check_prime(p)?;
        if values.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch { op: "from_vec", left: (rows, cols), right: (values.len(), 1) });
        }
        let mut data = Vec::with_capacity(values.len());
        for (idx, &v) in values.iter().enumerate() {
            if v >= p as u64 {
                return Err(LinalgError::EntryOutOfRange {
                    row: idx / cols.max(1),
                    col: idx % cols.max(1),
                    value: v,
                    p,
                });
            }
            data.push(v as u8);
        }
        Ok(Matrix { p, rows, cols, data })
    }

    /// Builds a matrix from rows of residues. Panics on ragged or out-of-range
    /// input; intended for literals in code and tests.
    pub fn from_rows(p: u32, rows: &[&[u32]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let flat: Vec<u64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&v| v as u64)
            })
            .collect();
        Self::from_vec(p, rows.len(), cols, &flat).expect("invalid matrix literal")
    }

    /// A single row vector.
    pub fn row_vector(p: u32, v: &[u8]) -> Self {
        debug_assert!(v.iter().all(|&e| (e as u32) < p));
        Matrix { p, rows: 1, cols: v.len(), data: v.to_vec() }
    }

    /// Stacks equal-length row vectors; `cols` is needed when `rows` is empty.
    pub fn from_row_slices(p: u32, cols: usize, rows: &[Vec<u8>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c] as u32
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[r * self.cols + c] = v as u8;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Raw row-major entries.
    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn same_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.p != other.p {
            Err(LinalgError::ModulusMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let p = self.p;
        let mut out = Matrix::zeros(p, self.rows, other.cols);
        let mut acc = vec![0u32; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot = (*slot + a * b as u32) % p;
                }
            }
            for (c, &v) in acc.iter().enumerate() {
                out.data[r * other.cols + c] = v as u8;
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on modulus or shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch { op: "add", left: self.shape(), right: other.shape() });
        }
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| ((a as u32 + b as u32) % p) as u8).collect();
        Ok(Matrix { p, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        self.scale(self.p - 1)
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let p = self.p;
        let s = s % p;
        let data = self.data.iter().map(|&a| (a as u32 * s % p) as u8).collect();
        Matrix { p, rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`, in place.
    pub fn add_scaled(&mut self, other: &Matrix, s: u32) {
        assert_eq!(self.p, other.p);
        assert_eq!(self.shape(), other.shape());
        let p = self.p;
        let s = s % p;
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u32 + s * b as u32) % p) as u8;
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { p: self.p, rows: self.rows, cols, data }
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.p, other.p);
        let mut out = Matrix::zeros(self.p, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.data[r * block.cols + c];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.data[(r0 + r) * self.cols + c0 + c];
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Matrix { p: self.p, rows: idx.len(), cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces in place, choosing pivots only among the first
    /// `pivot_cols` columns. Returns the pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..pivot_cols {
            if next_row == self.rows {
                break;
            }
            let Some(pr) = (next_row..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if pr != next_row {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, next_row * cols + k);
                }
            }
            let inv = inv_mod(self.data[next_row * cols + c] as u32, p);
            for k in 0..cols {
                let idx = next_row * cols + k;
                self.data[idx] = (self.data[idx] as u32 * inv % p) as u8;
            }
            for r in 0..self.rows {
                if r == next_row {
                    continue;
                }
                let f = self.data[r * cols + c] as u32;
                if f == 0 {
                    continue;
                }
                let f = p - f;
                for k in c..cols {
                    let src = self.data[next_row * cols + k] as u32;
                    if src != 0 {
                        let idx = r * cols + k;
                        self.data[idx] = ((self.data[idx] as u32 + f * src) % p) as u8;
                    }
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self * v^T = 0}`, one vector per row,
    /// ordered by free column.
    pub fn null_space(&self) -> Matrix {
        let p = self.p;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(p, free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                let v = r.get(pr, f);
                if v != 0 {
                    out.set(i, pc, p - v);
                }
            }
        }
        out
    }

    /// Basis of the left kernel `{v : v * self = 0}`.
    pub fn left_null_space(&self) -> Matrix {
        self.transpose().null_space()
    }

    /// Some `X` with `self * X = rhs`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch { op: "solve", left: self.shape(), right: rhs.shape() });
        }
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place(aug.cols);
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.p, self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(pc, k, aug.get(pr, self.cols + k));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let id = Matrix::identity(self.p, self.rows);
        match self.solve(&id) {
            Ok(Some(x)) if self.rank() == self.rows => Some(x),
            _ => None,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Canonical basis of the row space: the nonzero rows of the RREF.
    pub fn row_space(&self) -> Matrix {
        let (r, pivots) = self.rref();
        r.block(0, 0, pivots.len(), self.cols)
    }

    pub fn row_space_sum(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch { op: "row_space_sum", left: self.shape(), right: other.shape() });
        }
        Ok(self.vstack(other).row_space())
    }

    /// Canonical basis of `rowspace(self) ∩ rowspace(other)` (Zassenhaus).
    pub fn row_space_intersection(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                op: "row_space_intersection",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let n = self.cols;
        let top = self.hstack(self);
        let bottom = other.hstack(&Matrix::zeros(self.p, other.rows, n));
        let (r, _) = top.vstack(&bottom).rref();
        let mut rows = Vec::new();
        for i in 0..r.rows {
            let row = r.row(i);
            if row[..n].iter().all(|&e| e == 0) && row[n..].iter().any(|&e| e != 0) {
                rows.push(row[n..].to_vec());
            }
        }
        Ok(Matrix::from_row_slices(self.p, n, &rows).row_space())
    }

    /// Whether every row of `other` lies in the row space of `self`.
    pub fn row_space_contains(&self, other: &Matrix) -> bool {
        assert_eq!(self.cols, other.cols);
        let base = self.rank();
        base == self.vstack(other).rank()
    }

    /// Flattens row-major into a single row vector.
    pub fn flatten(&self) -> Vec<u8> {
        self.data.clone()
    }

    pub fn from_flat(p: u32, rows: usize, cols: usize, flat: &[u8]) -> Matrix {
        assert_eq!(flat.len(), rows * cols);
        Matrix { p, rows, cols, data: flat.to_vec() }
    }

    /// `Σ coeffs[i] * mats[i]`.
    pub fn linear_combination(p: u32, rows: usize, cols: usize, mats: &[Matrix], coeffs: &[u8]) -> Matrix {
        let mut out = Matrix::zeros(p, rows, cols);
        for (m, &c) in mats.iter().zip(coeffs) {
            out.add_scaled(m, c as u32);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.p, self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// Incrementally maintained reduced echelon basis of a subspace of GF(p)^n.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u32,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(p: u32, n: usize) -> Self {
        EchelonBasis { p, n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let mut b = Self::new(m.p(), m.cols());
        for r in 0..m.rows() {
            b.insert(m.row(r));
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = w[pc] as u32;
            if f == 0 {
                continue;
            }
            let f = p - f;
            for (x, &y) in w.iter_mut().zip(row) {
                if y != 0 {
                    *x = ((*x as u32 + f * y as u32) % p) as u8;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&e| e == 0)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.n);
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&e| e != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc] as u32, p);
        for x in w.iter_mut() {
            *x = (*x as u32 * inv % p) as u8;
        }
        for row in self.rows.iter_mut() {
            let f = row[pc] as u32;
            if f == 0 {
                continue;
            }
            let f = p - f;
            for (x, &y) in row.iter_mut().zip(&w) {
                if y != 0 {
                    *x = ((*x as u32 + f * y as u32) % p) as u8;
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    /// The basis as a matrix in reduced row echelon form.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_row_slices(self.p, self.n, &self.rows)
    }
}

/// Iterates over GF(p)^k in lexicographic order, first coordinate most
/// significant, starting from the zero vector.
#[derive(Clone, Debug)]
pub struct VectorIter {
    p: u8,
    current: Option<Vec<u8>>,
}

impl VectorIter {
    pub fn new(p: u32, k: usize) -> Self {
        VectorIter { p: p as u8, current: Some(vec![0; k]) }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut i = next.len();
        let mut done = true;
        while i > 0 {
            i -= 1;
            if next[i] + 1 < self.p {
                next[i] += 1;
                done = false;
                break;
            }
            next[i] = 0;
        }
        if !done {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Nonzero vectors of GF(p)^k whose first nonzero entry is 1, in
/// lexicographic order. One representative per line through the origin.
pub fn normalized_vectors(p: u32, k: usize) -> impl Iterator<Item = Vec<u8>> {
    VectorIter::new(p, k).filter(|v| v.iter().find(|&&e| e != 0) == Some(&1))
}

/// `p^k`, saturating.
pub fn field_power(p: u32, k: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(p as u64);
    }
    acc
}
