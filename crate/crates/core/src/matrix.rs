//! Dense exact matrices and the row-reduction toolkit used everywhere
//! else: RREF with pivot bookkeeping, kernels, linear solving, and
//! canonical subspace representations (row-style reduced echelon bases).

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Scalar>,
}

pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_int_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&n| field.from_int(n)).collect())
            .collect();
        Self::from_rows(field, &data)
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.field, other.field, "field mismatch in matrix product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(r, c)] = f.add(&out[(r, c)], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    if !self[(r, c)].is_zero() && !v[c].is_zero() {
                        acc = f.add(&acc, &f.mul(&self[(r, c)], &v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = f.add(&self.entries[i], &other.entries[i]);
        }
        out
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for i in 0..self.entries.len() {
            out.entries[i] = f.sub(&self.entries[i], &other.entries[i]);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        let f = self.field;
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = f.mul(e, s);
        }
        out
    }

    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = self.clone();
        out.rows += other.rows;
        out.entries.extend(other.entries.iter().cloned());
        out
    }

    /// Copies `block` into self with top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ExactMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        out
    }

    /// Gauss-Jordan reduced row echelon form. Pivots are chosen left to
    /// right; every pivot is normalized to 1 and is the only nonzero
    /// entry in its column.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, src);
            let inv = f
                .inv(&m[(pivot_row, col)])
                .expect("pivot is nonzero by selection");
            for c in col..m.cols {
                m[(pivot_row, c)] = f.mul(&m[(pivot_row, c)], &inv);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        let delta = f.mul(&factor, &m[(pivot_row, c)]);
                        m[(r, c)] = f.sub(&m[(r, c)], &delta);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&ExactMatrix::identity(self.field, n));
        let red = aug.rref();
        if red.rank < n || red.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        Some(red.matrix.block(0, n, n, n))
    }

    /// Basis of the right kernel {v : Av = 0}, one vector per non-pivot
    /// column, in ascending column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let red = self.rref();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in red.pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in red.pivots.iter().enumerate() {
                v[pc] = f.neg(&red.matrix[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Ax = b, or None when inconsistent. Free variables
    /// are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let f = self.field;
        let rhs = ExactMatrix {
            field: f,
            rows: self.rows,
            cols: 1,
            entries: b.to_vec(),
        };
        let red = self.hstack(&rhs).rref();
        if red.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in red.pivots.iter().enumerate() {
            x[c] = red.matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row-major entries as display strings (exact, re-parseable).
    pub fn entry_strings(&self) -> Vec<String> {
        self.entries.iter().map(Scalar::to_string).collect()
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace of K^n in canonical form: the rows of `basis` are a
/// reduced-echelon basis, so two subspaces are equal iff the matrices
/// are equal entry for entry.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: ExactMatrix,
    ambient: usize,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: ExactMatrix::zeros(field, 0, ambient),
            ambient,
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: ExactMatrix::identity(field, ambient),
            ambient,
        }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_vectors(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let red = ExactMatrix::from_rows(field, vectors).rref();
        Subspace {
            basis: red.matrix.block(0, 0, red.rank, ambient),
            ambient,
        }
    }

    pub fn from_rref_rows(basis: ExactMatrix) -> Self {
        let ambient = basis.cols;
        Subspace { basis, ambient }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn basis_rows(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.basis.rows).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Canonical remainder of v modulo this subspace: subtract the
    /// echelon rows so the result vanishes on all pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let f = self.basis.field;
        let mut w = v.to_vec();
        let pivots = self.pivot_columns();
        for (r, &pc) in pivots.iter().enumerate() {
            if w[pc].is_zero() {
                continue;
            }
            let factor = w[pc].clone();
            for c in 0..self.ambient {
                let delta = f.mul(&factor, &self.basis[(r, c)]);
                w[c] = f.sub(&w[c], &delta);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of v in the echelon basis, or None when v lies
    /// outside the subspace. The echelon basis restricted to its pivot
    /// columns is the identity, so the coordinates are read off there.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivot_columns().iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let stacked = self.basis.vstack(&other.basis);
        let red = stacked.rref();
        Subspace {
            basis: red.matrix.block(0, 0, red.rank, self.ambient),
            ambient: self.ambient,
        }
    }

    /// Zassenhaus: row-reduce [U U; V 0]; rows with zero left half carry
    /// an intersection basis in their right half.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let f = self.basis.field;
        let n = self.ambient;
        let top = self.basis.hstack(&self.basis);
        let bottom = other
            .basis
            .hstack(&ExactMatrix::zeros(f, other.basis.rows, n));
        let red = top.vstack(&bottom).rref();
        let mut vectors = Vec::new();
        for r in 0..red.rank {
            if red.matrix.row(r)[..n].iter().all(Scalar::is_zero) {
                vectors.push(red.matrix.row(r)[n..].to_vec());
            }
        }
        Subspace::from_vectors(f, n, &vectors)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut pivots = Vec::with_capacity(self.basis.rows);
        for r in 0..self.basis.rows {
            let c = (0..self.ambient)
                .find(|&c| !self.basis[(r, c)].is_zero())
                .expect("echelon basis has no zero rows");
            pivots.push(c);
        }
        pivots
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace dim {} of K^{} {:?}", self.dim(), self.ambient, self.basis)
    }
}

/// Number of k-dimensional subspaces of F_q^n (Gaussian binomial),
/// None on u128 overflow.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    // Product over i < k of (q^(n-i) - 1)/(q^(i+1) - 1), assembled as an
    // exact integer by alternating multiply and divide.
    let mut num: u128 = 1;
    for i in 0..k {
        let qn = checked_pow(q as u128, n - i)?;
        num = num.checked_mul(qn - 1)?;
        let qd = checked_pow(q as u128, i + 1)?;
        debug_assert_eq!(num % (qd - 1), 0);
        num /= qd - 1;
    }
    Some(num)
}

fn checked_pow(base: u128, exp: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// All subspaces of F_q^dim in a fixed canonical order: by dimension,
/// then by pivot-column pattern (lexicographic), then by the free
/// entries of the echelon basis (odometer order, last entry fastest).
pub fn enumerate_subspaces(field: FieldSpec, dim: usize, cap: u64) -> Result<Vec<Subspace>> {
    let q = match field {
        FieldSpec::Prime { p } => p,
        FieldSpec::Rational => {
            return Err(Error::Unsupported(
                "subspace enumeration needs a finite field".into(),
            ))
        }
    };
    let total: u128 = (0..=dim as u64)
        .map(|k| gaussian_binomial(dim as u64, k, q))
        .try_fold(0u128, |acc, c| c.map(|c| acc + c))
        .ok_or_else(|| Error::CapExceeded {
            what: format!("counting subspaces of F_{q}^{dim}"),
            required: u128::MAX,
            cap: cap as u128,
        })?;
    if total > cap as u128 {
        return Err(Error::CapExceeded {
            what: format!("enumerating subspaces of F_{q}^{dim}"),
            required: total,
            cap: cap as u128,
        });
    }
    let elements = field.elements()?;
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..=dim {
        for pivots in combinations(dim, k) {
            // Free entries: (row r, col c) with c > pivots[r] and c not
            // itself a pivot column.
            let mut free_slots = Vec::new();
            for (r, &pc) in pivots.iter().enumerate() {
                for c in pc + 1..dim {
                    if !pivots.contains(&c) {
                        free_slots.push((r, c));
                    }
                }
            }
            let mut odometer = vec![0usize; free_slots.len()];
            loop {
                let mut basis = ExactMatrix::zeros(field, k, dim);
                for (r, &pc) in pivots.iter().enumerate() {
                    basis[(r, pc)] = field.one();
                }
                for (slot, &(r, c)) in free_slots.iter().enumerate() {
                    basis[(r, c)] = elements[odometer[slot]].clone();
                }
                out.push(Subspace::from_rref_rows(basis));
                // Advance odometer, last slot fastest.
                let mut slot = free_slots.len();
                loop {
                    if slot == 0 {
                        break;
                    }
                    slot -= 1;
                    odometer[slot] += 1;
                    if odometer[slot] < elements.len() {
                        break;
                    }
                    odometer[slot] = 0;
                }
                if free_slots.is_empty() || odometer.iter().all(|&d| d == 0) {
                    break;
                }
            }
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

/// k-subsets of {0..n} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
