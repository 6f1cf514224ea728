//! Dense exact linear algebra: row reduction, kernels, images, solving.
//!
//! Matrices are stored row-major. Over the rationals the echelon pass uses
//! fraction-free (Bareiss) elimination on a denominator-cleared integer
//! matrix to bound intermediate growth; over a prime field it uses ordinary
//! Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        Matrix { field, rows: r, cols: c, entries }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, entries }
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64(field: Field, rows: Vec<Vec<i64>>) -> Matrix {
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, data)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c).add(other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c).sub(other.at(r, c))
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c).neg())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.field, self.rows, self.cols, |r, c| self.at(r, c).mul(s))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    let e = self.at(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc = acc.add(&e.mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, entries }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.at(r, c).clone()
            } else {
                other.at(r, c - self.cols).clone()
            }
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Rationals => self.rref_rational(),
            Field::Prime(_) => self.rref_generic(),
        }
    }

    fn rref_generic(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.at(row, c).clone();
                    let b = m.at(pr, c).clone();
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = m.at(row, col).inverse().unwrap();
            for c in col..m.cols {
                let v = m.at(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let factor = m.at(r, col).clone();
                    for c in col..m.cols {
                        let v = m.at(r, c).sub(&factor.mul(m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Fraction-free echelon pass (Bareiss) on the denominator-cleared
    /// integer matrix, followed by an ordinary back-substitution over the
    /// rationals to reach reduced form.
    fn rref_rational(&self) -> Rref {
        // Clear denominators row by row.
        let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut lcm = BigInt::one();
            for c in 0..self.cols {
                if let Scalar::Rat(q) = self.at(r, c) {
                    if !q.is_zero() {
                        lcm = lcm.lcm(q.denom());
                    }
                }
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|c| match self.at(r, c) {
                    Scalar::Rat(q) => q.numer() * (&lcm / q.denom()),
                    _ => unreachable!(),
                })
                .collect();
            int_rows.push(row);
        }

        // Bareiss one-step fraction-free elimination to echelon form.
        let mut prev = BigInt::one();
        let mut row = 0;
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !int_rows[r][col].is_zero()) else {
                continue;
            };
            int_rows.swap(row, pr);
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &int_rows[row][col] * &int_rows[r][c]
                        - &int_rows[r][col] * &int_rows[row][c];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss exact division failed");
                    int_rows[r][c] = q;
                }
                int_rows[r][col] = BigInt::zero();
            }
            prev = int_rows[row][col].clone();
            pivots.push(col);
            row += 1;
        }

        // Normalize to reduced form over Q.
        let mut rat: Vec<Vec<BigRational>> = int_rows
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        for (i, &pc) in pivots.iter().enumerate() {
            let lead = rat[i][pc].clone();
            for c in pc..self.cols {
                rat[i][c] = &rat[i][c] / &lead;
            }
            for r in 0..i {
                let factor = rat[r][pc].clone();
                if !factor.is_zero() {
                    for c in pc..self.cols {
                        let v = &rat[r][c] - &factor * &rat[i][c];
                        rat[r][c] = v;
                    }
                }
            }
        }
        let matrix = Matrix::from_rows(
            Field::Rationals,
            rat.into_iter().map(|r| r.into_iter().map(Scalar::Rat).collect()).collect(),
        );
        Rref { matrix, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one column vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        rref.kernel_basis()
    }

    /// The pivot columns of the original matrix: a basis of the column space.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        let rref = self.rref();
        rref.pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Rank, kernel basis and image basis in one pass.
    pub fn row_reduce(&self) -> RowReduction {
        let rref = self.rref();
        let kernel = rref.kernel_basis();
        let image = rref.pivots.iter().map(|&c| self.column(c)).collect();
        RowReduction { rank: rref.pivots.len(), kernel, image }
    }

    /// One solution of `self * x = rhs`, if consistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "rhs length must equal row count");
        let aug = self.hstack(&Matrix::from_rows(
            self.field,
            rhs.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>(),
        ));
        let rref = aug.rref();
        if rref.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in rref.pivots.iter().enumerate() {
            x[pc] = rref.matrix.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Columnwise solve: `X` with `self * X = rhs`.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows());
        let mut cols = Vec::with_capacity(rhs.cols());
        for c in 0..rhs.cols() {
            cols.push(self.solve(&rhs.column(c))?);
        }
        let mut out = Matrix::zero(self.field, self.cols, rhs.cols());
        for (c, col) in cols.iter().enumerate() {
            for r in 0..self.cols {
                out.set(r, c, col[r].clone());
            }
        }
        Some(out)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Matrix::identity(self.field, self.rows));
        let rref = aug.rref();
        if rref.pivots.len() != self.rows || rref.pivots.iter().any(|&c| c >= self.rows) {
            return None;
        }
        Some(Matrix::from_fn(self.field, self.rows, self.rows, |r, c| {
            rref.matrix.at(r, self.rows + c).clone()
        }))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Result of the public `row_reduce` operation.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rank: usize,
    pub kernel: Vec<Vec<Scalar>>,
    pub image: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form with pivot bookkeeping.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let field = self.matrix.field();
        let cols = self.matrix.cols();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().copied().collect();
        for free in 0..cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (i, &pc) in self.pivots.iter().enumerate() {
                v[pc] = self.matrix.at(i, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Factored solver for repeated `M x = b` against a fixed (typically tall
/// and thin) matrix: finds a row subset of full rank once, then each solve
/// works on that small square system and verifies against the full matrix.
#[derive(Clone, Debug)]
pub struct PrecomputedSolver {
    matrix: Matrix,
    /// independent row indices, one per pivot of the row space
    pivot_rows: Vec<usize>,
    /// the small system restricted to the pivot rows, pre-reduced
    small: Rref,
}

impl PrecomputedSolver {
    pub fn new(m: &Matrix) -> PrecomputedSolver {
        // pivot rows of m = pivot columns of the transpose
        let mt = m.transpose();
        let pivot_rows = mt.rref().pivots;
        let sub = Matrix::from_fn(m.field(), pivot_rows.len(), m.cols(), |i, j| {
            m.at(pivot_rows[i], j).clone()
        });
        let small = sub.rref();
        PrecomputedSolver { matrix: m.clone(), pivot_rows, small }
    }

    /// One solution with free coordinates zero, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let field = self.matrix.field();
        // solve the small system by substitution through its reduced form
        let sub_rhs: Vec<Scalar> =
            self.pivot_rows.iter().map(|&r| b[r].clone()).collect();
        // forward-eliminate the rhs with the same operations is equivalent
        // to solving the reduced system against the reduced rhs; redo the
        // small elimination on the augmented column
        let aug = Matrix::from_fn(
            field,
            self.pivot_rows.len(),
            self.matrix.cols() + 1,
            |i, j| {
                if j < self.matrix.cols() {
                    self.matrix.at(self.pivot_rows[i], j).clone()
                } else {
                    sub_rhs[i].clone()
                }
            },
        );
        let r = aug.rref();
        if r.pivots.contains(&self.matrix.cols()) {
            return None;
        }
        let mut x = vec![field.zero(); self.matrix.cols()];
        for (i, &pc) in r.pivots.iter().enumerate() {
            x[pc] = r.matrix.at(i, self.matrix.cols()).clone();
        }
        // full verification: rows outside the pivot set must agree too
        if self.matrix.apply(&x) != b {
            return None;
        }
        Some(x)
    }

    pub fn rank(&self) -> usize {
        self.small.pivots.len()
    }
}

/// A subspace of `k^n` maintained in reduced row echelon form. Supports
/// incremental growth, membership, residual reduction and quotient
/// coordinates; this is the workhorse behind ideal slices, submodules and
/// hom-space coordinatization.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<I>(field: Field, ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Subspace::empty(field, ambient);
        for v in vectors {
            s.add_vector(&v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !w[pc].is_zero() {
                let factor = w[pc].clone();
                for c in pc..self.ambient {
                    if !row[c].is_zero() {
                        w[c] = w[c].sub(&factor.mul(&row[c]));
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns true if the dimension grew.
    pub fn add_vector(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].inverse().unwrap();
        let row: Vec<Scalar> = w.iter().map(|x| x.mul(&inv)).collect();
        // keep reduced form: eliminate the new pivot from existing rows,
        // then insert in pivot order (entries of `row` at other pivots are
        // already zero because reduce() ran first)
        for r in 0..self.rows.len() {
            let factor = self.rows[r][pc].clone();
            if !factor.is_zero() {
                for c in 0..self.ambient {
                    let val = self.rows[r][c].sub(&factor.mul(&row[c]));
                    self.rows[r][c] = val;
                }
            }
        }
        let pos = self.pivots.iter().position(|&p| p > pc).unwrap_or(self.pivots.len());
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, row);
        true
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w = v.to_vec();
        let mut coords = vec![self.field.zero(); self.rows.len()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if !w[pc].is_zero() {
                let factor = w[pc].clone();
                for c in pc..self.ambient {
                    if !row[c].is_zero() {
                        w[c] = w[c].sub(&factor.mul(&row[c]));
                    }
                }
                coords[i] = factor;
            }
        }
        if w.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Columns that are not pivots: unit vectors at these positions
    /// represent a basis of the quotient `k^n / self`.
    pub fn nonpivot_columns(&self) -> Vec<usize> {
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ambient).filter(|c| !pivot_set.contains(c)).collect()
    }

    /// Quotient coordinates of `v`: reduce, then read off non-pivot entries.
    pub fn quotient_coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        let w = self.reduce(v);
        self.nonpivot_columns().iter().map(|&c| w[c].clone()).collect()
    }

    /// Basis of `{x : r · x = 0 for every row r in the span}`, read off the
    /// reduced rows like a matrix kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().copied().collect();
        for free in 0..self.ambient {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ambient];
            v[free] = self.field.one();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                v[pc] = row[free].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Intersects with another subspace of the same ambient space.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // kernel trick: rows of A stacked over rows of B; intersection from
        // coefficients x with x·A = y·B
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::empty(self.field, self.ambient);
        }
        let a = Matrix::from_rows(self.field, self.rows.clone()).transpose();
        let b = Matrix::from_rows(self.field, other.rows.clone()).transpose();
        let stacked = a.hstack(&b.neg());
        let mut out = Subspace::empty(self.field, self.ambient);
        for k in stacked.kernel_basis() {
            let coeffs = &k[..self.dim()];
            let mut v = vec![self.field.zero(); self.ambient];
            for (i, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    for j in 0..self.ambient {
                        v[j] = v[j].add(&c.mul(&self.rows[i][j]));
                    }
                }
            }
            out.add_vector(&v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn identity_has_full_rank_and_empty_kernel() {
        let m = Matrix::identity(q(), 3);
        let rr = m.row_reduce();
        assert_eq!(rr.rank, 3);
        assert!(rr.kernel.is_empty());
        assert_eq!(rr.image.len(), 3);
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = Matrix::zero(q(), 2, 5);
        let rr = m.row_reduce();
        assert_eq!(rr.rank, 0);
        assert_eq!(rr.kernel.len(), 5);
        assert!(rr.image.is_empty());
    }

    #[test]
    fn rank_one_kernel_from_hand_elimination() {
        // [[1,2],[2,4]]: subtracting twice row one from row two leaves a zero
        // row, so the kernel is spanned by (-2, 1).
        let m = Matrix::from_i64(q(), vec![vec![1, 2], vec![2, 4]]);
        let rr = m.row_reduce();
        assert_eq!(rr.rank, 1);
        assert_eq!(rr.kernel.len(), 1);
        let k = &rr.kernel[0];
        let expected = vec![q().from_i64(-2), q().from_i64(1)];
        assert_eq!(k, &expected);
        assert!(m.apply(k).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let id = Matrix::identity(q(), 2);
        let b = vec![q().from_i64(5), q().from_i64(-1)];
        assert_eq!(id.solve(&b).unwrap(), b);

        let z = Matrix::zero(q(), 2, 2);
        assert!(z.solve(&b).is_none());
    }

    #[test]
    fn solve_by_back_substitution() {
        // [[1,1],[0,1]] x = (3,1) has the unique solution (2,1).
        let m = Matrix::from_i64(q(), vec![vec![1, 1], vec![0, 1]]);
        let x = m.solve(&[q().from_i64(3), q().from_i64(1)]).unwrap();
        assert_eq!(x, vec![q().from_i64(2), q().from_i64(1)]);
    }

    #[test]
    fn rref_agrees_between_fields() {
        let over_q = Matrix::from_i64(q(), vec![vec![2, 4, 1], vec![1, 2, 3], vec![3, 6, 4]]);
        let fp = Field::prime(101).unwrap();
        let over_p = Matrix::from_i64(fp, vec![vec![2, 4, 1], vec![1, 2, 3], vec![3, 6, 4]]);
        assert_eq!(over_q.rank(), over_p.rank());
        assert_eq!(over_q.rref().pivots, over_p.rref().pivots);
    }

    #[test]
    fn subspace_membership_and_quotient() {
        let mut s = Subspace::empty(q(), 3);
        assert!(s.add_vector(&[q().from_i64(1), q().from_i64(1), q().from_i64(0)]));
        assert!(s.add_vector(&[q().from_i64(0), q().from_i64(1), q().from_i64(1)]));
        assert!(!s.add_vector(&[q().from_i64(1), q().from_i64(2), q().from_i64(1)]));
        assert_eq!(s.dim(), 2);
        assert_eq!(s.nonpivot_columns(), vec![2]);
        let coords = s.quotient_coordinates(&[q().from_i64(0), q().from_i64(0), q().from_i64(7)]);
        assert_eq!(coords, vec![q().from_i64(7)]);
    }

    #[test]
    fn matrix_inverse_roundtrip() {
        let m = Matrix::from_i64(q(), vec![vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(q(), 2));
    }
}
