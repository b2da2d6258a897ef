//! Dense exact linear algebra over prime fields.
//!
//! Entries are stored as reduced residues in `u32`. Row reduction accumulates
//! without reducing in the inner loop: every elimination step adds less than
//! `p^2 < 2^14` to an entry, so a row can absorb far more updates than any
//! matrix handled here before the `u32` range is at risk. Rows are reduced
//! once when they become pivot rows and once at the end.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{input, Result};

/// Largest supported modulus.
pub const MAX_PRIME: u32 = 97;

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return input(format!("modulus {p} is not a prime in [2, {MAX_PRIME}]"));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u32) -> u32 {
        x % self.p
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "zero has no inverse in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    pub fn elem(self, value: i64) -> FieldElem {
        FieldElem { value: self.from_i64(value), p: self.p }
    }
}

/// A residue together with its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    p: u32,
}

impl FieldElem {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Option<FieldElem> {
        (self.value != 0).then(|| FieldElem { value: self.field().inv(self.value), p: self.p })
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                assert_eq!(self.p, rhs.p, "modulus mismatch");
                FieldElem { value: self.field().$op(self.value, rhs.value), p: self.p }
            }
        }
    };
}
elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        self * rhs.inverse().expect("division by zero")
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { value: self.field().neg(self.value), p: self.p }
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix<F_{}>{}x{}{:?}", self.field.p, self.rows, self.cols, self.to_rows())
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FieldMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    pub fn scalar(field: PrimeField, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % field.p;
        }
        m
    }

    /// Builds a matrix from raw residues; values are reduced mod `p`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return input(format!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, data.len()));
        }
        let data = data.into_iter().map(|x| x % field.p).collect();
        Ok(FieldMatrix { field, rows, cols, data })
    }

    /// Builds a matrix from signed integer rows, reducing mod `p`.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|row| row.len() != c) {
            return input("ragged matrix rows");
        }
        let data = rows.iter().flatten().map(|&x| field.from_i64(x)).collect();
        Ok(FieldMatrix { field, rows: r, cols: c, data })
    }

    pub fn from_row_vectors(field: PrimeField, cols: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * cols);
        for v in vectors {
            assert_eq!(v.len(), cols, "row length mismatch");
            data.extend(v.iter().map(|&x| x % field.p));
        }
        FieldMatrix { field, rows: vectors.len(), cols, data }
    }

    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        FieldMatrix { field, rows: v.len(), cols: 1, data: v.iter().map(|&x| x % field.p).collect() }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return input(format!("modulus mismatch: {} vs {}", self.field.p, other.field.p));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return input(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FieldMatrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(FieldMatrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field;
        let c = c % f.p;
        FieldMatrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return input("modulus mismatch in matrix product");
        }
        if self.cols != other.rows {
            return input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let p = self.field.p;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut out = vec![0u32; n * m];
        // p^2 * chunk stays below 2^32 for chunk <= 4096 at p <= 97
        const CHUNK: usize = 4096;
        for i in 0..n {
            let acc = &mut out[i * m..(i + 1) * m];
            let mut pending = 0;
            for t in 0..k {
                let a = self.data[i * k + t];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[t * m..(t + 1) * m];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b;
                }
                pending += 1;
                if pending == CHUNK {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            acc.iter_mut().for_each(|x| *x %= p);
        }
        FieldMatrix { field: self.field, rows: n, cols: m, data: out }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Row vector times matrix, `v^T * self`.
    pub fn apply_left(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let p = self.field.p as u64;
        let mut acc = vec![0u64; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (x, &b) in acc.iter_mut().zip(self.row(r)) {
                *x += a as u64 * b as u64;
            }
        }
        acc.into_iter().map(|x| (x % p) as u32).collect()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Kronecker product with `self` as the outer factor.
    pub fn kron(&self, other: &Self) -> Self {
        let f = self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * out.cols + self.cols + j] = other.get(i, j);
            }
        }
        out
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || self.field != other.field {
            return input("vstack shape mismatch");
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.field != other.field {
            return input("hstack shape mismatch");
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(FieldMatrix { field: self.field, rows: self.rows, cols, data })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FieldMatrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn trace(&self) -> u32 {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.get(i, i)))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.field, n)).ok()?;
        let red = rref(&aug);
        if red.pivot_cols.iter().take(n).enumerate().any(|(i, &c)| c != i) || red.rank < n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(red.matrix.select_cols(&cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Subspace {
        kernel(self)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        image(self)
    }

    /// Row space.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }
}

fn reduce_row(row: &mut [u32], p: u32) {
    row.iter_mut().for_each(|x| *x %= p);
}

/// In-place reduced row echelon form on raw row-major data; returns pivot columns.
pub(crate) fn rref_in_place(field: PrimeField, rows: usize, cols: usize, data: &mut [u32]) -> Vec<usize> {
    let p = field.p;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| data[i * cols + col] % p != 0) else {
            continue;
        };
        if found != r {
            for k in 0..cols {
                data.swap(found * cols + k, r * cols + k);
            }
        }
        {
            let row = &mut data[r * cols..(r + 1) * cols];
            reduce_row(row, p);
            let inv = field.inv(row[col]);
            if inv != 1 {
                for x in row[col..].iter_mut() {
                    *x = (*x * inv) % p;
                }
            }
        }
        let (before, rest) = data.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let pivot_tail = &pivot_row[col..];
        for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
            let f = other[col] % p;
            if f == 0 {
                other[col] = 0;
                continue;
            }
            let factor = p - f;
            for (x, &y) in other[col..].iter_mut().zip(pivot_tail) {
                *x += factor * y;
            }
        }
        pivots.push(col);
        r += 1;
    }
    reduce_row(data, p);
    pivots
}

/// Reduced row-echelon form, rank and pivot columns.
pub fn rref(m: &FieldMatrix) -> Rref {
    let mut data = m.data.clone();
    let pivot_cols = rref_in_place(m.field, m.rows, m.cols, &mut data);
    Rref { matrix: FieldMatrix { field: m.field, rows: m.rows, cols: m.cols, data }, rank: pivot_cols.len(), pivot_cols }
}

/// Null space of `m` acting on column vectors.
pub fn kernel(m: &FieldMatrix) -> Subspace {
    let f = m.field;
    let red = rref(m);
    let mut is_pivot = vec![usize::MAX; m.cols];
    for (i, &c) in red.pivot_cols.iter().enumerate() {
        is_pivot[c] = i;
    }
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|&c| is_pivot[c] == usize::MAX) {
        let mut v = vec![0u32; m.cols];
        v[free] = 1 % f.p;
        for (i, &pc) in red.pivot_cols.iter().enumerate() {
            v[pc] = f.neg(red.matrix.get(i, free));
        }
        vectors.push(v);
    }
    Subspace::from_vectors(f, m.cols, &vectors)
}

/// Column space of `m`.
pub fn image(m: &FieldMatrix) -> Subspace {
    Subspace::from_matrix(&m.transpose())
}

/// Solves `m x = rhs`, returning one solution if any exists.
pub fn solve(m: &FieldMatrix, rhs: &[u32]) -> Result<Option<Vec<u32>>> {
    if rhs.len() != m.rows {
        return input(format!("right-hand side has length {}, expected {}", rhs.len(), m.rows));
    }
    let f = m.field;
    let aug = m.hstack(&FieldMatrix::column_vector(f, rhs))?;
    let red = rref(&aug);
    if red.pivot_cols.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![0u32; m.cols];
    for (i, &c) in red.pivot_cols.iter().enumerate() {
        x[c] = red.matrix.get(i, m.cols);
    }
    Ok(Some(x))
}

/// A subspace of `F_p^n`, stored by its unique reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{}: {:?})", self.dim(), self.field().p, self.ambient_dim, self.basis.to_rows())
    }
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: FieldMatrix::zeros(field, 0, ambient_dim), pivots: vec![] }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: FieldMatrix::identity(field, ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    /// Span of the rows of `m`.
    pub fn from_matrix(m: &FieldMatrix) -> Self {
        let red = rref(m);
        let idx: Vec<usize> = (0..red.rank).collect();
        Subspace { ambient_dim: m.cols, basis: red.matrix.select_rows(&idx), pivots: red.pivot_cols }
    }

    pub fn from_vectors(field: PrimeField, ambient_dim: usize, vectors: &[Vec<u32>]) -> Self {
        Self::from_matrix(&FieldMatrix::from_row_vectors(field, ambient_dim, vectors))
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis rows in reduced row-echelon form.
    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return input("subspaces over different fields");
        }
        if self.ambient_dim != other.ambient_dim {
            return input(format!("ambient dimensions differ: {} vs {}", self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            let factor = f.neg(c);
            for (x, &b) in w.iter_mut().zip(self.basis.row(i)) {
                *x = (*x + factor * b) % f.p;
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return input(format!("vector of length {} in ambient dimension {}", v.len(), self.ambient_dim));
        }
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let back = self.basis.apply_left(&coords);
        (back == v).then_some(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // x = c^T A lies in B iff q_B(A^T c) = 0
        let q = other.quotient_map();
        let relation = q.mul_unchecked(&self.basis.transpose());
        let coeffs = kernel(&relation);
        let vectors: Vec<Vec<u32>> = coeffs
            .basis_vectors()
            .iter()
            .map(|c| self.basis.apply_left(c))
            .collect();
        Ok(Subspace::from_vectors(self.field(), self.ambient_dim, &vectors))
    }

    /// Columns not holding a pivot; the corresponding unit vectors span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut mark = vec![false; self.ambient_dim];
        for &c in &self.pivots {
            mark[c] = true;
        }
        (0..self.ambient_dim).filter(|&c| !mark[c]).collect()
    }

    /// Surjection `F_p^n -> F_p^{n - dim}` whose kernel is exactly this subspace.
    ///
    /// Coordinates are the non-pivot entries of the reduction of a vector.
    pub fn quotient_map(&self) -> FieldMatrix {
        let f = self.field();
        let free = self.complement_indices();
        let mut q = FieldMatrix::zeros(f, free.len(), self.ambient_dim);
        for (k, &c) in free.iter().enumerate() {
            q.set(k, c, 1);
            for (i, &pc) in self.pivots.iter().enumerate() {
                q.set(k, pc, f.neg(self.basis.get(i, c)));
            }
        }
        q
    }
}

/// Free-function form of [`Subspace::intersect`].
pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

/// Free-function form of [`Subspace::sum`].
pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

/// Quotient map of `F_p^ambient_dim` onto the quotient by `s`.
pub fn quotient_map(ambient_dim: usize, s: &Subspace) -> Result<FieldMatrix> {
    if s.ambient_dim() != ambient_dim {
        return input("subspace lives in a different ambient space");
    }
    Ok(s.quotient_map())
}

/// Incrementally maintained echelon basis, used where rows arrive one at a time.
#[derive(Clone, Debug)]
pub(crate) struct EchelonBuilder {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBuilder {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        EchelonBuilder { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    #[cfg(test)]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Inserts `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc];
            if c != 0 {
                let factor = f.neg(c);
                for (x, &b) in w.iter_mut().zip(row) {
                    *x = (*x + factor * b) % f.p;
                }
            }
        }
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(w[pc]);
        w.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let factor = f.neg(c);
                for (x, &b) in row.iter_mut().zip(&w) {
                    *x = (*x + factor * b) % f.p;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_vectors(self.field, self.dim, &self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u32, rows: &[Vec<i64>]) -> FieldMatrix {
        FieldMatrix::from_rows(f(p), rows).unwrap()
    }

    #[test]
    fn rejects_non_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(101).is_err());
        assert!(PrimeField::new(97).is_ok());
    }

    #[test]
    fn field_elem_ops() {
        let k = f(7);
        let a = k.elem(3);
        let b = k.elem(5);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a / b).value(), 2);
        assert_eq!((-a).value(), 4);
        assert!(k.elem(0).inverse().is_none());
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = FieldMatrix::identity(f(2), 3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        let z = FieldMatrix::zeros(f(3), 2, 4);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
    }

    #[test]
    fn rref_rank_one_over_f5() {
        let r = rref(&m(5, &[vec![1, 2], vec![2, 4]]));
        assert_eq!(r.matrix, m(5, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(FieldMatrix::identity(f(3), 3).kernel().is_zero());
        assert_eq!(FieldMatrix::zeros(f(2), 4, 4).kernel().dim(), 4);
        let k = m(2, &[vec![1, 1]]).kernel();
        assert_eq!(k.basis_vectors(), vec![vec![1, 1]]);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let k = f(3);
        let a = Subspace::from_vectors(k, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(k, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.basis_vectors(), vec![vec![0, 1, 0]]);
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
    }

    #[test]
    fn sum_with_zero() {
        let k = f(5);
        let v = Subspace::from_vectors(k, 3, &[vec![1, 2, 3]]);
        assert_eq!(v.sum(&Subspace::zero(k, 3)).unwrap(), v);
    }

    #[test]
    fn quotient_map_kills_subspace() {
        let k = f(2);
        let s = Subspace::from_vectors(k, 2, &[vec![1, 0]]);
        let q = quotient_map(2, &s).unwrap();
        assert_eq!(q.rows(), 1);
        assert_eq!(q.apply(&[1, 0]), vec![0]);
        assert_eq!(q.apply(&[0, 1]), vec![1]);
    }

    #[test]
    fn mismatches_are_input_errors() {
        let a = Subspace::full(f(2), 2);
        let b = Subspace::full(f(3), 2);
        assert!(a.sum(&b).is_err());
        let c = Subspace::full(f(2), 3);
        assert!(a.intersect(&c).is_err());
        assert!(quotient_map(3, &a).is_err());
        assert!(m(2, &[vec![1, 0]]).try_mul(&m(2, &[vec![1, 0]])).is_err());
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(7, &[vec![2, 1], vec![1, 1]]);
        let x = solve(&a, &[3, 2]).unwrap().unwrap();
        assert_eq!(a.apply(&x), vec![3, 2]);
        let inv = a.inverse().unwrap();
        assert!(a.try_mul(&inv).unwrap().is_identity());
        let sing = m(7, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(solve(&sing, &[1, 0]).unwrap().is_none());
    }

    #[test]
    fn coordinates_round_trip() {
        let k = f(5);
        let s = Subspace::from_vectors(k, 3, &[vec![1, 2, 0], vec![0, 1, 4]]);
        let v = s.basis().apply_left(&[3, 2]);
        assert_eq!(s.coordinates(&v), Some(vec![3, 2]));
        assert_eq!(s.coordinates(&[0, 0, 1]), None);
    }

    #[test]
    fn echelon_builder_matches_rref() {
        let k = f(3);
        let vs = vec![vec![1, 2, 0, 1], vec![2, 1, 0, 2], vec![0, 0, 1, 1], vec![1, 2, 1, 2]];
        let mut b = EchelonBuilder::new(k, 4);
        for v in &vs {
            b.insert(v);
        }
        assert_eq!(b.rank(), 2);
        assert_eq!(b.into_subspace(), Subspace::from_vectors(k, 4, &vs));
    }
}
