//! Dense exact linear algebra over F_p: the workhorse behind fixed-space
//! computation, span ranks, and relation solving. Entries are stored as u8
//! residues in row-major order; everything reduces mod p.

use crate::field::{FieldError, Fp, UniPoly};
use std::fmt;

/// A dense matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row-major integers, reducing mod p.
    pub fn from_rows(p: u32, rows: &[&[i64]]) -> FpMatrix {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        let mut m = FpMatrix::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set_i64(i, j, v);
            }
        }
        m
    }

    pub fn from_flat(p: u32, rows: usize, cols: usize, entries: &[i64]) -> FpMatrix {
        assert_eq!(entries.len(), rows * cols);
        let mut m = FpMatrix::zeros(p, rows, cols);
        for (idx, &v) in entries.iter().enumerate() {
            m.data[idx] = reduce_i64(v, p);
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!((v as u32) < self.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn set_i64(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = reduce_i64(v, self.p);
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u32;
                    out.set(i, j, ((cur + a * other.get(k, j) as u32) % self.p) as u8);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = ((*a as u32 + b as u32) % self.p) as u8;
        }
        out
    }

    pub fn neg(&self) -> FpMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = ((self.p - *a as u32) % self.p) as u8;
        }
        out
    }

    pub fn scale(&self, c: u8) -> FpMatrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = ((*a as u32 * c as u32) % self.p) as u8;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == FpMatrix::identity(self.p, self.rows)
    }

    /// Gauss-Jordan inverse; None when singular.
    pub fn inverse(&self) -> Option<FpMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = FpMatrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rref.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Reduced row echelon form; returns the pivot column per pivot row.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            // find a nonzero entry at or below pivot_row
            let mut sel = None;
            for r in pivot_row..rows {
                if self.get(r, col) != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.swap_rows(pivot_row, sel);
            // normalize pivot to 1
            let inv = inv_mod(self.get(pivot_row, col) as u32, p);
            if inv != 1 {
                let row = self.row_mut(pivot_row);
                for v in row[col..].iter_mut() {
                    *v = ((*v as u32 * inv) % p) as u8;
                }
            }
            // eliminate everywhere else
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col) as u32;
                if factor == 0 {
                    continue;
                }
                let (src, dst) = self.two_rows(pivot_row, r);
                for (d, &s) in dst[col..].iter_mut().zip(&src[col..]) {
                    // d -= factor * s  (mod p)
                    let sub = (factor * s as u32) % p;
                    *d = ((*d as u32 + p - sub) % p) as u8;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (left, right) = self.data.split_at_mut(hi * cols);
        left[lo * cols..(lo + 1) * cols].swap_with_slice(&mut right[..cols]);
    }

    /// Disjoint mutable views of two rows (src immutable, dst mutable).
    fn two_rows(&mut self, src: usize, dst: usize) -> (&[u8], &mut [u8]) {
        assert_ne!(src, dst);
        let cols = self.cols;
        if src < dst {
            let (l, r) = self.data.split_at_mut(dst * cols);
            (&l[src * cols..(src + 1) * cols], &mut r[..cols])
        } else {
            let (l, r) = self.data.split_at_mut(src * cols);
            (&r[..cols], &mut l[dst * cols..(dst + 1) * cols])
        }
    }

    fn row_mut(&mut self, i: usize) -> &mut [u8] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace { v : M v = 0 }, re-echelonized so the
    /// basis rows are the canonical reduced echelon basis of the space.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let (rref, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u8; self.cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // pivot variable = -rref[r][f] * v[f]
                let c = rref.get(r, f) as u32;
                v[pc] = ((self.p - c) % self.p) as u8;
            }
            basis.push(v);
        }
        echelonize(self.p, basis)
    }
}

fn reduce_i64(v: i64, p: u32) -> u8 {
    let m = p as i64;
    (((v % m) + m) % m) as u8
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a nonzero
    let mut result = 1u64;
    let mut base = a as u64;
    let mut exp = p as u64 - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Bring a list of row vectors into canonical reduced echelon form, dropping
/// zero rows. The result depends only on the span.
pub fn echelonize(p: u32, rows: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut m = FpMatrix::zeros(p, rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.len(), cols);
        for (j, &v) in r.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    let (rref, pivots) = m.rref();
    (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect()
}

/// Incremental row-space builder: feed vectors one at a time, keeping a
/// reduced echelon basis. Lets callers stop early once a target rank is hit.
#[derive(Debug, Clone)]
pub struct SpanBuilder {
    p: u32,
    cols: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(p: u32, cols: usize) -> SpanBuilder {
        SpanBuilder { p, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current basis, returning the residual.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = w[pc] as u32;
            if c != 0 {
                for (wj, &rj) in w.iter_mut().zip(row) {
                    let sub = (c * rj as u32) % p;
                    *wj = ((*wj as u32 + p - sub) % p) as u8;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let p = self.p;
        let inv = inv_mod(w[pc] as u32, p);
        if inv != 1 {
            for c in w.iter_mut() {
                *c = ((*c as u32 * inv) % p) as u8;
            }
        }
        // back-substitute into existing rows to stay fully reduced
        for row in self.rows.iter_mut() {
            let c = row[pc] as u32;
            if c != 0 {
                for (rj, &wj) in row.iter_mut().zip(&w) {
                    let sub = (c * wj as u32) % p;
                    *rj = ((*rj as u32 + p - sub) % p) as u8;
                }
            }
        }
        // keep rows sorted by pivot column
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, w);
        true
    }

    /// The canonical reduced echelon basis accumulated so far.
    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Solve `sum_i x_i * vectors[i] = target` over F_p. Returns None when the
/// target is outside the span. When `require_unique` is set, panics if the
/// vectors are linearly dependent (callers assert uniqueness for free
/// modules).
pub fn solve_combination(
    p: u32,
    vectors: &[Vec<u8>],
    target: &[u8],
    require_unique: bool,
) -> Option<Vec<u8>> {
    let cols = target.len();
    let n = vectors.len();
    if n == 0 {
        return if target.iter().all(|&c| c == 0) { Some(Vec::new()) } else { None };
    }
    // rows are coordinates, columns are the unknowns, augmented with target
    let mut m = FpMatrix::zeros(p, cols, n + 1);
    for (j, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), cols);
        for (i, &c) in v.iter().enumerate() {
            m.set(i, j, c);
        }
    }
    for (i, &c) in target.iter().enumerate() {
        m.set(i, n, c);
    }
    let (rref, pivots) = m.rref();
    // inconsistent if the augmented column is a pivot
    if pivots.contains(&n) {
        return None;
    }
    if require_unique {
        assert_eq!(pivots.len(), n, "span vectors are linearly dependent");
    }
    let mut x = vec![0u8; n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rref.get(r, n);
    }
    // verify (guards the non-unique path)
    let mut check = vec![0u32; cols];
    for (j, v) in vectors.iter().enumerate() {
        let c = x[j] as u32;
        if c != 0 {
            for (acc, &vj) in check.iter_mut().zip(v) {
                *acc = (*acc + c * vj as u32) % p;
            }
        }
    }
    if check.iter().zip(target).all(|(&a, &b)| a == b as u32) {
        Some(x)
    } else {
        None
    }
}

/// Characteristic polynomial det(xI - M), computed division-free by cofactor
/// expansion over `F_p[x]`. Exact in any characteristic; intended for the small
/// matrices that arise from group elements.
pub fn char_poly(m: &FpMatrix) -> UniPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let p = m.p();
    // xI - M as a matrix of polynomials
    let mut entries: Vec<UniPoly> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = Fp::new(-(m.get(i, j) as i64), p);
            let mut poly = UniPoly::new(p, vec![c]);
            if i == j {
                poly = poly.add(&UniPoly::monomial(Fp::one(p), 1));
            }
            entries.push(poly);
        }
    }
    poly_det(p, &entries, n)
}

fn poly_det(p: u32, entries: &[UniPoly], n: usize) -> UniPoly {
    if n == 0 {
        return UniPoly::one(p);
    }
    if n == 1 {
        return entries[0].clone();
    }
    let mut det = UniPoly::zero(p);
    for col in 0..n {
        let cofactor = &entries[col];
        if cofactor.is_zero() {
            continue;
        }
        // minor deleting row 0, column col
        let mut minor = Vec::with_capacity((n - 1) * (n - 1));
        for i in 1..n {
            for j in 0..n {
                if j != col {
                    minor.push(entries[i * n + j].clone());
                }
            }
        }
        let term = cofactor.mul(&poly_det(p, &minor, n - 1));
        det = if col % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

/// Order of an invertible matrix in GL_n(F_p). Errors if the matrix is
/// singular; bounded iteration keeps typos from looping forever.
pub fn matrix_order(m: &FpMatrix) -> Result<u32, FieldError> {
    assert!(m.is_square());
    if m.inverse().is_none() {
        return Err(FieldError::ZeroInverse);
    }
    let mut acc = m.clone();
    let mut n = 1u32;
    while !acc.is_identity() {
        acc = acc.mul(m);
        n += 1;
        assert!(n < 1_000_000, "matrix order exceeds bound");
    }
    Ok(n)
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]", parts.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_rank() {
        let m = FpMatrix::from_rows(3, &[&[1, 2, 0], &[2, 2, 0], &[0, 0, 0]]);
        assert_eq!(m.rank(), 2);
        // (2,1,0) is 2*(1,2,0) mod 3
        let dep = FpMatrix::from_rows(3, &[&[1, 2, 0], &[2, 1, 0]]);
        assert_eq!(dep.rank(), 1);
        let id = FpMatrix::identity(3, 3);
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = FpMatrix::from_rows(3, &[&[1, 1], &[0, 1]]);
        let mi = m.inverse().unwrap();
        assert!(m.mul(&mi).is_identity());
        assert_eq!(mi, FpMatrix::from_rows(3, &[&[1, -1], &[0, 1]]));
        let singular = FpMatrix::from_rows(3, &[&[1, 2], &[2, 1]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn nullspace_is_echelonized_and_correct() {
        // x + y + z = 0 over F_3
        let m = FpMatrix::from_rows(3, &[&[1, 1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: u32 = v.iter().map(|&c| c as u32).sum();
            assert_eq!(s % 3, 0);
        }
        // canonical reduced echelon basis: leading ones, reduced pivots
        assert_eq!(ns[0][0], 1);
        assert_eq!(ns[1][0], 0);
        assert_eq!(ns[1][1], 1);
    }

    #[test]
    fn span_builder_matches_batch_echelon() {
        let vectors = vec![
            vec![1u8, 2, 0, 1],
            vec![2u8, 1, 0, 2],
            vec![0u8, 0, 1, 1],
            vec![1u8, 2, 1, 2],
        ];
        let mut sb = SpanBuilder::new(3, 4);
        for v in &vectors {
            sb.insert(v);
        }
        let batch = echelonize(3, vectors);
        assert_eq!(sb.basis(), &batch[..]);
    }

    #[test]
    fn solve_combination_finds_unique_coefficients() {
        let vs = vec![vec![1u8, 0, 1], vec![0u8, 1, 2]];
        let target = vec![2u8, 2, 0];
        let x = solve_combination(3, &vs, &target, true).unwrap();
        assert_eq!(x, vec![2, 2]);
        let outside = vec![0u8, 0, 1];
        assert!(solve_combination(3, &vs, &outside, true).is_none());
    }

    #[test]
    fn char_poly_of_cyclic_permutation() {
        // 3-cycle has characteristic polynomial x^3 - 1
        let m = FpMatrix::from_rows(3, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(char_poly(&m), UniPoly::from_ints(3, &[-1, 0, 0, 1]));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let m = FpMatrix::from_rows(3, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        // (x-1)(x+1)^2 = x^3 + x^2 - x - 1
        assert_eq!(char_poly(&m), UniPoly::from_ints(3, &[-1, -1, 1, 1]));
    }

    #[test]
    fn matrix_orders() {
        let t = FpMatrix::from_rows(3, &[&[1, 1], &[0, 1]]);
        assert_eq!(matrix_order(&t).unwrap(), 3);
        let i = FpMatrix::from_rows(3, &[&[0, 1], &[-1, 0]]);
        assert_eq!(matrix_order(&i).unwrap(), 4);
    }
}
