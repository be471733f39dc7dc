//! Dense exact matrices over the coefficient rings.
//!
//! Storage is split: finite-ring matrices hold packed bytes, the
//! characteristic-zero rings hold arbitrary-precision pairs. Row reduction
//! produces the canonical reduced row echelon form, so row spaces compare
//! by plain equality. Vectors act as columns; subspace bases are rows.

use std::fmt;

use crate::coeff::{
    fin_add, fin_inv, fin_mul, fin_neg, BigPair, Elem, FinKind, Ring,
};
use crate::{Error, Result};

/// Scalar arithmetic used by the generic elimination kernels.
pub(crate) trait Arith: Copy {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Inverse of a unit; only called on nonzero field elements.
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Clone, Copy)]
pub(crate) struct FinArith {
    pub k: FinKind,
}

impl Arith for FinArith {
    type E = u8;
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        fin_add(self.k, *a, *b)
    }
    fn sub(&self, a: &u8, b: &u8) -> u8 {
        fin_add(self.k, *a, fin_neg(self.k, *b))
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        fin_mul(self.k, *a, *b)
    }
    fn neg(&self, a: &u8) -> u8 {
        fin_neg(self.k, *a)
    }
    fn inv(&self, a: &u8) -> u8 {
        fin_inv(self.k, *a)
    }
}

#[derive(Clone, Copy)]
pub(crate) struct BigArith {
    pub qphi: bool,
}

impl Arith for BigArith {
    type E = BigPair;
    fn zero(&self) -> BigPair {
        (num::BigRational::default(), num::BigRational::default())
    }
    fn one(&self) -> BigPair {
        (num::BigRational::from_integer(1.into()), num::BigRational::default())
    }
    fn is_zero(&self, a: &BigPair) -> bool {
        num::Zero::is_zero(&a.0) && num::Zero::is_zero(&a.1)
    }
    fn add(&self, a: &BigPair, b: &BigPair) -> BigPair {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn sub(&self, a: &BigPair, b: &BigPair) -> BigPair {
        (&a.0 - &b.0, &a.1 - &b.1)
    }
    fn mul(&self, a: &BigPair, b: &BigPair) -> BigPair {
        if !self.qphi {
            (&a.0 * &b.0, num::BigRational::default())
        } else {
            let cross = &a.1 * &b.1;
            (&a.0 * &b.0 + &cross, &a.0 * &b.1 + &a.1 * &b.0 + cross)
        }
    }
    fn neg(&self, a: &BigPair) -> BigPair {
        (-&a.0, -&a.1)
    }
    fn inv(&self, a: &BigPair) -> BigPair {
        if num::Zero::is_zero(&a.1) {
            (num::BigRational::from_integer(1.into()) / &a.0, num::BigRational::default())
        } else {
            let norm = &a.0 * &a.0 + &a.0 * &a.1 - &a.1 * &a.1;
            ((&a.0 + &a.1) / &norm, -(&a.1 / &norm))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Store {
    Fin(Vec<u8>),
    Big(Vec<BigPair>),
}

/// A rows x cols matrix over a fixed ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Store,
}

fn elem_to_big(e: &Elem) -> BigPair {
    match e {
        Elem::Big(p) => (*p.clone()),
        Elem::Fin(_) => panic!("finite element in rational matrix"),
    }
}

fn elem_to_fin(e: &Elem) -> u8 {
    match e {
        Elem::Fin(v) => *v,
        Elem::Big(_) => panic!("rational element in finite matrix"),
    }
}

impl Mat {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Mat {
        let data = if ring.is_finite() {
            Store::Fin(vec![0; rows * cols])
        } else {
            let z = BigArith { qphi: false }.zero();
            Store::Big(vec![z; rows * cols])
        };
        Mat { ring, rows, cols, data }
    }

    pub fn identity(ring: Ring, n: usize) -> Mat {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Elem) -> Mat {
        let mut m = Mat::zero(ring, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Elem>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(ring, r, c, |i, j| rows[i][j].clone())
    }

    /// Permutation matrix: column `j` maps to basis vector `perm[j]`.
    pub fn from_permutation(ring: Ring, perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut m = Mat::zero(ring, n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, ring.one());
        }
        m
    }

    /// If every column holds exactly one 1 and all else 0, the column-to-row
    /// map as a permutation vector.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.rows != self.cols {
            return None;
        }
        let one = self.ring.one();
        let mut perm = vec![usize::MAX; self.cols];
        let mut seen = vec![false; self.rows];
        for j in 0..self.cols {
            for i in 0..self.rows {
                let e = self.get(i, j);
                if self.ring.is_zero(&e) {
                    continue;
                }
                if e != one || perm[j] != usize::MAX || seen[i] {
                    return None;
                }
                perm[j] = i;
                seen[i] = true;
            }
            if perm[j] == usize::MAX {
                return None;
            }
        }
        Some(perm)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        assert!(i < self.rows && j < self.cols);
        match &self.data {
            Store::Fin(v) => Elem::Fin(v[i * self.cols + j]),
            Store::Big(v) => {
                let p = &v[i * self.cols + j];
                Elem::big(p.0.clone(), p.1.clone())
            }
        }
    }

    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        assert!(i < self.rows && j < self.cols);
        let idx = i * self.cols + j;
        match &mut self.data {
            Store::Fin(v) => v[idx] = elem_to_fin(&e),
            Store::Big(v) => v[idx] = elem_to_big(&e),
        }
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn is_zero_mat(&self) -> bool {
        match &self.data {
            Store::Fin(v) => v.iter().all(|&x| x == 0),
            Store::Big(v) => {
                let a = BigArith { qphi: false };
                v.iter().all(|x| a.is_zero(x))
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.ring, self.rows)
    }

    fn assert_same_ring(&self, other: &Mat) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {} vs {}",
            self.ring.tag(),
            other.ring.tag()
        );
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.assert_same_ring(other);
        assert!(self.rows == other.rows && self.cols == other.cols);
        self.zip_with(other, |r, a, b| r.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.assert_same_ring(other);
        assert!(self.rows == other.rows && self.cols == other.cols);
        self.zip_with(other, |r, a, b| r.sub(a, b))
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Ring, &Elem, &Elem) -> Elem) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| {
            f(&self.ring, &self.get(i, j), &other.get(i, j))
        })
    }

    pub fn neg(&self) -> Mat {
        self.map_entries(|e| self.ring.neg(e))
    }

    pub fn map_entries(&self, f: impl Fn(&Elem) -> Elem) -> Mat {
        Mat::from_fn(self.ring, self.rows, self.cols, |i, j| f(&self.get(i, j)))
    }

    pub fn scale(&self, c: &Elem) -> Mat {
        self.map_entries(|e| self.ring.mul(c, e))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Elem {
        assert!(self.rows == self.cols);
        let mut t = self.ring.zero();
        for i in 0..self.rows {
            t = self.ring.add(&t, &self.get(i, i));
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.assert_same_ring(other);
        assert!(self.cols == other.rows, "shape mismatch in matrix product");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        match (&self.data, &other.data) {
            (Store::Fin(a), Store::Fin(b)) => {
                let kind = self.ring.fin_kind().unwrap();
                let data = match kind {
                    FinKind::Mod { m: md } => mul_mod_fast(md, a, b, n, k, m),
                    FinKind::Ext { .. } => mul_generic(FinArith { k: kind }, a, b, n, k, m),
                };
                Mat { ring: self.ring, rows: n, cols: m, data: Store::Fin(data) }
            }
            (Store::Big(a), Store::Big(b)) => {
                let ar = BigArith { qphi: self.ring.is_quadratic_extension() };
                let data = mul_generic(ar, a, b, n, k, m);
                Mat { ring: self.ring, rows: n, cols: m, data: Store::Big(data) }
            }
            _ => unreachable!("mixed storage"),
        }
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert!(v.len() == self.cols);
        let r = &self.ring;
        (0..self.rows)
            .map(|i| {
                let mut acc = r.zero();
                for j in 0..self.cols {
                    acc = r.add(&acc, &r.mul(&self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Mat {
        assert!(self.rows == self.cols);
        let mut acc = Mat::identity(self.ring, self.rows);
        let mut base = self.clone();
        let mut e = e;
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

    fn require_field(&self) -> Result<()> {
        if !self.ring.is_field() {
            return Err(Error::Input(format!(
                "elimination requires a field, got {}",
                self.ring.tag()
            )));
        }
        Ok(())
    }

    /// Canonical reduced row echelon form with pivot columns.
    pub fn rref(&self) -> Result<(Mat, Vec<usize>)> {
        self.require_field()?;
        match &self.data {
            Store::Fin(v) => {
                let a = FinArith { k: self.ring.fin_kind().unwrap() };
                let (rows, pivots) = rref_rows(a, to_rows(v, self.rows, self.cols));
                Ok((from_rows_fin(self.ring, rows, self.cols), pivots))
            }
            Store::Big(v) => {
                let a = BigArith { qphi: self.ring.is_quadratic_extension() };
                let (rows, pivots) = rref_rows(a, to_rows(v, self.rows, self.cols));
                Ok((from_rows_big(self.ring, rows, self.cols), pivots))
            }
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Reduced basis of the row space (zero rows dropped).
    pub fn row_space(&self) -> Result<Mat> {
        let (r, pivots) = self.rref()?;
        let rank = pivots.len();
        Ok(Mat::from_fn(self.ring, rank, self.cols, |i, j| r.get(i, j)))
    }

    /// Basis (as rows, in RREF) of the right null space { x : A x = 0 }.
    pub fn kernel(&self) -> Result<Mat> {
        let (r, pivots) = self.rref()?;
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let ring = self.ring;
        let mut rows = Vec::with_capacity(free.len());
        for &fj in &free {
            let mut v = vec![ring.zero(); self.cols];
            v[fj] = ring.one();
            for (pi, &pj) in pivots.iter().enumerate().take(rank) {
                v[pj] = ring.neg(&r.get(pi, fj));
            }
            rows.push(v);
        }
        // already independent; normalize to canonical form
        Mat::from_rows(ring, rows).row_space()
    }

    pub fn is_invertible(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        if self.ring.is_field() {
            self.rank().map(|r| r == self.rows).unwrap_or(false)
        } else {
            self.det_cofactor().map(|d| self.ring.is_unit(&d)).unwrap_or(false)
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Input("inverse of a non-square matrix".into()));
        }
        if !self.ring.is_field() {
            return self.inverse_adjugate();
        }
        let n = self.rows;
        // Gauss-Jordan on [A | I]
        let aug = Mat::from_fn(self.ring, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j)
            } else if j - n == i {
                self.ring.one()
            } else {
                self.ring.zero()
            }
        });
        let (r, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Input("singular matrix".into()));
        }
        Ok(Mat::from_fn(self.ring, n, n, |i, j| r.get(i, n + j)))
    }

    /// Determinant by cofactor expansion; exact over any ring, small sizes only.
    pub fn det_cofactor(&self) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::Input("determinant of a non-square matrix".into()));
        }
        if self.rows > 4 {
            return Err(Error::Capacity("cofactor determinant limited to n <= 4".into()));
        }
        Ok(self.det_rec(&(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>()))
    }

    fn det_rec(&self, rows: &[usize], cols: &[usize]) -> Elem {
        let r = &self.ring;
        if rows.len() == 1 {
            return self.get(rows[0], cols[0]);
        }
        let mut acc = r.zero();
        let sub_rows = &rows[1..];
        for (idx, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.det_rec(sub_rows, &rest);
            let term = r.mul(&self.get(rows[0], c), &minor);
            acc = if idx % 2 == 0 { r.add(&acc, &term) } else { r.sub(&acc, &term) };
        }
        acc
    }

    /// Inverse over a commutative ring via the adjugate; n <= 3.
    fn inverse_adjugate(&self) -> Result<Mat> {
        let n = self.rows;
        if n > 3 {
            return Err(Error::Capacity("adjugate inverse limited to n <= 3".into()));
        }
        let det = self.det_cofactor()?;
        let det_inv = self.ring.inv(&det).map_err(|_| Error::Input("singular matrix".into()))?;
        let r = self.ring;
        let cof = Mat::from_fn(r, n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&x| x != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&x| x != i).collect();
            let m = if n == 1 { r.one() } else { self.det_rec(&rows, &cols) };
            if (i + j) % 2 == 0 {
                m
            } else {
                r.neg(&m)
            }
        });
        Ok(cof.scale(&det_inv))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Mat]) -> Mat {
        assert!(!parts.is_empty());
        let ring = parts[0].ring;
        let cols = parts[0].cols;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zero(ring, rows, cols);
        let mut at = 0;
        for m in parts {
            assert!(m.cols == cols && m.ring == ring);
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(at + i, j, m.get(i, j));
                }
            }
            at += m.rows;
        }
        out
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.ring.format_elem(&self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(" ; ");
        write!(f, "[{body}]")
    }
}

fn to_rows<E: Clone>(flat: &[E], rows: usize, cols: usize) -> Vec<Vec<E>> {
    (0..rows).map(|i| flat[i * cols..(i + 1) * cols].to_vec()).collect()
}

fn from_rows_fin(ring: Ring, rows: Vec<Vec<u8>>, cols: usize) -> Mat {
    let r = rows.len();
    let mut flat = Vec::with_capacity(r * cols);
    for row in rows {
        flat.extend(row);
    }
    Mat { ring, rows: r, cols, data: Store::Fin(flat) }
}

fn from_rows_big(ring: Ring, rows: Vec<Vec<BigPair>>, cols: usize) -> Mat {
    let r = rows.len();
    let mut flat = Vec::with_capacity(r * cols);
    for row in rows {
        flat.extend(row);
    }
    Mat { ring, rows: r, cols, data: Store::Big(flat) }
}

/// Row-major product with u32 accumulation for plain modular rings.
fn mul_mod_fast(m: u8, a: &[u8], b: &[u8], n: usize, k: usize, cols: usize) -> Vec<u8> {
    let mut out = vec![0u32; n * cols];
    for i in 0..n {
        let arow = &a[i * k..(i + 1) * k];
        let orow = &mut out[i * cols..(i + 1) * cols];
        for (kk, &av) in arow.iter().enumerate() {
            if av == 0 {
                continue;
            }
            let brow = &b[kk * cols..(kk + 1) * cols];
            let av = av as u32;
            for (o, &bv) in orow.iter_mut().zip(brow) {
                *o += av * bv as u32;
            }
        }
        // max term (m-1)^2 = 36, so 2^32 overflows only past ~10^8 summands
        for o in orow.iter_mut() {
            *o %= m as u32;
        }
    }
    out.into_iter().map(|x| x as u8).collect()
}

fn mul_generic<A: Arith>(ar: A, a: &[A::E], b: &[A::E], n: usize, k: usize, cols: usize) -> Vec<A::E> {
    let mut out = vec![ar.zero(); n * cols];
    for i in 0..n {
        for kk in 0..k {
            let av = &a[i * k + kk];
            if ar.is_zero(av) {
                continue;
            }
            for j in 0..cols {
                let t = ar.mul(av, &b[kk * cols + j]);
                out[i * cols + j] = ar.add(&out[i * cols + j], &t);
            }
        }
    }
    out
}

/// In-place reduction to canonical RREF; returns surviving rows and pivots.
pub(crate) fn rref_rows<A: Arith>(ar: A, mut rows: Vec<Vec<A::E>>) -> (Vec<Vec<A::E>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !ar.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = ar.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = ar.mul(&inv, x);
        }
        for i in 0..rows.len() {
            if i != r && !ar.is_zero(&rows[i][c]) {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let t = ar.mul(&f, &rows[r][j]);
                    rows[i][j] = ar.sub(&rows[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Incrementally maintained canonical echelon basis, used by the spinning
/// and closure loops.
pub(crate) struct Echelon<A: Arith> {
    ar: A,
    cols: usize,
    rows: Vec<Vec<A::E>>,
    pivots: Vec<usize>,
}

impl<A: Arith> Echelon<A> {
    pub fn new(ar: A, cols: usize) -> Self {
        Echelon { ar, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<A::E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place; leaves the residual.
    pub fn reduce(&self, v: &mut [A::E]) {
        let ar = self.ar;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !ar.is_zero(&v[p]) {
                let f = v[p].clone();
                for j in p..self.cols {
                    let t = ar.mul(&f, &row[j]);
                    v[j] = ar.sub(&v[j], &t);
                }
            }
        }
    }

    /// Inserts a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, mut v: Vec<A::E>) -> bool {
        assert!(v.len() == self.cols);
        let ar = self.ar;
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !ar.is_zero(x)) else {
            return false;
        };
        let inv = ar.inv(&v[p]);
        for x in v.iter_mut() {
            *x = ar.mul(&inv, x);
        }
        // eliminate the new pivot from existing rows, keep pivot order sorted
        for row in self.rows.iter_mut() {
            if !ar.is_zero(&row[p]) {
                let f = row[p].clone();
                for j in p..self.cols {
                    let t = ar.mul(&f, &v[j]);
                    row[j] = ar.sub(&row[j], &t);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[A::E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.ar.is_zero(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{ring_make, RingTag};

    fn f5() -> Ring {
        ring_make(RingTag::F5)
    }

    fn m(ring: Ring, rows: usize, cols: usize, vals: &[i64]) -> Mat {
        assert_eq!(vals.len(), rows * cols);
        Mat::from_fn(ring, rows, cols, |i, j| ring.int(vals[i * cols + j]))
    }

    #[test]
    fn product_and_inverse_over_f5() {
        let a = m(f5(), 2, 2, &[1, 2, 3, 4]);
        let b = m(f5(), 2, 2, &[0, 1, 1, 0]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(f5(), 2, 2, &[2, 1, 4, 3]));
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        assert!(ai.mul(&a).is_identity());
    }

    #[test]
    fn singular_matrix_detected() {
        let a = m(f5(), 2, 2, &[1, 2, 2, 4]);
        assert!(!a.is_invertible());
        assert!(a.inverse().is_err());
        assert_eq!(a.rank().unwrap(), 1);
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(f5(), 3, 3, &[2, 4, 1, 1, 2, 3, 3, 1, 0]);
        let (r, pivots) = a.rref().unwrap();
        // pivot entries are 1 with zeros above and below
        for (i, &p) in pivots.iter().enumerate() {
            assert!(r.ring().is_one(&r.get(i, p)));
            for k in 0..r.rows() {
                if k != i {
                    assert!(r.ring().is_zero(&r.get(k, p)));
                }
            }
        }
        // scaling rows leaves the canonical form unchanged
        let b = m(f5(), 3, 3, &[4, 8, 2, 3, 6, 9, 3, 1, 0]);
        assert_eq!(a.row_space().unwrap(), b.row_space().unwrap());
    }

    #[test]
    fn kernel_rank_nullity() {
        let a = m(f5(), 2, 4, &[1, 2, 3, 4, 2, 4, 6, 8]);
        let k = a.kernel().unwrap();
        assert_eq!(k.rows(), 3);
        for i in 0..k.rows() {
            let x = k.row(i);
            let y = a.apply(&x);
            assert!(y.iter().all(|e| a.ring().is_zero(e)));
        }
        assert_eq!(a.rank().unwrap() + k.rows(), a.cols());
    }

    #[test]
    fn z4_adjugate_inverse() {
        let z4 = ring_make(RingTag::Z4);
        let a = m(z4, 2, 2, &[1, 2, 2, 1]);
        assert!(a.is_invertible()); // det = 1 - 4 = 1
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let b = m(z4, 2, 2, &[1, 1, 1, 3]); // det = 2, a zero divisor
        assert!(!b.is_invertible());
    }

    #[test]
    fn qphi_elimination_is_exact() {
        let qphi = ring_make(RingTag::Qphi);
        let phi = Elem::from_pair(0, 1);
        let a = Mat::from_rows(
            qphi,
            vec![
                vec![qphi.one(), phi.clone()],
                vec![phi.clone(), qphi.int(2)],
            ],
        );
        // det = 2 - phi^2 = 1 - phi, nonzero
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
    }

    #[test]
    fn permutation_round_trip() {
        let r = f5();
        let p = vec![2usize, 0, 1];
        let m = Mat::from_permutation(r, &p);
        assert_eq!(m.as_permutation().unwrap(), p);
        assert!(m.mul(&m).mul(&m).is_identity());
        let not_perm = Mat::from_fn(r, 2, 2, |_, _| r.one());
        assert!(not_perm.as_permutation().is_none());
    }

    #[test]
    fn echelon_insert_matches_rref() {
        let a = m(f5(), 4, 3, &[1, 2, 3, 2, 4, 1, 0, 0, 4, 1, 2, 2]);
        let mut ech = Echelon::new(FinArith { k: f5().fin_kind().unwrap() }, 3);
        for i in 0..4 {
            let row: Vec<u8> = (0..3)
                .map(|j| match a.get(i, j) {
                    Elem::Fin(v) => v,
                    _ => unreachable!(),
                })
                .collect();
            ech.insert(row);
        }
        let rs = a.row_space().unwrap();
        assert_eq!(ech.rank(), rs.rows());
        let back = from_rows_fin(f5(), ech.rows().to_vec(), 3);
        assert_eq!(back, rs);
    }
}
