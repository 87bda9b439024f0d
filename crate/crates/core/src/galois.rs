//! Exact arithmetic and dense linear algebra over prime fields GF(p).
//!
//! Elements are stored as least nonnegative residues in `u32`. Every
//! elimination routine picks the first nonzero entry in column order as its
//! pivot, so derived objects are reproducible bit for bit.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Largest supported modulus; keeps products inside `u64`.
    pub const MAX_PRIME: u32 = 65_521;

    pub fn new(p: u32) -> Result<Self> {
        if !(2..=Self::MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// GF(2).
    pub fn binary() -> Self {
        Self { p: 2 }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        // Fermat: a^(p-2).
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        Some(acc as u32)
    }

    /// Number of field elements raised to `exp`, or `None` on overflow.
    pub fn count(&self, exp: usize) -> Option<u64> {
        (self.p as u64).checked_pow(u32::try_from(exp).ok()?)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Iterates all coefficient vectors of length `len` over GF(p) in
/// lexicographic order (index 0 most significant).
pub struct CoefficientIter {
    p: u32,
    current: Vec<u32>,
    done: bool,
}

impl CoefficientIter {
    pub fn new(field: PrimeField, len: usize) -> Self {
        Self {
            p: field.p(),
            current: vec![0; len],
            done: false,
        }
    }
}

impl Iterator for CoefficientIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut pos = self.current.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.current[pos] += 1;
            if self.current[pos] < self.p {
                break;
            }
            self.current[pos] = 0;
        }
        Some(out)
    }
}

/// A vector over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    field: PrimeField,
    entries: Vec<u32>,
}

impl FpVector {
    /// Builds a vector, reducing every entry mod p.
    pub fn new(field: PrimeField, entries: Vec<u32>) -> Self {
        let entries = entries.into_iter().map(|e| e % field.p()).collect();
        Self { field, entries }
    }

    pub fn from_i64(field: PrimeField, entries: &[i64]) -> Self {
        Self {
            field,
            entries: entries.iter().map(|&e| field.reduce(e)).collect(),
        }
    }

    pub fn zeros(field: PrimeField, len: usize) -> Self {
        Self {
            field,
            entries: vec![0; len],
        }
    }

    /// Unit vector e_index.
    pub fn unit(field: PrimeField, len: usize, index: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.entries[index] = 1;
        v
    }

    /// Parses `1011`, `1,0,1,1` or `1 0 1 1`.
    pub fn parse(field: PrimeField, text: &str) -> Result<Self> {
        let text = text.trim();
        let tokens: Vec<&str> = if text.contains(',') || text.contains(char::is_whitespace) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .collect()
        } else {
            text.split("").filter(|t| !t.is_empty()).collect()
        };
        let mut entries = Vec::with_capacity(tokens.len());
        for t in tokens {
            let v: u32 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad field element `{t}`")))?;
            if v >= field.p() {
                return Err(Error::Parse(format!(
                    "element {v} out of range for GF({})",
                    field.p()
                )));
            }
            entries.push(v);
        }
        Ok(Self { field, entries })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &FpVector) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> FpVector {
        let f = self.field;
        FpVector {
            field: f,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    pub fn dot(&self, other: &FpVector) -> u32 {
        dot(self.field, &self.entries, &other.entries)
    }

    /// Left cyclic shift by `j`: (c_j, c_{j+1}, ..., c_{j-1}).
    pub fn shift_left(&self, j: usize) -> FpVector {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let j = j % n;
        let mut entries = self.entries[j..].to_vec();
        entries.extend_from_slice(&self.entries[..j]);
        FpVector {
            field: self.field,
            entries,
        }
    }

    /// Digits concatenated, comma separated when p > 10.
    pub fn digits(&self) -> String {
        join_digits(self.field, &self.entries)
    }
}

impl PartialOrd for FpVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries.cmp(&other.entries)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.digits())
    }
}

pub(crate) fn join_digits(field: PrimeField, entries: &[u32]) -> String {
    if field.p() <= 10 {
        entries.iter().map(|e| char::from(b'0' + *e as u8)).collect()
    } else {
        entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn dot(f: PrimeField, a: &[u32], b: &[u32]) -> u32 {
    let p = f.p() as u64;
    let mut acc = 0u64;
    for (&x, &y) in a.iter().zip(b) {
        acc = (acc + x as u64 * y as u64) % p;
    }
    acc as u32
}

/// How two row spaces relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceRelation {
    Equal,
    ASubspaceOfB,
    BSubspaceOfA,
    Incomparable,
}

/// Dense row-major matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        let data = data.into_iter().map(|e| e % field.p()).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row slices; all rows must share a length.
    /// `cols` is needed for the zero-row case.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|e| e % field.p()));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vectors(field: PrimeField, cols: usize, rows: &[FpVector]) -> Result<Self> {
        let raw: Vec<Vec<u32>> = rows.iter().map(|r| r.entries().to_vec()).collect();
        Self::from_rows(field, cols, &raw)
    }

    /// Parses rows of digit strings, e.g. `["1100", "0111"]`.
    pub fn parse_rows(field: PrimeField, rows: &[&str]) -> Result<Self> {
        let vecs = rows
            .iter()
            .map(|r| FpVector::parse(field, r))
            .collect::<Result<Vec<_>>>()?;
        let cols = vecs.first().map_or(0, |v| v.len());
        Self::from_vectors(field, cols, &vecs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> FpVector {
        FpVector {
            field: self.field,
            entries: self.row(r).to_vec(),
        }
    }

    pub fn row_vectors(&self) -> Vec<FpVector> {
        (0..self.rows).map(|r| self.row_vector(r)).collect()
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector {
            field: self.field,
            entries: (0..self.rows).map(|r| self.get(r, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix sum of different shapes".into()));
        }
        let f = self.field;
        Ok(FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field;
        FpMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Row vector times matrix: alpha * self.
    pub fn left_mul_vec(&self, alpha: &[u32]) -> Result<FpVector> {
        if alpha.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} times {}x{} matrix",
                alpha.len(),
                self.rows,
                self.cols
            )));
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut out = vec![0u64; self.cols];
        for (r, &a) in alpha.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = (*o + a as u64 * self.get(r, c) as u64) % p;
            }
        }
        Ok(FpVector {
            field: f,
            entries: out.into_iter().map(|e| e as u32).collect(),
        })
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[&FpMatrix]) -> Result<FpMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Dimension("hstack of nothing".into()))?;
        let rows = first.rows;
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Dimension("hstack with differing row counts".into()));
        }
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for m in parts {
                data.extend_from_slice(m.row(r));
            }
        }
        Ok(FpMatrix {
            field: first.field,
            rows,
            cols,
            data,
        })
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[&FpMatrix]) -> Result<FpMatrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Dimension("vstack of nothing".into()))?;
        let cols = first.cols;
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Dimension("vstack with differing column counts".into()));
        }
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        Ok(FpMatrix {
            field: first.field,
            rows,
            cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FpMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &c in idx {
                data.push(self.get(r, c));
            }
        }
        FpMatrix {
            field: self.field,
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Matrix with the single column `v`.
    pub fn column_matrix(v: &FpVector) -> FpMatrix {
        FpMatrix {
            field: v.field,
            rows: v.len(),
            cols: 1,
            data: v.entries.clone(),
        }
    }

    /// Reduced row echelon form and strictly increasing pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(sel) = (pr..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if sel != pr {
                for j in 0..m.cols {
                    m.data.swap(sel * m.cols + j, pr * m.cols + j);
                }
            }
            let inv = f.inv(m.get(pr, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(pr, j);
                m.data[pr * m.cols + j] = f.mul(v, inv);
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let factor = m.get(r, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(pr, j)));
                    m.data[r * m.cols + j] = v;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the row space: the nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> FpMatrix {
        let (r, piv) = self.rref();
        r.select_rows(&(0..piv.len()).collect::<Vec<_>>())
    }

    /// Basis rows of {x : self * x^T = 0}, in RREF.
    pub fn right_kernel(&self) -> FpMatrix {
        let f = self.field;
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut basis = FpMatrix::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for (pi, &pc) in piv.iter().enumerate() {
                basis.set(bi, pc, f.neg(r.get(pi, fc)));
            }
        }
        // Independent by construction; RREF makes it canonical.
        basis.rref().0
    }

    /// Basis rows of {alpha : alpha * self = 0}, in RREF.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().right_kernel()
    }

    /// Compares row spaces via canonical RREF.
    pub fn row_space_relation(&self, other: &FpMatrix) -> Result<SubspaceRelation> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "row spaces in F^{} and F^{}",
                self.cols, other.cols
            )));
        }
        let ra = self.rank();
        let rb = other.rank();
        let joint = FpMatrix::vstack(&[self, other])?.rank();
        Ok(match (joint == rb, joint == ra) {
            (true, true) => SubspaceRelation::Equal,
            (true, false) => SubspaceRelation::ASubspaceOfB,
            (false, true) => SubspaceRelation::BSubspaceOfA,
            (false, false) => SubspaceRelation::Incomparable,
        })
    }

    pub fn same_row_space(&self, other: &FpMatrix) -> bool {
        matches!(self.row_space_relation(other), Ok(SubspaceRelation::Equal))
    }

    /// True when the row space of `self` lies inside that of `other`.
    pub fn row_space_within(&self, other: &FpMatrix) -> bool {
        matches!(
            self.row_space_relation(other),
            Ok(SubspaceRelation::Equal | SubspaceRelation::ASubspaceOfB)
        )
    }

    /// Some alpha with alpha * self = target, or `None`.
    pub fn solve_left(&self, target: &FpVector) -> Result<Option<FpVector>> {
        if target.len() != self.cols {
            return Err(Error::Dimension(format!(
                "target of length {} for a matrix with {} columns",
                target.len(),
                self.cols
            )));
        }
        let f = self.field;
        // Solve self^T alpha^T = target^T via the augmented system.
        let t = self.transpose();
        let aug = FpMatrix::hstack(&[&t, &FpMatrix::column_matrix(target)])?;
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.rows) {
            return Ok(None);
        }
        let mut alpha = vec![0u32; self.rows];
        for (pi, &pc) in piv.iter().enumerate() {
            alpha[pc] = r.get(pi, self.rows);
        }
        Ok(Some(FpVector { field: f, entries: alpha }))
    }

    pub fn contains_in_row_space(&self, v: &FpVector) -> bool {
        matches!(self.solve_left(v), Ok(Some(_)))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Every element of the row space, in lexicographic coefficient order
    /// over an RREF basis, after a cap check.
    pub fn row_space_elements(&self, cap: u64) -> Result<Vec<FpVector>> {
        let basis = self.row_space_basis();
        let d = basis.rows();
        let count = self.field.count(d).unwrap_or(u64::MAX);
        if count > cap {
            return Err(Error::CapExceeded {
                what: "row-space enumeration",
                needed: count,
                cap,
            });
        }
        CoefficientIter::new(self.field, d)
            .map(|c| basis.left_mul_vec(&c))
            .collect()
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 {
            return write!(f, "(0x{} empty)", self.cols);
        }
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", join_digits(self.field, self.row(r)))?;
        }
        Ok(())
    }
}
