//! Linear block codes, the circular time axis and spans.

use std::fmt;
use std::str::FromStr;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::galois::{CoefficientIter, FpMatrix, FpVector, PrimeField};

/// Half-open circular interval (a, b] on the time axis {0, ..., n-1}.
///
/// (a, a] is empty and no interval covers the whole axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularInterval {
    a: usize,
    b: usize,
    n: usize,
}

impl CircularInterval {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        for index in [a, b] {
            if index >= n {
                return Err(Error::TimeIndex { index, n });
            }
        }
        Ok(Self { a, b, n })
    }

    pub fn start(&self) -> usize {
        self.a
    }

    pub fn end(&self) -> usize {
        self.b
    }

    pub fn axis_len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.a == self.b
    }

    pub fn contains(&self, j: usize) -> bool {
        let (a, b) = (self.a, self.b);
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => false,
            std::cmp::Ordering::Less => a < j && j <= b,
            std::cmp::Ordering::Greater => j > a || j <= b,
        }
    }

    /// Membership in the closed interval [a, b].
    pub fn closed_contains(&self, j: usize) -> bool {
        j == self.a || self.contains(j)
    }

    /// (a, b] is linear iff 0 is not a member.
    pub fn is_linear(&self) -> bool {
        !self.contains(0)
    }

    pub fn len(&self) -> usize {
        if self.a <= self.b {
            self.b - self.a
        } else {
            self.n - self.a + self.b
        }
    }

    /// Members in cyclic order a+1, a+2, ..., b.
    pub fn members(&self) -> Vec<usize> {
        (1..=self.len()).map(|d| (self.a + d) % self.n).collect()
    }

    /// I \ (a, b] = (b, a]; undefined for the empty interval.
    pub fn complement(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyInterval(self.a));
        }
        Ok(self.reversed())
    }

    /// (b, a], defined for every interval.
    pub fn reversed(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            n: self.n,
        }
    }

    /// (a - j, b - j], the span of the left-shifted vector.
    pub fn shift_left(&self, j: usize) -> Self {
        let j = j % self.n;
        Self {
            a: (self.a + self.n - j) % self.n,
            b: (self.b + self.n - j) % self.n,
            n: self.n,
        }
    }

    /// (a + j, b + j].
    pub fn shift_right(&self, j: usize) -> Self {
        self.shift_left(self.n - j % self.n)
    }

    /// 0/1 indicator vector of the members.
    pub fn indicator(&self) -> Vec<u8> {
        (0..self.n).map(|j| u8::from(self.contains(j))).collect()
    }

    /// True if this is a span of `c`: c_a != 0 != c_b and c vanishes outside [a, b].
    pub fn is_span_of(&self, c: &FpVector) -> bool {
        c.len() == self.n
            && c.get(self.a) != 0
            && c.get(self.b) != 0
            && (0..self.n).all(|j| self.closed_contains(j) || c.get(j) == 0)
    }

    /// Parses a single `(a,b]` token.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("span `{t}` must look like (a,b]")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("span `{t}` must look like (a,b]")))?;
        let a = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad start in `{t}`")))?;
        let b = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad end in `{t}`")))?;
        Self::new(a, b, n)
    }
}

impl fmt::Display for CircularInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}]", self.a, self.b)
    }
}

/// All spans of a nonzero vector, ordered by starting point.
///
/// Each nonzero position a starts exactly one span; its end is the previous
/// nonzero position in cyclic order.
pub fn spans_of(c: &FpVector) -> Result<Vec<CircularInterval>> {
    let n = c.len();
    let support: Vec<usize> = (0..n).filter(|&j| c.get(j) != 0).collect();
    if support.is_empty() {
        return Err(Error::ZeroVector);
    }
    let w = support.len();
    Ok((0..w)
        .map(|i| CircularInterval {
            a: support[i],
            b: support[(i + w - 1) % w],
            n,
        })
        .collect())
}

/// The unique linear span: first to last nonzero position.
pub fn linear_span(c: &FpVector) -> Result<CircularInterval> {
    let n = c.len();
    let first = (0..n).find(|&j| c.get(j) != 0).ok_or(Error::ZeroVector)?;
    let last = (0..n).rev().find(|&j| c.get(j) != 0).expect("nonzero");
    Ok(CircularInterval { a: first, b: last, n })
}

/// Full-rank parity check matrix H with G H^T = 0, rows in RREF.
pub fn parity_check(g: &FpMatrix) -> Result<FpMatrix> {
    let rank = g.rank();
    if rank != g.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: g.rows(),
        });
    }
    Ok(g.right_kernel())
}

/// Left cyclic shift of each row.
pub fn shift_rows(g: &FpMatrix, j: usize) -> FpMatrix {
    let rows: Vec<FpVector> = g.row_vectors().iter().map(|r| r.shift_left(j)).collect();
    FpMatrix::from_vectors(g.field(), g.cols(), &rows).expect("shape preserved")
}

/// A linear [n, k] code over GF(p) with generator G and parity check H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    g: FpMatrix,
    h: FpMatrix,
}

impl LinearCode {
    /// Builds the code generated by the rows of `g`, which must be independent.
    /// H is always recomputed.
    pub fn new(g: FpMatrix) -> Result<Self> {
        let h = parity_check(&g)?;
        Ok(Self { g, h })
    }

    /// The code spanned by `g`, keeping a maximal independent row subset
    /// (the RREF basis) when `g` is rank deficient.
    pub fn spanned_by(g: &FpMatrix) -> Self {
        Self::new(g.row_space_basis()).expect("RREF basis is independent")
    }

    pub fn from_rows(field: PrimeField, rows: &[&str]) -> Result<Self> {
        Self::new(FpMatrix::parse_rows(field, rows)?)
    }

    pub fn field(&self) -> PrimeField {
        self.g.field()
    }

    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn generator(&self) -> &FpMatrix {
        &self.g
    }

    pub fn parity_check(&self) -> &FpMatrix {
        &self.h
    }

    /// The dual code, generated by H.
    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.h.clone()).expect("H has full rank")
    }

    /// First identically-zero coordinate, if any.
    pub fn zero_coordinate(&self) -> Option<usize> {
        (0..self.n()).find(|&j| (0..self.k()).all(|r| self.g.get(r, j) == 0))
    }

    pub fn has_full_support(&self) -> bool {
        self.zero_coordinate().is_none()
    }

    pub fn require_full_support(&self) -> Result<()> {
        match self.zero_coordinate() {
            Some(j) => Err(Error::Support(j)),
            None => Ok(()),
        }
    }

    pub fn require_dual_full_support(&self) -> Result<()> {
        match self.dual().zero_coordinate() {
            Some(j) => Err(Error::DualSupport(j)),
            None => Ok(()),
        }
    }

    pub fn contains(&self, c: &FpVector) -> bool {
        c.len() == self.n()
            && c.field() == self.field()
            && (0..self.h.rows()).all(|r| self.h.row_vector(r).dot(c) == 0)
    }

    /// σ^j(C), generated by the shifted rows.
    pub fn shift(&self, j: usize) -> LinearCode {
        LinearCode::new(shift_rows(&self.g, j)).expect("shift preserves rank")
    }

    /// Same code (row-space equality).
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.n() == other.n() && self.g.same_row_space(&other.g)
    }

    /// Number of codewords q^k, checked against the cap.
    pub fn size_within(&self, caps: &Caps) -> Result<u64> {
        let count = self.field().count(self.k()).unwrap_or(u64::MAX);
        if count > caps.codewords {
            return Err(Error::CapExceeded {
                what: "codeword enumeration",
                needed: count,
                cap: caps.codewords,
            });
        }
        Ok(count)
    }

    /// All codewords in lexicographic order.
    pub fn codewords(&self, caps: &Caps) -> Result<Vec<FpVector>> {
        self.size_within(caps)?;
        let mut all = CoefficientIter::new(self.field(), self.k())
            .map(|alpha| self.g.left_mul_vec(&alpha))
            .collect::<Result<Vec<_>>>()?;
        all.sort();
        Ok(all)
    }

    /// Nonzero codewords having `iv` among their spans, lexicographically.
    pub fn codewords_with_span(&self, iv: &CircularInterval, caps: &Caps) -> Result<Vec<FpVector>> {
        Ok(self
            .codewords(caps)?
            .into_iter()
            .filter(|c| !c.is_zero() && iv.is_span_of(c))
            .collect())
    }
}

/// Parsed contents of a code file, before rank checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub field: PrimeField,
    pub generator: FpMatrix,
}

impl CodeFile {
    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn code(&self) -> Result<LinearCode> {
        LinearCode::new(self.generator.clone())
    }

    pub fn from_code(code: &LinearCode) -> Self {
        Self {
            field: code.field(),
            generator: code.generator().clone(),
        }
    }

    /// Text form: `q`, `n`, `k`, `G`, then k rows of whitespace-separated entries.
    pub fn emit(&self) -> String {
        let mut out = format!("q {}\nn {}\nk {}\nG\n", self.field.p(), self.n(), self.k());
        for r in 0..self.k() {
            let row: Vec<String> = self.generator.row(r).iter().map(|e| e.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for CodeFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut header = |key: &str| -> Result<u32> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
            let mut parts = line.split_whitespace();
            if parts.next() != Some(key) {
                return Err(Error::Parse(format!("expected `{key} <value>`, got `{line}`")));
            }
            parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad value in `{line}`")))
        };
        let q = header("q")?;
        let n = header("n")? as usize;
        let k = header("k")? as usize;
        let field = PrimeField::new(q)?;
        match lines.next() {
            Some("G") => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected `G` line, got `{}`",
                    other.unwrap_or("end of file")
                )))
            }
        }
        let mut rows = Vec::with_capacity(k);
        for r in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing generator row {}", r + 1)))?;
            let row: Vec<u32> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .ok()
                        .filter(|&v| v < q)
                        .ok_or_else(|| Error::Parse(format!("bad entry `{t}` in row {}", r + 1)))
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::Parse(format!("unexpected trailing line `{extra}`")));
        }
        Ok(Self {
            field,
            generator: FpMatrix::from_rows(field, n, &rows)?,
        })
    }
}
