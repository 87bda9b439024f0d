//! Minimal span generator matrices, characteristic pairs, span matrices and
//! KV state-complexity arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::caps::Caps;
use crate::code::{linear_span, shift_rows, CircularInterval, LinearCode};
use crate::error::{Error, Result};
use crate::galois::{FpMatrix, FpVector};

/// One span per generator row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanList {
    n: usize,
    spans: Vec<CircularInterval>,
}

impl SpanList {
    pub fn new(n: usize, spans: Vec<CircularInterval>) -> Result<Self> {
        if let Some(s) = spans.iter().find(|s| s.axis_len() != n) {
            return Err(Error::Dimension(format!("span {s} lives on an axis of length {}", s.axis_len())));
        }
        Ok(Self { n, spans })
    }

    /// Parses `(a,b],(c,d],...`; whitespace is ignored and the empty string yields no spans.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut spans = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let close = rest
                .find(']')
                .ok_or_else(|| Error::Parse(format!("unterminated span in `{text}`")))?;
            spans.push(CircularInterval::parse(&rest[..=close], n)?);
            rest = &rest[close + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        Self::new(n, spans)
    }

    pub fn axis_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.spans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn spans(&self) -> &[CircularInterval] {
        &self.spans
    }

    pub fn get(&self, l: usize) -> CircularInterval {
        self.spans[l]
    }

    pub fn iter(&self) -> impl Iterator<Item = &CircularInterval> {
        self.spans.iter()
    }

    pub fn select(&self, rows: &[usize]) -> SpanList {
        SpanList {
            n: self.n,
            spans: rows.iter().map(|&l| self.spans[l]).collect(),
        }
    }

    pub fn starts(&self) -> Vec<usize> {
        self.spans.iter().map(|s| s.start()).collect()
    }

    pub fn ends(&self) -> Vec<usize> {
        self.spans.iter().map(|s| s.end()).collect()
    }

    pub fn distinct_starts(&self) -> bool {
        self.starts().iter().all_unique()
    }

    pub fn distinct_ends(&self) -> bool {
        self.ends().iter().all_unique()
    }

    /// L_i: rows whose span contains time i.
    pub fn active_rows(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&l| self.spans[l].contains(i)).collect()
    }

    /// Each span (a,b] replaced by (b,a].
    pub fn reversed(&self) -> SpanList {
        SpanList {
            n: self.n,
            spans: self.spans.iter().map(|s| s.reversed()).collect(),
        }
    }

    /// (a-j, b-j] for every span.
    pub fn shift_left(&self, j: usize) -> SpanList {
        SpanList {
            n: self.n,
            spans: self.spans.iter().map(|s| s.shift_left(j)).collect(),
        }
    }

    /// Spans sorted, for comparisons up to ordering.
    pub fn sorted(&self) -> Vec<CircularInterval> {
        let mut v = self.spans.clone();
        v.sort();
        v
    }

    pub fn same_up_to_order(&self, other: &SpanList) -> bool {
        self.n == other.n && self.sorted() == other.sorted()
    }

    /// Each span must be a span of the corresponding row of `g`.
    pub fn check_against(&self, g: &FpMatrix) -> Result<()> {
        if g.rows() != self.len() {
            return Err(Error::SpanCount {
                expected: g.rows(),
                got: self.len(),
            });
        }
        if g.cols() != self.n {
            return Err(Error::Dimension(format!(
                "spans on an axis of length {} for a code of length {}",
                self.n,
                g.cols()
            )));
        }
        for (l, s) in self.spans.iter().enumerate() {
            if !s.is_span_of(&g.row_vector(l)) {
                return Err(Error::InvalidSpan {
                    row: l,
                    span: s.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for SpanList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spans.iter().join(","))
    }
}

/// Linear spans of every row.
fn row_linear_spans(g: &FpMatrix) -> Result<Vec<CircularInterval>> {
    g.row_vectors().iter().map(linear_span).collect()
}

/// Greedy MSGM: while two linear spans share a start (or an end), the row with
/// the longer span is reduced by the other; ties keep the lower row as pivot.
pub fn msgm(g: &FpMatrix) -> Result<(FpMatrix, SpanList)> {
    let rank = g.rank();
    if rank != g.rows() {
        return Err(Error::RankDeficient {
            rank,
            rows: g.rows(),
        });
    }
    let f = g.field();
    let mut rows = g.row_vectors();
    loop {
        let spans = row_linear_spans(&FpMatrix::from_vectors(f, g.cols(), &rows)?)?;
        let conflict = (0..rows.len()).tuple_combinations().find_map(|(i, j)| {
            if spans[i].start() == spans[j].start() {
                Some((i, j, spans[i].start()))
            } else if spans[i].end() == spans[j].end() {
                Some((i, j, spans[i].end()))
            } else {
                None
            }
        });
        let Some((i, j, pos)) = conflict else {
            let m = FpMatrix::from_vectors(f, g.cols(), &rows)?;
            return Ok((m, SpanList::new(g.cols(), spans)?));
        };
        let (pivot, target) = if spans[j].len() >= spans[i].len() { (i, j) } else { (j, i) };
        let factor = f.mul(rows[target].get(pos), f.inv(rows[pivot].get(pos)).expect("nonzero"));
        rows[target] = rows[target].sub(&rows[pivot].scale(factor));
    }
}

/// Characteristic pair (X, T): n generators, one per starting point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicPair {
    x: FpMatrix,
    t: SpanList,
    k: usize,
    lex_fallback: bool,
}

impl CharacteristicPair {
    /// Validates the four defining properties against `code`.
    pub fn new(code: &LinearCode, x: FpMatrix, t: SpanList) -> Result<Self> {
        let pair = Self {
            x,
            t,
            k: code.k(),
            lex_fallback: false,
        };
        pair.validate(code)?;
        Ok(pair)
    }

    pub fn matrix(&self) -> &FpMatrix {
        &self.x
    }

    pub fn spans(&self) -> &SpanList {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.x.cols()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn row(&self, l: usize) -> FpVector {
        self.x.row_vector(l)
    }

    /// True when the codeword cap prevented the lexicographic search and the
    /// MSGM rows were kept instead.
    pub fn used_msgm_fallback(&self) -> bool {
        self.lex_fallback
    }

    pub fn span_matrix(&self) -> SpanMatrix {
        span_matrix(&self.t)
    }

    /// Rows of X with linear spans.
    pub fn linear_rows(&self) -> Vec<usize> {
        (0..self.t.len()).filter(|&l| self.t.get(l).is_linear()).collect()
    }

    /// True if the selected rows of X are linearly independent.
    pub fn independent(&self, selection: &[usize]) -> bool {
        self.x.select_rows(selection).rank() == selection.len()
    }

    /// All k-subsets whose rows are independent, in lexicographic index order.
    pub fn independent_selections(&self) -> Vec<Vec<usize>> {
        (0..self.n())
            .combinations(self.k)
            .filter(|s| self.independent(s))
            .collect()
    }

    /// Row index carrying a given span, if present.
    pub fn row_with_span(&self, iv: &CircularInterval) -> Option<usize> {
        self.t.iter().position(|s| s == iv)
    }

    fn validate(&self, code: &LinearCode) -> Result<()> {
        let n = code.n();
        let bad = |why: &str| Err(Error::NotCharacteristic(why.to_string()));
        if self.x.rows() != n || self.x.cols() != n || self.t.len() != n {
            return bad("X must be n x n with n spans");
        }
        if !self.x.same_row_space(code.generator()) {
            return bad("row space of X differs from the code");
        }
        self.t.check_against(&self.x)?;
        if !self.t.distinct_starts() {
            return bad("starting points are not distinct");
        }
        if !self.t.distinct_ends() {
            return bad("end points are not distinct");
        }
        if (0..n).any(|j| self.t.active_rows(j).len() != n - code.k()) {
            return bad("some time is not covered by exactly n-k spans");
        }
        Ok(())
    }
}

/// Characteristic span list from the shifted MSGMs, ordered by starting point.
pub fn characteristic_spans(code: &LinearCode) -> Result<SpanList> {
    code.require_full_support()?;
    let n = code.n();
    let mut by_start: BTreeMap<usize, CircularInterval> = BTreeMap::new();
    for j in 0..n {
        let (_, spans) = msgm(&shift_rows(code.generator(), j))?;
        for s in spans.iter().map(|s| s.shift_right(j)) {
            if let Some(prev) = by_start.insert(s.start(), s) {
                if prev != s {
                    return Err(Error::NotCharacteristic(format!(
                        "shifted MSGMs disagree at start {}: {prev} vs {s}",
                        s.start()
                    )));
                }
            }
        }
    }
    if by_start.len() != n {
        return Err(Error::SpanCount {
            expected: n,
            got: by_start.len(),
        });
    }
    SpanList::new(n, by_start.into_values().collect())
}

/// MSGM rows for each characteristic span, shifted back; used when the
/// codeword cap prevents brute force.
fn msgm_rows(code: &LinearCode, t: &SpanList) -> Result<Vec<FpVector>> {
    let n = code.n();
    let mut found: BTreeMap<CircularInterval, FpVector> = BTreeMap::new();
    for j in 0..n {
        let (m, spans) = msgm(&shift_rows(code.generator(), j))?;
        for (r, s) in spans.iter().enumerate() {
            found
                .entry(s.shift_right(j))
                .or_insert_with(|| m.row_vector(r).shift_left(n - j));
        }
    }
    Ok(t.iter().map(|s| found[s].clone()).collect())
}

/// Codewords with span `iv`, keeping the lexicographically first member of each
/// class of scalar multiples.
fn span_candidates(code: &LinearCode, iv: &CircularInterval, caps: &Caps) -> Result<Vec<FpVector>> {
    let words = code.codewords_with_span(iv, caps)?;
    let f = code.field();
    let mut out: Vec<FpVector> = Vec::new();
    for w in words {
        let duplicate = out.iter().any(|c| {
            let ratio = f.mul(w.get(iv.start()), f.inv(c.get(iv.start())).expect("nonzero"));
            c.scale(ratio) == w
        });
        if !duplicate {
            out.push(w);
        }
    }
    Ok(out)
}

/// Default characteristic pair: rows ordered by starting point, each the
/// lexicographically first codeword attaining its span.
pub fn characteristic_pair(code: &LinearCode, caps: &Caps) -> Result<CharacteristicPair> {
    let t = characteristic_spans(code)?;
    let (rows, lex_fallback) = match code.size_within(caps) {
        Ok(_) => {
            let rows = t
                .iter()
                .map(|s| Ok(span_candidates(code, s, caps)?.remove(0)))
                .collect::<Result<Vec<_>>>()?;
            (rows, false)
        }
        Err(_) => (msgm_rows(code, &t)?, true),
    };
    let x = FpMatrix::from_vectors(code.field(), code.n(), &rows)?;
    let mut pair = CharacteristicPair::new(code, x, t)?;
    pair.lex_fallback = lex_fallback;
    Ok(pair)
}

/// Result of enumerating characteristic matrices.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub pairs: Vec<CharacteristicPair>,
    /// Size of the full Cartesian product.
    pub total: u64,
    pub truncated: bool,
}

/// Candidate rows per characteristic span (up to scaling).
pub fn span_candidate_sets(code: &LinearCode, caps: &Caps) -> Result<(SpanList, Vec<Vec<FpVector>>)> {
    let t = characteristic_spans(code)?;
    let sets = t
        .iter()
        .map(|s| span_candidates(code, s, caps))
        .collect::<Result<Vec<_>>>()?;
    Ok((t, sets))
}

/// Every characteristic matrix (rows up to scaling), as the Cartesian product
/// of per-span candidates in lexicographic order, truncated at `caps.matrices`.
pub fn enumerate_characteristic_matrices(code: &LinearCode, caps: &Caps) -> Result<Enumeration> {
    let (t, sets) = span_candidate_sets(code, caps)?;
    let total = sets
        .iter()
        .try_fold(1u64, |acc, s| acc.checked_mul(s.len() as u64))
        .unwrap_or(u64::MAX);
    let mut pairs = Vec::new();
    for choice in sets.iter().map(|s| s.iter()).multi_cartesian_product() {
        if pairs.len() as u64 >= caps.matrices {
            break;
        }
        let rows: Vec<FpVector> = choice.into_iter().cloned().collect();
        let x = FpMatrix::from_vectors(code.field(), code.n(), &rows)?;
        pairs.push(CharacteristicPair::new(code, x, t.clone())?);
    }
    Ok(Enumeration {
        truncated: (pairs.len() as u64) < total,
        pairs,
        total,
    })
}

/// 0/1 indicator matrix of a span list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanMatrix {
    entries: Vec<Vec<u8>>,
    n: usize,
}

impl SpanMatrix {
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }

    pub fn column_sums(&self) -> Vec<usize> {
        (0..self.n)
            .map(|j| self.entries.iter().map(|r| r[j] as usize).sum())
            .collect()
    }

    /// True if every column has exactly n-k ones.
    pub fn is_characteristic_for(&self, k: usize) -> bool {
        self.entries.len() == self.n && self.column_sums().iter().all(|&c| c + k == self.n)
    }

    /// (v_1, ..., v_n) S for a 0/1 selection vector with `k` ones.
    pub fn kv_scp(&self, selection: &[u8], k: usize) -> Result<Vec<usize>> {
        if selection.len() != self.entries.len() {
            return Err(Error::Dimension(format!(
                "selection of length {} for {} spans",
                selection.len(),
                self.entries.len()
            )));
        }
        let weight = selection.iter().filter(|&&v| v != 0).count();
        if weight != k || selection.iter().any(|&v| v > 1) {
            return Err(Error::SelectionSize {
                expected: k,
                got: weight,
            });
        }
        Ok((0..self.n)
            .map(|j| {
                selection
                    .iter()
                    .zip(&self.entries)
                    .map(|(&v, r)| (v * r[j]) as usize)
                    .sum()
            })
            .collect())
    }

    /// kv_scp for a list of 0-based row indices.
    pub fn kv_scp_rows(&self, rows: &[usize], k: usize) -> Result<Vec<usize>> {
        let mut v = vec![0u8; self.entries.len()];
        for &l in rows {
            if l >= v.len() {
                return Err(Error::RowIndex(l));
            }
            v[l] = 1;
        }
        self.kv_scp(&v, k)
    }
}

impl fmt::Display for SpanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

pub fn span_matrix(t: &SpanList) -> SpanMatrix {
    SpanMatrix {
        entries: t.iter().map(|s| s.indicator()).collect(),
        n: t.axis_len(),
    }
}

/// Span list of the dual characteristic pair: (a,b] becomes (b,a].
pub fn dual_span_list(t: &SpanList) -> SpanList {
    t.reversed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::PrimeField;
    use proptest::prelude::*;

    fn gf2() -> PrimeField {
        PrimeField::binary()
    }

    fn kv4() -> LinearCode {
        LinearCode::from_rows(gf2(), &["1100", "0111"]).unwrap()
    }

    fn spans(text: &str, n: usize) -> SpanList {
        SpanList::parse(text, n).unwrap()
    }

    #[test]
    fn span_list_text_round_trip() {
        let t = spans("(0,1], (1,3],(2,0],(3,2]", 4);
        assert_eq!(t.to_string(), "(0,1],(1,3],(2,0],(3,2]");
        assert!(SpanList::parse("(0,1],(1,4]", 4).is_err());
        assert!(SpanList::parse("(0,1", 4).is_err());
        assert!(SpanList::parse("", 4).unwrap().is_empty());
    }

    #[test]
    fn msgm_small_examples() {
        let g = FpMatrix::parse_rows(gf2(), &["101", "110"]).unwrap();
        let (m, s) = msgm(&g).unwrap();
        let mut got: Vec<(String, String)> = (0..2)
            .map(|r| (m.row_vector(r).digits(), s.get(r).to_string()))
            .collect();
        got.sort();
        assert_eq!(
            got,
            vec![("011".into(), "(1,2]".into()), ("110".into(), "(0,1]".into())]
        );
        let (m2, s2) = msgm(&m).unwrap();
        assert_eq!((m2, s2), (m, s));
        let id = FpMatrix::identity(PrimeField::new(3).unwrap(), 3);
        let (m, s) = msgm(&id).unwrap();
        assert_eq!(m, id);
        assert_eq!(s.to_string(), "(0,0],(1,1],(2,2]");
    }

    #[test]
    fn kv4_characteristic_pair() {
        let pair = characteristic_pair(&kv4(), &Caps::default()).unwrap();
        assert_eq!(pair.spans().to_string(), "(0,1],(1,3],(2,0],(3,2]");
        assert_eq!(pair.matrix().to_string(), "1100\n0111\n1011\n0111");
        assert_eq!(pair.span_matrix().to_string(), "0100\n0011\n1001\n1110");
        assert!(!pair.used_msgm_fallback());
        let all = enumerate_characteristic_matrices(&kv4(), &Caps::default()).unwrap();
        assert_eq!(all.pairs.len(), 2);
        assert!(!all.truncated);
        assert_eq!(all.pairs[0], pair);
        assert_eq!(all.pairs[1].row(3).digits(), "1011");
    }

    #[test]
    fn kv4_scp_arithmetic() {
        let s = span_matrix(&spans("(0,1],(1,3],(2,0],(3,2]", 4));
        assert_eq!(s.kv_scp(&[0, 0, 1, 1], 2).unwrap(), vec![2, 1, 1, 1]);
        assert_eq!(s.kv_scp(&[1, 1, 0, 0], 2).unwrap(), vec![0, 1, 1, 1]);
        assert!(matches!(s.kv_scp(&[1, 1, 1, 0], 2), Err(Error::SelectionSize { .. })));
        assert_eq!(s.kv_scp(&[0, 0, 0, 0], 0).unwrap(), vec![0; 4]);
    }

    #[test]
    fn bcjr3_unique_pair() {
        let code = LinearCode::from_rows(gf2(), &["101", "110"]).unwrap();
        let all = enumerate_characteristic_matrices(&code, &Caps::default()).unwrap();
        assert_eq!(all.pairs.len(), 1);
        let pair = &all.pairs[0];
        let mut rows: Vec<(String, String)> = (0..3)
            .map(|l| (pair.row(l).digits(), pair.spans().get(l).to_string()))
            .collect();
        rows.sort();
        assert_eq!(
            rows,
            vec![
                ("011".into(), "(1,2]".into()),
                ("101".into(), "(2,0]".into()),
                ("110".into(), "(0,1]".into()),
            ]
        );
    }

    #[test]
    fn nonchi_span_list_and_matrix() {
        let code = LinearCode::from_rows(gf2(), &["01110", "10010", "01101"]).unwrap();
        let t = characteristic_spans(&code).unwrap();
        assert!(t.same_up_to_order(&spans("(0,2],(1,3],(3,4],(4,0],(2,1]", 5)));
        let s = span_matrix(&spans("(0,2],(1,3],(3,4],(4,0],(2,1]", 5));
        assert_eq!(s.to_string(), "01100\n00110\n00001\n10000\n11011");
        assert!(s.is_characteristic_for(3));
    }

    #[test]
    fn kv4_dual_spans() {
        let t = spans("(0,1],(1,3],(2,0],(3,2]", 4);
        let d = dual_span_list(&t);
        assert_eq!(d.to_string(), "(1,0],(3,1],(0,2],(2,3]");
        assert_eq!(dual_span_list(&d), t);
        assert_eq!(dual_span_list(&spans("(0,2]", 3)).to_string(), "(2,0]");
        let dual = kv4().dual();
        assert!(characteristic_spans(&dual).unwrap().same_up_to_order(&d));
    }

    #[test]
    fn kv4_dual_matrix_count_matches_brute_force() {
        let dual = kv4().dual();
        let caps = Caps::default();
        let brute: usize = dual_span_list(&characteristic_spans(&kv4()).unwrap())
            .iter()
            .map(|s| {
                dual.codewords(&caps)
                    .unwrap()
                    .iter()
                    .filter(|c| !c.is_zero() && s.is_span_of(c))
                    .count()
            })
            .product();
        let all = enumerate_characteristic_matrices(&dual, &caps).unwrap();
        assert_eq!(all.pairs.len(), brute);
        assert_eq!(brute, 2);
    }

    #[test]
    fn single_empty_span_is_zero_row() {
        let s = span_matrix(&spans("(2,2]", 4));
        assert_eq!(s.rows()[0], vec![0, 0, 0, 0]);
    }

    #[test]
    fn support_is_required() {
        let code = LinearCode::from_rows(gf2(), &["110"]).unwrap();
        assert_eq!(characteristic_spans(&code), Err(Error::Support(2)));
    }

    #[test]
    fn ternary_candidates_are_up_to_scaling() {
        let f = PrimeField::new(3).unwrap();
        let code = LinearCode::from_rows(f, &["120", "011"]).unwrap();
        let caps = Caps::default();
        let all = enumerate_characteristic_matrices(&code, &caps).unwrap();
        let pair = characteristic_pair(&code, &caps).unwrap();
        assert_eq!(all.pairs[0], pair);
        for p in &all.pairs {
            assert!(p.spans().same_up_to_order(pair.spans()));
        }
    }

    #[test]
    fn cap_fallback_uses_msgm_rows() {
        let code = kv4();
        let pair = characteristic_pair(&code, &Caps::uniform(2)).unwrap();
        assert!(pair.used_msgm_fallback());
        assert_eq!(pair.spans().to_string(), "(0,1],(1,3],(2,0],(3,2]");
    }

    fn arb_code() -> impl Strategy<Value = LinearCode> {
        (prop::sample::select(vec![2u32, 3]), 2usize..=6)
            .prop_flat_map(|(p, n)| {
                (
                    Just(p),
                    Just(n),
                    prop::collection::vec(prop::collection::vec(0..p, n), 1..n),
                )
            })
            .prop_filter_map("full support", |(p, n, rows)| {
                let f = PrimeField::new(p).unwrap();
                let g = FpMatrix::from_rows(f, n, &rows).unwrap().row_space_basis();
                let code = LinearCode::new(g).ok()?;
                (code.k() > 0 && code.has_full_support()).then_some(code)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn msgm_has_distinct_linear_endpoints(code in arb_code()) {
            let (m, s) = msgm(code.generator()).unwrap();
            prop_assert!(m.same_row_space(code.generator()));
            prop_assert!(s.distinct_starts() && s.distinct_ends());
            s.check_against(&m).unwrap();
            prop_assert!(s.iter().all(|x| x.is_linear()));
        }

        #[test]
        fn enumerated_pairs_share_the_span_list(code in arb_code()) {
            let all = enumerate_characteristic_matrices(&code, &Caps::default()).unwrap();
            let first = all.pairs[0].spans().clone();
            for p in &all.pairs {
                prop_assert!(p.spans().same_up_to_order(&first));
                prop_assert_eq!(p.linear_rows().len(), code.k());
                let lin = p.linear_rows();
                let s = p.spans().select(&lin);
                prop_assert!(s.distinct_starts() && s.distinct_ends());
                prop_assert_eq!(p.matrix().select_rows(&lin).rank(), code.k());
            }
        }

        #[test]
        fn spans_follow_cyclic_shift(code in arb_code(), j in 0usize..6) {
            let t = characteristic_spans(&code).unwrap();
            let shifted = characteristic_spans(&code.shift(j)).unwrap();
            prop_assert!(shifted.same_up_to_order(&t.shift_left(j)));
        }

        #[test]
        fn kv_scp_respects_wolf_bound(code in arb_code()) {
            let pair = characteristic_pair(&code, &Caps::default()).unwrap();
            let s = pair.span_matrix();
            let (n, k) = (code.n(), code.k());
            for sel in pair.independent_selections() {
                let scp = s.kv_scp_rows(&sel, k).unwrap();
                prop_assert!(scp.iter().all(|&x| x <= k.min(n - k)));
            }
        }

        #[test]
        fn dual_span_list_is_dual_characteristic(code in arb_code()) {
            let dual = code.dual();
            prop_assume!(dual.k() > 0 && dual.has_full_support());
            let t = characteristic_spans(&code).unwrap();
            prop_assert!(characteristic_spans(&dual).unwrap().same_up_to_order(&dual_span_list(&t)));
        }
    }
}
