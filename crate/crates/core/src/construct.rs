//! Trellis builders: elementary, product and KV trellises, span-based BCJR
//! trellises, complexity formulas, the path-to-zero construction and the
//! quotient merge from product to BCJR trellis.

use crate::charpair::{CharacteristicPair, SpanList};
use crate::code::CircularInterval;
use crate::error::{Error, Result};
use crate::galois::{FpMatrix, FpVector};
use crate::trellis::{IsoVerdict, MatrixTrellis};
use crate::caps::Caps;

/// Elementary trellis of a (codeword, span) pair: coefficient space F,
/// A_i = [1] for i in the span and [0] otherwise, label c_i.
///
/// With `generalized`, `span` only has to cover the support of `c` (its
/// endpoints may carry zeros); such trellises are mergeable in general.
pub fn elementary_trellis(c: &FpVector, span: &CircularInterval, generalized: bool) -> Result<MatrixTrellis> {
    let n = c.len();
    let valid = if generalized {
        span.axis_len() == n && (0..n).all(|j| span.closed_contains(j) || c.get(j) == 0)
    } else {
        span.is_span_of(c)
    };
    if !valid {
        return Err(Error::InvalidSpan {
            row: 0,
            span: span.to_string(),
        });
    }
    let f = c.field();
    let vertex = (0..n)
        .map(|i| FpMatrix::new(f, 1, 1, vec![u32::from(span.contains(i))]).expect("1x1"))
        .collect();
    let labels = FpMatrix::from_vectors(f, n, std::slice::from_ref(c))?;
    MatrixTrellis::new(vertex, labels)
}

/// Product of trellises of equal depth: block-diagonal vertex matrices and
/// stacked label rows.
pub fn product(factors: &[MatrixTrellis]) -> Result<MatrixTrellis> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Dimension("product of no trellises".into()))?;
    let (n, f) = (first.n(), first.field());
    if factors.iter().any(|t| t.n() != n || t.field() != f) {
        return Err(Error::Dimension("factors differ in depth or field".into()));
    }
    let m: usize = factors.iter().map(|t| t.m()).sum();
    let mut vertex = Vec::with_capacity(n);
    for i in 0..n {
        let cols: usize = factors.iter().map(|t| t.vertex_matrix(i).cols()).sum();
        let mut a = FpMatrix::zeros(f, m, cols);
        let (mut r0, mut c0) = (0, 0);
        for t in factors {
            let b = t.vertex_matrix(i);
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    a.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        vertex.push(a);
    }
    let label_parts: Vec<&FpMatrix> = factors.iter().map(|t| t.label_matrix()).collect();
    MatrixTrellis::new(vertex, FpMatrix::vstack(&label_parts)?)
}

/// M_i = diag(mu_i^1, ..., mu_i^k) with mu_i^l = 1 iff i in (a_l, b_l].
pub fn product_vertex_matrix(spans: &SpanList, i: usize, field: crate::galois::PrimeField) -> FpMatrix {
    let k = spans.len();
    let mut m = FpMatrix::zeros(field, k, k);
    for (l, s) in spans.iter().enumerate() {
        if s.contains(i) {
            m.set(l, l, 1);
        }
    }
    m
}

/// Product trellis T_{G,S}; the rows of G need not be independent.
pub fn product_trellis(g: &FpMatrix, spans: &SpanList) -> Result<MatrixTrellis> {
    spans.check_against(g)?;
    let vertex = (0..g.cols())
        .map(|i| product_vertex_matrix(spans, i, g.field()))
        .collect();
    MatrixTrellis::new(vertex, g.clone())
}

/// KV-trellis of the selected (0-based) rows of a characteristic matrix.
pub fn kv_trellis(pair: &CharacteristicPair, selection: &[usize]) -> Result<MatrixTrellis> {
    if selection.len() != pair.k() {
        return Err(Error::SelectionSize {
            expected: pair.k(),
            got: selection.len(),
        });
    }
    if let Some(&l) = selection.iter().find(|&&l| l >= pair.n()) {
        return Err(Error::RowIndex(l));
    }
    if !pair.independent(selection) {
        return Err(Error::DependentRows(selection.to_vec()));
    }
    product_trellis(&pair.matrix().select_rows(selection), &pair.spans().select(selection))
}

/// Complexity profiles predicted from a span list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaProfile {
    /// s_i = |L_i|.
    pub scp: Vec<usize>,
    /// e_i = s_i + [i in A], valid when the starting points are distinct.
    pub ecp_from_starts: Option<Vec<usize>>,
    /// e_i = s_{i+1} + [i in B], valid when the end points are distinct.
    pub ecp_from_ends: Option<Vec<usize>>,
    /// The SCP recurrence through A \ B and B \ A, checked when both apply.
    pub recurrence_holds: Option<bool>,
}

pub fn scp_ecp_formulas(spans: &SpanList) -> FormulaProfile {
    let n = spans.axis_len();
    let scp: Vec<usize> = (0..n).map(|i| spans.active_rows(i).len()).collect();
    let starts = spans.starts();
    let ends = spans.ends();
    let in_a = |i: usize| starts.contains(&i);
    let in_b = |i: usize| ends.contains(&i);
    let ecp_from_starts = spans
        .distinct_starts()
        .then(|| (0..n).map(|i| scp[i] + usize::from(in_a(i))).collect());
    let ecp_from_ends = spans
        .distinct_ends()
        .then(|| (0..n).map(|i| scp[(i + 1) % n] + usize::from(in_b(i))).collect());
    let recurrence_holds = (spans.distinct_starts() && spans.distinct_ends()).then(|| {
        (0..n).all(|i| {
            let expected = match (in_a(i), in_b(i)) {
                (true, false) => scp[i] + 1,
                (false, true) => scp[i].wrapping_sub(1),
                _ => scp[i],
            };
            scp[(i + 1) % n] == expected
        })
    });
    FormulaProfile {
        scp,
        ecp_from_starts,
        ecp_from_ends,
        recurrence_holds,
    }
}

/// Span-based displacement: row l is sum_{j = a_l}^{n-1} g_{lj} H_j, with H_j
/// the j-th column of H.
pub fn bcjr_displacement(g: &FpMatrix, h: &FpMatrix, spans: &SpanList) -> Result<FpMatrix> {
    if !g.mul(&h.transpose())?.is_zero() {
        return Err(Error::NotOrthogonal);
    }
    spans.check_against(g)?;
    let f = g.field();
    let r = h.rows();
    let mut d = FpMatrix::zeros(f, g.rows(), r);
    for (l, s) in spans.iter().enumerate() {
        for j in s.start()..g.cols() {
            let coef = g.get(l, j);
            if coef == 0 {
                continue;
            }
            for c in 0..r {
                d.set(l, c, f.add(d.get(l, c), f.mul(coef, h.get(c, j))));
            }
        }
        debug_assert!(
            !s.is_linear() || d.row(l).iter().all(|&x| x == 0),
            "linear span must give a zero displacement row"
        );
    }
    Ok(d)
}

/// BCJR trellis T_(G,H,D) with its construction data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcjrTrellis {
    g: FpMatrix,
    h: FpMatrix,
    d: FpMatrix,
    trellis: MatrixTrellis,
}

impl BcjrTrellis {
    pub fn generator(&self) -> &FpMatrix {
        &self.g
    }

    pub fn parity_check(&self) -> &FpMatrix {
        &self.h
    }

    pub fn displacement(&self) -> &FpMatrix {
        &self.d
    }

    pub fn trellis(&self) -> &MatrixTrellis {
        &self.trellis
    }

    pub fn into_trellis(self) -> MatrixTrellis {
        self.trellis
    }

    /// N_i for i in 0..n.
    pub fn vertex_matrix(&self, i: usize) -> &FpMatrix {
        self.trellis.vertex_matrix(i)
    }

    /// True when the rows of G are dependent; one-to-one guarantees are void.
    pub fn rank_deficient(&self) -> bool {
        self.g.rank() < self.g.rows()
    }
}

/// N_0 = D and N_i = N_{i-1} + G_{i-1} H_{i-1}; fails unless N_n = N_0.
pub fn bcjr_trellis(g: &FpMatrix, h: &FpMatrix, d: &FpMatrix) -> Result<BcjrTrellis> {
    if g.cols() != h.cols() || d.rows() != g.rows() || d.cols() != h.rows() {
        return Err(Error::Dimension(format!(
            "G {}x{}, H {}x{}, D {}x{}",
            g.rows(),
            g.cols(),
            h.rows(),
            h.cols(),
            d.rows(),
            d.cols()
        )));
    }
    if !g.mul(&h.transpose())?.is_zero() {
        return Err(Error::NotOrthogonal);
    }
    let n = g.cols();
    let mut vertex = Vec::with_capacity(n);
    let mut current = d.clone();
    for i in 0..n {
        vertex.push(current.clone());
        let step = g.select_cols(&[i]).mul(&h.select_cols(&[i]).transpose())?;
        current = current.add(&step)?;
    }
    if current != *d {
        return Err(Error::Closure);
    }
    Ok(BcjrTrellis {
        g: g.clone(),
        h: h.clone(),
        d: d.clone(),
        trellis: MatrixTrellis::new(vertex, g.clone())?,
    })
}

/// T_(G,H,S): H is the RREF kernel basis of G and D is span-based.
pub fn span_bcjr(g: &FpMatrix, spans: &SpanList) -> Result<BcjrTrellis> {
    let h = g.right_kernel();
    let d = bcjr_displacement(g, &h, spans)?;
    bcjr_trellis(g, &h, &d)
}

/// (time, row) pairs where row l of A_i is nonzero although i is outside
/// the span of row l.
pub fn zero_row_violations(t: &MatrixTrellis, spans: &SpanList) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..t.n() {
        for l in 0..t.m() {
            if !spans.get(l).contains(i) && !t.vertex_matrix(i).is_zero_row(l) {
                out.push((i, l));
            }
        }
    }
    out
}

/// Path from v in V_0 to the zero vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathToZero {
    /// alpha^(0), ..., alpha^(n-1).
    pub alphas: Vec<FpVector>,
    /// Vertices at times 0..n, the last one back in V_0.
    pub vertices: Vec<FpVector>,
    pub labels: FpVector,
}

/// Follows the constructive path lemma. L_i comes from `spans` when given,
/// otherwise from the nonzero rows of A_i. Requires rows outside L_i to be
/// zero and the L_i to have empty intersection.
pub fn path_to_zero(t: &MatrixTrellis, spans: Option<&SpanList>, v: &FpVector) -> Result<PathToZero> {
    let (n, m, f) = (t.n(), t.m(), t.field());
    let active: Vec<Vec<usize>> = match spans {
        Some(s) => {
            if s.len() != m {
                return Err(Error::SpanCount {
                    expected: m,
                    got: s.len(),
                });
            }
            if let Some((i, l)) = zero_row_violations(t, s).first() {
                return Err(Error::Precondition(format!(
                    "row {l} of the vertex matrix at time {i} is nonzero outside its span"
                )));
            }
            (0..n).map(|i| s.active_rows(i)).collect()
        }
        None => (0..n)
            .map(|i| (0..m).filter(|&l| !t.vertex_matrix(i).is_zero_row(l)).collect())
            .collect(),
    };
    let common: Vec<usize> = (0..m)
        .filter(|l| active.iter().all(|a| a.contains(l)))
        .collect();
    if !common.is_empty() {
        return Err(Error::Precondition(format!(
            "rows {common:?} are active at every time, so no path to zero is guaranteed"
        )));
    }
    let a0 = t.vertex_matrix(0);
    let restricted = a0.select_rows(&active[0]);
    let partial = restricted
        .solve_left(v)?
        .ok_or_else(|| Error::Precondition(format!("{v} is not a vertex at time 0")))?;
    let mut alpha = vec![0u32; m];
    for (&l, &x) in active[0].iter().zip(partial.entries()) {
        alpha[l] = x;
    }
    let mut alphas = vec![FpVector::new(f, alpha.clone())];
    let mut keep: Vec<bool> = (0..m).map(|l| active[0].contains(&l)).collect();
    for act in active.iter().skip(1) {
        for l in 0..m {
            keep[l] &= act.contains(&l);
            if !keep[l] {
                alpha[l] = 0;
            }
        }
        alphas.push(FpVector::new(f, alpha.clone()));
    }
    let mut vertices: Vec<FpVector> = (0..n)
        .map(|i| t.vertex_matrix(i).left_mul_vec(alphas[i].entries()))
        .collect::<Result<_>>()?;
    vertices.push(a0.left_mul_vec(alphas[n - 1].entries())?);
    let labels = FpVector::new(
        f,
        (0..n).map(|i| alphas[i].dot(&t.label_column(i))).collect(),
    );
    Ok(PathToZero {
        alphas,
        vertices,
        labels,
    })
}

/// Checks the path conditions alpha^(i) A_{i+1} = alpha^(i+1) A_{i+1}
/// for i < n-1; `Err(NotAPath(i))` names the first failure.
pub fn check_path(t: &MatrixTrellis, alphas: &[FpVector]) -> Result<()> {
    let n = t.n();
    if alphas.len() != n || alphas.iter().any(|a| a.len() != t.m()) {
        return Err(Error::Dimension("need n coefficient vectors of length m".into()));
    }
    for i in 0..n - 1 {
        let a = t.vertex_matrix(i + 1);
        if a.left_mul_vec(alphas[i].entries())? != a.left_mul_vec(alphas[i + 1].entries())? {
            return Err(Error::NotAPath(i));
        }
    }
    Ok(())
}

/// For a path in a BCJR trellis: the label sequence is a codeword exactly
/// when the path closes, alpha^(n-1) N_0 = alpha^(0) N_0.
pub fn cycle_criterion(b: &BcjrTrellis, alphas: &[FpVector]) -> Result<bool> {
    let t = b.trellis();
    check_path(t, alphas)?;
    let n = t.n();
    let labels = FpVector::new(
        t.field(),
        (0..n).map(|i| alphas[i].dot(&t.label_column(i))).collect(),
    );
    let h = b.parity_check();
    let in_code = (0..h.rows()).all(|r| h.row_vector(r).dot(&labels) == 0);
    let n0 = b.displacement();
    let closes = n0.left_mul_vec(alphas[n - 1].entries())? == n0.left_mul_vec(alphas[0].entries())?;
    if in_code != closes {
        return Err(Error::Precondition(
            "codeword test and closing test disagree; the trellis data is inconsistent".into(),
        ));
    }
    Ok(in_code)
}

/// Quotient merge of T_{G,S} onto T_(G,H,S).
#[derive(Clone, Debug)]
pub struct MergeReport {
    /// W_i = W'_i M_i, with ker M_i (+) W'_i = ker N_i.
    pub w: Vec<FpMatrix>,
    pub product: MatrixTrellis,
    pub quotient: MatrixTrellis,
    pub bcjr: BcjrTrellis,
    /// alpha M_i + W_i -> alpha N_i is well defined and bijective for all i.
    pub coefficient_map_ok: bool,
    pub isomorphic: IsoVerdict,
}

pub fn merge_product_to_bcjr(g: &FpMatrix, spans: &SpanList, caps: &Caps) -> Result<MergeReport> {
    let product = product_trellis(g, spans)?;
    let bcjr = span_bcjr(g, spans)?;
    let mut quotient = product.clone();
    let mut w = Vec::with_capacity(g.cols());
    for i in 0..g.cols() {
        let m = product.vertex_matrix(i);
        let km = m.left_kernel();
        let kn = bcjr.vertex_matrix(i).left_kernel();
        if !km.row_space_within(&kn) {
            return Err(Error::Precondition(format!(
                "ker M_{i} is not contained in ker N_{i}"
            )));
        }
        let mut basis = km.clone();
        let mut extra = FpMatrix::zeros(g.field(), 0, g.rows());
        for r in 0..kn.rows() {
            let cand = FpMatrix::vstack(&[&basis, &kn.select_rows(&[r])])?;
            if cand.rank() > basis.rank() {
                basis = cand;
                extra = FpMatrix::vstack(&[&extra, &kn.select_rows(&[r])])?;
            }
        }
        let wi = extra.mul(m)?;
        quotient = quotient.quotient(i, &wi)?;
        w.push(wi);
    }
    let coefficient_map_ok = (0..g.cols()).all(|i| {
        quotient
            .vertex_matrix(i)
            .left_kernel()
            .same_row_space(&bcjr.vertex_matrix(i).left_kernel())
    });
    let isomorphic = quotient.isomorphic(bcjr.trellis(), caps);
    Ok(MergeReport {
        w,
        product,
        quotient,
        bcjr,
        coefficient_map_ok,
        isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::PrimeField;
    use crate::trellis::Mergeability;

    fn gf2() -> PrimeField {
        PrimeField::binary()
    }

    fn m(rows: &[&str]) -> FpMatrix {
        FpMatrix::parse_rows(gf2(), rows).unwrap()
    }

    fn spans(text: &str, n: usize) -> SpanList {
        SpanList::parse(text, n).unwrap()
    }

    fn bcjr3() -> (FpMatrix, SpanList) {
        (m(&["101", "110"]), spans("(0,2],(1,0]", 3))
    }

    fn nonchi() -> (FpMatrix, FpMatrix, SpanList) {
        (
            m(&["01110", "10010", "01101"]),
            m(&["10111", "01100"]),
            spans("(1,3],(3,0],(2,1]", 5),
        )
    }

    #[test]
    fn elementary_vertex_pattern() {
        let c = FpVector::parse(gf2(), "0111").unwrap();
        let t = elementary_trellis(&c, &CircularInterval::parse("(1,3]", 4).unwrap(), false).unwrap();
        assert_eq!(t.scp(), vec![0, 0, 1, 1]);
        let e = FpVector::parse(gf2(), "0100").unwrap();
        let t = elementary_trellis(&e, &CircularInterval::parse("(1,1]", 4).unwrap(), false).unwrap();
        assert_eq!(t.scp(), vec![0; 4]);
        assert_eq!(t.ecp(), vec![0, 1, 0, 0]);
        assert!(elementary_trellis(&c, &CircularInterval::parse("(0,3]", 4).unwrap(), false).is_err());
        assert!(elementary_trellis(&c, &CircularInterval::parse("(0,3]", 4).unwrap(), true).is_ok());
    }

    #[test]
    fn product_of_elementary_equals_product_trellis() {
        let (g, _, s) = nonchi();
        let parts: Vec<MatrixTrellis> = (0..3)
            .map(|l| elementary_trellis(&g.row_vector(l), &s.get(l), false).unwrap())
            .collect();
        assert_eq!(product(&parts).unwrap(), product_trellis(&g, &s).unwrap());
    }

    #[test]
    fn bcjr_example_data() {
        let (g, s) = bcjr3();
        let h = m(&["111"]);
        let d = bcjr_displacement(&g, &h, &s).unwrap();
        assert_eq!(d, m(&["0", "1"]));
        let b = bcjr_trellis(&g, &h, &d).unwrap();
        assert_eq!(b.trellis().scp(), vec![1, 1, 1]);
        assert_eq!(b.trellis().edge_space(0), m(&["011", "110"]).row_space_basis());
        assert_eq!(b.trellis().edge_space(1), m(&["101", "011"]).row_space_basis());
        assert_eq!(b.trellis().edge_space(2), m(&["110", "101"]).row_space_basis());
        let p = product_trellis(&g, &s).unwrap();
        assert_eq!(p.scp(), vec![1, 1, 2]);
        assert!(p.is_one_to_one().holds());
        assert!(!b.trellis().is_one_to_one().holds());
        assert!(b.trellis().is_non_mergeable(&Caps::default()).unwrap());
        assert!(matches!(
            p.mergeability(&Caps::default()).unwrap(),
            Mergeability::Mergeable { time: 2, .. }
        ));
    }

    #[test]
    fn nonchi_vertex_matrices() {
        let (g, h, s) = nonchi();
        let expect_m = [
            ["000", "010", "001"],
            ["000", "000", "001"],
            ["100", "000", "000"],
            ["100", "000", "001"],
            ["000", "010", "001"],
        ];
        let p = product_trellis(&g, &s).unwrap();
        for (i, rows) in expect_m.iter().enumerate() {
            assert_eq!(p.vertex_matrix(i), &m(rows));
        }
        let d = bcjr_displacement(&g, &h, &s).unwrap();
        let b = bcjr_trellis(&g, &h, &d).unwrap();
        let expect_n = [
            ["00", "10", "01"],
            ["00", "00", "01"],
            ["01", "00", "00"],
            ["10", "00", "11"],
            ["00", "10", "11"],
        ];
        for (i, rows) in expect_n.iter().enumerate() {
            assert_eq!(b.vertex_matrix(i), &m(rows), "N_{i}");
        }
        assert_eq!(b.trellis().ecp(), vec![2, 2, 2, 3, 2]);
        assert!(zero_row_violations(b.trellis(), &s).is_empty());
    }

    #[test]
    fn nonchi_formulas() {
        let f = scp_ecp_formulas(&nonchi().2);
        assert_eq!(f.scp, vec![2, 1, 1, 2, 2]);
        assert_eq!(f.ecp_from_starts, Some(vec![2, 2, 2, 3, 2]));
        assert_eq!(f.ecp_from_ends, Some(vec![2, 2, 2, 3, 2]));
        assert_eq!(f.recurrence_holds, Some(true));
        let empty = scp_ecp_formulas(&SpanList::new(3, vec![]).unwrap());
        assert_eq!(empty.scp, vec![0; 3]);
    }

    #[test]
    fn linear_spans_give_zero_displacement() {
        let g = m(&["1100", "0110"]);
        let s = spans("(0,1],(1,2]", 4);
        let h = g.right_kernel();
        assert!(bcjr_displacement(&g, &h, &s).unwrap().is_zero());
        assert!(matches!(
            bcjr_displacement(&g, &m(&["1000"]), &s),
            Err(Error::NotOrthogonal)
        ));
    }

    #[test]
    fn arbitrary_displacement_closes() {
        let (g, _, _) = nonchi();
        let h = m(&["10111", "01100"]);
        let d = m(&["11", "01", "10"]);
        let b = bcjr_trellis(&g, &h, &d).unwrap();
        assert!(b.trellis().label_code().same_row_space(&g));
    }

    #[test]
    fn path_to_zero_on_bcjr_example() {
        let (g, s) = bcjr3();
        let b = span_bcjr(&g, &s).unwrap();
        let v = FpVector::parse(gf2(), "1").unwrap();
        let path = path_to_zero(b.trellis(), Some(&s), &v).unwrap();
        let a: Vec<String> = path.alphas.iter().map(|x| x.digits()).collect();
        assert_eq!(a, ["01", "00", "00"]);
        assert_eq!(path.labels.digits(), "100");
        assert!(path.vertices.last().unwrap().is_zero());
        assert!(!cycle_criterion(&b, &path.alphas).unwrap());
        let zero = path_to_zero(b.trellis(), None, &FpVector::zeros(gf2(), 1)).unwrap();
        assert!(zero.alphas.iter().all(|x| x.is_zero()));
        assert!(cycle_criterion(&b, &zero.alphas).unwrap());
    }

    #[test]
    fn path_to_zero_postconditions() {
        let (g, h, s) = nonchi();
        let b = bcjr_trellis(&g, &h, &bcjr_displacement(&g, &h, &s).unwrap()).unwrap();
        let t = b.trellis();
        let v = FpVector::parse(gf2(), "01").unwrap();
        let path = path_to_zero(t, Some(&s), &v).unwrap();
        assert_eq!(t.vertex_matrix(0).left_mul_vec(path.alphas[0].entries()).unwrap(), v);
        check_path(t, &path.alphas).unwrap();
        assert!(path.alphas[4].is_zero());
    }

    #[test]
    fn path_to_zero_rejects_dual_of_nonchi() {
        let (g, h, s) = nonchi();
        let d = bcjr_displacement(&g, &h, &s).unwrap();
        let dual = bcjr_trellis(&h, &g, &d.transpose()).unwrap();
        let v = FpVector::parse(gf2(), "011").unwrap();
        assert!(matches!(
            path_to_zero(dual.trellis(), None, &v),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cycle_criterion_rejects_non_paths() {
        let (g, s) = bcjr3();
        let b = span_bcjr(&g, &s).unwrap();
        let bad = vec![
            FpVector::parse(gf2(), "01").unwrap(),
            FpVector::parse(gf2(), "10").unwrap(),
            FpVector::parse(gf2(), "00").unwrap(),
        ];
        assert!(matches!(cycle_criterion(&b, &bad), Err(Error::NotAPath(_))));
    }

    #[test]
    fn merge_bcjr_example() {
        let (g, s) = bcjr3();
        let r = merge_product_to_bcjr(&g, &s, &Caps::default()).unwrap();
        assert_eq!(r.w[0].rows(), 0);
        assert_eq!(r.w[1].rows(), 0);
        assert!(r.w[2].same_row_space(&m(&["11"])));
        assert!(r.coefficient_map_ok);
        assert!(r.isomorphic.is_yes());
        assert!(!r.quotient.is_one_to_one().holds());
    }

    #[test]
    fn merge_nonchi_is_trivial() {
        let (g, _, s) = nonchi();
        let r = merge_product_to_bcjr(&g, &s, &Caps::default()).unwrap();
        assert!(r.w.iter().all(|w| w.rows() == 0));
        assert!(r.isomorphic.is_yes());
    }

    #[test]
    fn kv_selection_errors() {
        let code = crate::code::LinearCode::from_rows(gf2(), &["1100", "0111"]).unwrap();
        let pair = crate::charpair::characteristic_pair(&code, &Caps::default()).unwrap();
        assert!(matches!(kv_trellis(&pair, &[0]), Err(Error::SelectionSize { .. })));
        assert!(matches!(kv_trellis(&pair, &[0, 7]), Err(Error::RowIndex(7))));
        let sel: Vec<usize> = pair.independent_selections().into_iter().next().unwrap();
        let t = kv_trellis(&pair, &sel).unwrap();
        assert_eq!(t.scp(), pair.span_matrix().kv_scp_rows(&sel, 2).unwrap());
    }

    #[test]
    fn shift_rotates() {
        let (g, s) = bcjr3();
        let b = span_bcjr(&g, &s).unwrap();
        let t = b.trellis();
        assert_eq!(t.shift().vertex_matrix(0), t.vertex_matrix(1));
        assert_eq!(t.shift().shift().shift(), *t);
    }
}
