//! Dual trellises and the dual row-selection question.
//!
//! [`bcjr_dual`] builds T_(H,G,D^T). [`edge_space_dual`] dualizes every edge
//! space under the form v.v' + ab - w.w' and keeps the result even when it is
//! not reduced. [`kv_duality_check`] and [`conjecture_search`] test whether the
//! complementary rows of a dual characteristic matrix are independent.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::caps::Caps;
use crate::charpair::{
    characteristic_spans, dual_span_list, enumerate_characteristic_matrices, CharacteristicPair, SpanList,
};
use crate::code::LinearCode;
use crate::construct::{bcjr_trellis, kv_trellis, span_bcjr, BcjrTrellis};
use crate::error::{Error, Result};
use crate::galois::{CoefficientIter, FpMatrix, FpVector, PrimeField};
use crate::trellis::{minimality_of_profile, ComplexityProfile, IsoVerdict, LinearTrellis, Minimality};

/// T_(H,G,D^T); its vertex matrices are the transposes N_i^T.
pub fn bcjr_dual(b: &BcjrTrellis) -> Result<BcjrTrellis> {
    bcjr_trellis(b.parity_check(), b.generator(), &b.displacement().transpose())
}

/// Edge-space dual of a BCJR trellis.
#[derive(Clone, Debug)]
pub struct EdgeSpaceDual {
    /// (E_i)° in ambient coordinates of im N_i^T x F x im N_{i+1}^T, RREF.
    pub ambient: Vec<FpMatrix>,
    pub trellis: LinearTrellis,
    pub reduced: bool,
    /// Per time, whether the BCJR-dual edge space lies in (E_i)°.
    pub contains_bcjr_dual: Vec<bool>,
}

impl EdgeSpaceDual {
    pub fn profile(&self) -> ComplexityProfile {
        self.trellis.profile()
    }
}

fn block_diag(parts: &[&FpMatrix], field: PrimeField) -> FpMatrix {
    let rows: usize = parts.iter().map(|p| p.rows()).sum();
    let cols: usize = parts.iter().map(|p| p.cols()).sum();
    let mut out = FpMatrix::zeros(field, rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for p in parts {
        for r in 0..p.rows() {
            for c in 0..p.cols() {
                out.set(r0 + r, c0 + c, p.get(r, c));
            }
        }
        r0 += p.rows();
        c0 += p.cols();
    }
    out
}

/// (E_i)° = {(x, b, y) : x in im N_i^T, y in im N_{i+1}^T, x + b G_i^T = y}.
fn dual_edge_space(b: &BcjrTrellis, i: usize) -> FpMatrix {
    let f = b.generator().field();
    let n = b.generator().cols();
    let nh = b.vertex_matrix(i).transpose();
    let nh1 = b.vertex_matrix((i + 1) % n).transpose();
    let gi = b.generator().select_cols(&[i]).transpose();
    let system = FpMatrix::vstack(&[&nh, &gi, &nh1.scale(f.neg(1))]).expect("cols agree");
    let one = FpMatrix::identity(f, 1);
    system
        .left_kernel()
        .mul(&block_diag(&[&nh, &one, &nh1], f))
        .expect("shapes")
        .row_space_basis()
}

pub fn edge_space_dual(b: &BcjrTrellis) -> Result<EdgeSpaceDual> {
    let f = b.generator().field();
    let n = b.generator().cols();
    let bases: Vec<FpMatrix> = (0..n)
        .map(|i| b.vertex_matrix(i).transpose().row_space_basis())
        .collect();
    let ambient: Vec<FpMatrix> = (0..n).map(|i| dual_edge_space(b, i)).collect();
    let k = b.generator().rows();
    let coords = |basis: &FpMatrix, v: &[u32]| -> Vec<u32> {
        basis
            .solve_left(&FpVector::new(f, v.to_vec()))
            .expect("length")
            .expect("vertex lies in its space")
            .into_entries()
    };
    let mut edges = Vec::with_capacity(n);
    for (i, e) in ambient.iter().enumerate() {
        let j = (i + 1) % n;
        let rows: Vec<Vec<u32>> = (0..e.rows())
            .map(|r| {
                let row = e.row(r);
                let mut out = coords(&bases[i], &row[..k]);
                out.push(row[k]);
                out.extend(coords(&bases[j], &row[k + 1..]));
                out
            })
            .collect();
        edges.push(FpMatrix::from_rows(f, bases[i].rows() + 1 + bases[j].rows(), &rows)?);
    }
    let trellis = LinearTrellis::new(f, bases, edges)?;
    let dual = bcjr_dual(b)?;
    let contains_bcjr_dual = (0..n)
        .map(|i| dual.trellis().edge_space(i).row_space_within(&ambient[i]))
        .collect();
    Ok(EdgeSpaceDual {
        ambient,
        reduced: trellis.is_reduced(),
        trellis,
        contains_bcjr_dual,
    })
}

/// Gram matrix of the edge pairing at time i between RREF bases of
/// im N_i x F x im N_{i+1} and im N_i^T x F x im N_{i+1}^T.
pub fn pairing_gram(b: &BcjrTrellis, i: usize) -> FpMatrix {
    let f = b.generator().field();
    let n = b.generator().cols();
    let j = (i + 1) % n;
    let (ni, nj) = (b.vertex_matrix(i), b.vertex_matrix(j));
    let (pi, pj) = (ni.row_space_basis(), nj.row_space_basis());
    let (qi, qj) = (ni.transpose().row_space_basis(), nj.transpose().row_space_basis());
    // The pairing of alpha N with y is alpha . y.
    let coef = |m: &FpMatrix, v: &FpVector| m.solve_left(v).expect("length").expect("in image");
    let size = pi.rows() + 1 + pj.rows();
    let mut gram = FpMatrix::zeros(f, size, size);
    for a in 0..pi.rows() {
        let alpha = coef(ni, &pi.row_vector(a));
        for c in 0..qi.rows() {
            gram.set(a, c, alpha.dot(&qi.row_vector(c)));
        }
    }
    gram.set(pi.rows(), qi.rows(), 1);
    for a in 0..pj.rows() {
        let alpha = coef(nj, &pj.row_vector(a));
        for c in 0..qj.rows() {
            let v = alpha.dot(&qj.row_vector(c));
            gram.set(pi.rows() + 1 + a, qi.rows() + 1 + c, f.neg(v));
        }
    }
    gram
}

/// Outcome for one dual characteristic matrix.
#[derive(Clone, Debug)]
pub struct DualVerdict {
    /// Index in the enumeration of dual characteristic matrices.
    pub matrix: usize,
    /// Rows of that matrix carrying the complementary spans.
    pub rows: Vec<usize>,
    pub independent: bool,
    /// SCP of the dual KV-trellis equals the primal SCP (when independent).
    pub scp_matches: Option<bool>,
    /// Isomorphism of the dual KV-trellis to the BCJR dual (when independent).
    pub isomorphic_to_bcjr_dual: Option<IsoVerdict>,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub selection: Vec<usize>,
    pub primal_scp: Vec<usize>,
    /// Dual characteristic spans not of the form (b_l, a_l] for selected l.
    pub complementary: SpanList,
    pub verdicts: Vec<DualVerdict>,
    /// The dual enumeration hit its cap.
    pub truncated: bool,
    pub bcjr_dual_profile: ComplexityProfile,
}

impl DualityReport {
    /// The first (lexicographic) dual characteristic matrix works.
    pub fn strong(&self) -> bool {
        self.verdicts.first().is_some_and(|v| v.independent)
    }

    /// Some dual characteristic matrix works.
    pub fn weak(&self) -> bool {
        self.verdicts.iter().any(|v| v.independent)
    }

    /// Some dual KV-trellis from the complementary rows is isomorphic to the
    /// BCJR dual.
    pub fn weak_isomorphic(&self) -> bool {
        self.verdicts
            .iter()
            .any(|v| v.isomorphic_to_bcjr_dual.as_ref().is_some_and(|i| i.is_yes()))
    }
}

pub fn kv_duality_check(
    code: &LinearCode,
    pair: &CharacteristicPair,
    selection: &[usize],
    caps: &Caps,
) -> Result<DualityReport> {
    code.require_full_support()?;
    code.require_dual_full_support()?;
    let primal = kv_trellis(pair, selection)?;
    let primal_scp = primal.scp();
    let sel_spans = pair.spans().select(selection);
    let excluded: Vec<_> = sel_spans.iter().map(|s| s.reversed()).collect();
    let dual_code = code.dual();
    let dual_list = dual_span_list(pair.spans());
    let complementary = SpanList::new(
        code.n(),
        dual_list
            .iter()
            .filter(|s| !excluded.contains(s))
            .cloned()
            .collect(),
    )?;
    let bcjr = span_bcjr(primal.label_matrix(), &sel_spans)?;
    let dual = bcjr_dual(&bcjr)?;
    let all = enumerate_characteristic_matrices(&dual_code, caps)?;
    let mut verdicts = Vec::with_capacity(all.pairs.len());
    for (idx, dp) in all.pairs.iter().enumerate() {
        let rows: Vec<usize> = complementary
            .iter()
            .map(|s| {
                dp.row_with_span(s).ok_or_else(|| {
                    Error::NotCharacteristic(format!("dual span {s} missing from the dual matrix"))
                })
            })
            .collect::<Result<_>>()?;
        let independent = dp.independent(&rows);
        let (scp_matches, iso) = if independent {
            let t = kv_trellis(dp, &rows)?;
            (
                Some(t.scp() == primal_scp),
                Some(t.isomorphic(dual.trellis(), caps)),
            )
        } else {
            (None, None)
        };
        verdicts.push(DualVerdict {
            matrix: idx,
            rows,
            independent,
            scp_matches,
            isomorphic_to_bcjr_dual: iso,
        });
    }
    Ok(DualityReport {
        selection: selection.to_vec(),
        primal_scp,
        complementary,
        verdicts,
        truncated: all.truncated,
        bcjr_dual_profile: dual.trellis().profile(),
    })
}

/// Options for [`conjecture_search`].
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub field: PrimeField,
    pub n_min: usize,
    pub n_max: usize,
    /// Dimensions to include; `None` means 1..n.
    pub k_range: Option<(usize, usize)>,
    /// Keep one code per orbit of cyclic coordinate shifts.
    pub cyclic_dedup: bool,
    /// Progress file holding the number of codes already processed.
    pub progress: Option<PathBuf>,
    pub caps: Caps,
}

impl SearchOptions {
    pub fn new(field: PrimeField, n_max: usize) -> Self {
        Self {
            field,
            n_min: 2,
            n_max,
            k_range: None,
            cyclic_dedup: true,
            progress: None,
            caps: Caps::default(),
        }
    }
}

/// One (code, primal matrix, selection) instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureRecord {
    /// RREF generator matrix.
    pub code: FpMatrix,
    pub matrix: usize,
    pub selection: Vec<usize>,
    pub selection_spans: SpanList,
    pub minimal: bool,
    pub strong: bool,
    pub weak: bool,
    pub weak_isomorphic: bool,
}

fn digits(m: &FpMatrix) -> String {
    (0..m.rows())
        .map(|r| m.row_vector(r).digits())
        .collect::<Vec<_>>()
        .join("/")
}

impl fmt::Display for ConjectureRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let sel: Vec<String> = self.selection.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "code={} matrix={} selection={} spans={} minimal={} strong={} weak={} iso={}",
            digits(&self.code),
            self.matrix,
            sel.join(","),
            self.selection_spans,
            yn(self.minimal),
            yn(self.strong),
            yn(self.weak),
            yn(self.weak_isomorphic)
        )
    }
}

impl ConjectureRecord {
    /// Strong form fails but another dual matrix works.
    pub fn choice_dependent(&self) -> bool {
        !self.strong && self.weak
    }

    /// A minimal selection without an independent, isomorphic dual selection.
    pub fn contradicts_theorem(&self) -> bool {
        self.minimal && !(self.weak && self.weak_isomorphic)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    pub codes: usize,
    /// Codes skipped because a cap was hit.
    pub capped: usize,
    /// Codes skipped on resume.
    pub resumed: usize,
    pub records: Vec<ConjectureRecord>,
}

impl SearchReport {
    pub fn choice_dependent(&self) -> impl Iterator<Item = &ConjectureRecord> {
        self.records.iter().filter(|r| r.choice_dependent())
    }

    pub fn weak_failures(&self) -> impl Iterator<Item = &ConjectureRecord> {
        self.records.iter().filter(|r| !r.weak)
    }

    pub fn theorem_violations(&self) -> impl Iterator<Item = &ConjectureRecord> {
        self.records.iter().filter(|r| r.contradicts_theorem())
    }

    pub fn partial(&self) -> bool {
        self.capped > 0
    }

    /// True when no minimal selection contradicts the dual-selection theorem.
    pub fn passes(&self) -> bool {
        self.theorem_violations().next().is_none()
    }

    /// Line-oriented text: one record per line and a summary line.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.records.iter().map(|r| r.to_string()).collect();
        out.push(format!(
            "summary codes={} records={} choice_dependent={} weak_failures={} theorem_violations={} capped={} resumed={}",
            self.codes,
            self.records.len(),
            self.choice_dependent().count(),
            self.weak_failures().count(),
            self.theorem_violations().count(),
            self.capped,
            self.resumed
        ));
        out
    }
}

/// All k x n matrices in RREF with k pivots, in pivot-set then coefficient
/// order; each spans a distinct k-dimensional code.
pub fn rref_generators(field: PrimeField, n: usize, k: usize) -> Vec<FpMatrix> {
    use itertools::Itertools;
    let mut out = Vec::new();
    for pivots in (0..n).combinations(k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        for values in CoefficientIter::new(field, free.len()) {
            let mut g = FpMatrix::zeros(field, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                g.set(r, p, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&values) {
                g.set(r, c, v);
            }
            out.push(g);
        }
    }
    out
}

fn cyclic_canonical(g: &FpMatrix) -> bool {
    let n = g.cols();
    let key = g.row_vectors();
    (1..n).all(|j| {
        let cols: Vec<usize> = (0..n).map(|c| (c + j) % n).collect();
        g.select_cols(&cols).row_space_basis().row_vectors() >= key
    })
}

fn search_code(g: &FpMatrix, caps: &Caps) -> Result<Vec<ConjectureRecord>> {
    let code = LinearCode::new(g.clone())?;
    let all = enumerate_characteristic_matrices(&code, caps)?;
    if all.truncated {
        return Err(Error::CapExceeded {
            what: "characteristic matrices",
            needed: all.total,
            cap: caps.matrices,
        });
    }
    let spans = characteristic_spans(&code)?;
    let s = crate::charpair::span_matrix(&spans);
    let mut minimal_cache: HashMap<Vec<usize>, bool> = HashMap::new();
    let mut out = Vec::new();
    for (idx, pair) in all.pairs.iter().enumerate() {
        for sel in pair.independent_selections() {
            let scp = s.kv_scp_rows(&sel, code.k())?;
            let minimal = match minimal_cache.get(&scp) {
                Some(&m) => m,
                None => {
                    let m = match minimality_of_profile(&scp, &code, caps)? {
                        Minimality::Minimal => true,
                        Minimality::Dominated { .. } => false,
                        Minimality::Unknown => {
                            return Err(Error::CapExceeded {
                                what: "minimality check",
                                needed: all.total,
                                cap: caps.matrices,
                            })
                        }
                    };
                    minimal_cache.insert(scp.clone(), m);
                    m
                }
            };
            let report = kv_duality_check(&code, pair, &sel, caps)?;
            if report.truncated {
                return Err(Error::CapExceeded {
                    what: "dual characteristic matrices",
                    needed: caps.matrices + 1,
                    cap: caps.matrices,
                });
            }
            out.push(ConjectureRecord {
                code: g.clone(),
                matrix: idx,
                selection_spans: pair.spans().select(&sel),
                selection: sel,
                minimal,
                strong: report.strong(),
                weak: report.weak(),
                weak_isomorphic: report.weak_isomorphic(),
            });
        }
    }
    Ok(out)
}

/// Exhaustive search over codes with full support on both sides. Codes are
/// processed in canonical order; the progress file, when given, records how
/// many were finished so a later run can resume after them.
pub fn conjecture_search(opts: &SearchOptions) -> Result<SearchReport> {
    let mut codes = Vec::new();
    for n in opts.n_min.max(2)..=opts.n_max {
        let (lo, hi) = opts.k_range.unwrap_or((1, n - 1));
        for k in lo.max(1)..=hi.min(n - 1) {
            for g in rref_generators(opts.field, n, k) {
                let code = LinearCode::new(g.clone())?;
                if !code.has_full_support() || !code.dual().has_full_support() {
                    continue;
                }
                if opts.cyclic_dedup && !cyclic_canonical(&g) {
                    continue;
                }
                codes.push(g);
            }
        }
    }
    let done = match &opts.progress {
        Some(path) => std::fs::read_to_string(path)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .unwrap_or(0)
            .min(codes.len()),
        None => 0,
    };
    let mut report = SearchReport {
        codes: codes.len(),
        resumed: done,
        ..Default::default()
    };
    for (c, chunk) in codes[done..].chunks(64).enumerate() {
        let results: Vec<Result<Vec<ConjectureRecord>>> =
            chunk.par_iter().map(|g| search_code(g, &opts.caps)).collect();
        for r in results {
            match r {
                Ok(recs) => report.records.extend(recs),
                Err(Error::CapExceeded { .. }) => report.capped += 1,
                Err(e) => return Err(e),
            }
        }
        if let Some(path) = &opts.progress {
            let finished = done + (c * 64 + chunk.len());
            std::fs::write(path, format!("{finished}\n")).map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpair::characteristic_pair;
    use crate::construct::bcjr_displacement;

    fn gf2() -> PrimeField {
        PrimeField::binary()
    }

    fn m(rows: &[&str]) -> FpMatrix {
        FpMatrix::parse_rows(gf2(), rows).unwrap()
    }

    fn nonchi_bcjr() -> BcjrTrellis {
        let g = m(&["01110", "10010", "01101"]);
        let h = m(&["10111", "01100"]);
        let s = SpanList::parse("(1,3],(3,0],(2,1]", 5).unwrap();
        bcjr_trellis(&g, &h, &bcjr_displacement(&g, &h, &s).unwrap()).unwrap()
    }

    #[test]
    fn nonchi_bcjr_dual() {
        let b = nonchi_bcjr();
        let d = bcjr_dual(&b).unwrap();
        assert_eq!(d.trellis().scp(), vec![2, 1, 1, 2, 2]);
        assert_eq!(d.trellis().ecp(), vec![2, 1, 2, 2, 2]);
        assert!(d.trellis().label_code().same_row_space(b.parity_check()));
        for i in 0..5 {
            assert_eq!(*d.vertex_matrix(i), b.vertex_matrix(i).transpose());
        }
        let back = bcjr_dual(&d).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn nonchi_edge_space_dual() {
        let b = nonchi_bcjr();
        let e = edge_space_dual(&b).unwrap();
        assert_eq!(e.profile().ecp, vec![2, 1, 2, 2, 3]);
        assert_eq!(e.ambient[4], m(&["0111010", "0010001", "0001001"]).row_space_basis());
        assert!(!e.reduced);
        assert!(e.contains_bcjr_dual.iter().all(|&x| x));
        let s = b.trellis().scp();
        let ecp = b.trellis().ecp();
        for i in 0..5 {
            assert_eq!(e.ambient[i].rows(), s[i] + s[(i + 1) % 5] + 1 - ecp[i]);
            let gram = pairing_gram(&b, i);
            assert_eq!(gram.rank(), gram.rows());
        }
        let pruned = e.trellis.prune();
        assert!(pruned.isomorphic(&bcjr_dual(&b).unwrap().trellis().to_linear(), &Caps::default()).is_yes());
    }

    #[test]
    fn dual_choice_example() {
        let code = LinearCode::from_rows(gf2(), &["1100", "0111"]).unwrap();
        let pair = characteristic_pair(&code, &Caps::default()).unwrap();
        let sel: Vec<usize> = ["(2,0]", "(3,2]"]
            .iter()
            .map(|s| pair.row_with_span(&crate::code::CircularInterval::parse(s, 4).unwrap()).unwrap())
            .collect();
        let r = kv_duality_check(&code, &pair, &sel, &Caps::default()).unwrap();
        assert_eq!(r.complementary.to_string(), "(1,0],(3,1]");
        assert_eq!(r.verdicts.len(), 2);
        assert!(!r.strong());
        assert!(r.weak());
        let good = r.verdicts.iter().find(|v| v.independent).unwrap();
        let all = enumerate_characteristic_matrices(&code.dual(), &Caps::default()).unwrap();
        let x = all.pairs[good.matrix].matrix();
        assert!((0..4).any(|l| x.row_vector(l).digits() == "1110"));
    }

    #[test]
    fn rref_enumeration_counts() {
        // Gaussian binomials [4 choose 2]_2 = 35, [3 choose 1]_3 = 13.
        assert_eq!(rref_generators(gf2(), 4, 2).len(), 35);
        assert_eq!(rref_generators(PrimeField::new(3).unwrap(), 3, 1).len(), 13);
    }

    #[test]
    fn small_search_passes() {
        let r = conjecture_search(&SearchOptions::new(gf2(), 4)).unwrap();
        assert!(r.passes());
        assert!(r.choice_dependent().next().is_some());
        assert!(!r.partial());
    }
}
