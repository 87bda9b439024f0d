//! Trellis data model and structural predicates.
//!
//! [`MatrixTrellis`] is the coefficient form: vertex matrices A_i and a label
//! column G_i per time, with edge space im(A_i, G_i, A_{i+1}). [`LinearTrellis`]
//! stores vertex spaces and edge spaces directly in coordinates and may be
//! non-reduced. [`ExplicitTrellis`] lists vertices and edges and serves the
//! oracles, merging experiments and graph export.

mod explicit;
mod iso;
mod linear;
mod matrix;
mod minimal;

pub use explicit::{Edge, ExplicitCycle, ExplicitTrellis};
pub use iso::IsoVerdict;
pub use linear::LinearTrellis;
pub use matrix::MatrixTrellis;
pub use minimal::{minimality_of_profile, Minimality};

use crate::galois::FpVector;

/// State and edge complexity profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub scp: Vec<usize>,
    pub ecp: Vec<usize>,
}

/// A cycle given by its vertices at times 0..n-1 and its label sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<FpVector>,
    pub labels: FpVector,
}

impl Cycle {
    pub fn is_zero(&self) -> bool {
        self.labels.is_zero() && self.vertices.iter().all(|v| v.is_zero())
    }
}

/// Outcome of the one-to-one test; on failure two distinct cycles with the
/// same label sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneToOne {
    Yes,
    No { first: Cycle, second: Cycle },
}

impl OneToOne {
    pub fn holds(&self) -> bool {
        matches!(self, OneToOne::Yes)
    }
}

/// Outcome of the mergeability search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mergeability {
    NonMergeable,
    /// Quotienting V_time by span{vertex} leaves the edge-label code unchanged.
    Mergeable { time: usize, vertex: FpVector },
}

impl Mergeability {
    pub fn is_non_mergeable(&self) -> bool {
        matches!(self, Mergeability::NonMergeable)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::charpair::SpanList;
    use crate::code::spans_of;
    use crate::construct::{product_trellis, span_bcjr};
    use crate::galois::{FpMatrix, PrimeField};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn gf2() -> PrimeField {
        PrimeField::binary()
    }

    fn m(rows: &[&str]) -> FpMatrix {
        FpMatrix::parse_rows(gf2(), rows).unwrap()
    }

    /// Random (G, S) with nonzero rows; `picks` chooses one span per row.
    fn instance(p: u32, n: usize, entries: &[u32], picks: &[usize]) -> Option<(FpMatrix, SpanList)> {
        let f = PrimeField::new(p).unwrap();
        let k = entries.len() / n;
        let g = FpMatrix::new(f, k, n, entries.iter().map(|x| x % p).collect()).unwrap();
        let mut spans = Vec::with_capacity(k);
        for l in 0..k {
            let options = spans_of(&g.row_vector(l)).ok()?;
            spans.push(options[picks[l] % options.len()]);
        }
        Some((g, SpanList::new(n, spans).unwrap()))
    }

    fn label_oracle(t: &MatrixTrellis) -> BTreeSet<FpVector> {
        t.expand(&Caps::default())
            .unwrap()
            .edge_label_code(1 << 16)
            .unwrap()
            .into_iter()
            .collect()
    }

    fn rowspace(g: &FpMatrix) -> BTreeSet<FpVector> {
        g.row_space_elements(1 << 16).unwrap().into_iter().collect()
    }

    fn strategy() -> impl Strategy<Value = (u32, usize, Vec<u32>, Vec<usize>)> {
        (prop_oneof![Just(2u32), Just(3u32)], 2usize..=5, 1usize..=3).prop_flat_map(|(p, n, k)| {
            (
                Just(p),
                Just(n),
                proptest::collection::vec(0u32..p, n * k),
                proptest::collection::vec(0usize..8, k),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn label_code_forms_agree((p, n, e, picks) in strategy()) {
            let Some((g, s)) = instance(p, n, &e, &picks) else { return Ok(()); };
            let t = product_trellis(&g, &s).unwrap();
            let alpha = t.label_code();
            let beta = t.to_linear().label_code();
            prop_assert!(alpha.same_row_space(&beta));
            prop_assert!(alpha.same_row_space(&g));
            prop_assert_eq!(label_oracle(&t), rowspace(&g));
            let x = t.expand(&Caps::default()).unwrap();
            let q = p as usize;
            for (i, count) in x.vertex_counts().into_iter().enumerate() {
                prop_assert_eq!(count, q.pow(t.scp()[i] as u32));
            }
            prop_assert_eq!(
                x.one_to_one(1 << 16).unwrap().is_none(),
                t.is_one_to_one().holds()
            );
            let degenerate = s.iter().any(|sp| sp.is_empty());
            if !degenerate {
                prop_assert_eq!(t.is_one_to_one().holds(), g.rank() == g.rows());
            } else if g.rank() == g.rows() {
                prop_assert!(t.is_one_to_one().holds());
            }
            prop_assert_eq!(x.is_biproper(), t.is_biproper());
        }

        #[test]
        fn bcjr_forms_agree((p, n, e, picks) in strategy()) {
            let Some((g, s)) = instance(p, n, &e, &picks) else { return Ok(()); };
            let b = span_bcjr(&g, &s).unwrap();
            let t = b.trellis();
            prop_assert_eq!(label_oracle(t), rowspace(&g));
            prop_assert!(t.to_linear().is_reduced());
            prop_assert!(t.is_biproper());
            let x = t.expand(&Caps::default()).unwrap();
            prop_assert_eq!(x.one_to_one(1 << 16).unwrap().is_none(), t.is_one_to_one().holds());
            prop_assert!(x.is_reduced());
        }

        #[test]
        fn trivial_quotient_is_identity((p, n, e, picks) in strategy()) {
            let Some((g, s)) = instance(p, n, &e, &picks) else { return Ok(()); };
            let t = product_trellis(&g, &s).unwrap();
            let zero = FpMatrix::zeros(t.field(), 0, t.m());
            let q = t.quotient(0, &zero).unwrap();
            prop_assert!(q.isomorphic(&t, &Caps::default()).is_yes());
        }

        #[test]
        fn isomorphism_implies_structural((p, n, e, picks) in strategy()) {
            let Some((g, s)) = instance(p, n, &e, &picks) else { return Ok(()); };
            let t = product_trellis(&g, &s).unwrap();
            let b = span_bcjr(&g, &s).unwrap();
            let caps = Caps::default();
            if t.isomorphic(b.trellis(), &caps).is_yes() {
                prop_assert!(t.structurally_isomorphic(b.trellis(), &caps).is_yes());
            }
            prop_assert!(t.isomorphic(&t, &caps).is_yes());
        }

        #[test]
        fn linear_merge_is_a_pair_merge((p, n, e, picks) in strategy()) {
            let Some((g, s)) = instance(p, n, &e, &picks) else { return Ok(()); };
            let t = product_trellis(&g, &s).unwrap();
            let caps = Caps::default();
            if let Mergeability::Mergeable { time, vertex } = t.mergeability(&caps).unwrap() {
                let x = t.expand(&caps).unwrap();
                let zero = x.vertices(time).iter().position(|v| v.is_zero()).unwrap();
                let other = x.vertices(time).iter().position(|v| *v == vertex).unwrap();
                let merged = x.merge_vertices(time, zero, other).unwrap();
                let code: BTreeSet<FpVector> =
                    merged.edge_label_code(1 << 16).unwrap().into_iter().collect();
                prop_assert_eq!(code, rowspace(&g));
            }
        }
    }

    #[test]
    fn shift_commutes_with_label_code() {
        let g = m(&["01110", "10010", "01101"]);
        let s = SpanList::parse("(1,3],(3,0],(2,1]", 5).unwrap();
        let t = product_trellis(&g, &s).unwrap();
        let shifted = t.shift().label_code();
        let cols: Vec<usize> = (0..5).map(|i| (i + 1) % 5).collect();
        assert!(shifted.same_row_space(&g.select_cols(&cols)));
        let mut r = t.clone();
        for _ in 0..5 {
            r = r.shift();
        }
        assert_eq!(r, t);
    }

    #[test]
    fn non_biproper_detected() {
        // Two parallel edges with the same label between the same vertices.
        let f = gf2();
        let x = ExplicitTrellis::new(
            f,
            vec![vec![FpVector::zeros(f, 0)], vec![FpVector::zeros(f, 1), FpVector::parse(f, "1").unwrap()]],
            vec![
                vec![Edge { from: 0, label: 0, to: 0 }, Edge { from: 0, label: 0, to: 1 }],
                vec![Edge { from: 0, label: 0, to: 0 }, Edge { from: 1, label: 1, to: 0 }],
            ],
        )
        .unwrap();
        assert!(!x.is_biproper());
        // Linear version: A_1 carries a coefficient that no label sees.
        let t = MatrixTrellis::new(
            vec![FpMatrix::zeros(f, 1, 0), m(&["1"])],
            m(&["01"]),
        )
        .unwrap();
        assert!(!t.is_biproper());
        assert!(!t.to_linear().is_biproper());
    }

    #[test]
    fn bcjr_one_to_one_witness() {
        let g = m(&["101", "110"]);
        let s = SpanList::parse("(0,2],(1,0]", 3).unwrap();
        let b = span_bcjr(&g, &s).unwrap();
        match b.trellis().is_one_to_one() {
            OneToOne::No { first, second } => {
                assert!(first.is_zero());
                assert!(second.labels.is_zero());
                assert!(second.vertices.iter().all(|v| v.digits() == "1"));
            }
            OneToOne::Yes => panic!("expected a witness"),
        }
        let x = b.trellis().expand(&Caps::default()).unwrap();
        let (a, c) = x.one_to_one(100).unwrap().unwrap();
        assert_eq!(a.labels, c.labels);
    }

    #[test]
    fn explicit_prune_and_components() {
        let f = gf2();
        let one = FpVector::parse(f, "1").unwrap();
        let zero = FpVector::zeros(f, 1);
        // Vertex 1 at time 1 is a dead end.
        let x = ExplicitTrellis::new(
            f,
            vec![vec![zero.clone()], vec![zero.clone(), one.clone()]],
            vec![
                vec![Edge { from: 0, label: 0, to: 0 }, Edge { from: 0, label: 1, to: 1 }],
                vec![Edge { from: 0, label: 0, to: 0 }],
            ],
        )
        .unwrap();
        assert!(!x.is_reduced());
        let (p, dv, de) = x.prune();
        assert_eq!((dv, de), (1, 1));
        assert!(p.is_reduced());
        assert_eq!(p.components(), 1);
        assert_eq!(x.components(), 1);
    }

    #[test]
    fn matrix_quotient_checks_subspace() {
        let g = m(&["101", "110"]);
        let s = SpanList::parse("(0,2],(1,0]", 3).unwrap();
        let t = product_trellis(&g, &s).unwrap();
        assert!(t.quotient(0, &m(&["10"])).is_err());
        let q = t.quotient(2, &m(&["11"])).unwrap();
        assert_eq!(q.scp(), vec![1, 1, 1]);
    }
}
