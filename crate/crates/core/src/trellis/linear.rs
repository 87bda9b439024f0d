use std::collections::HashMap;

use rayon::prelude::*;

use super::explicit::{Edge, ExplicitTrellis};
use super::iso::{self, IsoVerdict};
use super::{ComplexityProfile, Cycle, Mergeability, OneToOne};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::galois::{FpMatrix, FpVector, PrimeField};

/// A linear trellis stored as subspaces.
///
/// V_i is the row space of `bases[i]` (s_i independent rows in an ambient
/// F^{r_i}); E_i is the row space of `edges[i]`, written in coordinates
/// (start coordinates | label | end coordinates), so it has s_i + 1 + s_{i+1}
/// columns. Nothing forces every edge onto a cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTrellis {
    field: PrimeField,
    bases: Vec<FpMatrix>,
    edges: Vec<FpMatrix>,
}

impl LinearTrellis {
    pub fn new(field: PrimeField, bases: Vec<FpMatrix>, edges: Vec<FpMatrix>) -> Result<Self> {
        let n = bases.len();
        if n == 0 || edges.len() != n {
            return Err(Error::Dimension(format!(
                "{} vertex spaces and {} edge spaces",
                n,
                edges.len()
            )));
        }
        for b in &bases {
            if b.field() != field {
                return Err(Error::FieldMismatch);
            }
            if b.rank() != b.rows() {
                return Err(Error::RankDeficient {
                    rank: b.rank(),
                    rows: b.rows(),
                });
            }
        }
        let mut reduced = Vec::with_capacity(n);
        for (i, e) in edges.iter().enumerate() {
            let want = bases[i].rows() + 1 + bases[(i + 1) % n].rows();
            if e.cols() != want {
                return Err(Error::Dimension(format!(
                    "edge space at time {i} has {} columns, expected {want}",
                    e.cols()
                )));
            }
            if e.field() != field {
                return Err(Error::FieldMismatch);
            }
            reduced.push(e.row_space_basis());
        }
        Ok(Self {
            field,
            bases,
            edges: reduced,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.bases.len()
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    /// Basis of V_i in its ambient space.
    pub fn basis(&self, i: usize) -> &FpMatrix {
        &self.bases[i]
    }

    /// Basis of E_i in coordinates.
    pub fn edge_basis(&self, i: usize) -> &FpMatrix {
        &self.edges[i]
    }

    pub fn scp(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.rows()).collect()
    }

    pub fn ecp(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.rows()).collect()
    }

    pub fn profile(&self) -> ComplexityProfile {
        ComplexityProfile {
            scp: self.scp(),
            ecp: self.ecp(),
        }
    }

    fn s(&self, i: usize) -> usize {
        self.bases[i].rows()
    }

    /// Start, label and end blocks of the edge basis at time i.
    fn blocks(&self, i: usize) -> (FpMatrix, FpMatrix, FpMatrix) {
        let (s0, s1) = (self.s(i), self.s(self.next(i)));
        let e = &self.edges[i];
        (
            e.select_cols(&(0..s0).collect::<Vec<_>>()),
            e.select_cols(&[s0]),
            e.select_cols(&(s0 + 1..s0 + 1 + s1).collect::<Vec<_>>()),
        )
    }

    pub fn to_ambient(&self, i: usize, coords: &FpVector) -> FpVector {
        self.bases[i]
            .left_mul_vec(coords.entries())
            .expect("coordinate length matches")
    }

    pub fn coordinates(&self, i: usize, v: &FpVector) -> Option<FpVector> {
        self.bases[i].solve_left(v).ok().flatten()
    }

    /// E_i with vertices written in their ambient spaces.
    pub fn ambient_edge_space(&self, i: usize) -> FpMatrix {
        let (st, lab, en) = self.blocks(i);
        let st = st.mul(&self.bases[i]).expect("shapes");
        let en = en.mul(&self.bases[self.next(i)]).expect("shapes");
        FpMatrix::hstack(&[&st, &lab, &en])
            .expect("row counts agree")
            .row_space_basis()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n() + 1);
        let mut acc = 0;
        out.push(0);
        for e in &self.edges {
            acc += e.rows();
            out.push(acc);
        }
        out
    }

    /// Basis of the cycle space: coefficient tuples (beta^(0), ..., beta^(n-1)),
    /// one coefficient row per edge basis, such that the end of edge i equals
    /// the start of edge i+1 for every i (indices mod n).
    pub fn cycle_space(&self) -> FpMatrix {
        let n = self.n();
        let f = self.field;
        let off = self.offsets();
        let mut col_off = Vec::with_capacity(n + 1);
        col_off.push(0);
        for i in 0..n {
            col_off.push(col_off[i] + self.s(self.next(i)));
        }
        let mut k = FpMatrix::zeros(f, off[n], col_off[n]);
        for i in 0..n {
            let j = self.next(i);
            let (_, _, end) = self.blocks(i);
            let (start_next, _, _) = self.blocks(j);
            for r in 0..end.rows() {
                for c in 0..end.cols() {
                    let (rr, cc) = (off[i] + r, col_off[i] + c);
                    k.set(rr, cc, f.add(k.get(rr, cc), end.get(r, c)));
                }
            }
            for r in 0..start_next.rows() {
                for c in 0..start_next.cols() {
                    let (rr, cc) = (off[j] + r, col_off[i] + c);
                    k.set(rr, cc, f.sub(k.get(rr, cc), start_next.get(r, c)));
                }
            }
        }
        k.left_kernel()
    }

    fn label_map(&self) -> FpMatrix {
        let off = self.offsets();
        let mut l = FpMatrix::zeros(self.field, off[self.n()], self.n());
        for i in 0..self.n() {
            let s0 = self.s(i);
            for r in 0..self.edges[i].rows() {
                l.set(off[i] + r, i, self.edges[i].get(r, s0));
            }
        }
        l
    }

    /// Basis of the edge-label code C(T), in RREF.
    pub fn label_code(&self) -> FpMatrix {
        self.cycle_space()
            .mul(&self.label_map())
            .expect("shapes")
            .row_space_basis()
    }

    /// Dimension of the label code S(T); cycles correspond one-to-one to the
    /// cycle space because every edge basis is independent.
    pub fn state_label_dim(&self) -> usize {
        self.cycle_space().rows()
    }

    /// The cycle with coefficient tuple `beta`.
    pub fn cycle_from(&self, beta: &FpVector) -> Cycle {
        let off = self.offsets();
        let mut vertices = Vec::with_capacity(self.n());
        let mut labels = Vec::with_capacity(self.n());
        for i in 0..self.n() {
            let part = &beta.entries()[off[i]..off[i + 1]];
            let edge = self.edges[i].left_mul_vec(part).expect("shapes");
            let s0 = self.s(i);
            let start = FpVector::new(self.field, edge.entries()[..s0].to_vec());
            vertices.push(self.to_ambient(i, &start));
            labels.push(edge.get(s0));
        }
        Cycle {
            vertices,
            labels: FpVector::new(self.field, labels),
        }
    }

    pub fn zero_cycle(&self) -> Cycle {
        Cycle {
            vertices: self
                .bases
                .iter()
                .map(|b| FpVector::zeros(self.field, b.cols()))
                .collect(),
            labels: FpVector::zeros(self.field, self.n()),
        }
    }

    pub fn is_one_to_one(&self) -> OneToOne {
        let sol = self.cycle_space();
        let labels = sol.mul(&self.label_map()).expect("shapes");
        if labels.rank() == sol.rows() {
            return OneToOne::Yes;
        }
        let z = labels.left_kernel();
        let beta = sol.left_mul_vec(z.row(0)).expect("shapes");
        OneToOne::No {
            first: self.zero_cycle(),
            second: self.cycle_from(&beta),
        }
    }

    /// No two edges share a start (or an end) and a label.
    pub fn is_biproper(&self) -> bool {
        (0..self.n()).all(|i| {
            let (st, lab, en) = self.blocks(i);
            let e = self.edges[i].rows();
            FpMatrix::hstack(&[&st, &lab]).expect("rows").rank() == e
                && FpMatrix::hstack(&[&lab, &en]).expect("rows").rank() == e
        })
    }

    /// Projections of the cycle space onto each edge basis block.
    fn cycle_projections(&self) -> Vec<FpMatrix> {
        let sol = self.cycle_space();
        let off = self.offsets();
        (0..self.n())
            .map(|i| {
                let cols: Vec<usize> = (off[i]..off[i + 1]).collect();
                sol.select_cols(&cols).mul(&self.edges[i]).expect("shapes")
            })
            .collect()
    }

    /// Every vertex and every edge lies on a cycle.
    pub fn is_reduced(&self) -> bool {
        let proj = self.cycle_projections();
        (0..self.n()).all(|i| {
            let used = &proj[i];
            let s0 = self.s(i);
            used.rank() == self.edges[i].rows()
                && used.select_cols(&(0..s0).collect::<Vec<_>>()).rank() == s0
        })
    }

    /// Removes every vertex and edge not lying on a cycle.
    pub fn prune(&self) -> LinearTrellis {
        let n = self.n();
        let proj = self.cycle_projections();
        let vertex_coords: Vec<FpMatrix> = (0..n)
            .map(|i| {
                proj[i]
                    .select_cols(&(0..self.s(i)).collect::<Vec<_>>())
                    .row_space_basis()
            })
            .collect();
        let bases: Vec<FpMatrix> = (0..n)
            .map(|i| vertex_coords[i].mul(&self.bases[i]).expect("shapes"))
            .collect();
        let recoord = |y: &FpMatrix, v: &[u32]| -> Vec<u32> {
            let target = FpVector::new(self.field, v.to_vec());
            y.solve_left(&target)
                .expect("length")
                .expect("cycle vertices lie in the pruned space")
                .into_entries()
        };
        let edges: Vec<FpMatrix> = (0..n)
            .map(|i| {
                let j = self.next(i);
                let (s0, s1) = (self.s(i), self.s(j));
                let used = proj[i].row_space_basis();
                let rows: Vec<Vec<u32>> = (0..used.rows())
                    .map(|r| {
                        let row = used.row(r);
                        let mut out = recoord(&vertex_coords[i], &row[..s0]);
                        out.push(row[s0]);
                        out.extend(recoord(&vertex_coords[j], &row[s0 + 1..s0 + 1 + s1]));
                        out
                    })
                    .collect();
                FpMatrix::from_rows(
                    self.field,
                    vertex_coords[i].rows() + 1 + vertex_coords[j].rows(),
                    &rows,
                )
                .expect("shapes")
            })
            .collect();
        LinearTrellis::new(self.field, bases, edges).expect("pruned trellis is well formed")
    }

    /// Replaces V_i by V_i / W, with W given by coordinate rows. The quotient
    /// vertices are written in coordinates of V_i / W.
    pub fn quotient(&self, i: usize, w: &FpMatrix) -> Result<LinearTrellis> {
        let n = self.n();
        if i >= n {
            return Err(Error::TimeIndex { index: i, n });
        }
        if w.cols() != self.s(i) {
            return Err(Error::NotSubspace(i));
        }
        let p = w.right_kernel().transpose();
        let mut bases = self.bases.clone();
        bases[i] = FpMatrix::identity(self.field, p.cols());
        let edges: Vec<FpMatrix> = (0..n)
            .map(|t| {
                let (mut st, lab, mut en) = self.blocks(t);
                if t == i {
                    st = st.mul(&p).expect("shapes");
                }
                if self.next(t) == i {
                    en = en.mul(&p).expect("shapes");
                }
                FpMatrix::hstack(&[&st, &lab, &en]).expect("rows")
            })
            .collect();
        LinearTrellis::new(self.field, bases, edges)
    }

    /// Normalized nonzero vertices at time i in ambient lexicographic order.
    pub(crate) fn merge_candidates(&self, i: usize, caps: &Caps) -> Result<Vec<FpVector>> {
        let mut out: Vec<FpVector> = self.bases[i]
            .row_space_elements(caps.expand)?
            .into_iter()
            .filter(|v| v.entries().iter().find(|&&e| e != 0) == Some(&1))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Searches times in ascending order and, per time, the one-dimensional
    /// subspaces span{v} in lexicographic order of v; the first quotient that
    /// keeps the edge-label code is returned as the witness.
    pub fn mergeability(&self, caps: &Caps) -> Result<Mergeability> {
        let code = self.label_code();
        let mut candidates = Vec::new();
        for i in 0..self.n() {
            for v in self.merge_candidates(i, caps)? {
                candidates.push((i, v));
            }
        }
        let hit = candidates.par_iter().find_first(|(i, v)| {
            let c = self.coordinates(*i, v).expect("candidate lies in V_i");
            let w = FpMatrix::from_vectors(self.field, c.len(), &[c]).expect("shape");
            let merged = self.quotient(*i, &w).expect("valid quotient");
            merged.label_code().same_row_space(&code)
        });
        Ok(match hit {
            Some((time, vertex)) => Mergeability::Mergeable {
                time: *time,
                vertex: vertex.clone(),
            },
            None => Mergeability::NonMergeable,
        })
    }

    /// One step of the cyclic time shift: V*_i = V_{i+1}, E*_i = E_{i+1}.
    pub fn shift(&self) -> LinearTrellis {
        let n = self.n();
        LinearTrellis {
            field: self.field,
            bases: (0..n).map(|i| self.bases[(i + 1) % n].clone()).collect(),
            edges: (0..n).map(|i| self.edges[(i + 1) % n].clone()).collect(),
        }
    }

    /// Linear isomorphism test; maps are returned in coordinates of the
    /// vertex bases.
    pub fn isomorphic(&self, other: &LinearTrellis, caps: &Caps) -> IsoVerdict {
        if let Some(reason) = self.shape_mismatch(other) {
            return IsoVerdict::No(reason);
        }
        if self.ecp() != other.ecp() {
            return IsoVerdict::No("edge complexity profiles differ".into());
        }
        iso::search(self.field, &self.scp(), &self.edges, &other.edges, 1, caps.iso_scan)
    }

    /// Label-forgetting projections P_i = {(v, w) : (v, a, w) in E_i}.
    pub fn structure_spaces(&self) -> Vec<FpMatrix> {
        (0..self.n())
            .map(|i| {
                let (st, _, en) = self.blocks(i);
                FpMatrix::hstack(&[&st, &en]).expect("rows").row_space_basis()
            })
            .collect()
    }

    /// Structural isomorphism: linear bijections preserving the number of edges
    /// between every vertex pair. Edge multiplicity is q^(e_i - dim P_i) on P_i.
    pub fn structurally_isomorphic(&self, other: &LinearTrellis, caps: &Caps) -> IsoVerdict {
        if let Some(reason) = self.shape_mismatch(other) {
            return IsoVerdict::No(reason);
        }
        if self.ecp() != other.ecp() {
            return IsoVerdict::No("edge complexity profiles differ".into());
        }
        let (p, q) = (self.structure_spaces(), other.structure_spaces());
        for i in 0..self.n() {
            let s0 = self.s(i);
            let inv = |m: &FpMatrix| {
                let start = m.select_cols(&(0..s0).collect::<Vec<_>>()).rank();
                let end = m.select_cols(&(s0..m.cols()).collect::<Vec<_>>()).rank();
                (m.rows(), start, end)
            };
            if inv(&p[i]) != inv(&q[i]) {
                return IsoVerdict::No(format!("edge structure differs at time {i}"));
            }
        }
        iso::search(self.field, &self.scp(), &p, &q, 0, caps.iso_scan)
    }

    fn shape_mismatch(&self, other: &LinearTrellis) -> Option<String> {
        if self.field != other.field {
            return Some("different fields".into());
        }
        if self.n() != other.n() {
            return Some("different depths".into());
        }
        if self.scp() != other.scp() {
            return Some("state complexity profiles differ".into());
        }
        None
    }

    /// Per time, whether E_i lies in the matching edge space of `other`
    /// (compared in ambient coordinates).
    pub fn edge_spaces_within(&self, other: &LinearTrellis) -> Vec<bool> {
        (0..self.n())
            .map(|i| {
                let a = self.ambient_edge_space(i);
                let b = other.ambient_edge_space(i);
                a.cols() == b.cols() && a.row_space_within(&b)
            })
            .collect()
    }

    /// Lists every vertex (as its ambient vector) and every edge.
    pub fn expand(&self, caps: &Caps) -> Result<ExplicitTrellis> {
        let n = self.n();
        let mut vertices = Vec::with_capacity(n);
        let mut index: Vec<HashMap<Vec<u32>, usize>> = Vec::with_capacity(n);
        for b in &self.bases {
            let mut vs = b.row_space_elements(caps.expand)?;
            vs.sort();
            index.push(
                vs.iter()
                    .enumerate()
                    .map(|(k, v)| (v.entries().to_vec(), k))
                    .collect(),
            );
            vertices.push(vs);
        }
        let mut edges = Vec::with_capacity(n);
        for i in 0..n {
            let j = self.next(i);
            let (s0, s1) = (self.s(i), self.s(j));
            let mut es: Vec<Edge> = self.edges[i]
                .row_space_elements(caps.expand)?
                .iter()
                .map(|e| {
                    let st = FpVector::new(self.field, e.entries()[..s0].to_vec());
                    let en = FpVector::new(self.field, e.entries()[s0 + 1..s0 + 1 + s1].to_vec());
                    Edge {
                        from: index[i][self.to_ambient(i, &st).entries()],
                        label: e.get(s0),
                        to: index[j][self.to_ambient(j, &en).entries()],
                    }
                })
                .collect();
            es.sort();
            edges.push(es);
        }
        ExplicitTrellis::new(self.field, vertices, edges)
    }
}
