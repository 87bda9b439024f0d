use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::galois::{FpVector, PrimeField};

/// Edge from vertex `from` at time i to vertex `to` at time i+1 (mod n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub label: u32,
    pub to: usize,
}

/// Cycle as vertex indices at times 0..n-1 plus labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitCycle {
    pub vertices: Vec<usize>,
    pub labels: FpVector,
}

/// A trellis given by explicit vertex and edge lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitTrellis {
    field: PrimeField,
    vertices: Vec<Vec<FpVector>>,
    edges: Vec<Vec<Edge>>,
}

impl ExplicitTrellis {
    /// Edge sets are deduplicated; every endpoint must exist.
    pub fn new(field: PrimeField, vertices: Vec<Vec<FpVector>>, edges: Vec<Vec<Edge>>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 || edges.len() != n {
            return Err(Error::Dimension(format!(
                "{n} vertex sets and {} edge sets",
                edges.len()
            )));
        }
        let mut clean = Vec::with_capacity(n);
        for (i, es) in edges.into_iter().enumerate() {
            let (here, there) = (vertices[i].len(), vertices[(i + 1) % n].len());
            for e in &es {
                if e.from >= here || e.to >= there || e.label >= field.p() {
                    return Err(Error::Precondition(format!(
                        "edge {e:?} at time {i} does not fit the vertex sets"
                    )));
                }
            }
            let set: BTreeSet<Edge> = es.into_iter().collect();
            clean.push(set.into_iter().collect());
        }
        Ok(Self {
            field,
            vertices,
            edges: clean,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self, i: usize) -> &[FpVector] {
        &self.vertices[i]
    }

    pub fn edges(&self, i: usize) -> &[Edge] {
        &self.edges[i]
    }

    pub fn vertex_counts(&self) -> Vec<usize> {
        self.vertices.iter().map(|v| v.len()).collect()
    }

    pub fn edge_counts(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.len()).collect()
    }

    pub fn total_edges(&self) -> usize {
        self.edges.iter().map(|e| e.len()).sum()
    }

    /// Every closed path of length n through V_0, in depth-first order.
    pub fn cycles(&self, cap: u64) -> Result<Vec<ExplicitCycle>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut verts = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for v0 in 0..self.vertices[0].len() {
            verts.clear();
            labels.clear();
            verts.push(v0);
            self.walk(v0, &mut verts, &mut labels, &mut out, cap)?;
        }
        Ok(out)
    }

    fn walk(
        &self,
        v0: usize,
        verts: &mut Vec<usize>,
        labels: &mut Vec<u32>,
        out: &mut Vec<ExplicitCycle>,
        cap: u64,
    ) -> Result<()> {
        let i = labels.len();
        let n = self.n();
        let here = *verts.last().expect("nonempty");
        for e in self.edges[i].iter().filter(|e| e.from == here) {
            if i + 1 == n {
                if e.to != v0 {
                    continue;
                }
                if out.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "cycle enumeration",
                        needed: out.len() as u64 + 1,
                        cap,
                    });
                }
                let mut l = labels.clone();
                l.push(e.label);
                out.push(ExplicitCycle {
                    vertices: verts.clone(),
                    labels: FpVector::new(self.field, l),
                });
            } else {
                verts.push(e.to);
                labels.push(e.label);
                self.walk(v0, verts, labels, out, cap)?;
                verts.pop();
                labels.pop();
            }
        }
        Ok(())
    }

    /// Distinct label sequences of all cycles, sorted.
    pub fn edge_label_code(&self, cap: u64) -> Result<Vec<FpVector>> {
        let set: BTreeSet<FpVector> = self.cycles(cap)?.into_iter().map(|c| c.labels).collect();
        Ok(set.into_iter().collect())
    }

    /// One-to-one iff no two cycles share a label sequence; on failure the
    /// first colliding pair in enumeration order.
    pub fn one_to_one(&self, cap: u64) -> Result<Option<(ExplicitCycle, ExplicitCycle)>> {
        let cycles = self.cycles(cap)?;
        let mut seen: std::collections::HashMap<&FpVector, usize> = Default::default();
        for (k, c) in cycles.iter().enumerate() {
            if let Some(&prev) = seen.get(&c.labels) {
                return Ok(Some((cycles[prev].clone(), c.clone())));
            }
            seen.insert(&c.labels, k);
        }
        Ok(None)
    }

    /// Edges leaving (entering) a common vertex carry distinct labels.
    pub fn is_biproper(&self) -> bool {
        self.edges.iter().all(|es| {
            let out: BTreeSet<(usize, u32)> = es.iter().map(|e| (e.from, e.label)).collect();
            let inc: BTreeSet<(usize, u32)> = es.iter().map(|e| (e.to, e.label)).collect();
            out.len() == es.len() && inc.len() == es.len()
        })
    }

    /// Marks of the vertices and edges lying on some cycle.
    pub fn on_cycle(&self) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
        let n = self.n();
        let mut vmark: Vec<Vec<bool>> = self.vertices.iter().map(|v| vec![false; v.len()]).collect();
        let mut emark: Vec<Vec<bool>> = self.edges.iter().map(|e| vec![false; e.len()]).collect();
        for v0 in 0..self.vertices[0].len() {
            // fwd[i]: reachable at time i from v0; bwd[i]: reaches v0 at time n.
            let mut fwd: Vec<Vec<bool>> = self.vertices.iter().map(|v| vec![false; v.len()]).collect();
            fwd[0][v0] = true;
            for i in 0..n - 1 {
                for e in &self.edges[i] {
                    if fwd[i][e.from] {
                        fwd[i + 1][e.to] = true;
                    }
                }
            }
            let mut bwd: Vec<Vec<bool>> = self.vertices.iter().map(|v| vec![false; v.len()]).collect();
            for e in &self.edges[n - 1] {
                if e.to == v0 {
                    bwd[n - 1][e.from] = true;
                }
            }
            for i in (0..n - 1).rev() {
                for e in &self.edges[i] {
                    if bwd[i + 1][e.to] {
                        bwd[i][e.from] = true;
                    }
                }
            }
            for i in 0..n {
                for (k, e) in self.edges[i].iter().enumerate() {
                    let end_ok = if i + 1 == n { e.to == v0 } else { bwd[i + 1][e.to] };
                    if fwd[i][e.from] && end_ok {
                        emark[i][k] = true;
                        vmark[i][e.from] = true;
                    }
                }
            }
        }
        (vmark, emark)
    }

    pub fn is_reduced(&self) -> bool {
        let (v, e) = self.on_cycle();
        v.iter().chain(e.iter()).all(|m| m.iter().all(|&b| b))
    }

    /// Drops every vertex and edge not on a cycle; returns the counts removed.
    pub fn prune(&self) -> (ExplicitTrellis, usize, usize) {
        let (vmark, emark) = self.on_cycle();
        let n = self.n();
        let remap: Vec<Vec<Option<usize>>> = vmark
            .iter()
            .map(|m| {
                let mut next = 0;
                m.iter()
                    .map(|&keep| {
                        keep.then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let vertices: Vec<Vec<FpVector>> = (0..n)
            .map(|i| {
                self.vertices[i]
                    .iter()
                    .zip(&vmark[i])
                    .filter(|(_, &k)| k)
                    .map(|(v, _)| v.clone())
                    .collect()
            })
            .collect();
        let edges: Vec<Vec<Edge>> = (0..n)
            .map(|i| {
                self.edges[i]
                    .iter()
                    .zip(&emark[i])
                    .filter(|(_, &k)| k)
                    .map(|(e, _)| Edge {
                        from: remap[i][e.from].expect("kept"),
                        label: e.label,
                        to: remap[(i + 1) % n][e.to].expect("kept"),
                    })
                    .collect()
            })
            .collect();
        let removed_v = vmark.iter().flatten().filter(|&&k| !k).count();
        let removed_e = emark.iter().flatten().filter(|&&k| !k).count();
        let pruned = ExplicitTrellis::new(self.field, vertices, edges).expect("consistent");
        (pruned, removed_v, removed_e)
    }

    /// Identifies vertices `a` and `b` at time i; the merged vertex keeps the
    /// label and position of the smaller index.
    pub fn merge_vertices(&self, i: usize, a: usize, b: usize) -> Result<ExplicitTrellis> {
        let n = self.n();
        let count = self.vertices.get(i).map_or(0, |v| v.len());
        if a >= count || b >= count || a == b {
            return Err(Error::Precondition(format!(
                "cannot merge vertices {a} and {b} at time {i}"
            )));
        }
        let (keep, drop) = (a.min(b), a.max(b));
        let fix = |v: usize| match v.cmp(&drop) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        };
        let mut vertices = self.vertices.clone();
        vertices[i].remove(drop);
        let prev = (i + n - 1) % n;
        let edges: Vec<Vec<Edge>> = (0..n)
            .map(|t| {
                self.edges[t]
                    .iter()
                    .map(|e| Edge {
                        from: if t == i { fix(e.from) } else { e.from },
                        label: e.label,
                        to: if t == prev { fix(e.to) } else { e.to },
                    })
                    .collect()
            })
            .collect();
        ExplicitTrellis::new(self.field, vertices, edges)
    }

    /// Connected components of the underlying undirected graph, with time n
    /// identified with time 0.
    pub fn components(&self) -> usize {
        let n = self.n();
        let mut base = vec![0usize; n + 1];
        for i in 0..n {
            base[i + 1] = base[i] + self.vertices[i].len();
        }
        let mut uf = petgraph::unionfind::UnionFind::<usize>::new(base[n]);
        for i in 0..n {
            let j = (i + 1) % n;
            for e in &self.edges[i] {
                uf.union(base[i] + e.from, base[j] + e.to);
            }
        }
        let mut roots: Vec<usize> = (0..base[n]).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}
