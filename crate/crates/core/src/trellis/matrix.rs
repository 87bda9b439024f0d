use super::explicit::ExplicitTrellis;
use super::iso::IsoVerdict;
use super::linear::LinearTrellis;
use super::minimal::{minimality_of_profile, Minimality};
use super::{ComplexityProfile, Cycle, Mergeability, OneToOne};
use crate::caps::Caps;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::galois::{FpMatrix, FpVector, PrimeField};

/// Coefficient form of a linear trellis.
///
/// With coefficient space F^m, vertex matrices A_i (m x r_i) and label matrix
/// G (m x n), the edge space at time i is {(alpha A_i, alpha G_i, alpha A_{i+1})}.
/// Vertex matrices are kept raw, not row reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixTrellis {
    field: PrimeField,
    vertex: Vec<FpMatrix>,
    labels: FpMatrix,
}

impl MatrixTrellis {
    pub fn new(vertex: Vec<FpMatrix>, labels: FpMatrix) -> Result<Self> {
        let n = labels.cols();
        let field = labels.field();
        if n == 0 || vertex.len() != n {
            return Err(Error::Dimension(format!(
                "{} vertex matrices for depth {n}",
                vertex.len()
            )));
        }
        for (i, a) in vertex.iter().enumerate() {
            if a.field() != field {
                return Err(Error::FieldMismatch);
            }
            if a.rows() != labels.rows() {
                return Err(Error::Dimension(format!(
                    "vertex matrix {i} has {} rows, expected {}",
                    a.rows(),
                    labels.rows()
                )));
            }
        }
        Ok(Self {
            field,
            vertex,
            labels,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.vertex.len()
    }

    /// Dimension of the coefficient space.
    pub fn m(&self) -> usize {
        self.labels.rows()
    }

    pub fn vertex_matrix(&self, i: usize) -> &FpMatrix {
        &self.vertex[i]
    }

    pub fn vertex_matrices(&self) -> &[FpMatrix] {
        &self.vertex
    }

    pub fn label_matrix(&self) -> &FpMatrix {
        &self.labels
    }

    pub fn label_column(&self, i: usize) -> FpVector {
        self.labels.column(i)
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    /// (A_i | G_i | A_{i+1}).
    pub fn edge_generator(&self, i: usize) -> FpMatrix {
        let g = self.labels.select_cols(&[i]);
        FpMatrix::hstack(&[&self.vertex[i], &g, &self.vertex[self.next(i)]]).expect("rows agree")
    }

    /// RREF basis of V_i = im A_i.
    pub fn vertex_space(&self, i: usize) -> FpMatrix {
        self.vertex[i].row_space_basis()
    }

    /// RREF basis of E_i.
    pub fn edge_space(&self, i: usize) -> FpMatrix {
        self.edge_generator(i).row_space_basis()
    }

    pub fn scp(&self) -> Vec<usize> {
        self.vertex.iter().map(|a| a.rank()).collect()
    }

    pub fn ecp(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.edge_generator(i).rank()).collect()
    }

    pub fn profile(&self) -> ComplexityProfile {
        ComplexityProfile {
            scp: self.scp(),
            ecp: self.ecp(),
        }
    }

    /// Same coefficient space with A_i replaced.
    pub fn with_vertex_matrix(&self, i: usize, a: FpMatrix) -> Result<Self> {
        let mut vertex = self.vertex.clone();
        vertex[i] = a;
        Self::new(vertex, self.labels.clone())
    }

    /// A*_i = A_{i+1} and G*_i = G_{i+1}.
    pub fn shift(&self) -> Self {
        let n = self.n();
        let vertex = (0..n).map(|i| self.vertex[(i + 1) % n].clone()).collect();
        let cols: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::new(vertex, self.labels.select_cols(&cols)).expect("same shape")
    }

    /// Matching conditions alpha^(i) A_{i+1} = alpha^(i+1) A_{i+1} (mod n),
    /// solved for (alpha^(0), ..., alpha^(n-1)).
    fn path_solutions(&self) -> FpMatrix {
        let (n, m, f) = (self.n(), self.m(), self.field);
        let mut col_off = vec![0usize; n + 1];
        for i in 0..n {
            col_off[i + 1] = col_off[i] + self.vertex[self.next(i)].cols();
        }
        let mut k = FpMatrix::zeros(f, n * m, col_off[n]);
        for i in 0..n {
            let j = self.next(i);
            let a = &self.vertex[j];
            for r in 0..m {
                for c in 0..a.cols() {
                    let cc = col_off[i] + c;
                    let (ri, rj) = (i * m + r, j * m + r);
                    k.set(ri, cc, f.add(k.get(ri, cc), a.get(r, c)));
                    k.set(rj, cc, f.sub(k.get(rj, cc), a.get(r, c)));
                }
            }
        }
        k.left_kernel()
    }

    fn label_map(&self) -> FpMatrix {
        let (n, m) = (self.n(), self.m());
        let mut l = FpMatrix::zeros(self.field, n * m, n);
        for i in 0..n {
            for r in 0..m {
                l.set(i * m + r, i, self.labels.get(r, i));
            }
        }
        l
    }

    /// (vertex, label) map from coefficient tuples to V_0 x F x ... x V_{n-1} x F.
    fn state_label_map(&self) -> FpMatrix {
        let (n, m) = (self.n(), self.m());
        let width: usize = self.vertex.iter().map(|a| a.cols() + 1).sum();
        let mut out = FpMatrix::zeros(self.field, n * m, width);
        let mut col = 0;
        for i in 0..n {
            let a = &self.vertex[i];
            for r in 0..m {
                for c in 0..a.cols() {
                    out.set(i * m + r, col + c, a.get(r, c));
                }
                out.set(i * m + r, col + a.cols(), self.labels.get(r, i));
            }
            col += a.cols() + 1;
        }
        out
    }

    /// Basis of the edge-label code, in RREF.
    pub fn label_code(&self) -> FpMatrix {
        self.path_solutions()
            .mul(&self.label_map())
            .expect("shapes")
            .row_space_basis()
    }

    /// Dimension of the label code S(T).
    pub fn state_label_dim(&self) -> usize {
        self.path_solutions()
            .mul(&self.state_label_map())
            .expect("shapes")
            .rank()
    }

    fn cycle_of(&self, alpha: &FpVector) -> Cycle {
        let m = self.m();
        let vertices = (0..self.n())
            .map(|i| {
                self.vertex[i]
                    .left_mul_vec(&alpha.entries()[i * m..(i + 1) * m])
                    .expect("shape")
            })
            .collect();
        Cycle {
            vertices,
            labels: self.label_map().left_mul_vec(alpha.entries()).expect("shape"),
        }
    }

    /// One-to-one iff dim S(T) = dim C(T). The witness pairs the zero cycle
    /// with a nonzero cycle carrying the zero word.
    pub fn is_one_to_one(&self) -> OneToOne {
        let sol = self.path_solutions();
        let labels = sol.mul(&self.label_map()).expect("shapes");
        let states = sol.mul(&self.state_label_map()).expect("shapes");
        if labels.rank() == states.rank() {
            return OneToOne::Yes;
        }
        let z = labels.left_kernel();
        let alpha = (0..z.rows())
            .map(|r| sol.left_mul_vec(z.row(r)).expect("shape"))
            .find(|a| !self.cycle_of(a).is_zero())
            .expect("a nonzero cycle with zero labels exists");
        let zero = self.cycle_of(&FpVector::zeros(self.field, self.n() * self.m()));
        OneToOne::No {
            first: zero,
            second: self.cycle_of(&alpha),
        }
    }

    /// rank(A_i | G_i) = rank(G_i | A_{i+1}) = dim E_i for every i.
    pub fn is_biproper(&self) -> bool {
        (0..self.n()).all(|i| {
            let g = self.labels.select_cols(&[i]);
            let e = self.edge_generator(i).rank();
            FpMatrix::hstack(&[&self.vertex[i], &g]).expect("rows").rank() == e
                && FpMatrix::hstack(&[&g, &self.vertex[self.next(i)]]).expect("rows").rank() == e
        })
    }

    /// Coordinates over RREF bases of the vertex spaces.
    pub fn to_linear(&self) -> LinearTrellis {
        let n = self.n();
        let bases: Vec<FpMatrix> = (0..n).map(|i| self.vertex_space(i)).collect();
        let coords: Vec<FpMatrix> = (0..n)
            .map(|i| {
                let rows: Vec<FpVector> = (0..self.m())
                    .map(|r| {
                        bases[i]
                            .solve_left(&self.vertex[i].row_vector(r))
                            .expect("shape")
                            .expect("row lies in its own row space")
                    })
                    .collect();
                FpMatrix::from_vectors(self.field, bases[i].rows(), &rows).expect("shape")
            })
            .collect();
        let edges = (0..n)
            .map(|i| {
                let g = self.labels.select_cols(&[i]);
                FpMatrix::hstack(&[&coords[i], &g, &coords[self.next(i)]]).expect("rows")
            })
            .collect();
        LinearTrellis::new(self.field, bases, edges).expect("well formed")
    }

    pub fn expand(&self, caps: &Caps) -> Result<ExplicitTrellis> {
        self.to_linear().expand(caps)
    }

    /// Replaces V_i by the quotient im A_i / W (W given by rows in the ambient
    /// space of V_i): A_i becomes A_i P where the left kernel of P is W.
    pub fn quotient(&self, i: usize, w: &FpMatrix) -> Result<Self> {
        if i >= self.n() {
            return Err(Error::TimeIndex { index: i, n: self.n() });
        }
        let a = &self.vertex[i];
        if w.cols() != a.cols() || !w.row_space_within(a) {
            return Err(Error::NotSubspace(i));
        }
        let p = w.right_kernel().transpose();
        self.with_vertex_matrix(i, a.mul(&p)?)
    }

    pub fn mergeability(&self, caps: &Caps) -> Result<Mergeability> {
        self.to_linear().mergeability(caps)
    }

    pub fn is_non_mergeable(&self, caps: &Caps) -> Result<bool> {
        Ok(self.mergeability(caps)?.is_non_mergeable())
    }

    pub fn isomorphic(&self, other: &MatrixTrellis, caps: &Caps) -> IsoVerdict {
        self.to_linear().isomorphic(&other.to_linear(), caps)
    }

    pub fn structurally_isomorphic(&self, other: &MatrixTrellis, caps: &Caps) -> IsoVerdict {
        self.to_linear().structurally_isomorphic(&other.to_linear(), caps)
    }

    /// Minimality among linear trellises of `code`, decided against the
    /// profiles of all KV-trellises.
    pub fn is_minimal(&self, code: &LinearCode, caps: &Caps) -> Result<Minimality> {
        if !self.label_code().same_row_space(code.generator()) {
            return Err(Error::Precondition("trellis does not represent the code".into()));
        }
        minimality_of_profile(&self.scp(), code, caps)
    }
}
