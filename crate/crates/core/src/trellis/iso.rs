use crate::galois::{CoefficientIter, FpMatrix, FpVector, PrimeField};

/// Outcome of an isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Vertex maps Phi_i (s_i x s_i, acting on coordinate rows).
    Yes(Vec<FpMatrix>),
    No(String),
    /// The scan budget ran out before the search finished.
    Unknown { scanned: u64 },
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No(_))
    }

    pub fn as_option(&self) -> Option<bool> {
        match self {
            IsoVerdict::Yes(_) => Some(true),
            IsoVerdict::No(_) => Some(false),
            IsoVerdict::Unknown { .. } => None,
        }
    }
}

/// Finds invertible Phi_i with (c Phi_i, m, d Phi_{i+1}) in target_i for every
/// generator row (c, m, d) of gens_i, where the middle block has width `mid`.
///
/// The constraints are affine in the entries of the Phi_i, so the solutions
/// form a coset x0 + ker. Its RREF null basis is ordered block by block, which
/// lets the scan fix Phi_0, Phi_1, ... in turn and prune singular prefixes.
pub(crate) fn search(
    field: PrimeField,
    s: &[usize],
    gens: &[FpMatrix],
    targets: &[FpMatrix],
    mid: usize,
    cap: u64,
) -> IsoVerdict {
    let n = s.len();
    let mut off = vec![0usize; n + 1];
    for i in 0..n {
        off[i + 1] = off[i] + s[i] * s[i];
    }
    let unknowns = off[n];
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let ann = targets[i].right_kernel();
        let g = &gens[i];
        for r in 0..g.rows() {
            let row = g.row(r);
            let (c, m, d) = (&row[..s[i]], &row[s[i]..s[i] + mid], &row[s[i] + mid..]);
            for a in 0..ann.rows() {
                let k = ann.row(a);
                let (ks, km, ke) = (&k[..s[i]], &k[s[i]..s[i] + mid], &k[s[i] + mid..]);
                let mut eq = vec![0u32; unknowns];
                for p in 0..s[i] {
                    for q in 0..s[i] {
                        let idx = off[i] + p * s[i] + q;
                        eq[idx] = field.add(eq[idx], field.mul(c[p], ks[q]));
                    }
                }
                for p in 0..s[j] {
                    for q in 0..s[j] {
                        let idx = off[j] + p * s[j] + q;
                        eq[idx] = field.add(eq[idx], field.mul(d[p], ke[q]));
                    }
                }
                let constant = m
                    .iter()
                    .zip(km)
                    .fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)));
                rows.push(eq);
                rhs.push(field.neg(constant));
            }
        }
    }
    let system = FpMatrix::from_rows(field, unknowns, &rows).expect("shape");
    let target = FpVector::new(field, rhs);
    let Some(x0) = system
        .transpose()
        .solve_left(&target)
        .expect("shape")
    else {
        return IsoVerdict::No("edge constraints admit no linear vertex maps".into());
    };
    let null = system.right_kernel();
    let block_of = |col: usize| (0..n).find(|&b| col < off[b + 1]).expect("column in range");
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in 0..null.rows() {
        let pivot = (0..unknowns).find(|&c| null.get(r, c) != 0).expect("nonzero row");
        groups[block_of(pivot)].push(r);
    }
    let mut scan = Scan {
        field,
        s,
        off: &off,
        null: &null,
        groups: &groups,
        scanned: 0,
        cap,
    };
    match scan.descend(0, x0.into_entries()) {
        Ok(Some(x)) => IsoVerdict::Yes(
            (0..n)
                .map(|b| block_matrix(field, &x, off[b], s[b]))
                .collect(),
        ),
        Ok(None) => IsoVerdict::No("no invertible family of vertex maps".into()),
        Err(()) => IsoVerdict::Unknown {
            scanned: scan.scanned,
        },
    }
}

fn block_matrix(field: PrimeField, x: &[u32], start: usize, size: usize) -> FpMatrix {
    FpMatrix::new(field, size, size, x[start..start + size * size].to_vec()).expect("shape")
}

struct Scan<'a> {
    field: PrimeField,
    s: &'a [usize],
    off: &'a [usize],
    null: &'a FpMatrix,
    groups: &'a [Vec<usize>],
    scanned: u64,
    cap: u64,
}

impl Scan<'_> {
    fn descend(&mut self, block: usize, acc: Vec<u32>) -> Result<Option<Vec<u32>>, ()> {
        if block == self.s.len() {
            return Ok(Some(acc));
        }
        let rows = self.groups[block].clone();
        for t in CoefficientIter::new(self.field, rows.len()) {
            self.scanned += 1;
            if self.scanned > self.cap {
                return Err(());
            }
            let mut cand = acc.clone();
            for (&r, &coef) in rows.iter().zip(&t) {
                if coef == 0 {
                    continue;
                }
                for (c, v) in cand.iter_mut().enumerate() {
                    *v = self.field.add(*v, self.field.mul(coef, self.null.get(r, c)));
                }
            }
            let phi = block_matrix(self.field, &cand, self.off[block], self.s[block]);
            if phi.is_invertible() {
                if let Some(x) = self.descend(block + 1, cand)? {
                    return Ok(Some(x));
                }
            }
        }
        Ok(None)
    }
}
