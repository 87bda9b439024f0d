#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use tailbite::{spans_of, CodeFile, FpMatrix, LinearCode, PrimeField, SpanList};

pub fn gf2() -> PrimeField {
    PrimeField::binary()
}

pub fn m(rows: &[&str]) -> FpMatrix {
    FpMatrix::parse_rows(gf2(), rows).unwrap()
}

pub fn spans(text: &str, n: usize) -> SpanList {
    SpanList::parse(text, n).unwrap()
}

pub fn fixture(name: &str) -> LinearCode {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.code"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.parse::<CodeFile>().unwrap().code().unwrap()
}

/// Random nonzero rows with one random span each.
pub fn random_instance(rng: &mut impl Rng, p: u32, n: usize, k: usize) -> (FpMatrix, SpanList) {
    let f = PrimeField::new(p).unwrap();
    loop {
        let data: Vec<u32> = (0..n * k).map(|_| rng.gen_range(0..p)).collect();
        let g = FpMatrix::new(f, k, n, data).unwrap();
        if (0..k).any(|l| g.is_zero_row(l)) {
            continue;
        }
        let list = (0..k)
            .map(|l| {
                let options = spans_of(&g.row_vector(l)).unwrap();
                options[rng.gen_range(0..options.len())]
            })
            .collect();
        return (g, SpanList::new(n, list).unwrap());
    }
}

/// Every span list for the rows of `g`, one span per row.
pub fn all_span_lists(g: &FpMatrix) -> Vec<SpanList> {
    use itertools::Itertools;
    let options: Vec<Vec<_>> = (0..g.rows())
        .map(|l| spans_of(&g.row_vector(l)).unwrap())
        .collect();
    options
        .into_iter()
        .multi_cartesian_product()
        .map(|list| SpanList::new(g.cols(), list).unwrap())
        .collect()
}

/// Span lists meeting the characteristic-pair definition, by exhaustive
/// search over spans attained by codewords: one span per start, distinct
/// ends, every time covered n-k times, and some choice of codewords with
/// those spans generating the code.
pub fn brute_force_span_lists(code: &LinearCode) -> Vec<SpanList> {
    use itertools::Itertools;
    use std::collections::BTreeMap;
    use tailbite::{CircularInterval, Caps, FpVector};
    let n = code.n();
    let words = code.codewords(&Caps::default()).unwrap();
    let mut by_start: Vec<BTreeMap<CircularInterval, Vec<FpVector>>> = vec![BTreeMap::new(); n];
    for w in words.iter().filter(|w| !w.is_zero()) {
        for s in spans_of(w).unwrap() {
            by_start[s.start()].entry(s).or_default().push(w.clone());
        }
    }
    let choices: Vec<Vec<CircularInterval>> =
        by_start.iter().map(|m| m.keys().cloned().collect()).collect();
    let mut out = Vec::new();
    for list in choices.into_iter().multi_cartesian_product() {
        let t = SpanList::new(n, list.clone()).unwrap();
        if !t.distinct_ends() || (0..n).any(|i| t.active_rows(i).len() != n - code.k()) {
            continue;
        }
        let cands: Vec<&Vec<FpVector>> = list.iter().map(|s| &by_start[s.start()][s]).collect();
        let generates = cands.into_iter().multi_cartesian_product().any(|rows| {
            let owned: Vec<FpVector> = rows.into_iter().cloned().collect();
            FpMatrix::from_vectors(code.field(), n, &owned).unwrap().rank() == code.k()
        });
        if generates {
            out.push(t);
        }
    }
    out
}
