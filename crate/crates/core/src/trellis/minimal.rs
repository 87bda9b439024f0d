use itertools::Itertools;

use crate::caps::Caps;
use crate::charpair::enumerate_characteristic_matrices;
use crate::code::LinearCode;
use crate::error::Result;

/// Minimality verdict for a linear trellis of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    Minimal,
    /// A KV-trellis with a componentwise smaller (and somewhere strictly
    /// smaller) profile: `selection` indexes rows of characteristic matrix
    /// number `pair` in enumeration order.
    Dominated {
        profile: Vec<usize>,
        pair: usize,
        selection: Vec<usize>,
    },
    /// Enumeration was truncated and an unexamined matrix could decide it.
    Unknown,
}

fn dominates(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y) && a != b
}

/// Decides minimality of a profile: minimal trellises are KV-trellises, so a
/// profile is minimal iff no KV-trellis profile dominates it.
pub fn minimality_of_profile(scp: &[usize], code: &LinearCode, caps: &Caps) -> Result<Minimality> {
    let all = enumerate_characteristic_matrices(code, caps)?;
    let s = all.pairs[0].span_matrix();
    let (n, k) = (code.n(), code.k());
    let mut undecided = false;
    for sel in (0..n).combinations(k) {
        let profile = s.kv_scp_rows(&sel, k)?;
        if !dominates(&profile, scp) {
            continue;
        }
        match all.pairs.iter().position(|p| p.independent(&sel)) {
            Some(pair) => {
                return Ok(Minimality::Dominated {
                    profile,
                    pair,
                    selection: sel,
                })
            }
            None => undecided |= all.truncated,
        }
    }
    Ok(if undecided {
        Minimality::Unknown
    } else {
        Minimality::Minimal
    })
}
