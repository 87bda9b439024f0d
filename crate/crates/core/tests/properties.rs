mod common;

use common::{all_span_lists, fixture, gf2, m, random_instance, spans};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tailbite::*;

fn invertible(p: u32, size: usize, seed: u64) -> FpMatrix {
    use rand::Rng;
    let f = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let data = (0..size * size).map(|_| rng.gen_range(0..p)).collect();
        let u = FpMatrix::new(f, size, size, data).unwrap();
        if u.is_invertible() {
            return u;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn changing_generator_basis_keeps_edge_spaces(seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, s) = random_instance(&mut rng, p, 5, 2);
        let h = g.right_kernel();
        let d = bcjr_displacement(&g, &h, &s).unwrap();
        let u = invertible(p, 2, seed ^ 1);
        let a = bcjr_trellis(&g, &h, &d).unwrap();
        let b = bcjr_trellis(&u.mul(&g).unwrap(), &h, &u.mul(&d).unwrap()).unwrap();
        for i in 0..5 {
            prop_assert!(a.trellis().edge_space(i).same_row_space(&b.trellis().edge_space(i)));
        }
    }

    #[test]
    fn changing_parity_basis_gives_isomorphic_trellis(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, s) = random_instance(&mut rng, 2, 5, 2);
        let h = g.right_kernel();
        if h.rows() == 0 {
            return Ok(());
        }
        let d = bcjr_displacement(&g, &h, &s).unwrap();
        let v = invertible(2, h.rows(), seed ^ 2);
        let a = bcjr_trellis(&g, &h, &d).unwrap();
        let b = bcjr_trellis(&g, &v.mul(&h).unwrap(), &d.mul(&v.transpose()).unwrap()).unwrap();
        for i in 0..5 {
            let mapped = a.vertex_matrix(i).mul(&v.transpose()).unwrap();
            prop_assert_eq!(&mapped, b.vertex_matrix(i));
        }
        prop_assert!(a.trellis().isomorphic(b.trellis(), &Caps::default()).is_yes());
    }

    #[test]
    fn bcjr_ranks_never_exceed_product(seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, s) = random_instance(&mut rng, p, 6, 3);
        let prod = product_trellis(&g, &s).unwrap();
        let b = span_bcjr(&g, &s).unwrap();
        let (ms, ns) = (prod.scp(), b.trellis().scp());
        prop_assert!(ns.iter().zip(&ms).all(|(a, b)| a <= b));
        if ns == ms && g.rank() == g.rows() {
            prop_assert!(prod.isomorphic(b.trellis(), &Caps::default()).is_yes());
            prop_assert!(s.distinct_starts() && s.distinct_ends());
        }
        prop_assert!(b.trellis().is_non_mergeable(&Caps::default()).unwrap());
    }

    #[test]
    fn dual_and_edge_space_dual_bounds(seed in any::<u64>(), p in prop_oneof![Just(2u32), Just(3)]) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, s) = random_instance(&mut rng, p, 5, 2);
        let b = span_bcjr(&g, &s).unwrap();
        let d = bcjr_dual(&b).unwrap();
        prop_assert_eq!(d.trellis().scp(), b.trellis().scp());
        prop_assert!(d.trellis().label_code().same_row_space(&b.parity_check().row_space_basis())
            || b.parity_check().rows() == 0);
        let e = edge_space_dual(&b).unwrap();
        let (dual_ecp, e_ecp) = (d.trellis().ecp(), e.profile().ecp);
        prop_assert!(dual_ecp.iter().zip(&e_ecp).all(|(a, b)| a <= b));
        let sc = b.trellis().scp();
        let ec = b.trellis().ecp();
        for i in 0..5 {
            prop_assert_eq!(e_ecp[i], sc[i] + sc[(i + 1) % 5] + 1 - ec[i]);
            let gram = pairing_gram(&b, i);
            prop_assert_eq!(gram.rank(), gram.rows());
        }
    }

    #[test]
    fn shift_of_trellis_shifts_code(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, s) = random_instance(&mut rng, 3, 5, 2);
        let b = span_bcjr(&g, &s).unwrap();
        let shifted = b.trellis().shift();
        let code = LinearCode::spanned_by(&g);
        prop_assert!(shifted.label_code().same_row_space(code.shift(1).generator()));
        let prod = product_trellis(&g, &s).unwrap();
        let sh = prod.shift();
        prop_assert_eq!(sh.vertex_matrix(0), prod.vertex_matrix(1));
    }
}

#[test]
fn kv_trellises_are_bcjr_trellises_up_to_length_six() {
    for n in 2..=6 {
        for k in 1..n {
            for g in rref_generators(gf2(), n, k) {
                let code = LinearCode::new(g).unwrap();
                if !code.has_full_support() || !code.dual().has_full_support() {
                    continue;
                }
                let all = enumerate_characteristic_matrices(&code, &Caps::default()).unwrap();
                for pair in &all.pairs {
                    for sel in pair.independent_selections() {
                        let t = kv_trellis(pair, &sel).unwrap();
                        let b = span_bcjr(t.label_matrix(), &pair.spans().select(&sel)).unwrap();
                        assert_eq!(t.scp(), b.trellis().scp(), "{} rows {sel:?}", pair.spans());
                    }
                }
            }
        }
    }
}

#[test]
fn merge_reaches_bcjr_for_every_span_choice() {
    let g = m(&["10110", "01101", "00111"]);
    for s in all_span_lists(&g) {
        let r = merge_product_to_bcjr(&g, &s, &Caps::default()).unwrap();
        assert!(r.coefficient_map_ok, "{s}");
        assert!(r.isomorphic.is_yes(), "{s}");
        assert_eq!(r.quotient.scp(), r.bcjr.trellis().scp());
    }
}

#[test]
fn kv_input_needs_no_merging() {
    let code = fixture("kv4");
    let pair = characteristic_pair(&code, &Caps::default()).unwrap();
    for sel in pair.independent_selections() {
        let g = pair.matrix().select_rows(&sel);
        let r = merge_product_to_bcjr(&g, &pair.spans().select(&sel), &Caps::default()).unwrap();
        assert!(r.w.iter().all(|w| w.rows() == 0));
    }
}

#[test]
fn caps_are_reported_not_truncated() {
    let code = fixture("cm6");
    let tiny = Caps::uniform(1);
    assert!(matches!(code.codewords(&tiny), Err(Error::CapExceeded { .. })));
    let all = enumerate_characteristic_matrices(&code, &Caps { matrices: 1, ..Caps::default() }).unwrap();
    assert!(all.truncated);
    assert_eq!(all.pairs.len(), 1);
    let s = spans("(1,5],(2,4],(4,2]", 6);
    let t = product_trellis(code.generator(), &s).unwrap();
    let alt = product_trellis(fixture("cm6-alt").generator(), &s).unwrap();
    let caps = Caps { iso_scan: 0, ..Caps::default() };
    assert!(matches!(t.isomorphic(&t, &caps), IsoVerdict::Unknown { .. }));
    assert!(t.isomorphic(&alt, &Caps::default()).is_no());
    assert!(matches!(t.expand(&tiny), Err(Error::CapExceeded { .. })));
}

#[test]
fn minimal_dual_selection_is_isomorphic_to_bcjr_dual() {
    let code = fixture("cm6");
    let pair = characteristic_pair(&code, &Caps::default()).unwrap();
    let s = pair.span_matrix();
    let mut checked = 0;
    for sel in pair.independent_selections() {
        let scp = s.kv_scp_rows(&sel, 3).unwrap();
        if minimality_of_profile(&scp, &code, &Caps::default()).unwrap() != Minimality::Minimal {
            continue;
        }
        let r = kv_duality_check(&code, &pair, &sel, &Caps::default()).unwrap();
        assert!(r.weak() && r.weak_isomorphic(), "selection {sel:?}");
        for v in r.verdicts.iter().filter(|v| v.independent) {
            assert_eq!(v.scp_matches, Some(true));
        }
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn dual_of_dual_and_minimality_transfer() {
    let code = fixture("cm6");
    let pair = characteristic_pair(&code, &Caps::default()).unwrap();
    let sel: Vec<usize> = ["(1,5]", "(2,4]", "(4,2]"]
        .iter()
        .map(|t| pair.row_with_span(&CircularInterval::parse(t, 6).unwrap()).unwrap())
        .collect();
    let t = kv_trellis(&pair, &sel).unwrap();
    assert_eq!(t.is_minimal(&code, &Caps::default()).unwrap(), Minimality::Minimal);
    let b = span_bcjr(t.label_matrix(), &pair.spans().select(&sel)).unwrap();
    let d = bcjr_dual(&b).unwrap();
    assert_eq!(bcjr_dual(&d).unwrap(), b);
    assert_eq!(d.trellis().is_minimal(&code.dual(), &Caps::default()).unwrap(), Minimality::Minimal);
    let e = edge_space_dual(&b).unwrap();
    for i in 0..6 {
        assert!(e.ambient[i].same_row_space(&d.trellis().edge_space(i)), "time {i}");
    }
}
