use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sbox_core::affine::AffineMap;
use sbox_core::invariance::{
    anti_invariance_witness, is_strongly_anti_invariant, is_subspace, subspaces_by_dimension,
};
use sbox_core::verification::sampling::random_normalized_permutation;
use sbox_core::{
    algebraic_degree, ddt, degree_spectrum, differential_uniformity, is_weakly_apn,
    is_weakly_delta_uniform, lin, n_hat, parse_sbox, walsh_spectrum, SBox,
};

fn permutation(dims: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = SBox> {
    dims.prop_flat_map(|m| {
        Just((0..1u16 << m).map(|x| x as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(move |t| SBox::new(m, t).unwrap())
    })
}

fn normalized_permutation(dims: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = SBox> {
    permutation(dims).prop_map(|f| f.normalize())
}

fn function(dims: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = SBox> {
    dims.prop_flat_map(|m| {
        prop::collection::vec(0..(1u16 << m), 1usize << m)
            .prop_map(move |t| SBox::new(m, t.into_iter().map(|y| y as u8).collect()).unwrap())
    })
}

fn image_profile(f: &SBox) -> Vec<usize> {
    let table = ddt(f);
    let mut sizes: Vec<usize> = (1..f.size()).map(|u| table.image_size(u)).collect();
    sizes.sort_unstable();
    sizes
}

proptest! {
    #[test]
    fn parse_round_trips(f in function(2..=8)) {
        prop_assert_eq!(parse_sbox(&f.to_csv()).unwrap(), f.clone());
        if let Some(hex) = f.to_hex() {
            prop_assert_eq!(parse_sbox(&hex).unwrap(), f);
        }
    }

    #[test]
    fn normalize_is_idempotent_and_keeps_measures(f in permutation(2..=6)) {
        let g = f.normalize();
        prop_assert!(g.is_normalized());
        prop_assert_eq!(g.normalize(), g.clone());
        prop_assert_eq!(ddt(&f), ddt(&g));
        prop_assert_eq!(lin(&f), lin(&g));
        prop_assert_eq!(degree_spectrum(&f), degree_spectrum(&g));
        prop_assert_eq!(n_hat(&f), n_hat(&g));
    }

    #[test]
    fn ddt_structure(f in function(2..=7)) {
        let table = ddt(&f);
        let n = f.size() as u32;
        prop_assert_eq!(table.count(0, 0), n);
        for u in 0..f.size() {
            let row = table.row(u);
            prop_assert_eq!(row.iter().sum::<u32>(), n);
            prop_assert!(row.iter().all(|c| c % 2 == 0));
            if u > 0 {
                prop_assert!(table.image_size(u) <= f.size() / 2);
            }
        }
    }

    #[test]
    fn parseval_per_column(f in function(2..=7)) {
        let w = walsh_spectrum(&f);
        let n = f.size() as i64;
        for b in 0..f.size() {
            let energy: i64 = w.column(b).iter().map(|&c| i64::from(c).pow(2)).sum();
            prop_assert_eq!(energy, n * n);
        }
    }

    #[test]
    fn affine_equivalence_keeps_measures(f in permutation(3..=6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = f.dimension();
        let g = AffineMap::conjugate(&f, &AffineMap::random(m, &mut rng), &AffineMap::random(m, &mut rng));
        prop_assert_eq!(differential_uniformity(&f), differential_uniformity(&g));
        prop_assert_eq!(is_weakly_apn(&f), is_weakly_apn(&g));
        prop_assert_eq!(lin(&f), lin(&g));
        prop_assert_eq!(degree_spectrum(&f), degree_spectrum(&g));
        prop_assert_eq!(n_hat(&f), n_hat(&g));
        prop_assert_eq!(image_profile(&f), image_profile(&g));
    }

    #[test]
    fn anti_invariance_is_monotone_in_level(f in normalized_permutation(3..=5)) {
        let m = f.dimension();
        let verdicts: Vec<bool> = (1..=m).map(|l| is_strongly_anti_invariant(&f, l).unwrap()).collect();
        for pair in verdicts.windows(2) {
            prop_assert!(!pair[1] || pair[0], "{:?}", verdicts);
        }
    }

    #[test]
    fn anti_invariance_matches_image_test(f in normalized_permutation(3..=4), level in 1u32..=3) {
        let m = f.dimension();
        let level = level.min(m);
        let expected = subspaces_by_dimension(m)
            .iter()
            .enumerate()
            .filter(|&(d, _)| d >= (m - level).max(1) as usize && d < m as usize)
            .flat_map(|(_, vs)| vs.iter())
            .any(|v| {
                let image: Vec<u8> = v.elements().iter().map(|&x| f.apply(x.into())).collect();
                is_subspace(&image)
            });
        let witness = anti_invariance_witness(&f, level).unwrap();
        prop_assert_eq!(witness.is_some(), expected);
        if let Some(v) = witness {
            let image: Vec<u8> = v.elements().iter().map(|&x| f.apply(x.into())).collect();
            prop_assert!(is_subspace(&image));
        }
    }

    #[test]
    fn four_bit_permutations_have_degree_at_most_three(f in permutation(4..=4)) {
        prop_assert!(algebraic_degree(&f) <= 3);
    }

    #[test]
    fn uniform_anti_invariant_is_weakly_apn(f in normalized_permutation(4..=4)) {
        if differential_uniformity(&f) <= 4 && is_strongly_anti_invariant(&f, 2).unwrap() {
            prop_assert!(is_weakly_apn(&f));
        }
    }
}

#[test]
fn differential_uniformity_implies_weak_uniformity() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100_000 {
        let f = random_normalized_permutation(4, &mut rng);
        let delta = differential_uniformity(&f);
        assert!(is_weakly_delta_uniform(&f, delta), "{:?}", f.table());
    }
}
