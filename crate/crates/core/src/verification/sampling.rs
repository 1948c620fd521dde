//! Seeded samplers and explicit test tables.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::SBox;

/// Uniform permutation of `F_2^m` with `f(0) = 0`.
pub fn random_normalized_permutation<R: Rng + ?Sized>(m: u32, rng: &mut R) -> SBox {
    let mut table: Vec<u8> = (0..1usize << m).map(|x| x as u8).collect();
    table[1..].shuffle(rng);
    SBox::new(m, table).expect("dimension checked by caller")
}

/// Uniform map `F_2^m -> F_2^m`, not necessarily bijective.
pub fn random_function<R: Rng + ?Sized>(m: u32, rng: &mut R) -> SBox {
    let bound = 1u16 << m;
    let table = (0..bound).map(|_| rng.gen_range(0..bound) as u8).collect();
    SBox::new(m, table).expect("dimension checked by caller")
}

fn primitive_polynomial(m: u32) -> u32 {
    match m {
        2 => 0b111,
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b100_0011,
        7 => 0b1000_0011,
        8 => 0b1_0001_1101,
        _ => panic!("no field table for dimension {m}"),
    }
}

/// Product in `GF(2^m)` (shift-and-add, reduced by a fixed primitive polynomial).
pub fn field_mul(m: u32, a: u32, b: u32) -> u32 {
    let poly = primitive_polynomial(m);
    let (mut a, mut b, mut r) = (a, b, 0);
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= poly;
        }
    }
    r
}

/// `x -> x^e` over `GF(2^m)`.
pub fn power_map(m: u32, e: u32) -> SBox {
    let table = (0..1u32 << m)
        .map(|x| (0..e).fold(1, |acc, _| field_mul(m, acc, x)) as u8)
        .collect();
    SBox::new(m, table).expect("dimension checked by caller")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cube_over_gf8() {
        let f = power_map(3, 3);
        assert_eq!(f.table(), &[0, 1, 3, 4, 5, 6, 7, 2]);
        assert!(f.is_bijective());
    }

    #[test]
    fn sampler_is_normalized_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        for m in 2..=8 {
            let f = random_normalized_permutation(m, &mut a);
            assert!(f.is_bijective() && f.is_normalized());
            assert_eq!(f, random_normalized_permutation(m, &mut b));
        }
    }

    #[test]
    fn field_multiplication_is_a_group_on_units() {
        for m in 2..=8 {
            for a in 1..1u32 << m {
                let row: std::collections::BTreeSet<u32> =
                    (1..1u32 << m).map(|b| field_mul(m, a, b)).collect();
                assert_eq!(row.len(), (1 << m) - 1, "m={m} a={a}");
                assert!(!row.contains(&0));
            }
        }
    }
}
