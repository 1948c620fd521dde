//! Random invertible affine maps of `F_2^m`, used to check that measures are
//! affine invariants.

use rand::Rng;

use crate::invariance::rank;
use crate::SBox;

/// `x -> M x ^ c` with `M` invertible over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    m: u32,
    // column images: M e_i
    columns: Vec<u8>,
    constant: u8,
}

impl AffineMap {
    pub fn new(m: u32, columns: Vec<u8>, constant: u8) -> Option<Self> {
        let mask = ((1u32 << m) - 1) as u8;
        let valid = columns.len() == m as usize
            && columns.iter().all(|&c| c & !mask == 0)
            && constant & !mask == 0
            && rank(columns.iter().copied()) == m;
        valid.then_some(AffineMap {
            m,
            columns,
            constant,
        })
    }

    pub fn random<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Self {
        let bound = 1u16 << m;
        loop {
            let columns: Vec<u8> = (0..m).map(|_| rng.gen_range(0..bound) as u8).collect();
            let constant = rng.gen_range(0..bound) as u8;
            if let Some(map) = AffineMap::new(m, columns, constant) {
                return map;
            }
        }
    }

    pub fn apply(&self, x: u8) -> u8 {
        self.columns
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 1)
            .fold(self.constant, |acc, (_, &c)| acc ^ c)
    }

    /// `outer ∘ f ∘ inner`.
    pub fn conjugate(f: &SBox, inner: &AffineMap, outer: &AffineMap) -> SBox {
        assert_eq!(inner.m, f.dimension());
        assert_eq!(outer.m, f.dimension());
        let table = (0..f.size())
            .map(|x| outer.apply(f.apply(inner.apply(x as u8).into())))
            .collect();
        SBox::new(f.dimension(), table).expect("affine maps preserve the domain")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_maps_are_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for m in 2..=6 {
            let a = AffineMap::random(m, &mut rng);
            let image = SBox::new(m, (0..1u16 << m).map(|x| a.apply(x as u8)).collect()).unwrap();
            assert!(image.is_bijective());
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        assert!(AffineMap::new(2, vec![1, 1], 0).is_none());
        assert!(AffineMap::new(2, vec![1, 2], 3).is_some());
        assert!(AffineMap::new(2, vec![1, 4], 0).is_none());
    }
}
