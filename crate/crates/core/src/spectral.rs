//! Walsh spectra, algebraic normal forms and degree measures.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{is_weight_one, parity, Result, SBox, SboxError};

/// Degree reported for the constant-zero function.
pub const NEG_INFINITY_DEGREE: i32 = -1;

/// Truth table of a single-output function `F_2^m -> F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanComponent {
    m: u32,
    truth: Vec<bool>,
}

impl BooleanComponent {
    pub fn new(m: u32, truth: Vec<bool>) -> Result<Self> {
        if m > crate::MAX_DIMENSION {
            return Err(SboxError::UnsupportedDimension(m));
        }
        if truth.len() != 1 << m {
            return Err(SboxError::BadLength(truth.len()));
        }
        Ok(BooleanComponent { m, truth })
    }

    /// `x -> <values[x], v>` for a vectorial table such as an S-box or one of its derivatives.
    pub fn from_values(m: u32, values: &[u8], v: usize) -> Result<Self> {
        let truth = values
            .iter()
            .map(|&y| parity(u32::from(y) & v as u32) == 1)
            .collect();
        BooleanComponent::new(m, truth)
    }

    /// The component `<f, v>`.
    pub fn of_sbox(f: &SBox, v: usize) -> Self {
        BooleanComponent::from_values(f.dimension(), f.table(), v)
            .expect("S-box tables always have 2^m entries")
    }

    pub fn dimension(&self) -> u32 {
        self.m
    }

    pub fn truth(&self) -> &[bool] {
        &self.truth
    }

    pub fn weight(&self) -> usize {
        self.truth.iter().filter(|&&b| b).count()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == self.truth.len() / 2
    }

    pub fn is_constant(&self) -> bool {
        self.truth.iter().all(|&b| b == self.truth[0])
    }
}

/// Algebraic normal form: `c(x) = XOR_{s subset of x} coefficients[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anf {
    m: u32,
    coefficients: Vec<bool>,
}

impl Anf {
    pub fn coefficients(&self) -> &[bool] {
        &self.coefficients
    }

    /// Largest monomial weight, or [`NEG_INFINITY_DEGREE`] for the zero function.
    pub fn degree(&self) -> i32 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(s, _)| s.count_ones() as i32)
            .max()
            .unwrap_or(NEG_INFINITY_DEGREE)
    }

    /// Inverse Möbius transform, which is the same butterfly again.
    pub fn to_component(&self) -> BooleanComponent {
        let mut truth = self.coefficients.clone();
        moebius_in_place(&mut truth);
        BooleanComponent { m: self.m, truth }
    }
}

fn moebius_in_place(values: &mut [bool]) {
    let n = values.len();
    let mut h = 1;
    while h < n {
        for x in 0..n {
            if x & h != 0 {
                values[x] ^= values[x ^ h];
            }
        }
        h <<= 1;
    }
}

pub fn anf(c: &BooleanComponent) -> Anf {
    let mut coefficients = c.truth.clone();
    moebius_in_place(&mut coefficients);
    Anf {
        m: c.m,
        coefficients,
    }
}

/// In-place fast Walsh–Hadamard transform of a `±1` (or any integer) vector.
pub fn fwht(values: &mut [i32]) {
    let n = values.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (values[j], values[j + h]);
                values[j] = a + b;
                values[j + h] = a - b;
            }
        }
        h <<= 1;
    }
}

/// `W[a][b] = sum_x (-1)^(<b, f(x)> + <a, x>)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    m: u32,
    // column-major: entry (a, b) at b * 2^m + a
    coefficients: Vec<i32>,
}

impl WalshSpectrum {
    pub fn dimension(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> i32 {
        self.coefficients[(b << self.m) + a]
    }

    /// All `W[a][b]` for a fixed output mask `b`.
    pub fn column(&self, b: usize) -> &[i32] {
        let n = 1 << self.m;
        &self.coefficients[b * n..(b + 1) * n]
    }

    pub fn lin(&self) -> u32 {
        let n = 1 << self.m;
        self.coefficients[n..]
            .iter()
            .map(|w| w.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    pub fn lin1(&self) -> u32 {
        let n = 1usize << self.m;
        (0..n)
            .filter(|&b| is_weight_one(b))
            .flat_map(|b| {
                self.column(b)
                    .iter()
                    .enumerate()
                    .filter(|(a, _)| is_weight_one(*a))
                    .map(|(_, w)| w.unsigned_abs())
            })
            .max()
            .unwrap_or(0)
    }
}

pub fn walsh_spectrum(f: &SBox) -> WalshSpectrum {
    let n = f.size();
    let mut coefficients = vec![0i32; n * n];
    for (b, column) in coefficients.chunks_mut(n).enumerate() {
        for (x, w) in column.iter_mut().enumerate() {
            *w = 1 - 2 * parity(u32::from(f.apply(x)) & b as u32) as i32;
        }
        fwht(column);
    }
    WalshSpectrum {
        m: f.dimension(),
        coefficients,
    }
}

/// `max |W[a][b]|` over all `a` and `b != 0`.
pub fn lin(f: &SBox) -> u32 {
    walsh_spectrum(f).lin()
}

/// `max |W[a][b]|` over weight-one `a` and `b`.
pub fn lin1(f: &SBox) -> u32 {
    walsh_spectrum(f).lin1()
}

/// Degree of `<f, v>`.
pub fn component_degree(f: &SBox, v: usize) -> Result<i32> {
    if v == 0 {
        return Err(SboxError::ZeroMask);
    }
    if v >= f.size() {
        return Err(SboxError::OutOfDomain {
            value: v,
            m: f.dimension(),
        });
    }
    Ok(anf(&BooleanComponent::of_sbox(f, v)).degree())
}

/// `n_i(f)`: how many nonzero masks `v` give `<f, v>` degree `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSpectrum(BTreeMap<i32, usize>);

impl DegreeSpectrum {
    pub fn get(&self, degree: i32) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    /// Highest degree with a nonzero count.
    pub fn max_degree(&self) -> i32 {
        self.0
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(&d, _)| d)
            .max()
            .unwrap_or(NEG_INFINITY_DEGREE)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }
}

pub fn degree_spectrum(f: &SBox) -> DegreeSpectrum {
    let mut counts = BTreeMap::new();
    for v in 1..f.size() {
        let d = anf(&BooleanComponent::of_sbox(f, v)).degree();
        *counts.entry(d).or_insert(0) += 1;
    }
    DegreeSpectrum(counts)
}

/// `deg(f)`, the largest component degree.
pub fn algebraic_degree(f: &SBox) -> i32 {
    degree_spectrum(f).max_degree()
}

/// Number of nonzero `v` for which `<values, v>` is constant (0 or 1).
pub fn constant_component_count(m: u32, values: &[u8]) -> usize {
    (1..1usize << m)
        .filter(|&v| {
            let first = parity(u32::from(values[0]) & v as u32);
            values
                .iter()
                .all(|&y| parity(u32::from(y) & v as u32) == first)
        })
        .count()
}

/// `max_{u != 0}` of the number of constant components of the derivative `f_u`.
pub fn n_hat(f: &SBox) -> usize {
    (1..f.size())
        .map(|u| constant_component_count(f.dimension(), &f.derivative_unchecked(u)))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_sbox;

    fn f1() -> SBox {
        parse_sbox("0,1,2,13,4,15,14,7,8,3,5,9,10,6,12,11").unwrap()
    }
    fn f2() -> SBox {
        parse_sbox("0,1,2,7,4,10,15,9,8,3,13,14,12,5,6,11").unwrap()
    }
    fn f3() -> SBox {
        parse_sbox("0,1,2,12,4,13,11,10,8,15,5,9,6,14,7,3").unwrap()
    }

    #[test]
    fn identity_walsh() {
        let w = walsh_spectrum(&SBox::identity(4).unwrap());
        for a in 0..16 {
            assert_eq!(w.get(a, 0), if a == 0 { 16 } else { 0 });
            for b in 1..16 {
                assert_eq!(w.get(a, b), if a == b { 16 } else { 0 });
            }
        }
        assert_eq!(w.lin(), 16);
        assert_eq!(w.lin1(), 16);
    }

    #[test]
    fn lin_values() {
        assert_eq!(lin(&f3()), 8);
        // direct-summation fixtures
        assert_eq!(lin(&f1()), 12);
        assert_eq!(lin1(&f1()), 12);
        assert_eq!(lin1(&f2()), 8);
    }

    #[test]
    fn anf_examples() {
        let zero = BooleanComponent::new(4, vec![false; 16]).unwrap();
        let a = anf(&zero);
        assert!(a.coefficients().iter().all(|&c| !c));
        assert_eq!(a.degree(), NEG_INFINITY_DEGREE);

        let and = BooleanComponent::new(2, vec![false, false, false, true]).unwrap();
        let a = anf(&and);
        assert_eq!(a.coefficients(), &[false, false, false, true]);
        assert_eq!(a.degree(), 2);

        let one = BooleanComponent::new(3, vec![true; 8]).unwrap();
        assert_eq!(anf(&one).degree(), 0);
    }

    #[test]
    fn anf_of_f1_component() {
        // <f1, 1> = x0 + x1x3 + x0x1x3 + x0x2x3 + x1x2x3
        let c = BooleanComponent::of_sbox(&f1(), 1);
        let expected: Vec<bool> = [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0]
            .iter()
            .map(|&b| b == 1)
            .collect();
        let a = anf(&c);
        assert_eq!(a.coefficients(), expected.as_slice());
        assert_eq!(a.to_component(), c);
        assert_eq!(component_degree(&f1(), 1).unwrap(), 3);
    }

    #[test]
    fn degrees() {
        let id = SBox::identity(4).unwrap();
        for v in 1..16 {
            assert_eq!(component_degree(&id, v).unwrap(), 1);
        }
        assert_eq!(component_degree(&id, 0), Err(SboxError::ZeroMask));
        assert_eq!(algebraic_degree(&id), 1);
        assert_eq!(algebraic_degree(&f2()), 3);

        let s = degree_spectrum(&id);
        assert_eq!(s.get(1), 15);
        assert_eq!(s.total(), 15);
        assert_eq!(degree_spectrum(&f2()).get(3), 14);
        assert_eq!(degree_spectrum(&f2()).get(2), 1);
        assert_eq!(degree_spectrum(&f3()).get(3), 14);
        assert_eq!(degree_spectrum(&f1()).get(3), 15);
    }

    #[test]
    fn n_hat_values() {
        assert_eq!(n_hat(&f1()), 1);
        assert_eq!(n_hat(&f2()), 1);
        assert_eq!(n_hat(&SBox::identity(4).unwrap()), 15);
    }

    #[test]
    fn components_of_permutations_are_balanced() {
        for f in [f1(), f2(), f3()] {
            let w = walsh_spectrum(&f);
            for v in 1..16 {
                assert!(BooleanComponent::of_sbox(&f, v).is_balanced());
                assert_eq!(w.get(0, v), 0);
            }
            assert_eq!(degree_spectrum(&f).get(0), 0);
        }
    }
}
