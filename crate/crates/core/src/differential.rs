//! Difference distribution table and the measures derived from it.

use crate::{is_weight_one, Result, SBox};

/// `counts[u][v] = |{x : f(x ^ u) ^ f(x) = v}|`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ddt {
    m: u32,
    counts: Vec<u32>,
}

/// Size of the image of one derivative `f_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DerivativeImage {
    pub u: usize,
    pub size: usize,
}

impl Ddt {
    pub fn of(f: &SBox) -> Ddt {
        let n = f.size();
        let t = f.table();
        let mut counts = vec![0u32; n * n];
        for u in 0..n {
            let row = &mut counts[u * n..(u + 1) * n];
            for x in 0..n {
                row[(t[x ^ u] ^ t[x]) as usize] += 1;
            }
        }
        Ddt {
            m: f.dimension(),
            counts,
        }
    }

    #[inline]
    pub fn dimension(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn size(&self) -> usize {
        1 << self.m
    }

    #[inline]
    pub fn count(&self, u: usize, v: usize) -> u32 {
        self.counts[u * self.size() + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        let n = self.size();
        &self.counts[u * n..(u + 1) * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.counts.chunks(self.size())
    }

    /// `|Im(f_u)|`, the number of nonzero entries in row `u`.
    pub fn image_size(&self, u: usize) -> usize {
        self.row(u).iter().filter(|&&c| c > 0).count()
    }

    pub fn derivative_images(&self) -> Vec<DerivativeImage> {
        (1..self.size())
            .map(|u| DerivativeImage {
                u,
                size: self.image_size(u),
            })
            .collect()
    }

    /// Smallest derivative image over `u != 0`.
    pub fn min_image_size(&self) -> usize {
        (1..self.size())
            .map(|u| self.image_size(u))
            .min()
            .unwrap_or(0)
    }

    /// `max_{u != 0, v} counts[u][v]`.
    pub fn differential_uniformity(&self) -> u32 {
        self.counts[self.size()..]
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// Every `u != 0` has `delta * |Im(f_u)| > 2^(m-1)`.
    pub fn is_weakly_delta_uniform(&self, delta: u32) -> bool {
        assert!(delta >= 1, "delta must be at least 1");
        let half = 1u64 << (self.m - 1);
        (1..self.size()).all(|u| u64::from(delta) * self.image_size(u) as u64 > half)
    }

    pub fn diff1(&self) -> u32 {
        let n = self.size();
        (0..n)
            .filter(|&a| is_weight_one(a))
            .flat_map(|a| (0..n).filter(|&b| is_weight_one(b)).map(move |b| (a, b)))
            .map(|(a, b)| self.count(a, b))
            .max()
            .unwrap_or(0)
    }
}

pub fn ddt(f: &SBox) -> Ddt {
    Ddt::of(f)
}

/// Smallest `delta` such that `f` is `delta`-differentially uniform.
pub fn differential_uniformity(f: &SBox) -> u32 {
    Ddt::of(f).differential_uniformity()
}

pub fn derivative_image_size(f: &SBox, u: usize) -> Result<usize> {
    f.check_difference(u)?;
    let mut seen = [false; 256];
    Ok(f.derivative_unchecked(u)
        .into_iter()
        .filter(|&v| !std::mem::replace(&mut seen[v as usize], true))
        .count())
}

pub fn is_weakly_delta_uniform(f: &SBox, delta: u32) -> bool {
    Ddt::of(f).is_weakly_delta_uniform(delta)
}

pub fn is_weakly_apn(f: &SBox) -> bool {
    is_weakly_delta_uniform(f, 2)
}

/// Largest DDT entry with weight-one input and output differences.
pub fn diff1(f: &SBox) -> u32 {
    Ddt::of(f).diff1()
}
