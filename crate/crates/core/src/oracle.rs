//! Slow reference computations used to cross-check the fast paths.
//!
//! Each function follows its definition literally, with no transforms and
//! no shared code with the optimized routines.

use crate::SBox;

fn dot(a: usize, b: usize) -> i32 {
    ((a & b).count_ones() & 1) as i32
}

/// `W[a][b]` by direct summation, indexed `[a][b]`.
pub fn direct_walsh(f: &SBox) -> Vec<Vec<i32>> {
    let n = f.size();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|x| 1 - 2 * ((dot(b, f.apply(x).into()) + dot(a, x)) & 1))
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// DDT by counting solutions of `f(x ^ u) ^ f(x) = v` one `(u, v)` at a time.
pub fn brute_ddt(f: &SBox) -> Vec<Vec<u32>> {
    let n = f.size();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    (0..n)
                        .filter(|&x| (f.apply(x ^ u) ^ f.apply(x)) as usize == v)
                        .count() as u32
                })
                .collect()
        })
        .collect()
}

/// `|Im(f_u)|` through an explicit set.
pub fn image_size(f: &SBox, u: usize) -> usize {
    (0..f.size())
        .map(|x| f.apply(x ^ u) ^ f.apply(x))
        .collect::<std::collections::BTreeSet<u8>>()
        .len()
}

/// Weakly APN via derivative image sets: every `|Im(f_u)| > 2^(m-2)`.
pub fn weakly_apn_by_sets(f: &SBox) -> bool {
    let quarter = f.size() / 4;
    (1..f.size()).all(|u| image_size(f, u) > quarter)
}

pub fn delta_star(f: &SBox) -> u32 {
    brute_ddt(f)
        .into_iter()
        .skip(1)
        .flatten()
        .max()
        .unwrap_or(0)
}

pub fn lin(f: &SBox) -> u32 {
    direct_walsh(f)
        .into_iter()
        .flat_map(|row| row.into_iter().skip(1))
        .map(i32::unsigned_abs)
        .max()
        .unwrap_or(0)
}

/// Evaluates an ANF coefficient vector at `x` by summing monomials `s ⊆ x`.
pub fn evaluate_anf(coefficients: &[bool], x: usize) -> bool {
    coefficients
        .iter()
        .enumerate()
        .filter(|&(s, &c)| c && s & !x == 0)
        .count()
        % 2
        == 1
}
