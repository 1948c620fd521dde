//! Linear subspaces of `F_2^m` and strong `l`-anti-invariance.

use std::sync::OnceLock;

use crate::{Result, SBox, SboxError, MAX_DIMENSION};

/// A linear subspace of `F_2^m` with its canonical reduced row-echelon basis.
///
/// Basis rows are sorted by leading (highest) bit, descending, and every
/// leading bit is cleared in all other rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    m: u32,
    basis: Vec<u8>,
    elements: Vec<u8>,
}

impl Subspace {
    /// Span of `vectors`, reduced to canonical form.
    pub fn span(m: u32, vectors: &[u8]) -> Subspace {
        let basis = reduced_basis(vectors);
        let elements = span_elements(&basis);
        Subspace { m, basis, elements }
    }

    pub fn ambient_dimension(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn basis(&self) -> &[u8] {
        &self.basis
    }

    /// Members in ascending order.
    pub fn elements(&self) -> &[u8] {
        &self.elements
    }

    pub fn contains(&self, x: u8) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

fn reduced_basis(vectors: &[u8]) -> Vec<u8> {
    let mut rows: Vec<u8> = Vec::new();
    for &v in vectors {
        let mut r = v;
        for &b in &rows {
            r = r.min(r ^ b);
        }
        if r != 0 {
            rows.push(r);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    // clear each leading bit from every other row
    for i in 0..rows.len() {
        let lead = 1u8 << (7 - rows[i].leading_zeros());
        for j in 0..rows.len() {
            if j != i && rows[j] & lead != 0 {
                rows[j] ^= rows[i];
            }
        }
    }
    rows.sort_unstable_by(|a, b| b.cmp(a));
    rows
}

fn span_elements(basis: &[u8]) -> Vec<u8> {
    let mut elements = vec![0u8];
    for &b in basis {
        let extra: Vec<u8> = elements.iter().map(|&e| e ^ b).collect();
        elements.extend(extra);
    }
    elements.sort_unstable();
    elements
}

/// GF(2) rank of a set of vectors.
pub(crate) fn rank(vectors: impl IntoIterator<Item = u8>) -> u32 {
    let mut pivots = [0u8; 8];
    let mut r = 0;
    for v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 7 - x.leading_zeros() as usize;
            if pivots[top] == 0 {
                pivots[top] = x;
                r += 1;
                break;
            }
            x ^= pivots[top];
        }
    }
    r
}

/// Number of `d`-dimensional subspaces of `F_2^m`.
pub fn gaussian_binomial(m: u32, d: u32) -> u64 {
    if d > m {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..d {
        num *= (1u64 << (m - i)) - 1;
        den *= (1u64 << (i + 1)) - 1;
    }
    num / den
}

/// Every `d`-dimensional subspace of `F_2^m`, each exactly once, in a
/// deterministic order.
pub fn enumerate_subspaces(m: u32, d: u32) -> Vec<Subspace> {
    assert!(
        m <= MAX_DIMENSION && d <= m,
        "need d <= m <= {MAX_DIMENSION}"
    );
    let mut out = Vec::with_capacity(gaussian_binomial(m, d) as usize);
    let mut pivots = Vec::with_capacity(d as usize);
    choose_pivots(m, d, m, &mut pivots, &mut out);
    out
}

// Pivots are chosen strictly descending; each row is its pivot bit plus an
// arbitrary pattern on the lower non-pivot positions.
fn choose_pivots(m: u32, d: u32, below: u32, pivots: &mut Vec<u32>, out: &mut Vec<Subspace>) {
    if pivots.len() == d as usize {
        fill_rows(m, pivots, out);
        return;
    }
    let remaining = d as usize - pivots.len();
    for p in (0..below).rev() {
        if (p as usize) + 1 < remaining {
            break;
        }
        pivots.push(p);
        choose_pivots(m, d, p, pivots, out);
        pivots.pop();
    }
}

fn fill_rows(m: u32, pivots: &[u32], out: &mut Vec<Subspace>) {
    let pivot_mask: u32 = pivots.iter().map(|&p| 1u32 << p).sum();
    let free: Vec<Vec<u32>> = pivots
        .iter()
        .map(|&p| (0..p).filter(|&q| pivot_mask & (1 << q) == 0).collect())
        .collect();
    let total_bits: usize = free.iter().map(Vec::len).sum();
    for pattern in 0u64..1 << total_bits {
        let mut bits = pattern;
        let basis: Vec<u8> = pivots
            .iter()
            .zip(&free)
            .map(|(&p, positions)| {
                let mut row = 1u32 << p;
                for &q in positions {
                    if bits & 1 == 1 {
                        row |= 1 << q;
                    }
                    bits >>= 1;
                }
                row as u8
            })
            .collect();
        let elements = span_elements(&basis);
        out.push(Subspace { m, basis, elements });
    }
}

type SubspaceTable = Vec<Vec<Subspace>>;

static CACHE: [OnceLock<SubspaceTable>; MAX_DIMENSION as usize + 1] =
    [const { OnceLock::new() }; MAX_DIMENSION as usize + 1];

/// Cached subspace lists for `F_2^m`, indexed by dimension.
pub fn subspaces_by_dimension(m: u32) -> &'static [Vec<Subspace>] {
    CACHE[m as usize].get_or_init(|| (0..=m).map(|d| enumerate_subspaces(m, d)).collect())
}

/// Whether a nonempty set of vectors contains 0, is XOR-closed, and so has
/// power-of-two size. Duplicates are ignored.
pub fn is_subspace(set: &[u8]) -> bool {
    let mut members = [false; 256];
    for &x in set {
        members[x as usize] = true;
    }
    if !members[0] {
        return false;
    }
    let distinct: Vec<u8> = (0..=255u8).filter(|&x| members[x as usize]).collect();
    distinct
        .iter()
        .all(|&a| distinct.iter().all(|&b| members[(a ^ b) as usize]))
}

// For a bijection with f(0) = 0 the image of V already has 0 and 2^dim V
// distinct members, so it is a subspace iff its rank equals dim V.
fn maps_onto_subspace(f: &SBox, v: &Subspace) -> bool {
    rank(v.elements().iter().map(|&x| f.apply(x.into()))) == v.dim()
}

fn check_anti_invariance_input(f: &SBox, level: u32) -> Result<()> {
    let m = f.dimension();
    if !(1..=m).contains(&level) {
        return Err(SboxError::InvalidLevel { level, m });
    }
    if !f.is_bijective() {
        return Err(SboxError::NotBijective);
    }
    if !f.is_normalized() {
        return Err(SboxError::NotNormalized(f.apply(0)));
    }
    Ok(())
}

/// A proper subspace of dimension at least `m - level` whose image under `f`
/// is again a subspace, if one exists.
pub fn anti_invariance_witness(f: &SBox, level: u32) -> Result<Option<Subspace>> {
    check_anti_invariance_input(f, level)?;
    let m = f.dimension();
    let table = subspaces_by_dimension(m);
    // {0} -> {0} is excluded as vacuous
    let lowest = (m - level).max(1);
    Ok((lowest..m)
        .flat_map(|d| table[d as usize].iter())
        .find(|v| maps_onto_subspace(f, v))
        .cloned())
}

/// No subspace `V` with `m - level <= dim V < m` has `f(V)` a subspace.
pub fn is_strongly_anti_invariant(f: &SBox, level: u32) -> Result<bool> {
    Ok(anti_invariance_witness(f, level)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_sbox;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        assert_eq!(enumerate_subspaces(4, 1).len(), 15);
        assert_eq!(enumerate_subspaces(4, 2).len(), 35);
        assert_eq!(enumerate_subspaces(4, 3).len(), 15);
        assert_eq!(gaussian_binomial(4, 2), 35);
        for m in 0..=6 {
            for d in 0..=m {
                let subs = enumerate_subspaces(m, d);
                assert_eq!(subs.len() as u64, gaussian_binomial(m, d), "m={m} d={d}");
                let mut distinct: Vec<&[u8]> = subs.iter().map(|s| s.elements()).collect();
                distinct.sort();
                distinct.dedup();
                assert_eq!(distinct.len(), subs.len());
                for s in &subs {
                    assert_eq!(s.elements().len(), 1 << d);
                    assert!(is_subspace(s.elements()));
                    assert_eq!(&Subspace::span(m, s.elements()), s);
                }
            }
        }
    }

    #[test]
    fn canonical_basis() {
        let s = Subspace::span(4, &[5, 9, 12]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[9, 5]);
        assert_eq!(s.elements(), &[0, 5, 9, 12]);
        assert!(s.contains(12));
        assert!(!s.contains(3));
    }

    #[test]
    fn subspace_membership() {
        assert!(is_subspace(&[0, 1, 2, 3]));
        assert!(!is_subspace(&[0, 1, 2]));
        assert!(is_subspace(&[0, 5, 9, 12]));
        assert!(!is_subspace(&[1, 2, 3]));
        assert!(is_subspace(&[0]));
    }

    #[test]
    fn identity_is_not_anti_invariant() {
        let id = SBox::identity(4).unwrap();
        assert!(!is_strongly_anti_invariant(&id, 1).unwrap());
        assert!(!is_strongly_anti_invariant(&id, 2).unwrap());
    }

    #[test]
    fn f4_maps_a_plane_onto_a_plane() {
        // exhaustive plane scan: {0,4,9,13} -> {0,3,4,7} and {0,5,10,15} -> {0,6,11,13}
        let f4 = parse_sbox("0,1,2,12,4,6,14,5,8,3,13,10,9,7,15,11").unwrap();
        let planes: Vec<Vec<u8>> = enumerate_subspaces(4, 2)
            .into_iter()
            .filter(|v| maps_onto_subspace(&f4, v))
            .map(|v| v.elements().to_vec())
            .collect();
        let mut planes = planes;
        planes.sort();
        assert_eq!(planes, vec![vec![0, 4, 9, 13], vec![0, 5, 10, 15]]);
        assert!(!is_strongly_anti_invariant(&f4, 2).unwrap());
        assert!(anti_invariance_witness(&f4, 2).unwrap().is_some());
    }

    #[test]
    fn rejects_bad_inputs() {
        let s0 = parse_sbox("3,8,15,1,10,6,5,11,14,13,4,2,7,0,9,12").unwrap();
        assert_eq!(
            is_strongly_anti_invariant(&s0, 2),
            Err(SboxError::NotNormalized(3))
        );
        let flat = parse_sbox("0,0,1,2").unwrap();
        assert_eq!(
            is_strongly_anti_invariant(&flat, 1),
            Err(SboxError::NotBijective)
        );
        let id = SBox::identity(4).unwrap();
        assert!(is_strongly_anti_invariant(&id, 0).is_err());
        assert!(is_strongly_anti_invariant(&id, 5).is_err());
    }
}
