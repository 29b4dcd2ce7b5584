//! Finite index sets, tabulated dependent functions and their canonical
//! ranking.
//!
//! Every function between finite index sets in this crate is stored as a
//! table of indices. Tables are ordered lexicographically with entry 0 as
//! the most significant digit; ranks are positions in that order.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("rank {rank} out of range for {total} tables")]
    RankOutOfRange { rank: u64, total: u64 },
    #[error("table count overflows u64")]
    Overflow,
    #[error("entry {index} is {value} but its bound is {bound}")]
    EntryOutOfRange { index: usize, value: u32, bound: u32 },
    #[error("table has {got} entries, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
}

/// The set `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FinIndexSet {
    pub size: u32,
}

impl FinIndexSet {
    pub fn new(size: u32) -> Self {
        FinIndexSet { size }
    }

    pub fn contains(&self, i: u32) -> bool {
        i < self.size
    }

    pub fn iter(&self) -> std::ops::Range<u32> {
        0..self.size
    }
}

/// A dependent function tabulated over `0..domain_sizes.len()`, where
/// entry `i` lies in `0..domain_sizes[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DepTable {
    sizes: Vec<u32>,
    entries: Vec<u32>,
}

impl DepTable {
    pub fn new(sizes: Vec<u32>, entries: Vec<u32>) -> Result<Self, KernelError> {
        if sizes.len() != entries.len() {
            return Err(KernelError::LengthMismatch {
                got: entries.len(),
                expected: sizes.len(),
            });
        }
        for (index, (&value, &bound)) in entries.iter().zip(&sizes).enumerate() {
            if value >= bound {
                return Err(KernelError::EntryOutOfRange { index, value, bound });
            }
        }
        Ok(DepTable { sizes, entries })
    }

    /// A non-dependent function `Fin len -> Fin codomain`.
    pub fn uniform(codomain: u32, entries: Vec<u32>) -> Result<Self, KernelError> {
        DepTable::new(vec![codomain; entries.len()], entries)
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }
}

/// Number of tables with the given per-index codomain sizes.
pub fn table_count(sizes: &[u32]) -> Result<u64, KernelError> {
    sizes.iter().try_fold(1u64, |acc, &n| {
        acc.checked_mul(u64::from(n)).ok_or(KernelError::Overflow)
    })
}

/// `radix ^ len`, overflow-checked.
pub fn pow_checked(radix: u32, len: u32) -> Result<u64, KernelError> {
    u64::from(radix)
        .checked_pow(len)
        .ok_or(KernelError::Overflow)
}

/// Odometer over all tables for a size profile, in canonical order.
#[derive(Debug, Clone)]
pub struct DepMaps {
    sizes: Vec<u32>,
    current: Option<Vec<u32>>,
}

impl DepMaps {
    pub fn new(sizes: &[u32]) -> Self {
        let current = if sizes.iter().any(|&n| n == 0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        DepMaps {
            sizes: sizes.to_vec(),
            current,
        }
    }
}

impl Iterator for DepMaps {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.sizes[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// All tables for the size profile, lexicographically with index 0 most
/// significant.
pub fn enumerate_dep_maps(sizes: &[u32]) -> Vec<DepTable> {
    DepMaps::new(sizes)
        .map(|entries| DepTable {
            sizes: sizes.to_vec(),
            entries,
        })
        .collect()
}

pub fn rank_dep_map(t: &DepTable) -> Result<u64, KernelError> {
    let mut rank = 0u64;
    for (&e, &n) in t.entries.iter().zip(&t.sizes) {
        rank = rank
            .checked_mul(u64::from(n))
            .and_then(|r| r.checked_add(u64::from(e)))
            .ok_or(KernelError::Overflow)?;
    }
    Ok(rank)
}

pub fn unrank_dep_map(sizes: &[u32], rank: u64) -> Result<DepTable, KernelError> {
    let total = table_count(sizes)?;
    if rank >= total {
        return Err(KernelError::RankOutOfRange { rank, total });
    }
    let mut entries = vec![0u32; sizes.len()];
    let mut r = rank;
    for i in (0..sizes.len()).rev() {
        let n = u64::from(sizes[i]);
        entries[i] = (r % n) as u32;
        r /= n;
    }
    Ok(DepTable {
        sizes: sizes.to_vec(),
        entries,
    })
}

/// Rank of a uniform table. Callers guarantee the count fits in u64.
pub fn rank_uniform(entries: &[u32], radix: u32) -> u64 {
    entries
        .iter()
        .fold(0u64, |acc, &e| acc * u64::from(radix) + u64::from(e))
}

pub fn unrank_uniform(rank: u64, radix: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    let mut r = rank;
    let n = u64::from(radix.max(1));
    for i in (0..len).rev() {
        out[i] = (r % n) as u32;
        r /= n;
    }
    out
}

/// The index space of pairs `(s, f)` with `f : Fin dims[s] -> Fin radix`,
/// ordered by `s` then by the rank of `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpace {
    radix: u32,
    dims: Vec<u32>,
    offsets: Vec<u64>,
    total: u64,
}

impl FamilySpace {
    pub fn new(dims: &[u32], radix: u32) -> Result<Self, KernelError> {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0u64;
        for &d in dims {
            offsets.push(total);
            total = total
                .checked_add(pow_checked(radix, d)?)
                .ok_or(KernelError::Overflow)?;
        }
        Ok(FamilySpace {
            radix,
            dims: dims.to_vec(),
            offsets,
            total,
        })
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn dim(&self, s: u32) -> u32 {
        self.dims[s as usize]
    }

    /// Number of families over shape `s`.
    pub fn count(&self, s: u32) -> u64 {
        let next = self
            .offsets
            .get(s as usize + 1)
            .copied()
            .unwrap_or(self.total);
        next - self.offsets[s as usize]
    }

    pub fn offset(&self, s: u32) -> u64 {
        self.offsets[s as usize]
    }

    pub fn index(&self, s: u32, f: &[u32]) -> u64 {
        debug_assert_eq!(f.len(), self.dims[s as usize] as usize);
        self.offsets[s as usize] + rank_uniform(f, self.radix)
    }

    pub fn family(&self, s: u32, rank: u64) -> Vec<u32> {
        unrank_uniform(rank, self.radix, self.dims[s as usize] as usize)
    }

    pub fn decode(&self, index: u64) -> (u32, Vec<u32>) {
        debug_assert!(index < self.total);
        // The last shape whose offset is <= index owns it; shapes with no
        // families share their offset with the next shape.
        let s = (self.offsets.partition_point(|&o| o <= index) - 1) as u32;
        let rank = index - self.offsets[s as usize];
        (s, self.family(s, rank))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_profile_has_one_table() {
        let all = enumerate_dep_maps(&[]);
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn two_by_three_is_lexicographic() {
        let all = enumerate_dep_maps(&[2, 3]);
        let entries: Vec<Vec<u32>> = all.iter().map(|t| t.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn empty_codomain_gives_no_tables() {
        assert!(enumerate_dep_maps(&[2, 0]).is_empty());
    }

    #[test]
    fn rank_examples() {
        let zero = DepTable::new(vec![2, 3], vec![0, 0]).unwrap();
        assert_eq!(rank_dep_map(&zero).unwrap(), 0);
        let t = DepTable::new(vec![2, 3], vec![1, 2]).unwrap();
        assert_eq!(rank_dep_map(&t).unwrap(), 5);
    }

    #[test]
    fn unrank_out_of_range() {
        assert_eq!(
            unrank_dep_map(&[2, 3], 6),
            Err(KernelError::RankOutOfRange { rank: 6, total: 6 })
        );
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(table_count(&[u32::MAX; 3]), Err(KernelError::Overflow));
    }

    #[test]
    fn round_trip_three_by_three() {
        for t in enumerate_dep_maps(&[3, 3]) {
            let r = rank_dep_map(&t).unwrap();
            assert_eq!(unrank_dep_map(&[3, 3], r).unwrap(), t);
        }
    }

    #[test]
    fn family_space_decodes_skipping_empty_shapes() {
        // dims 1, 2, 0 over radix 0: only the dimension-0 shape has a family.
        let fs = FamilySpace::new(&[1, 2, 0], 0).unwrap();
        assert_eq!(fs.total(), 1);
        assert_eq!(fs.decode(0), (2, vec![]));
        let fs = FamilySpace::new(&[0, 1, 2], 3).unwrap();
        assert_eq!(fs.total(), 1 + 3 + 9);
        for i in 0..fs.total() {
            let (s, f) = fs.decode(i);
            assert_eq!(fs.index(s, &f), i);
        }
    }
}
