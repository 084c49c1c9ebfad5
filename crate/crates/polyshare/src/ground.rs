//! Ground-set indexing, subset masks, integer point vectors, and block-size
//! partitions shared by all other modules.
//!
//! Blocks are indexed `0..m` internally. All textual input and output uses
//! 1-based indices, so a printed subset reads `{1,3,4}`, a family of minimal
//! sets reads `{1};{2,3}` and a point vector reads `(1,0,2,0)`.

use std::fmt;

use crate::error::Error;

/// Maximum number of blocks supported by the bitmask subset encoding.
pub const MAX_BLOCKS: usize = 16;

/// The index set of blocks `{0, .., m-1}` with `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSet {
    m: usize,
}

impl GroundSet {
    pub fn new(m: usize) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::GroundSetTooSmall(m));
        }
        if m > MAX_BLOCKS {
            return Err(Error::GroundSetTooLarge(m));
        }
        Ok(GroundSet { m })
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.m)
    }

    /// All subsets in ascending mask order. This is the canonical iteration
    /// order everywhere, so outputs are deterministic.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        (0..(1u32 << self.m)).map(SubsetMask::from_bits)
    }

    pub fn blocks(&self) -> std::ops::Range<usize> {
        0..self.m
    }
}

/// A subset of blocks encoded as a bitmask. Bit `i` set means block `i` is a
/// member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn full(m: usize) -> Self {
        SubsetMask((1u32 << m) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << i)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut bits = 0;
        for i in members {
            bits |= 1 << i;
        }
        SubsetMask(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersection(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & other.0)
    }

    pub fn difference(self, other: SubsetMask) -> Self {
        SubsetMask(self.0 & !other.0)
    }

    /// Member indices in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32u32).filter(move |i| bits >> i & 1 == 1).map(|i| i as usize)
    }

    /// Image under a relabeling of blocks; member `i` becomes `perm[i]`.
    pub fn permute(self, perm: &[usize]) -> Self {
        SubsetMask::from_members(self.members().map(|i| perm[i]))
    }

    /// Parses `{1,3,4}` (1-based indices). `{}` is the empty set.
    pub fn parse(s: &str, m: usize) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected a set like {{1,3}}, got `{s}`")))?;
        let mut mask = SubsetMask::EMPTY;
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let idx: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad block index `{part}` in `{s}`")))?;
            if idx == 0 || idx > m {
                return Err(Error::IndexOutOfRange { index: idx, m });
            }
            mask = mask.with(idx - 1);
        }
        Ok(mask)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.members().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vector of non-negative participant counts, one per block.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointVector(Vec<u32>);

impl PointVector {
    pub fn new(coords: Vec<u32>) -> Self {
        PointVector(coords)
    }

    pub fn zero(m: usize) -> Self {
        PointVector(vec![0; m])
    }

    /// The vector with a single 1 at block `i` (0-based).
    pub fn unit(m: usize, i: usize) -> Result<Self, Error> {
        if i >= m {
            return Err(Error::IndexOutOfRange { index: i + 1, m });
        }
        let mut coords = vec![0; m];
        coords[i] = 1;
        Ok(PointVector(coords))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coord(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Blocks with a nonzero coordinate.
    pub fn support(&self) -> SubsetMask {
        SubsetMask::from_members(
            self.0.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i),
        )
    }

    /// Sum of all coordinates.
    pub fn modulus(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Coordinates outside `mask` zeroed.
    pub fn restrict(&self, mask: SubsetMask) -> PointVector {
        PointVector(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask.contains(i) { v } else { 0 })
                .collect(),
        )
    }

    /// Coordinatewise `self <= other`.
    pub fn dominated_by(&self, other: &PointVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn strictly_below(&self, other: &PointVector) -> bool {
        self.dominated_by(other) && self != other
    }

    /// `self - e_y + e_x`; requires coordinate `y` to be positive.
    pub fn transfer(&self, y: usize, x: usize) -> PointVector {
        debug_assert!(self.0[y] >= 1);
        let mut coords = self.0.clone();
        coords[y] -= 1;
        coords[x] += 1;
        PointVector(coords)
    }

    /// Image under a relabeling of blocks; the count of block `i` moves to
    /// block `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> PointVector {
        let mut coords = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            coords[perm[i]] = v;
        }
        PointVector(coords)
    }

    /// Parses `(1,0,2)`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected a vector like (1,0,2), got `{s}`")))?;
        let mut coords = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            coords.push(
                part.parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{part}` in `{s}`")))?,
            );
        }
        Ok(PointVector(coords))
    }
}

impl fmt::Display for PointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (n, v) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Block sizes of a partition of the participants; every block holds at
/// least 2 participants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(sizes: Vec<u32>) -> Result<Self, Error> {
        GroundSet::new(sizes.len())?;
        if sizes.iter().any(|&s| s < 2) {
            return Err(Error::BlockSizeBelowTwo);
        }
        Ok(Partition(sizes))
    }

    pub fn uniform(m: usize, size: u32) -> Result<Self, Error> {
        Partition::new(vec![size; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self, block: usize) -> u32 {
        self.0[block]
    }

    pub fn sizes(&self) -> &[u32] {
        &self.0
    }

    pub fn total_participants(&self) -> usize {
        self.0.iter().map(|&s| s as usize).sum()
    }

    /// The full vector with one coordinate per block, equal to the block size.
    pub fn to_vector(&self) -> PointVector {
        PointVector::new(self.0.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_of_examples() {
        assert_eq!(
            PointVector::new(vec![1, 1, 0]).support(),
            SubsetMask::from_members([0, 1])
        );
        assert_eq!(PointVector::new(vec![0, 0, 0]).support(), SubsetMask::EMPTY);
        assert_eq!(
            PointVector::new(vec![0, 3, 0, 2]).support(),
            SubsetMask::from_members([1, 3])
        );
    }

    #[test]
    fn restrict_examples() {
        let v = PointVector::new(vec![2, 1, 3]);
        let x = SubsetMask::from_members([0, 2]);
        assert_eq!(v.restrict(x), PointVector::new(vec![2, 0, 3]));
        assert_eq!(v.restrict(SubsetMask::full(3)), v);
        assert_eq!(v.restrict(SubsetMask::EMPTY), PointVector::zero(3));
    }

    #[test]
    fn restrict_is_idempotent() {
        let v = PointVector::new(vec![2, 1, 3, 0]);
        let x = SubsetMask::from_members([1, 3]);
        assert_eq!(v.restrict(x).restrict(x), v.restrict(x));
    }

    #[test]
    fn modulus_preserved_iff_support_inside() {
        let v = PointVector::new(vec![2, 0, 3]);
        for bits in 0..8u32 {
            let x = SubsetMask::from_bits(bits);
            let same = v.restrict(x).modulus() == v.modulus();
            assert_eq!(same, v.support().is_subset_of(x));
        }
    }

    #[test]
    fn unit_vector_examples() {
        assert_eq!(PointVector::unit(3, 1).unwrap(), PointVector::new(vec![0, 1, 0]));
        assert_eq!(
            PointVector::unit(4, 0).unwrap(),
            PointVector::new(vec![1, 0, 0, 0])
        );
        assert!(PointVector::unit(2, 2).is_err());
    }

    #[test]
    fn mask_text_round_trip() {
        let mask = SubsetMask::parse("{1,3,4}", 4).unwrap();
        assert_eq!(mask, SubsetMask::from_members([0, 2, 3]));
        assert_eq!(mask.to_string(), "{1,3,4}");
        assert_eq!(SubsetMask::parse("{}", 4).unwrap(), SubsetMask::EMPTY);
        assert!(SubsetMask::parse("{5}", 4).is_err());
        assert!(SubsetMask::parse("1,2", 4).is_err());
    }

    #[test]
    fn vector_text_round_trip() {
        let v = PointVector::parse("(1,0,2,0)").unwrap();
        assert_eq!(v, PointVector::new(vec![1, 0, 2, 0]));
        assert_eq!(v.to_string(), "(1,0,2,0)");
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 2]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![3]).is_err());
    }

    #[test]
    fn ground_set_bounds() {
        assert!(GroundSet::new(1).is_err());
        assert!(GroundSet::new(2).is_ok());
        assert!(GroundSet::new(17).is_err());
    }
}
