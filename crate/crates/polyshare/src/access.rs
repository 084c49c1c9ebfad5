//! Multipartite access structures determined by a uniform polymatroid and a
//! compatible monotone family.
//!
//! The structure is represented by its minimal authorized vectors: the
//! minimal elements (under the coordinatewise order) of the union of the
//! base-vector sets taken over every member of the family. A subset of
//! participants is authorized iff its count vector dominates one of them.

use crate::compat::{check_compatibility, DeltaFamily};
use crate::error::Error;
use crate::ground::{Partition, PointVector, SubsetMask};
use crate::polymatroid::UniformPolymatroid;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessStructure {
    polymatroid: UniformPolymatroid,
    delta: DeltaFamily,
    block_sizes: Partition,
    min_vectors: Vec<PointVector>,
}

impl AccessStructure {
    /// Builds the access structure for a compatible pair. When no partition
    /// is given every block gets the smallest legal size `g_0 + 1`; a caller
    /// partition must exceed `g_0` in every block.
    pub fn build(
        z: &UniformPolymatroid,
        d: &DeltaFamily,
        blocks: Option<Partition>,
    ) -> Result<Self, Error> {
        check_compatibility(z, d)?;
        let g0 = z.increment(0);
        let block_sizes = match blocks {
            Some(p) => p,
            None => Partition::uniform(z.m(), g0 + 1)?,
        };
        if block_sizes.len() != z.m() {
            return Err(Error::DimensionMismatch { expected: z.m(), got: block_sizes.len() });
        }
        for b in 0..z.m() {
            if block_sizes.size(b) <= g0 {
                // error payloads carry 1-based block labels
                return Err(Error::BlockTooSmall { block: b + 1, size: block_sizes.size(b), g0 });
            }
        }

        // Every member of the closure contributes base vectors; non-minimal
        // members can contribute vectors that no minimal member does.
        let mut pool: Vec<PointVector> = Vec::new();
        for x in d.members() {
            pool.extend(z.enumerate_bases(x));
        }
        pool.sort_by(|a, b| a.coords().cmp(b.coords()));
        pool.dedup();
        let min_vectors: Vec<PointVector> = pool
            .iter()
            .filter(|v| !pool.iter().any(|w| w.strictly_below(v)))
            .cloned()
            .collect();

        Ok(AccessStructure {
            polymatroid: z.clone(),
            delta: d.clone(),
            block_sizes,
            min_vectors,
        })
    }

    pub fn m(&self) -> usize {
        self.polymatroid.m()
    }

    pub fn polymatroid(&self) -> &UniformPolymatroid {
        &self.polymatroid
    }

    pub fn delta(&self) -> &DeltaFamily {
        &self.delta
    }

    pub fn block_sizes(&self) -> &Partition {
        &self.block_sizes
    }

    /// Minimal authorized vectors in lexicographic order.
    pub fn min_vectors(&self) -> &[PointVector] {
        &self.min_vectors
    }

    /// Membership for a count vector inside the participant box. Vectors
    /// exceeding a block size are rejected rather than answered.
    pub fn is_authorized(&self, w: &PointVector) -> Result<bool, Error> {
        if w.len() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), got: w.len() });
        }
        for b in 0..self.m() {
            if w.coord(b) > self.block_sizes.size(b) {
                return Err(Error::ExceedsBlockSizes(b + 1));
            }
        }
        Ok(self.authorized_unchecked(w))
    }

    pub(crate) fn authorized_unchecked(&self, w: &PointVector) -> bool {
        self.min_vectors.iter().any(|v| v.dominated_by(w))
    }

    /// The monotone family generated by the supports of the minimal
    /// vectors; always equal to the family the structure was built from.
    pub fn support_family(&self) -> DeltaFamily {
        DeltaFamily::new(self.m(), self.min_vectors.iter().map(|v| v.support()))
            .expect("supports of minimal vectors are nonempty")
    }

    /// Blocks whose coordinate is zero in every minimal vector.
    pub fn redundant_blocks(&self) -> SubsetMask {
        SubsetMask::from_members(
            (0..self.m()).filter(|&b| self.min_vectors.iter().all(|v| v.coord(b) == 0)),
        )
    }

    pub fn is_connected(&self) -> bool {
        self.redundant_blocks().is_empty()
    }
}
