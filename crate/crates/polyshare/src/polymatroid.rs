//! Uniform polymatroids described by their increment sequences.
//!
//! A uniform polymatroid on `m` blocks has a rank function that depends only
//! on cardinality: `h(X) = h_k` for `|X| = k`. It is determined by the
//! nonincreasing increment sequence `g = (g_0, .., g_m)` with `g_m = 0` via
//! `h_k = g_0 + .. + g_{k-1}`. Constructors take the first `m` entries; the
//! trailing zero is implicit.

use crate::error::Error;
use crate::ground::{GroundSet, PointVector, SubsetMask};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformPolymatroid {
    /// `g_0..g_{m-1}`; `g_m = 0` is implicit.
    g: Vec<u32>,
}

impl UniformPolymatroid {
    /// Builds a polymatroid from `(g_0, .., g_{m-1})`. The sequence must be
    /// nonincreasing with `g_0 > 0`.
    pub fn from_increments(g: Vec<u32>) -> Result<Self, Error> {
        GroundSet::new(g.len())?;
        if g[0] == 0 {
            return Err(Error::InvalidIncrements("g_0 must be positive".into()));
        }
        if g.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidIncrements(format!(
                "sequence {g:?} is not nonincreasing"
            )));
        }
        Ok(UniformPolymatroid { g })
    }

    pub fn m(&self) -> usize {
        self.g.len()
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet::new(self.m()).expect("validated at construction")
    }

    /// `g_i` for `0 <= i <= m`; `g_m` is always 0.
    pub fn increment(&self, i: usize) -> u32 {
        assert!(i <= self.m(), "increment index {i} out of range");
        if i < self.m() {
            self.g[i]
        } else {
            0
        }
    }

    /// The stored prefix `(g_0, .., g_{m-1})`.
    pub fn increments(&self) -> &[u32] {
        &self.g
    }

    /// `h_k`, the rank of any subset with `k` blocks.
    pub fn rank(&self, k: usize) -> u32 {
        assert!(k <= self.m(), "cardinality {k} out of range");
        self.g[..k].iter().sum()
    }

    pub fn rank_of(&self, x: SubsetMask) -> u32 {
        self.rank(x.len())
    }

    /// Total rank `h_m`; the ambient dimension of any vector-space
    /// representation.
    pub fn total_rank(&self) -> u32 {
        self.rank(self.m())
    }

    /// Smallest index `i` with `g_i = 0`; always in `1..=m`.
    pub fn eta(&self) -> usize {
        (1..=self.m()).find(|&i| self.increment(i) == 0).unwrap_or(self.m())
    }

    /// Multiplicities `c_k = g_{k-1} - g_k` for `k = 1..=m`; the polymatroid
    /// is the direct sum of `c_k` copies of the rank-`k` uniform matroid.
    pub fn multiplicities(&self) -> Vec<u32> {
        (1..=self.m()).map(|k| self.increment(k - 1) - self.increment(k)).collect()
    }

    /// Sign pattern `(sgn(g_0 - g_1), .., sgn(g_{m-1} - g_m))` as booleans.
    pub fn signature(&self) -> Vec<bool> {
        (1..=self.m()).map(|i| self.increment(i - 1) > self.increment(i)).collect()
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.signature().iter().all(|&s| s)
    }

    /// Membership test for the rank polytope: for every `l`, the sum of the
    /// `l` largest coordinates of `v` must not exceed `h_l`.
    pub fn within_rank_bounds(&self, v: &PointVector) -> bool {
        let mut sorted: Vec<u32> = v.coords().to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut acc = 0u32;
        for (l, &c) in sorted.iter().enumerate() {
            if l >= self.m() {
                return c == 0;
            }
            acc += c;
            if acc > self.rank(l + 1) {
                return false;
            }
        }
        true
    }

    /// All base vectors of the restriction to `x`: vectors supported inside
    /// `x` with modulus `h_{|x|}` whose restrictions respect every rank
    /// bound. Sorted lexicographically; never empty.
    pub fn enumerate_bases(&self, x: SubsetMask) -> Vec<PointVector> {
        let m = self.m();
        let members: Vec<usize> = x.members().collect();
        let target = self.rank(members.len());
        let cap = if members.is_empty() { 0 } else { self.rank(1) };

        let mut out = Vec::new();
        let mut coords = vec![0u32; m];
        self.compose(&members, 0, target, cap, &mut coords, &mut out);
        out.sort_by(|a, b| a.coords().cmp(b.coords()));
        out
    }

    fn compose(
        &self,
        members: &[usize],
        pos: usize,
        remaining: u32,
        cap: u32,
        coords: &mut Vec<u32>,
        out: &mut Vec<PointVector>,
    ) {
        if pos == members.len() {
            if remaining == 0 {
                let v = PointVector::new(coords.clone());
                if self.within_rank_bounds(&v) {
                    out.push(v);
                }
            }
            return;
        }
        // Remaining coordinates are capped by h_1, so prune branches that
        // cannot reach the target modulus.
        let slots_after = (members.len() - pos - 1) as u32;
        for value in 0..=cap.min(remaining) {
            if remaining - value > cap * slots_after {
                continue;
            }
            coords[members[pos]] = value;
            self.compose(members, pos + 1, remaining - value, cap, coords, out);
        }
        coords[members[pos]] = 0;
    }

    /// The vector assigning `g_{sigma(x)}` to each block of the basic set,
    /// where `sigma` is the bijection encoded by `spec`.
    pub fn vertex_vector(&self, spec: &VertexSpec) -> PointVector {
        let mut coords = vec![0u32; self.m()];
        for (j, &block) in spec.order().iter().enumerate() {
            coords[block] = self.increment(j);
        }
        PointVector::new(coords)
    }
}

/// A basic set together with a bijection onto `{0, .., k-1}`, encoded as the
/// list of its blocks in bijection order: the block at position `j` is
/// assigned `g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSpec {
    order: Vec<usize>,
}

impl VertexSpec {
    pub fn new(order: Vec<usize>, m: usize) -> Result<Self, Error> {
        let mut seen = vec![false; m];
        for &b in &order {
            if b >= m {
                return Err(Error::IndexOutOfRange { index: b + 1, m });
            }
            if seen[b] {
                return Err(Error::InvalidVertexOrder(format!(
                    "block {} listed twice",
                    b + 1
                )));
            }
            seen[b] = true;
        }
        Ok(VertexSpec { order })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn basic_set(&self) -> SubsetMask {
        SubsetMask::from_members(self.order.iter().copied())
    }
}
