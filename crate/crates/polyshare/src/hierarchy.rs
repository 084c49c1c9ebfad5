//! Hierarchical preorder among blocks and its classification.
//!
//! Block `y` is below-or-equivalent to block `x` when swapping one
//! `y`-participant for one `x`-participant never destroys authorization. On
//! the vector side it suffices to test, for every minimal authorized vector
//! with a positive `y`-coordinate and an `x`-coordinate below the block
//! size, that moving one unit from `y` to `x` stays authorized.
//!
//! The resulting preorders fall into a small taxonomy: threshold (all blocks
//! equivalent), compartmented (all blocks independent), and two-layer shapes
//! where a set `Y` sits strictly below a disjoint set `X` with everything
//! else independent — either with the members of `Y` pairwise independent
//! (`Lambda`) or pairwise equivalent (`LambdaStar`). Anything else is
//! reported as `Other` with the raw relation attached, never forced into a
//! label.

use crate::access::AccessStructure;
use crate::compat::DeltaFamily;
use crate::error::Error;
use crate::ground::{Partition, SubsetMask};
use crate::polymatroid::UniformPolymatroid;

/// A reflexive, transitive relation on blocks. `le(y, x)` reads "block `y`
/// is hierarchically inferior or equivalent to block `x`".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderRelation {
    m: usize,
    rel: Vec<bool>,
}

impl PreorderRelation {
    /// Evaluates the swap test over the minimal authorized vectors.
    pub fn compute(gamma: &AccessStructure) -> Self {
        let m = gamma.m();
        let sizes = gamma.block_sizes();
        let mut rel = vec![false; m * m];
        for y in 0..m {
            for x in 0..m {
                if y == x {
                    rel[y * m + x] = true;
                    continue;
                }
                rel[y * m + x] = gamma.min_vectors().iter().all(|v| {
                    if v.coord(y) < 1 || v.coord(x) >= sizes.size(x) {
                        return true;
                    }
                    gamma.authorized_unchecked(&v.transfer(y, x))
                });
            }
        }
        PreorderRelation { m, rel }
    }

    pub fn from_rows(rows: Vec<Vec<bool>>) -> Result<Self, Error> {
        let m = rows.len();
        let mut rel = Vec::with_capacity(m * m);
        for row in &rows {
            if row.len() != m {
                return Err(Error::DimensionMismatch { expected: m, got: row.len() });
            }
            rel.extend_from_slice(row);
        }
        Ok(PreorderRelation { m, rel })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn le(&self, y: usize, x: usize) -> bool {
        self.rel[y * self.m + x]
    }

    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    pub fn strictly_below(&self, y: usize, x: usize) -> bool {
        self.le(y, x) && !self.le(x, y)
    }

    pub fn rows(&self) -> Vec<Vec<bool>> {
        (0..self.m)
            .map(|y| (0..self.m).map(|x| self.le(y, x)).collect())
            .collect()
    }

    fn check_preorder(&self) -> Result<(), Error> {
        // error payloads carry 1-based block labels
        for a in 0..self.m {
            if !self.le(a, a) {
                return Err(Error::NotReflexive(a + 1));
            }
        }
        for a in 0..self.m {
            for b in 0..self.m {
                for c in 0..self.m {
                    if self.le(a, b) && self.le(b, c) && !self.le(a, c) {
                        return Err(Error::NotTransitive(a + 1, b + 1, c + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Pattern-matches the relation against the taxonomy. Every structural
    /// condition is verified explicitly; shapes that fit nothing come back
    /// as [`OrderType::Other`].
    pub fn classify(&self) -> Result<OrderType, Error> {
        self.check_preorder()?;
        let m = self.m;

        let mut equiv_pairs = Vec::new();
        let mut strict_pairs = Vec::new();
        for y in 0..m {
            for x in 0..m {
                if y == x {
                    continue;
                }
                if self.equivalent(y, x) {
                    if y < x {
                        equiv_pairs.push((y, x));
                    }
                } else if self.strictly_below(y, x) {
                    strict_pairs.push((y, x));
                }
            }
        }

        let all_pairs = m * (m - 1) / 2;
        if equiv_pairs.len() == all_pairs {
            return Ok(OrderType::Threshold);
        }
        if equiv_pairs.is_empty() && strict_pairs.is_empty() {
            return Ok(OrderType::Compartmented);
        }

        if equiv_pairs.is_empty() {
            let inferior = SubsetMask::from_members(strict_pairs.iter().map(|&(y, _)| y));
            let superior = SubsetMask::from_members(strict_pairs.iter().map(|&(_, x)| x));
            if !superior.intersection(inferior).is_empty() {
                return Ok(OrderType::Other);
            }
            let exact = inferior.members().all(|y| {
                superior.members().all(|x| strict_pairs.contains(&(y, x)))
            }) && strict_pairs.len() == inferior.len() * superior.len();
            return Ok(if exact {
                OrderType::Lambda { superior, inferior }
            } else {
                OrderType::Other
            });
        }

        // some, but not all, blocks are equivalent
        let inferior = SubsetMask::from_members(
            equiv_pairs.iter().flat_map(|&(a, b)| [a, b]),
        );
        let fully_equivalent = inferior
            .members()
            .all(|a| inferior.members().all(|b| self.equivalent(a, b)));
        if !fully_equivalent {
            return Ok(OrderType::Other);
        }
        let superior = SubsetMask::from_members((0..m).filter(|&x| {
            !inferior.contains(x) && inferior.members().all(|y| self.strictly_below(y, x))
        }));
        let expected_strict = inferior.len() * superior.len();
        let strict_matches = strict_pairs.len() == expected_strict
            && strict_pairs
                .iter()
                .all(|&(y, x)| inferior.contains(y) && superior.contains(x));
        Ok(if strict_matches {
            OrderType::LambdaStar { superior, inferior }
        } else {
            OrderType::Other
        })
    }

    /// Number of blocks in the longest chain of pairwise comparable,
    /// pairwise non-equivalent blocks. Equivalent blocks never share a
    /// chain, so the answer is computed on equivalence classes.
    pub fn max_chain_len(&self) -> usize {
        let m = self.m;
        let rep: Vec<usize> = (0..m)
            .map(|a| (0..m).find(|&b| self.equivalent(a, b)).unwrap_or(a))
            .collect();
        let reps: Vec<usize> = (0..m).filter(|&a| rep[a] == a).collect();

        fn longest(
            v: usize,
            reps: &[usize],
            rel: &PreorderRelation,
            memo: &mut [usize],
        ) -> usize {
            if memo[v] != 0 {
                return memo[v];
            }
            let mut best = 1;
            for &u in reps {
                if u != v && rel.strictly_below(v, u) {
                    best = best.max(1 + longest(u, reps, rel, memo));
                }
            }
            memo[v] = best;
            best
        }

        let mut memo = vec![0usize; m];
        reps.iter()
            .map(|&v| longest(v, &reps, self, &mut memo))
            .max()
            .unwrap_or(1)
    }
}

/// The classified shape of a hierarchical preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderType {
    /// Every pair of blocks is hierarchically equivalent.
    Threshold,
    /// Every pair of blocks is hierarchically independent.
    Compartmented,
    /// Every block of `inferior` lies strictly below every block of
    /// `superior`; all other pairs are independent.
    Lambda { superior: SubsetMask, inferior: SubsetMask },
    /// Same two-layer shape, but the blocks of `inferior` are pairwise
    /// equivalent.
    LambdaStar { superior: SubsetMask, inferior: SubsetMask },
    /// A preorder matching none of the above.
    Other,
}

impl OrderType {
    /// The letter code used by the 4-block classification grid.
    pub fn table_code(&self, m: usize) -> Result<&'static str, Error> {
        if m != 4 {
            return Err(Error::CodeUndefinedForM(m));
        }
        Ok(match self {
            OrderType::Threshold => "T",
            OrderType::Compartmented => "C",
            OrderType::Lambda { superior, inferior } => {
                match (superior.len(), inferior.len()) {
                    (1, 3) => "M",
                    (2, 2) => "K",
                    (3, 1) => "W",
                    (1, 1) => "E",
                    _ => "?",
                }
            }
            OrderType::LambdaStar { superior, inferior } => {
                match (superior.len(), inferior.len()) {
                    (1, 3) => "I",
                    (2, 2) => "V",
                    _ => "?",
                }
            }
            OrderType::Other => "?",
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            OrderType::Threshold => "Threshold",
            OrderType::Compartmented => "Compartmented",
            OrderType::Lambda { .. } => "Lambda",
            OrderType::LambdaStar { .. } => "LambdaStar",
            OrderType::Other => "Other",
        }
    }

    /// The superior/inferior witness sets, when the type has them.
    pub fn layers(&self) -> Option<(SubsetMask, SubsetMask)> {
        match self {
            OrderType::Lambda { superior, inferior }
            | OrderType::LambdaStar { superior, inferior } => Some((*superior, *inferior)),
            _ => None,
        }
    }
}

/// Relation, classified type and maximal chain length for one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HierarchyReport {
    pub relation: PreorderRelation,
    pub order_type: OrderType,
    pub max_chain: usize,
}

/// Classifies an already-built access structure.
pub fn classify_structure(gamma: &AccessStructure) -> Result<HierarchyReport, Error> {
    let relation = PreorderRelation::compute(gamma);
    let order_type = relation.classify()?;
    let max_chain = relation.max_chain_len();
    Ok(HierarchyReport { relation, order_type, max_chain })
}

/// The composite pipeline: compatibility check, structure construction,
/// classification. This is the one code path used for single instances and
/// for classification-grid cells alike.
pub fn classify_instance(
    z: &UniformPolymatroid,
    d: &DeltaFamily,
    blocks: Option<Partition>,
) -> Result<HierarchyReport, Error> {
    let gamma = AccessStructure::build(z, d, blocks)?;
    classify_structure(&gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(g: &[u32]) -> UniformPolymatroid {
        UniformPolymatroid::from_increments(g.to_vec()).unwrap()
    }

    fn delta(m: usize, sets: &[&[usize]]) -> DeltaFamily {
        DeltaFamily::new(
            m,
            sets.iter().map(|s| SubsetMask::from_members(s.iter().map(|&i| i - 1))),
        )
        .unwrap()
    }

    fn report(g: &[u32], sets: &[&[usize]]) -> HierarchyReport {
        classify_instance(&z(g), &delta(g.len(), sets), None).unwrap()
    }

    #[test]
    fn single_superior_block() {
        let rep = report(&[3, 2, 1, 1], &[&[1]]);
        for y in 1..4 {
            assert!(rep.relation.strictly_below(y, 0));
        }
        for y in 1..4 {
            for x in 1..4 {
                assert_eq!(rep.relation.le(y, x), y == x);
            }
        }
        assert_eq!(
            rep.order_type,
            OrderType::Lambda {
                superior: SubsetMask::from_members([0]),
                inferior: SubsetMask::from_members([1, 2, 3]),
            }
        );
        assert_eq!(rep.order_type.table_code(4).unwrap(), "M");
        assert_eq!(rep.max_chain, 2);
    }

    #[test]
    fn redundant_pair_is_equivalent() {
        let rep = report(&[1, 1, 1, 1], &[&[1, 2]]);
        assert!(rep.relation.equivalent(2, 3));
        assert!(rep.relation.strictly_below(2, 0));
        assert!(rep.relation.strictly_below(3, 1));
        assert!(!rep.relation.le(0, 1) && !rep.relation.le(1, 0));
        assert_eq!(
            rep.order_type,
            OrderType::LambdaStar {
                superior: SubsetMask::from_members([0, 1]),
                inferior: SubsetMask::from_members([2, 3]),
            }
        );
        assert_eq!(rep.order_type.table_code(4).unwrap(), "V");
    }

    #[test]
    fn threshold_relation_is_complete() {
        let rep = report(&[2, 0, 0], &[&[1], &[2], &[3]]);
        for y in 0..3 {
            for x in 0..3 {
                assert!(rep.relation.le(y, x));
            }
        }
        assert_eq!(rep.order_type, OrderType::Threshold);
        assert_eq!(rep.max_chain, 1);
    }

    #[test]
    fn classify_synthetic_matrices() {
        let all_true = PreorderRelation::from_rows(vec![vec![true; 4]; 4]).unwrap();
        assert_eq!(all_true.classify().unwrap(), OrderType::Threshold);
        assert_eq!(all_true.max_chain_len(), 1);

        let identity = PreorderRelation::from_rows(
            (0..4).map(|i| (0..4).map(|j| i == j).collect()).collect(),
        )
        .unwrap();
        assert_eq!(identity.classify().unwrap(), OrderType::Compartmented);
        assert_eq!(identity.max_chain_len(), 1);

        // block 4 strictly below blocks 1..3
        let mut rows = vec![vec![false; 4]; 4];
        for i in 0..4 {
            rows[i][i] = true;
        }
        rows[3][0] = true;
        rows[3][1] = true;
        rows[3][2] = true;
        let w = PreorderRelation::from_rows(rows).unwrap();
        assert_eq!(
            w.classify().unwrap(),
            OrderType::Lambda {
                superior: SubsetMask::from_members([0, 1, 2]),
                inferior: SubsetMask::from_members([3]),
            }
        );
        assert_eq!(w.classify().unwrap().table_code(4).unwrap(), "W");

        // blocks 3,4 below blocks 1,2 with no equivalences
        let mut rows = vec![vec![false; 4]; 4];
        for i in 0..4 {
            rows[i][i] = true;
        }
        for y in [2usize, 3] {
            for x in [0usize, 1] {
                rows[y][x] = true;
            }
        }
        let k = PreorderRelation::from_rows(rows).unwrap();
        assert_eq!(k.classify().unwrap().table_code(4).unwrap(), "K");
    }

    #[test]
    fn chains_are_classified_as_other() {
        // 2 < 1 and 3 < 2 < 1: a three-block chain is not a two-layer shape
        let mut rows = vec![vec![false; 3]; 3];
        for i in 0..3 {
            rows[i][i] = true;
        }
        rows[1][0] = true;
        rows[2][1] = true;
        rows[2][0] = true;
        let rel = PreorderRelation::from_rows(rows).unwrap();
        assert_eq!(rel.classify().unwrap(), OrderType::Other);
        assert_eq!(rel.max_chain_len(), 3);
    }

    #[test]
    fn non_transitive_input_is_rejected() {
        let mut rows = vec![vec![false; 3]; 3];
        for i in 0..3 {
            rows[i][i] = true;
        }
        rows[1][0] = true;
        rows[2][1] = true;
        let rel = PreorderRelation::from_rows(rows).unwrap();
        assert!(matches!(rel.classify(), Err(Error::NotTransitive(3, 2, 1))));
    }

    #[test]
    fn letter_codes() {
        let lambda = |s: &[usize], i: &[usize]| OrderType::Lambda {
            superior: SubsetMask::from_members(s.iter().copied()),
            inferior: SubsetMask::from_members(i.iter().copied()),
        };
        let star = |s: &[usize], i: &[usize]| OrderType::LambdaStar {
            superior: SubsetMask::from_members(s.iter().copied()),
            inferior: SubsetMask::from_members(i.iter().copied()),
        };
        assert_eq!(lambda(&[0], &[1, 2, 3]).table_code(4).unwrap(), "M");
        assert_eq!(star(&[0, 1], &[2, 3]).table_code(4).unwrap(), "V");
        assert_eq!(lambda(&[0], &[3]).table_code(4).unwrap(), "E");
        assert_eq!(lambda(&[0, 1, 2], &[3]).table_code(4).unwrap(), "W");
        assert_eq!(star(&[0], &[1, 2, 3]).table_code(4).unwrap(), "I");
        assert_eq!(lambda(&[0, 1], &[2, 3]).table_code(4).unwrap(), "K");
        assert_eq!(OrderType::Other.table_code(4).unwrap(), "?");
        assert!(OrderType::Threshold.table_code(3).is_err());
    }

    #[test]
    fn relation_is_always_a_preorder_on_computed_instances() {
        for (g, sets) in [
            (&[2u32, 1, 0, 0][..], &[&[1usize][..], &[2, 3], &[2, 4], &[3, 4]][..]),
            (&[4, 3, 2, 1], &[&[1], &[2, 3]]),
            (&[2, 1, 1, 0], &[&[1], &[2, 3, 4]]),
        ] {
            let rep = report(g, sets);
            assert!(rep.relation.check_preorder().is_ok());
        }
    }
}
