//! Compatibility between a monotone increasing family and a uniform
//! polymatroid.
//!
//! A family `Delta` of nonempty subsets of the ground set is compatible with
//! a polymatroid exactly when the one-point extension that adds a rank-1
//! point whose port is `Delta` is still a polymatroid. That holds iff:
//!
//! 1. `Y subset of X`, `Y` outside and `X` inside `Delta` imply
//!    `h(Y) < h(X)`, and
//! 2. `X, Y` inside `Delta` with `X ∩ Y` outside imply
//!    `h(X ∩ Y) + h(X ∪ Y) < h(X) + h(Y)`.
//!
//! [`check_compatibility`] tests both conditions exhaustively and reports a
//! violating pair on failure. The closed-form shortcuts for special family
//! shapes are independent implementations used to cross-check it.

use std::fmt;

use crate::error::Error;
use crate::ground::{GroundSet, SubsetMask};
use crate::polymatroid::UniformPolymatroid;

/// A monotone increasing family of nonempty subsets, stored as the antichain
/// of its minimal sets (sorted by mask value).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaFamily {
    m: usize,
    min_sets: Vec<SubsetMask>,
}

impl DeltaFamily {
    /// Builds a family from generating sets. Dominated generators are
    /// discarded, so the stored minimal sets always form an antichain.
    pub fn new(m: usize, sets: impl IntoIterator<Item = SubsetMask>) -> Result<Self, Error> {
        GroundSet::new(m)?;
        let full = SubsetMask::full(m);
        let mut gens: Vec<SubsetMask> = Vec::new();
        for s in sets {
            if s.is_empty() {
                return Err(Error::InvalidFamily);
            }
            if !s.is_subset_of(full) {
                return Err(Error::IndexOutOfRange {
                    index: s.members().last().unwrap() + 1,
                    m,
                });
            }
            gens.push(s);
        }
        if gens.is_empty() {
            return Err(Error::InvalidFamily);
        }
        let mut min_sets: Vec<SubsetMask> = gens
            .iter()
            .filter(|s| !gens.iter().any(|t| t.is_subset_of(**s) && t != *s))
            .copied()
            .collect();
        min_sets.sort();
        min_sets.dedup();
        Ok(DeltaFamily { m, min_sets })
    }

    /// Parses `{1};{2,3}` (semicolon-separated minimal sets).
    pub fn parse(s: &str, m: usize) -> Result<Self, Error> {
        let sets = s
            .split(';')
            .map(|part| SubsetMask::parse(part, m))
            .collect::<Result<Vec<_>, _>>()?;
        DeltaFamily::new(m, sets)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ground_set(&self) -> GroundSet {
        GroundSet::new(self.m).expect("validated at construction")
    }

    pub fn min_sets(&self) -> &[SubsetMask] {
        &self.min_sets
    }

    /// Monotone-closure membership: true iff some minimal set is contained
    /// in `x`.
    pub fn contains(&self, x: SubsetMask) -> bool {
        self.min_sets.iter().any(|s| s.is_subset_of(x))
    }

    /// Smallest cardinality among the minimal sets.
    pub fn mu(&self) -> usize {
        self.min_sets.iter().map(|s| s.len()).min().unwrap()
    }

    /// Every member of the monotone closure, in ascending mask order.
    pub fn members(&self) -> Vec<SubsetMask> {
        self.ground_set().subsets().filter(|&x| self.contains(x)).collect()
    }

    /// Inclusion-maximal subsets outside the family.
    pub fn maximal_nonmembers(&self) -> Vec<SubsetMask> {
        self.ground_set()
            .subsets()
            .filter(|&y| {
                !self.contains(y)
                    && (0..self.m).all(|b| y.contains(b) || self.contains(y.with(b)))
            })
            .collect()
    }

    /// Relabels blocks; member `i` of each set becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> DeltaFamily {
        DeltaFamily::new(self.m, self.min_sets.iter().map(|s| s.permute(perm)))
            .expect("permutation preserves validity")
    }

    /// `Some(k)` iff the minimal sets are exactly all `k`-subsets of the
    /// ground set.
    pub fn uniform_min_cardinality(&self) -> Option<usize> {
        let k = self.min_sets[0].len();
        let count = binomial(self.m, k);
        (self.min_sets.len() == count && self.min_sets.iter().all(|s| s.len() == k))
            .then_some(k)
    }

    /// `Some(x)` iff the minimal sets are exactly the singletons of `x`
    /// together with all pairs outside `x`.
    pub fn two_level_shape(&self) -> Option<SubsetMask> {
        let x = SubsetMask::from_members(
            self.min_sets.iter().filter(|s| s.len() == 1).flat_map(|s| s.members()),
        );
        let rest = SubsetMask::full(self.m).difference(x);
        let mut expected: Vec<SubsetMask> = x.members().map(SubsetMask::singleton).collect();
        let outside: Vec<usize> = rest.members().collect();
        for (i, &a) in outside.iter().enumerate() {
            for &b in &outside[i + 1..] {
                expected.push(SubsetMask::from_members([a, b]));
            }
        }
        expected.sort();
        (expected == self.min_sets).then_some(x)
    }
}

impl fmt::Display for DeltaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, s) in self.min_sets.iter().enumerate() {
            if n > 0 {
                write!(f, ";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut num = 1usize;
    for i in 0..k {
        num = num * (n - i) / (i + 1);
    }
    num
}

/// The witness returned when compatibility fails: the pair of subsets on
/// which one of the two extension conditions breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompatibilityViolation {
    /// 1 or 2, the failed condition.
    pub condition: u8,
    pub x: SubsetMask,
    pub y: SubsetMask,
}

impl fmt::Display for CompatibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "condition {} fails on X = {}, Y = {}",
            self.condition, self.x, self.y
        )
    }
}

/// Exhaustively checks both extension conditions over all subset pairs.
/// Returns the first violating pair in scan order, so failures are
/// reproducible.
pub fn check_compatibility(z: &UniformPolymatroid, d: &DeltaFamily) -> Result<(), Error> {
    if z.m() != d.m() {
        return Err(Error::DimensionMismatch { expected: z.m(), got: d.m() });
    }
    let gs = z.ground_set();
    let members: Vec<bool> = gs.subsets().map(|s| d.contains(s)).collect();
    let in_delta = |s: SubsetMask| members[s.bits() as usize];

    for x in gs.subsets() {
        for y in gs.subsets() {
            if y.is_subset_of(x) && !in_delta(y) && in_delta(x) && z.rank_of(y) >= z.rank_of(x) {
                return Err(Error::Incompatible(CompatibilityViolation {
                    condition: 1,
                    x,
                    y,
                }));
            }
            if in_delta(x) && in_delta(y) {
                let meet = x.intersection(y);
                if !in_delta(meet)
                    && z.rank_of(meet) + z.rank_of(x.union(y)) >= z.rank_of(x) + z.rank_of(y)
                {
                    return Err(Error::Incompatible(CompatibilityViolation {
                        condition: 2,
                        x,
                        y,
                    }));
                }
            }
        }
    }
    Ok(())
}

pub fn is_compatible(z: &UniformPolymatroid, d: &DeltaFamily) -> bool {
    check_compatibility(z, d).is_ok()
}

/// Closed form for a family with a single minimal set: compatible iff
/// `g_{m-1} > 0`.
pub fn shortcut_single_min(z: &UniformPolymatroid, d: &DeltaFamily) -> Result<bool, Error> {
    if d.min_sets().len() != 1 {
        return Err(Error::Precondition(
            "shortcut_single_min needs exactly one minimal set".into(),
        ));
    }
    Ok(z.increment(z.m() - 1) > 0)
}

/// Closed form for the family whose minimal sets are all `k`-subsets:
/// compatible iff `g_{k-1} > g_k`.
pub fn shortcut_k_uniform(z: &UniformPolymatroid, d: &DeltaFamily) -> Result<bool, Error> {
    let k = d.uniform_min_cardinality().ok_or_else(|| {
        Error::Precondition("shortcut_k_uniform needs min sets = all k-subsets".into())
    })?;
    Ok(z.increment(k - 1) > z.increment(k))
}

/// Closed form for polymatroids with `eta(g) = 2`: compatible iff the
/// minimal sets are the singletons of some `X` plus all pairs outside `X`,
/// with `|X| <= 1` when `g_0 = g_1`.
pub fn shortcut_eta_two(z: &UniformPolymatroid, d: &DeltaFamily) -> Result<bool, Error> {
    if z.eta() != 2 {
        return Err(Error::Precondition("shortcut_eta_two needs eta(g) = 2".into()));
    }
    Ok(match d.two_level_shape() {
        Some(x) => z.increment(0) > z.increment(1) || x.len() <= 1,
        None => false,
    })
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

    #[test]
    fn family_minimizes_generators() {
        let d = DeltaFamily::new(
            3,
            [
                SubsetMask::from_members([0]),
                SubsetMask::from_members([0, 1]),
                SubsetMask::from_members([1, 2]),
            ],
        )
        .unwrap();
        assert_eq!(d.min_sets().len(), 2);
        assert_eq!(d.to_string(), "{1};{2,3}");
    }

    #[test]
    fn contains_examples() {
        let d = delta(3, &[&[1, 2]]);
        assert!(d.contains(SubsetMask::from_members([0, 1, 2])));
        assert!(!d.contains(SubsetMask::from_members([0, 2])));
        assert!(d.contains(SubsetMask::full(3)));
    }

    #[test]
    fn parse_and_display() {
        let d = DeltaFamily::parse("{1};{2,3};{2,4};{3,4}", 4).unwrap();
        assert_eq!(d.min_sets().len(), 4);
        assert_eq!(d.to_string(), "{1};{2,3};{2,4};{3,4}");
        assert!(DeltaFamily::parse("", 4).is_err());
        assert!(DeltaFamily::parse("{}", 4).is_err());
    }

    #[test]
    fn compatibility_reference_cells() {
        assert!(is_compatible(&z(&[1, 0, 0, 0]), &delta(4, &[&[1], &[2], &[3], &[4]])));
        assert!(!is_compatible(&z(&[1, 0, 0, 0]), &delta(4, &[&[1]])));
        assert!(is_compatible(&z(&[3, 2, 1, 1]), &delta(4, &[&[1]])));
        assert!(!is_compatible(&z(&[2, 2, 1, 1]), &delta(4, &[&[1], &[2]])));
    }

    #[test]
    fn violation_witness_is_reported() {
        let err = check_compatibility(&z(&[1, 0, 0, 0]), &delta(4, &[&[1]])).unwrap_err();
        match err {
            Error::Incompatible(v) => {
                // condition 1 fails: some set outside Delta already has full rank
                assert_eq!(v.condition, 1);
                assert!(v.y.is_subset_of(v.x));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = check_compatibility(&z(&[1, 1, 0]), &delta(4, &[&[1]])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn single_min_shortcut() {
        assert!(shortcut_single_min(&z(&[1, 1, 1, 1]), &delta(4, &[&[1, 2]])).unwrap());
        assert!(!shortcut_single_min(&z(&[2, 1, 0, 0]), &delta(4, &[&[1]])).unwrap());
        assert!(shortcut_single_min(&z(&[3, 2, 1, 1]), &delta(4, &[&[1, 2, 3, 4]])).unwrap());
        assert!(shortcut_single_min(&z(&[1, 1, 0, 0]), &delta(4, &[&[1], &[2]])).is_err());
    }

    #[test]
    fn k_uniform_shortcut() {
        assert!(shortcut_k_uniform(&z(&[2, 1, 1, 1]), &delta(4, &[&[1], &[2], &[3], &[4]]))
            .unwrap());
        assert!(!shortcut_k_uniform(&z(&[1, 1, 1, 1]), &delta(4, &[&[1], &[2], &[3], &[4]]))
            .unwrap());
        let all_four = delta(4, &[&[1, 2, 3, 4]]);
        assert!(shortcut_k_uniform(&z(&[3, 2, 1, 1]), &all_four).unwrap());
        assert!(shortcut_k_uniform(&z(&[3, 2, 1, 1]), &delta(4, &[&[1, 2]])).is_err());
    }

    #[test]
    fn eta_two_shortcut() {
        let d = delta(4, &[&[1], &[2, 3], &[2, 4], &[3, 4]]);
        assert!(shortcut_eta_two(&z(&[2, 1, 0, 0]), &d).unwrap());
        assert!(!shortcut_eta_two(&z(&[1, 1, 0, 0]), &delta(4, &[&[1], &[2]])).unwrap());
        assert!(!shortcut_eta_two(&z(&[2, 1, 0, 0]), &delta(4, &[&[1], &[2, 3]])).unwrap());
        assert!(shortcut_eta_two(&z(&[3, 2, 1, 1]), &d).is_err());
    }

    #[test]
    fn two_level_shape_detection() {
        let d = delta(4, &[&[1], &[2], &[3, 4]]);
        assert_eq!(d.two_level_shape(), Some(SubsetMask::from_members([0, 1])));
        let all_pairs = delta(
            4,
            &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]],
        );
        assert_eq!(all_pairs.two_level_shape(), Some(SubsetMask::EMPTY));
        assert_eq!(delta(4, &[&[1], &[2, 3]]).two_level_shape(), None);
        assert_eq!(
            delta(4, &[&[1], &[2], &[3], &[4]]).two_level_shape(),
            Some(SubsetMask::full(4))
        );
    }

    #[test]
    fn strictly_decreasing_is_always_compatible() {
        let p = z(&[4, 3, 2, 1]);
        // every antichain over nonempty subsets of a 4-set
        let masks: Vec<SubsetMask> = (1u32..16).map(SubsetMask::from_bits).collect();
        let mut count = 0;
        for selector in 1u32..(1 << 15) {
            let chosen: Vec<SubsetMask> = masks
                .iter()
                .enumerate()
                .filter(|(i, _)| selector >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let antichain = chosen.iter().all(|a| {
                chosen.iter().all(|b| a == b || !a.is_subset_of(*b) && !b.is_subset_of(*a))
            });
            if !antichain {
                continue;
            }
            let d = DeltaFamily::new(4, chosen).unwrap();
            assert!(is_compatible(&p, &d), "failed for {d}");
            count += 1;
        }
        assert_eq!(count, 166); // nonempty antichains over nonempty subsets
    }

    #[test]
    fn head_lemma_consequences() {
        // over a sample of instances: if compatible and g_k = 0, every
        // subset of size >= k is a member; a minimal set of size k forces
        // g_{k-1} > 0
        let instances = [
            (&[1u32, 0, 0, 0][..], &[&[1usize][..], &[2], &[3], &[4]][..]),
            (&[2, 1, 0, 0], &[&[1], &[2, 3], &[2, 4], &[3, 4]]),
            (&[3, 2, 1, 1], &[&[1, 2]]),
            (&[2, 2, 1, 0], &[&[1], &[2, 3], &[2, 4], &[3, 4]]),
        ];
        for (g, sets) in instances {
            let p = z(g);
            let d = delta(4, sets);
            if !is_compatible(&p, &d) {
                continue;
            }
            for k in 1..=4usize {
                if p.increment(k) == 0 {
                    for s in p.ground_set().subsets().filter(|s| s.len() >= k) {
                        assert!(d.contains(s), "g = {g:?}, s = {s}");
                    }
                }
            }
            for s in d.min_sets() {
                assert!(p.increment(s.len() - 1) > 0);
            }
        }
    }

    #[test]
    fn maximal_nonmembers_cover_complement() {
        let d = delta(4, &[&[1], &[2, 3]]);
        let maxes = d.maximal_nonmembers();
        for y in d.ground_set().subsets() {
            if !d.contains(y) {
                assert!(maxes.iter().any(|&mx| y.is_subset_of(mx)));
            }
        }
        for &mx in &maxes {
            assert!(!d.contains(mx));
        }
    }
}
