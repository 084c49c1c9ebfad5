//! Enumeration of monotone families up to block relabeling, of increment
//! signatures, the 4-block classification grid, and the empirical
//! sign-pattern scan.

use serde::{Deserialize, Serialize};

use crate::compat::{is_compatible, DeltaFamily};
use crate::error::Error;
use crate::ground::SubsetMask;
use crate::hierarchy::{classify_instance, OrderType, PreorderRelation};
use crate::polymatroid::UniformPolymatroid;

/// One orbit of monotone families under block relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDelta {
    pub representative: DeltaFamily,
    /// Number of distinct labelings in the orbit.
    pub orbit_size: usize,
}

/// All permutations of `0..m` in a fixed, deterministic order.
pub(crate) fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let m = used.len();
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

fn encode(d: &DeltaFamily) -> Vec<u32> {
    d.min_sets().iter().map(|s| s.bits()).collect()
}

/// The lexicographically least sorted mask-list over all relabelings,
/// together with the orbit size. Brute force over all `m!` permutations.
pub fn canonical_form(d: &DeltaFamily) -> CanonicalDelta {
    let mut images: Vec<(Vec<u32>, DeltaFamily)> = permutations(d.m())
        .iter()
        .map(|perm| {
            let image = d.permute(perm);
            (encode(&image), image)
        })
        .collect();
    images.sort_by(|a, b| a.0.cmp(&b.0));
    let distinct = {
        let mut codes: Vec<&Vec<u32>> = images.iter().map(|(c, _)| c).collect();
        codes.dedup();
        codes.len()
    };
    let representative = images.into_iter().next().unwrap().1;
    CanonicalDelta { representative, orbit_size: distinct }
}

/// All nonempty antichains of nonempty subsets of an `m`-set, one canonical
/// representative per relabeling orbit, ordered by canonical encoding.
pub fn enumerate_deltas(m: usize) -> Result<Vec<CanonicalDelta>, Error> {
    if !(2..=5).contains(&m) {
        return Err(Error::EnumerationOutOfRange(m));
    }
    let top = 1u32 << m;
    let mut antichains: Vec<Vec<SubsetMask>> = Vec::new();
    let mut stack: Vec<(u32, Vec<SubsetMask>)> = vec![(1, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        if !chosen.is_empty() {
            antichains.push(chosen.clone());
        }
        for bits in start..top {
            let cand = SubsetMask::from_bits(bits);
            if chosen
                .iter()
                .all(|&s| !s.is_subset_of(cand) && !cand.is_subset_of(s))
            {
                let mut next = chosen.clone();
                next.push(cand);
                stack.push((bits + 1, next));
            }
        }
    }

    let mut classes: Vec<(Vec<u32>, CanonicalDelta)> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<u32>> = Default::default();
    for sets in antichains {
        let d = DeltaFamily::new(m, sets)?;
        let canon = canonical_form(&d);
        let code = encode(&canon.representative);
        if seen.insert(code.clone()) {
            classes.push((code, canon));
        }
    }
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(classes.into_iter().map(|(_, c)| c).collect())
}

/// One realizable sign pattern of increment differences, with the entrywise
/// minimal sequence realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureClass {
    /// `signature[i-1]` is true iff `g_{i-1} > g_i`, for `i = 1..=m`.
    pub signature: Vec<bool>,
    pub representative: UniformPolymatroid,
}

/// All `2^m - 1` realizable sign patterns (the all-flat pattern would force
/// `g_0 = 0`), ordered by the pattern read as a binary number.
pub fn enumerate_signatures(m: usize) -> Result<Vec<SignatureClass>, Error> {
    if m < 2 {
        return Err(Error::EnumerationOutOfRange(m));
    }
    let mut out = Vec::new();
    for bits in 1u32..(1 << m) {
        let signature: Vec<bool> = (0..m).map(|i| bits >> i & 1 == 1).collect();
        // build the minimal representative from the right: g_m = 0 and each
        // strict sign adds one
        let mut g = vec![0u32; m];
        let mut current = u32::from(signature[m - 1]);
        g[m - 1] = current;
        for i in (0..m - 1).rev() {
            current += u32::from(signature[i]);
            g[i] = current;
        }
        let representative = UniformPolymatroid::from_increments(g)?;
        debug_assert_eq!(representative.signature(), signature);
        out.push(SignatureClass { signature, representative });
    }
    Ok(out)
}

/// One cell of the classification grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableCell {
    Incompatible,
    Classified { order_type: OrderType, max_chain: usize },
}

impl TableCell {
    /// The printed symbol: `-` for incompatible cells, the reference letter
    /// code for `m = 4`, a compact generic code otherwise.
    pub fn symbol(&self, m: usize) -> String {
        match self {
            TableCell::Incompatible => "-".into(),
            TableCell::Classified { order_type, .. } => match order_type.table_code(m) {
                Ok(code) => code.into(),
                Err(_) => match order_type {
                    OrderType::Threshold => "T".into(),
                    OrderType::Compartmented => "C".into(),
                    OrderType::Lambda { .. } => "L".into(),
                    OrderType::LambdaStar { .. } => "L*".into(),
                    OrderType::Other => "?".into(),
                },
            },
        }
    }
}

/// The full grid: one row per family class, one column per signature class.
#[derive(Debug, Clone)]
pub struct ClassificationTable {
    pub m: usize,
    pub rows: Vec<DeltaFamily>,
    pub columns: Vec<UniformPolymatroid>,
    pub cells: Vec<Vec<TableCell>>,
}

/// Row families of the reference 4-block grid, in printed order, as 1-based
/// member lists.
pub const TABLE4_ROWS: [&[&[usize]]; 28] = [
    &[&[1]],
    &[&[1], &[2]],
    &[&[1], &[2], &[3]],
    &[&[1], &[2], &[3], &[4]],
    &[&[1], &[2], &[3, 4]],
    &[&[1], &[2, 3]],
    &[&[1], &[2, 3], &[2, 4]],
    &[&[1], &[2, 3], &[2, 4], &[3, 4]],
    &[&[1], &[2, 3, 4]],
    &[&[1, 2]],
    &[&[1, 2], &[1, 3]],
    &[&[1, 2], &[3, 4]],
    &[&[1, 2], &[1, 3], &[1, 4]],
    &[&[1, 2], &[1, 3], &[2, 3]],
    &[&[1, 2], &[2, 3], &[1, 4]],
    &[&[1, 3], &[2, 3], &[1, 4], &[2, 4]],
    &[&[1, 2], &[1, 3], &[2, 3], &[1, 4]],
    &[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[2, 4]],
    &[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[2, 4], &[3, 4]],
    &[&[1, 2], &[1, 3, 4]],
    &[&[1, 2], &[1, 3], &[2, 3, 4]],
    &[&[1, 2], &[1, 3], &[1, 4], &[2, 3, 4]],
    &[&[1, 2], &[1, 3, 4], &[2, 3, 4]],
    &[&[1, 2, 3]],
    &[&[1, 2, 3], &[1, 2, 4]],
    &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4]],
    &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]],
    &[&[1, 2, 3, 4]],
];

/// Column increment sequences of the reference 4-block grid, in printed
/// order.
pub const TABLE4_COLUMNS: [[u32; 4]; 15] = [
    [1, 0, 0, 0],
    [2, 1, 0, 0],
    [1, 1, 0, 0],
    [3, 2, 1, 0],
    [2, 2, 1, 0],
    [2, 1, 1, 0],
    [1, 1, 1, 0],
    [3, 2, 1, 1],
    [2, 2, 1, 1],
    [4, 3, 2, 1],
    [3, 3, 2, 1],
    [3, 2, 2, 1],
    [2, 2, 2, 1],
    [2, 1, 1, 1],
    [1, 1, 1, 1],
];

/// The printed row families for `m = 4`.
pub fn printed_rows() -> Vec<DeltaFamily> {
    TABLE4_ROWS
        .iter()
        .map(|sets| {
            DeltaFamily::new(
                4,
                sets.iter()
                    .map(|s| SubsetMask::from_members(s.iter().map(|&i| i - 1))),
            )
            .expect("printed rows are valid")
        })
        .collect()
}

/// The printed column polymatroids for `m = 4`.
pub fn printed_columns() -> Vec<UniformPolymatroid> {
    TABLE4_COLUMNS
        .iter()
        .map(|g| UniformPolymatroid::from_increments(g.to_vec()).expect("printed columns are valid"))
        .collect()
}

/// Builds the whole grid. For `m = 4` rows and columns follow the reference
/// order so the table diffs cell by cell; for other `m` they follow the
/// canonical enumeration order.
pub fn build_table(m: usize) -> Result<ClassificationTable, Error> {
    let (rows, columns) = if m == 4 {
        (printed_rows(), printed_columns())
    } else {
        (
            enumerate_deltas(m)?.into_iter().map(|c| c.representative).collect(),
            enumerate_signatures(m)?.into_iter().map(|c| c.representative).collect(),
        )
    };
    let mut cells = Vec::with_capacity(rows.len());
    for d in &rows {
        let mut row_cells = Vec::with_capacity(columns.len());
        for z in &columns {
            let cell = match classify_instance(z, d, None) {
                Ok(report) => TableCell::Classified {
                    order_type: report.order_type,
                    max_chain: report.max_chain,
                },
                Err(Error::Incompatible(_)) => TableCell::Incompatible,
                Err(e) => return Err(e),
            };
            row_cells.push(cell);
        }
        cells.push(row_cells);
    }
    Ok(ClassificationTable { m, rows, columns, cells })
}

/// A transform applied to increment sequences during the sign-pattern scan.
/// Both preserve the sign pattern of consecutive differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GTransform {
    /// Add a constant to every nonzero entry.
    AddToNonzero(u32),
    /// Multiply every entry by a constant.
    ScaleNonzero(u32),
}

impl GTransform {
    /// Parses `add1`, `add2`, `scale2`, ...
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix("add") {
            return n
                .parse()
                .map(GTransform::AddToNonzero)
                .map_err(|_| Error::Parse(format!("bad transform `{s}`")));
        }
        if let Some(n) = s.strip_prefix("scale") {
            return n
                .parse()
                .map(GTransform::ScaleNonzero)
                .map_err(|_| Error::Parse(format!("bad transform `{s}`")));
        }
        Err(Error::Parse(format!("unknown transform `{s}`")))
    }

    pub fn label(&self) -> String {
        match self {
            GTransform::AddToNonzero(c) => format!("add{c}"),
            GTransform::ScaleNonzero(c) => format!("scale{c}"),
        }
    }

    /// Applies the transform and checks that both validity and the sign
    /// pattern survive.
    pub fn apply(&self, z: &UniformPolymatroid) -> Result<UniformPolymatroid, Error> {
        let g: Vec<u32> = z
            .increments()
            .iter()
            .map(|&v| match self {
                GTransform::AddToNonzero(c) => {
                    if v > 0 {
                        v + c
                    } else {
                        0
                    }
                }
                GTransform::ScaleNonzero(c) => v * c,
            })
            .collect();
        let transformed = UniformPolymatroid::from_increments(g)
            .map_err(|e| Error::InvalidTransform(self.label(), e.to_string()))?;
        if transformed.signature() != z.signature() {
            return Err(Error::InvalidTransform(
                self.label(),
                format!("sign pattern of {:?} changed", z.increments()),
            ));
        }
        Ok(transformed)
    }
}

/// A preorder disagreement found by the scan; serialized verbatim so that a
/// hit can be archived and reproduced.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanMismatch {
    pub base_g: Vec<u32>,
    pub transformed_g: Vec<u32>,
    pub min_delta: Vec<Vec<usize>>,
    pub base_relation: Vec<Vec<bool>>,
    pub transformed_relation: Vec<Vec<bool>>,
}

/// A pair compatible with one sequence but not its transform.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanDisagreement {
    pub base_g: Vec<u32>,
    pub transformed_g: Vec<u32>,
    pub min_delta: Vec<Vec<usize>>,
    pub compatible_with_base: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub m: usize,
    pub transforms: Vec<String>,
    pub pairs_compared: usize,
    pub mismatches: Vec<ScanMismatch>,
    pub compatibility_disagreements: Vec<ScanDisagreement>,
}

fn min_sets_1based(d: &DeltaFamily) -> Vec<Vec<usize>> {
    d.min_sets()
        .iter()
        .map(|s| s.members().map(|i| i + 1).collect())
        .collect()
}

/// Compares the hierarchical preorder across same-signature increment
/// sequences: for every signature class and every family compatible with
/// both the minimal representative and a transformed sequence, the two
/// relation matrices are compared. Mismatches are reported, not asserted.
pub fn conjecture_scan(m: usize, transforms: &[GTransform]) -> Result<ScanReport, Error> {
    let deltas = enumerate_deltas(m)?;
    let signatures = enumerate_signatures(m)?;
    let mut report = ScanReport {
        m,
        transforms: transforms.iter().map(|t| t.label()).collect(),
        pairs_compared: 0,
        mismatches: Vec::new(),
        compatibility_disagreements: Vec::new(),
    };
    for sig in &signatures {
        let base = &sig.representative;
        for class in &deltas {
            let d = &class.representative;
            let base_compatible = is_compatible(base, d);
            let base_relation: Option<PreorderRelation> = if base_compatible {
                Some(classify_instance(base, d, None)?.relation)
            } else {
                None
            };
            for t in transforms {
                let transformed = t.apply(base)?;
                let t_compatible = is_compatible(&transformed, d);
                if base_compatible != t_compatible {
                    report.compatibility_disagreements.push(ScanDisagreement {
                        base_g: base.increments().to_vec(),
                        transformed_g: transformed.increments().to_vec(),
                        min_delta: min_sets_1based(d),
                        compatible_with_base: base_compatible,
                    });
                    continue;
                }
                if !base_compatible {
                    continue;
                }
                report.pairs_compared += 1;
                let t_relation = classify_instance(&transformed, d, None)?.relation;
                if Some(&t_relation) != base_relation.as_ref() {
                    report.mismatches.push(ScanMismatch {
                        base_g: base.increments().to_vec(),
                        transformed_g: transformed.increments().to_vec(),
                        min_delta: min_sets_1based(d),
                        base_relation: base_relation.as_ref().unwrap().rows(),
                        transformed_relation: t_relation.rows(),
                    });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_class_counts() {
        assert_eq!(enumerate_deltas(2).unwrap().len(), 3);
        assert_eq!(enumerate_deltas(3).unwrap().len(), 8);
        assert_eq!(enumerate_deltas(4).unwrap().len(), 28);
        assert!(enumerate_deltas(6).is_err());
        assert!(enumerate_deltas(1).is_err());
    }

    #[test]
    fn delta_classes_for_two_blocks() {
        let classes = enumerate_deltas(2).unwrap();
        let reprs: Vec<String> =
            classes.iter().map(|c| c.representative.to_string()).collect();
        assert!(reprs.contains(&"{1}".to_string()));
        assert!(reprs.contains(&"{1};{2}".to_string()));
        assert!(reprs.contains(&"{1,2}".to_string()));
    }

    #[test]
    fn canonicalization_is_idempotent_and_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for class in enumerate_deltas(4).unwrap() {
            let d = &class.representative;
            let canon = canonical_form(d);
            assert_eq!(&canon.representative, d, "representative must be canonical");
            let mut perm: Vec<usize> = (0..4).collect();
            for _ in 0..5 {
                perm.shuffle(&mut rng);
                let shuffled = d.permute(&perm);
                assert_eq!(canonical_form(&shuffled).representative, *d);
            }
        }
    }

    #[test]
    fn orbit_sizes_sum_to_all_antichains() {
        // 166 nonempty antichains over nonempty subsets of a 4-set
        let total: usize = enumerate_deltas(4).unwrap().iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, 166);
    }

    #[test]
    fn classes_are_pairwise_non_isomorphic() {
        let classes = enumerate_deltas(4).unwrap();
        for (i, a) in classes.iter().enumerate() {
            for b in classes.iter().skip(i + 1) {
                for perm in permutations(4) {
                    assert_ne!(
                        a.representative.permute(&perm),
                        b.representative,
                        "classes {i} and the other are isomorphic"
                    );
                }
            }
        }
    }

    #[test]
    fn signature_counts_and_minimal_representatives() {
        let sigs = enumerate_signatures(4).unwrap();
        assert_eq!(sigs.len(), 15);
        let m2 = enumerate_signatures(2).unwrap();
        let reprs: Vec<Vec<u32>> =
            m2.iter().map(|s| s.representative.increments().to_vec()).collect();
        assert!(reprs.contains(&vec![1, 0]));
        assert!(reprs.contains(&vec![2, 1]));
        assert!(reprs.contains(&vec![1, 1]));
        assert_eq!(m2.len(), 3);

        // all-strict pattern has the staircase as minimal representative
        let staircase = sigs
            .iter()
            .find(|s| s.signature.iter().all(|&b| b))
            .unwrap();
        assert_eq!(staircase.representative.increments(), &[4, 3, 2, 1]);
        let head_only = sigs
            .iter()
            .find(|s| s.signature == vec![true, false, false, false])
            .unwrap();
        assert_eq!(head_only.representative.increments(), &[1, 0, 0, 0]);
    }

    #[test]
    fn printed_rows_cover_all_orbits() {
        let classes = enumerate_deltas(4).unwrap();
        let mut canon_of_printed: Vec<Vec<u32>> = printed_rows()
            .iter()
            .map(|d| encode(&canonical_form(d).representative))
            .collect();
        canon_of_printed.sort();
        canon_of_printed.dedup();
        assert_eq!(canon_of_printed.len(), 28);
        let mut canon_of_classes: Vec<Vec<u32>> =
            classes.iter().map(|c| encode(&c.representative)).collect();
        canon_of_classes.sort();
        assert_eq!(canon_of_printed, canon_of_classes);
    }

    #[test]
    fn printed_columns_match_signature_representatives() {
        let sigs = enumerate_signatures(4).unwrap();
        let mut from_sigs: Vec<Vec<u32>> = sigs
            .iter()
            .map(|s| s.representative.increments().to_vec())
            .collect();
        from_sigs.sort();
        let mut printed: Vec<Vec<u32>> =
            TABLE4_COLUMNS.iter().map(|g| g.to_vec()).collect();
        printed.sort();
        assert_eq!(from_sigs, printed);
    }

    #[test]
    fn table_reference_cells() {
        let table = build_table(4).unwrap();
        // row 4 column 1: all singletons with a pure-threshold sequence
        assert_eq!(table.cells[3][0].symbol(4), "T");
        // row 24 column 14
        assert_eq!(table.cells[23][13].symbol(4), "W");
        // row 6 column 4
        assert_eq!(table.cells[5][3].symbol(4), "E");
        // row 1 column 1 incompatible
        assert_eq!(table.cells[0][0].symbol(4), "-");
    }

    #[test]
    fn compatibility_and_codes_are_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let columns = printed_columns();
        let mut perm: Vec<usize> = (0..4).collect();
        for d in printed_rows().iter().take(10) {
            perm.shuffle(&mut rng);
            let permuted = d.permute(&perm);
            for z in &columns {
                match (classify_instance(z, d, None), classify_instance(z, &permuted, None)) {
                    (Ok(a), Ok(b)) => {
                        assert_eq!(
                            a.order_type.table_code(4).unwrap(),
                            b.order_type.table_code(4).unwrap()
                        );
                        // witness layers move with the permutation
                        if let (Some((xs, ys)), Some((xp, yp))) =
                            (a.order_type.layers(), b.order_type.layers())
                        {
                            assert_eq!(xs.permute(&perm), xp);
                            assert_eq!(ys.permute(&perm), yp);
                        }
                    }
                    (Err(Error::Incompatible(_)), Err(Error::Incompatible(_))) => {}
                    (a, b) => panic!("equivariance broken: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn transform_parsing_and_validation() {
        assert_eq!(GTransform::parse("add1").unwrap(), GTransform::AddToNonzero(1));
        assert_eq!(GTransform::parse("scale2").unwrap(), GTransform::ScaleNonzero(2));
        assert!(GTransform::parse("half").is_err());

        let z = UniformPolymatroid::from_increments(vec![2, 1, 0, 0]).unwrap();
        let t = GTransform::AddToNonzero(1).apply(&z).unwrap();
        assert_eq!(t.increments(), &[3, 2, 0, 0]);
        // zeroing the head entry is rejected
        assert!(GTransform::ScaleNonzero(0).apply(&z).is_err());
    }

    #[test]
    fn scan_runs_clean_for_three_blocks() {
        let report = conjecture_scan(
            3,
            &[GTransform::AddToNonzero(1), GTransform::ScaleNonzero(2)],
        )
        .unwrap();
        assert!(report.pairs_compared > 0);
        assert!(report.mismatches.is_empty());
        assert!(report.compatibility_disagreements.is_empty());
    }
}
