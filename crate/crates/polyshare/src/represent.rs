//! Vector-space representations of uniform polymatroids and the search for
//! an extension vector realizing a target family.
//!
//! A uniform polymatroid is a direct sum of uniform matroids: for each
//! band size `k` with multiplicity `c_k = g_{k-1} - g_k`, allocate `c_k`
//! bands of `k` rows, and give block `x` the Vandermonde column
//! `(1, a_x, .., a_x^{k-1})` in each band. The per-block subspaces `V_x`
//! (dimension `g_0`) then satisfy `rank(V_X) = h_{|X|}` for every subset
//! `X`, which is verified exhaustively at construction time.
//!
//! Adjoining a rank-1 point spanned by a vector `beta` extends the
//! polymatroid; the family realized by `beta` is `{X : beta in V_X}`.
//! [`find_beta`] samples candidates from the intersection of the minimal
//! members' subspaces and rejects any candidate that lands in a subspace of
//! a non-member. One family shape needs more than the band-diagonal
//! representation: when `eta(g) = 2` and the target has two or more
//! singleton minimal sets, every band-diagonal `V_x` shares the same
//! rank-one bands, so no `beta` can separate the singletons. The explicit
//! construction in [`build_eta2_explicit`] translates the subspaces of the
//! singleton blocks off the shared bands, and [`realize_delta`] falls back
//! to searching over that translated representation.

use std::fmt;

use rand::Rng;

use crate::compat::{check_compatibility, DeltaFamily};
use crate::error::Error;
use crate::gf::{FieldMatrix, PrimeField};
use crate::ground::SubsetMask;
use crate::polymatroid::UniformPolymatroid;

/// Default number of sampling attempts for the extension-vector search.
pub const DEFAULT_BETA_TRIES: usize = 200;

/// Default modulus for `m` blocks: the smallest prime at least `2^m + 1`,
/// which dominates every field-size bound the constructions need.
pub fn default_prime(m: usize) -> u64 {
    crate::gf::next_prime_at_least((1u64 << m) + 1)
}

/// Per-block column bases realizing a uniform polymatroid over a prime
/// field.
#[derive(Debug, Clone)]
pub struct Representation {
    polymatroid: UniformPolymatroid,
    field: PrimeField,
    ambient_dim: usize,
    block_bases: Vec<FieldMatrix>,
    multiplicities: Vec<u32>,
    eval_points: Vec<u64>,
}

impl Representation {
    /// Wraps explicit per-block bases, verifying `rank(V_X) = h_{|X|}` over
    /// all `2^m` subsets.
    pub fn from_block_bases(
        z: &UniformPolymatroid,
        field: PrimeField,
        block_bases: Vec<FieldMatrix>,
        eval_points: Vec<u64>,
    ) -> Result<Self, Error> {
        let m = z.m();
        if block_bases.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: block_bases.len() });
        }
        let ambient_dim = z.total_rank() as usize;
        for bb in &block_bases {
            if bb.rows() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, got: bb.rows() });
            }
            if bb.cols() != z.increment(0) as usize {
                return Err(Error::DimensionMismatch {
                    expected: z.increment(0) as usize,
                    got: bb.cols(),
                });
            }
        }
        let rep = Representation {
            polymatroid: z.clone(),
            field,
            ambient_dim,
            block_bases,
            multiplicities: z.multiplicities(),
            eval_points,
        };
        for x in z.ground_set().subsets() {
            if rep.subspace_matrix(x).rank() != z.rank_of(x) as usize {
                return Err(Error::RepresentationInvalid(x));
            }
        }
        Ok(rep)
    }

    pub fn polymatroid(&self) -> &UniformPolymatroid {
        &self.polymatroid
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn block_basis(&self, x: usize) -> &FieldMatrix {
        &self.block_bases[x]
    }

    pub fn block_bases(&self) -> &[FieldMatrix] {
        &self.block_bases
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn eval_points(&self) -> &[u64] {
        &self.eval_points
    }

    /// Concatenated bases of the blocks in `x`; its column space is `V_x`.
    pub fn subspace_matrix(&self, x: SubsetMask) -> FieldMatrix {
        let mut acc = FieldMatrix::zeros(self.field, self.ambient_dim, 0);
        for b in x.members() {
            acc = acc.hstack(&self.block_bases[b]).expect("row counts agree");
        }
        acc
    }
}

/// Builds the band-diagonal direct-sum representation with evaluation
/// points `a_x = x + 1` shared across bands. Needs `p > m` so the points
/// stay distinct and nonzero.
pub fn build_representation(z: &UniformPolymatroid, p: u64) -> Result<Representation, Error> {
    let field = PrimeField::new(p)?;
    let m = z.m();
    if p < (m + 1) as u64 {
        return Err(Error::PrimeTooSmall { p, min: (m + 1) as u64 });
    }
    let eval_points: Vec<u64> = (0..m).map(|x| (x as u64 + 1) % p).collect();
    let dim = z.total_rank() as usize;
    let g0 = z.increment(0) as usize;
    let mults = z.multiplicities();

    let mut block_bases = Vec::with_capacity(m);
    for x in 0..m {
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(g0);
        let mut offset = 0usize;
        for (k_minus_1, &count) in mults.iter().enumerate() {
            let k = k_minus_1 + 1;
            for _ in 0..count {
                let mut col = vec![0u64; dim];
                for row in 0..k {
                    col[offset + row] = field.pow(eval_points[x], row as u64);
                }
                cols.push(col);
                offset += k;
            }
        }
        debug_assert_eq!(cols.len(), g0);
        block_bases.push(FieldMatrix::from_columns(field, dim, &cols)?);
    }
    Representation::from_block_bases(z, field, block_bases, eval_points)
}

/// A representation extended by one vector, together with the family that
/// vector realizes.
#[derive(Debug, Clone)]
pub struct Extension {
    pub base: Representation,
    pub beta: Vec<u64>,
    pub realized_delta: DeltaFamily,
}

impl Extension {
    /// Rank of the extended polymatroid at `X` plus the new point, computed
    /// as `rank(V_X | beta)`.
    pub fn extended_rank(&self, x: SubsetMask) -> usize {
        self.base
            .subspace_matrix(x)
            .with_column(&self.beta)
            .expect("beta has ambient dimension")
            .rank()
    }
}

/// The family `{X : beta in V_X}` recomputed from scratch over all subsets.
pub fn realized_family(rep: &Representation, beta: &[u64]) -> Result<DeltaFamily, Error> {
    let mut members = Vec::new();
    for x in rep.polymatroid().ground_set().subsets() {
        if x.is_empty() {
            continue;
        }
        if rep.subspace_matrix(x).column_space_contains(beta)? {
            members.push(x);
        }
    }
    DeltaFamily::new(rep.polymatroid().m(), members)
}

/// Why the extension-vector search came back empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BetaSearchFailure {
    /// The minimal members' subspaces meet only in zero.
    EmptyIntersection,
    /// Every sample failed. `covering` lists the forbidden subspaces that
    /// contain the whole intersection space; when nonempty no sample can
    /// ever succeed, otherwise the search was merely unlucky.
    TriesExhausted {
        tries: usize,
        dim_intersection: usize,
        covering: Vec<SubsetMask>,
        capture_counts: Vec<(SubsetMask, usize)>,
    },
}

impl fmt::Display for BetaSearchFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaSearchFailure::EmptyIntersection => {
                write!(f, "empty intersection of minimal-member subspaces")
            }
            BetaSearchFailure::TriesExhausted { tries, dim_intersection, covering, .. } => {
                write!(
                    f,
                    "{tries} tries exhausted (intersection dimension {dim_intersection}"
                )?;
                if covering.is_empty() {
                    write!(f, ")")
                } else {
                    write!(f, "; fully covered by ")?;
                    for (i, c) in covering.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    write!(f, ": no candidate exists)")
                }
            }
        }
    }
}

/// Samples an extension vector realizing `d` over the given representation:
/// candidates are drawn uniformly from the nonzero part of the intersection
/// of the minimal members' subspaces, and a candidate is accepted when it
/// avoids the subspace of every inclusion-maximal non-member. The realized
/// family of an accepted vector is recomputed from scratch and must equal
/// `d`.
pub fn find_beta(
    rep: &Representation,
    d: &DeltaFamily,
    max_tries: usize,
    rng: &mut impl Rng,
) -> Result<Extension, Error> {
    let z = rep.polymatroid();
    check_compatibility(z, d)?;
    let field = rep.field();

    let mut intersection: Option<FieldMatrix> = None;
    for &s in d.min_sets() {
        let v = rep.subspace_matrix(s);
        intersection = Some(match intersection {
            None => v.column_space_basis(),
            Some(w) => w.column_space_intersection(&v)?,
        });
    }
    let w = intersection.expect("family has at least one minimal set");
    let dim_w = w.cols();
    if dim_w == 0 {
        return Err(Error::BetaNotFound(BetaSearchFailure::EmptyIntersection));
    }

    let forbidden: Vec<(SubsetMask, FieldMatrix)> = d
        .maximal_nonmembers()
        .into_iter()
        .filter(|y| !y.is_empty())
        .map(|y| (y, rep.subspace_matrix(y)))
        .collect();

    let mut captures = vec![0usize; forbidden.len()];
    for _ in 0..max_tries {
        let coeffs: Vec<u64> = loop {
            let c: Vec<u64> = (0..dim_w).map(|_| field.sample(rng)).collect();
            if c.iter().any(|&v| v != 0) {
                break c;
            }
        };
        let beta = w.mat_vec(&coeffs)?;
        let mut captured = false;
        for (i, (_, vy)) in forbidden.iter().enumerate() {
            if vy.column_space_contains(&beta)? {
                captures[i] += 1;
                captured = true;
                break;
            }
        }
        if captured {
            continue;
        }
        let realized = realized_family(rep, &beta)?;
        if &realized != d {
            // cannot happen for a candidate that passed the maximal-set
            // filter; treated as a failed try out of caution
            continue;
        }
        return Ok(Extension { base: rep.clone(), beta, realized_delta: realized });
    }

    let covering = forbidden
        .iter()
        .filter(|(_, vy)| {
            vy.hstack(&w).map(|joined| joined.rank() == vy.rank()).unwrap_or(false)
        })
        .map(|(y, _)| *y)
        .collect();
    Err(Error::BetaNotFound(BetaSearchFailure::TriesExhausted {
        tries: max_tries,
        dim_intersection: dim_w,
        covering,
        capture_counts: forbidden
            .iter()
            .map(|(y, _)| *y)
            .zip(captures)
            .collect(),
    }))
}

/// Exhaustive port check: `beta` lies in `V_X` exactly for the members of
/// `d`. Returns the first violating subset.
pub fn verify_port(ext: &Extension, d: &DeltaFamily) -> Result<(), Error> {
    for x in ext.base.polymatroid().ground_set().subsets() {
        let spans = if x.is_empty() {
            ext.beta.iter().all(|&v| v == 0)
        } else {
            ext.base.subspace_matrix(x).column_space_contains(&ext.beta)?
        };
        if spans != (!x.is_empty() && d.contains(x)) {
            return Err(Error::PortViolation(x));
        }
    }
    Ok(())
}

/// Explicit construction for `eta(g) = 2` targets with minimal sets
/// `P_1(X) ∪ P_2(J \ X)`.
///
/// Blocks get `V_x = {(alpha, a_x * alpha)}` (dimension `g_1` twice over),
/// preceded by `g_0 - g_1` shared coordinates when `g_0 > g_1`. For the
/// blocks of `X` the subspaces are translated by the shear
/// `alpha -> alpha + nu(alpha) * beta`, where `nu` reads the first shared
/// coordinate and `beta` sits outside every `V_x`; the extension vector is
/// the image of the first shared unit vector. When `g_0 = g_1` there is no
/// shared coordinate and `X` can hold at most one block: the extension
/// vector is taken inside that block's subspace, or outside all of them
/// when `X` is empty.
pub fn build_eta2_explicit(
    z: &UniformPolymatroid,
    x_set: SubsetMask,
    p: u64,
) -> Result<Extension, Error> {
    if z.eta() != 2 {
        return Err(Error::Precondition("build_eta2_explicit needs eta(g) = 2".into()));
    }
    let m = z.m();
    let field = PrimeField::new(p)?;
    if p < (m + 1) as u64 {
        return Err(Error::PrimeTooSmall { p, min: (m + 1) as u64 });
    }

    // the target family; also validates the shape against the polymatroid
    let mut gens: Vec<SubsetMask> = x_set.members().map(SubsetMask::singleton).collect();
    let outside: Vec<usize> = SubsetMask::full(m).difference(x_set).members().collect();
    for (i, &a) in outside.iter().enumerate() {
        for &b in &outside[i + 1..] {
            gens.push(SubsetMask::from_members([a, b]));
        }
    }
    let d = DeltaFamily::new(m, gens)?;
    check_compatibility(z, &d)?;

    let g0 = z.increment(0) as usize;
    let g1 = z.increment(1) as usize;
    let shared = g0 - g1;
    let dim = shared + 2 * g1;
    debug_assert_eq!(dim, z.total_rank() as usize);
    let eval_points: Vec<u64> = (0..m).map(|x| (x as u64 + 1) % p).collect();

    // beta = first alpha-coordinate unit vector: (theta | e_1 | 0), which
    // lies outside every untranslated subspace
    let mut beta_dir = vec![0u64; dim];
    beta_dir[shared] = 1;

    let mut block_bases = Vec::with_capacity(m);
    for x in 0..m {
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(g0);
        for j in 0..shared {
            let mut col = vec![0u64; dim];
            col[j] = 1;
            if j == 0 && x_set.contains(x) {
                // sheared image of the first shared unit vector
                col[shared] = 1;
            }
            cols.push(col);
        }
        for j in 0..g1 {
            let mut col = vec![0u64; dim];
            col[shared + j] = 1;
            col[shared + g1 + j] = eval_points[x];
            cols.push(col);
        }
        block_bases.push(FieldMatrix::from_columns(field, dim, &cols)?);
    }

    let beta = if shared > 0 {
        // epsilon + beta
        let mut b = vec![0u64; dim];
        b[0] = 1;
        b[shared] = 1;
        b
    } else if let Some(x) = x_set.members().next() {
        // a nonzero vector of V_x
        let mut b = vec![0u64; dim];
        b[0] = 1;
        b[g1] = eval_points[x];
        b
    } else {
        beta_dir
    };

    let rep = Representation::from_block_bases(z, field, block_bases, eval_points)?;
    let realized = realized_family(&rep, &beta)?;
    if realized != d {
        return Err(Error::SchemeVerification(format!(
            "explicit eta-2 construction realized {realized} instead of {d}"
        )));
    }
    Ok(Extension { base: rep, beta, realized_delta: realized })
}

/// Which representation the search succeeded on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationPath {
    /// The band-diagonal direct-sum representation.
    Standard,
    /// The translated representation for `eta(g) = 2` targets.
    TranslatedEta2,
}

impl RealizationPath {
    pub fn label(&self) -> &'static str {
        match self {
            RealizationPath::Standard => "standard",
            RealizationPath::TranslatedEta2 => "translated-eta2",
        }
    }
}

/// End-to-end realization of a compatible family: search over the standard
/// representation first, then over the translated one when the target has
/// the `eta(g) = 2` two-level shape that the band-diagonal layout provably
/// cannot separate.
pub fn realize_delta(
    z: &UniformPolymatroid,
    d: &DeltaFamily,
    p: u64,
    max_tries: usize,
    rng: &mut impl Rng,
) -> Result<(Extension, RealizationPath), Error> {
    check_compatibility(z, d)?;
    let rep = build_representation(z, p)?;
    match find_beta(&rep, d, max_tries, rng) {
        Ok(ext) => Ok((ext, RealizationPath::Standard)),
        Err(Error::BetaNotFound(failure)) => {
            if z.eta() == 2 {
                if let Some(x_set) = d.two_level_shape() {
                    let explicit = build_eta2_explicit(z, x_set, p)?;
                    let ext = find_beta(&explicit.base, d, max_tries, rng)?;
                    return Ok((ext, RealizationPath::TranslatedEta2));
                }
            }
            Err(Error::BetaNotFound(failure))
        }
        Err(e) => Err(e),
    }
}
