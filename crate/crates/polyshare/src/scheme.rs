//! Ideal linear secret sharing on top of a verified extension.
//!
//! Every participant of block `x` is assigned one column vector inside
//! `V_x`; the dealer samples a random vector `r` with `<beta, r> = secret`
//! and hands participant `p` the single field element `<v_p, r>`. A subset
//! can reconstruct exactly when `beta` lies in the span of its vectors,
//! and the scheme is accepted only after an exhaustive check that this
//! span condition agrees with the access structure on every participant
//! subset.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::access::AccessStructure;
use crate::compat::DeltaFamily;
use crate::error::Error;
use crate::gf::{FieldMatrix, PrimeField};
use crate::ground::{Partition, PointVector, SubsetMask};
use crate::polymatroid::UniformPolymatroid;
use crate::represent::{realized_family, Extension, Representation};

/// Exhaustive verification walks all `2^n` participant subsets; this caps
/// `n` so the walk stays at desk scale.
pub const DEFAULT_VERIFY_CAP: usize = 14;

/// One participant, addressed by block and position inside the block
/// (0-based internally, printed 1-based as `block.index`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParticipantId {
    pub block: usize,
    pub index: usize,
}

impl ParticipantId {
    /// Parses `2.1` as block 2, participant 1 (1-based).
    pub fn parse(s: &str) -> Result<Self, Error> {
        let (b, i) = s
            .trim()
            .split_once('.')
            .ok_or_else(|| Error::Parse(format!("expected block.index, got `{s}`")))?;
        let block: usize = b
            .parse()
            .map_err(|_| Error::Parse(format!("bad block in `{s}`")))?;
        let index: usize = i
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in `{s}`")))?;
        if block == 0 || index == 0 {
            return Err(Error::Parse(format!("indices in `{s}` are 1-based")));
        }
        Ok(ParticipantId { block: block - 1, index: index - 1 })
    }
}

impl fmt::Display for ParticipantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.block + 1, self.index + 1)
    }
}

/// A verified scheme: the extension, one vector per participant, and the
/// target access structure. Instances only exist after verification
/// succeeded.
#[derive(Debug, Clone)]
pub struct SchemeInstance {
    extension: Extension,
    gamma: AccessStructure,
    participant_vectors: Vec<Vec<Vec<u64>>>,
    seed: u64,
}

/// The witness of a verification failure: a subset whose span condition
/// disagrees with the access structure.
#[derive(Debug, Clone)]
pub struct SchemeCounterexample {
    pub subset: Vec<ParticipantId>,
    pub authorized: bool,
    pub spans_beta: bool,
}

impl fmt::Display for SchemeCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subset {{")?;
        for (n, p) in self.subset.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(
            f,
            "}} is {}authorized but its vectors {}span the extension vector",
            if self.authorized { "" } else { "not " },
            if self.spans_beta { "" } else { "do not " },
        )
    }
}

/// Samples one vector per participant uniformly inside its block subspace
/// and re-samples until the exhaustive span check passes. Block sizes must
/// exceed `g_0` and the participant total must fit under the verification
/// cap.
pub fn assign_vectors(
    extension: &Extension,
    blocks: &Partition,
    seed: u64,
    max_tries: usize,
) -> Result<SchemeInstance, Error> {
    let z = extension.base.polymatroid().clone();
    let gamma = AccessStructure::build(&z, &extension.realized_delta, Some(blocks.clone()))?;
    let total = blocks.total_participants();
    if total > DEFAULT_VERIFY_CAP {
        return Err(Error::VerificationCapExceeded { participants: total, cap: DEFAULT_VERIFY_CAP });
    }

    let field = extension.base.field();
    let g0 = z.increment(0) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failure = String::new();

    for _ in 0..max_tries {
        let participant_vectors: Vec<Vec<Vec<u64>>> = (0..z.m())
            .map(|x| {
                let basis = extension.base.block_basis(x);
                (0..blocks.size(x))
                    .map(|_| {
                        let coeffs: Vec<u64> =
                            (0..g0).map(|_| field.sample(&mut rng)).collect();
                        basis.mat_vec(&coeffs).expect("basis has g0 columns")
                    })
                    .collect()
            })
            .collect();
        let candidate = SchemeInstance {
            extension: extension.clone(),
            gamma: gamma.clone(),
            participant_vectors,
            seed,
        };
        match candidate.verify() {
            Ok(()) => return Ok(candidate),
            Err(Error::SchemeVerification(witness)) => last_failure = witness,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SchemeVerification(format!(
        "no verified assignment within {max_tries} tries; last failure: {last_failure}"
    )))
}

impl SchemeInstance {
    pub fn extension(&self) -> &Extension {
        &self.extension
    }

    pub fn gamma(&self) -> &AccessStructure {
        &self.gamma
    }

    pub fn block_sizes(&self) -> &Partition {
        self.gamma.block_sizes()
    }

    pub fn field(&self) -> PrimeField {
        self.extension.base.field()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// All participants in flat order: blocks ascending, indices ascending.
    /// Shares are emitted in this order.
    pub fn participants(&self) -> Vec<ParticipantId> {
        let mut out = Vec::new();
        for (block, vecs) in self.participant_vectors.iter().enumerate() {
            for index in 0..vecs.len() {
                out.push(ParticipantId { block, index });
            }
        }
        out
    }

    pub fn total_participants(&self) -> usize {
        self.participant_vectors.iter().map(|v| v.len()).sum()
    }

    pub fn vector_of(&self, id: ParticipantId) -> Result<&[u64], Error> {
        self.participant_vectors
            .get(id.block)
            .and_then(|b| b.get(id.index))
            .map(|v| v.as_slice())
            .ok_or(Error::IndexOutOfRange { index: id.index + 1, m: self.gamma.m() })
    }

    pub fn flat_index(&self, id: ParticipantId) -> Result<usize, Error> {
        self.vector_of(id)?;
        Ok(self.participant_vectors[..id.block]
            .iter()
            .map(|b| b.len())
            .sum::<usize>()
            + id.index)
    }

    /// Count vector of a participant subset.
    pub fn count_vector(&self, subset: &[ParticipantId]) -> PointVector {
        let mut counts = vec![0u32; self.gamma.m()];
        for id in subset {
            counts[id.block] += 1;
        }
        PointVector::new(counts)
    }

    fn span_matrix(&self, subset: &[ParticipantId]) -> Result<FieldMatrix, Error> {
        let cols: Vec<Vec<u64>> = subset
            .iter()
            .map(|&id| self.vector_of(id).map(|v| v.to_vec()))
            .collect::<Result<_, _>>()?;
        FieldMatrix::from_columns(self.field(), self.extension.base.ambient_dim(), &cols)
    }

    /// Exhaustively checks that a subset's vectors span the extension
    /// vector exactly when its count vector is authorized.
    pub fn verify(&self) -> Result<(), Error> {
        self.verify_with_cap(DEFAULT_VERIFY_CAP)
    }

    pub fn verify_with_cap(&self, cap: usize) -> Result<(), Error> {
        let all = self.participants();
        let n = all.len();
        if n > cap {
            return Err(Error::VerificationCapExceeded { participants: n, cap });
        }
        for bits in 0u32..(1 << n) {
            let subset: Vec<ParticipantId> = (0..n)
                .filter(|i| bits >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            let authorized = self
                .gamma
                .authorized_unchecked(&self.count_vector(&subset));
            let spans_beta = if subset.is_empty() {
                false
            } else {
                self.span_matrix(&subset)?
                    .column_space_contains(&self.extension.beta)?
            };
            if authorized != spans_beta {
                let witness = SchemeCounterexample { subset, authorized, spans_beta };
                return Err(Error::SchemeVerification(witness.to_string()));
            }
        }
        Ok(())
    }

    /// Splits a secret: samples `r` uniformly on the hyperplane
    /// `<beta, r> = secret` and gives each participant `<v_p, r>`.
    pub fn distribute(&self, secret: u64, seed: u64) -> Result<ShareBundle, Error> {
        let field = self.field();
        field.check(secret)?;
        let beta = &self.extension.beta;
        let pivot = beta
            .iter()
            .position(|&b| b != 0)
            .expect("extension vector is nonzero");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut r: Vec<u64> = (0..beta.len()).map(|_| field.sample(&mut rng)).collect();
        let partial = r
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .fold(0u64, |acc, (i, &ri)| field.add(acc, field.mul(beta[i], ri)));
        r[pivot] = field.mul(field.inv(beta[pivot]), field.sub(secret, partial));

        let shares = self
            .participants()
            .iter()
            .map(|&id| {
                let v = self.vector_of(id).expect("participant exists");
                v.iter()
                    .zip(&r)
                    .fold(0u64, |acc, (&vi, &ri)| field.add(acc, field.mul(vi, ri)))
            })
            .collect();
        Ok(ShareBundle { p: field.modulus(), secret, shares, seed })
    }

    /// Pools the given shares: solves `beta = sum lambda_p v_p` and returns
    /// `sum lambda_p share_p`. Fails when the subset is unauthorized, since
    /// no reconstruction coefficients exist.
    pub fn reconstruct(&self, subset: &[ParticipantId], shares: &[u64]) -> Result<u64, Error> {
        if shares.len() != subset.len() {
            return Err(Error::DimensionMismatch { expected: subset.len(), got: shares.len() });
        }
        let field = self.field();
        let matrix = self.span_matrix(subset)?;
        let coeffs = matrix
            .solve(&self.extension.beta)?
            .ok_or(Error::Unauthorized)?;
        Ok(coeffs
            .iter()
            .zip(shares)
            .fold(0u64, |acc, (&l, &s)| field.add(acc, field.mul(l, s))))
    }

    /// Extracts the shares of `subset` from a full bundle, in subset order.
    pub fn shares_for(&self, bundle: &ShareBundle, subset: &[ParticipantId]) -> Result<Vec<u64>, Error> {
        subset
            .iter()
            .map(|&id| self.flat_index(id).map(|i| bundle.shares[i]))
            .collect()
    }

    /// Privacy audit for an unauthorized subset: the exact rank criterion
    /// plus an empirical comparison of share-tuple frequencies across
    /// secrets. The counts are reported as-is; no threshold is applied.
    pub fn privacy_check(
        &self,
        subset: &[ParticipantId],
        trials: usize,
        seed: u64,
    ) -> Result<PrivacyReport, Error> {
        let authorized = self
            .gamma
            .authorized_unchecked(&self.count_vector(subset));
        if authorized {
            return Err(Error::Precondition(
                "privacy check requires an unauthorized subset".into(),
            ));
        }
        let exact_private = if subset.is_empty() {
            true
        } else {
            !self
                .span_matrix(subset)?
                .column_space_contains(&self.extension.beta)?
        };

        let field = self.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<u64, BTreeMap<Vec<u64>, usize>> = BTreeMap::new();
        for _ in 0..trials {
            let secret = field.sample(&mut rng);
            let bundle = self.distribute(secret, rng.gen())?;
            let tuple = self.shares_for(&bundle, subset)?;
            *counts.entry(secret).or_default().entry(tuple).or_default() += 1;
        }

        // chi-square statistic for independence of (secret, tuple)
        let total: usize = trials;
        let mut tuple_totals: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        for per_secret in counts.values() {
            for (t, c) in per_secret {
                *tuple_totals.entry(t.clone()).or_default() += c;
            }
        }
        let mut chi_square = 0.0f64;
        if total > 0 {
            for per_secret in counts.values() {
                let row_total: usize = per_secret.values().sum();
                for (tuple, &col_total) in &tuple_totals {
                    let observed = *per_secret.get(tuple).unwrap_or(&0) as f64;
                    let expected = row_total as f64 * col_total as f64 / total as f64;
                    if expected > 0.0 {
                        chi_square += (observed - expected).powi(2) / expected;
                    }
                }
            }
        }
        let df = counts.len().saturating_sub(1) * tuple_totals.len().saturating_sub(1);

        Ok(PrivacyReport {
            subset: subset.iter().map(|p| p.to_string()).collect(),
            trials,
            exact_private,
            distinct_tuples: tuple_totals.len(),
            per_secret_trials: counts
                .iter()
                .map(|(s, per)| (*s, per.values().sum()))
                .collect(),
            chi_square,
            degrees_of_freedom: df,
        })
    }

    pub fn to_file(&self) -> InstanceFile {
        let rep = &self.extension.base;
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            p: rep.modulus(),
            g: rep.polymatroid().increments().to_vec(),
            min_delta: self
                .extension
                .realized_delta
                .min_sets()
                .iter()
                .map(|s| s.members().map(|i| i + 1).collect())
                .collect(),
            block_sizes: self.block_sizes().sizes().to_vec(),
            eval_points: rep.eval_points().to_vec(),
            block_bases: rep.block_bases().iter().map(|b| b.columns()).collect(),
            beta: self.extension.beta.clone(),
            participant_vectors: self.participant_vectors.clone(),
            seed: self.seed,
        }
    }

    /// Rebuilds an instance from its file form, re-running rank, port and
    /// scheme verification rather than trusting the file.
    pub fn from_file(file: &InstanceFile) -> Result<Self, Error> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported instance schema version {}",
                file.schema_version
            )));
        }
        let z = UniformPolymatroid::from_increments(file.g.clone())?;
        let field = PrimeField::new(file.p)?;
        let dim = z.total_rank() as usize;
        let bases = file
            .block_bases
            .iter()
            .map(|cols| FieldMatrix::from_columns(field, dim, cols))
            .collect::<Result<Vec<_>, _>>()?;
        let rep = Representation::from_block_bases(&z, field, bases, file.eval_points.clone())?;
        let delta = DeltaFamily::new(
            z.m(),
            file.min_delta
                .iter()
                .map(|s| SubsetMask::from_members(s.iter().map(|&i| i - 1))),
        )?;
        let realized = realized_family(&rep, &file.beta)?;
        if realized != delta {
            return Err(Error::SchemeVerification(
                "stored extension vector does not realize the stored family".into(),
            ));
        }
        let extension = Extension { base: rep, beta: file.beta.clone(), realized_delta: realized };
        let blocks = Partition::new(file.block_sizes.clone())?;
        let gamma = AccessStructure::build(&z, &delta, Some(blocks))?;
        for (block, vectors) in file.participant_vectors.iter().enumerate() {
            if vectors.len() != gamma.block_sizes().size(block) as usize {
                return Err(Error::SchemeVerification(format!(
                    "block {} stores {} vectors for {} participants",
                    block + 1,
                    vectors.len(),
                    gamma.block_sizes().size(block)
                )));
            }
            for v in vectors {
                if !extension.base.block_basis(block).column_space_contains(v)? {
                    return Err(Error::SchemeVerification(format!(
                        "a stored participant vector lies outside the subspace of block {}",
                        block + 1
                    )));
                }
            }
        }
        let instance = SchemeInstance {
            extension,
            gamma,
            participant_vectors: file.participant_vectors.clone(),
            seed: file.seed,
        };
        instance.verify()?;
        Ok(instance)
    }
}

pub const SCHEMA_VERSION: u32 = 1;

/// Serialized form of a scheme instance; everything needed to reconstruct
/// and audit it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    pub p: u64,
    pub g: Vec<u32>,
    pub min_delta: Vec<Vec<usize>>,
    pub block_sizes: Vec<u32>,
    pub eval_points: Vec<u64>,
    /// Per block, the basis columns of its subspace.
    pub block_bases: Vec<Vec<Vec<u64>>>,
    pub beta: Vec<u64>,
    pub participant_vectors: Vec<Vec<Vec<u64>>>,
    pub seed: u64,
}

impl InstanceFile {
    pub fn save(&self, path: &Path) -> Result<(), std::io::Error> {
        std::fs::write(path, serde_json::to_string_pretty(self).expect("serializable"))
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad instance file: {e}")))
    }
}

/// One dealing of a secret: the share of every participant in flat order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareBundle {
    pub p: u64,
    pub secret: u64,
    pub shares: Vec<u64>,
    pub seed: u64,
}

impl ShareBundle {
    pub fn save(&self, path: &Path) -> Result<(), std::io::Error> {
        #[derive(Serialize)]
        struct BundleFile<'a> {
            schema_version: u32,
            #[serde(flatten)]
            bundle: &'a ShareBundle,
        }
        std::fs::write(
            path,
            serde_json::to_string_pretty(&BundleFile { schema_version: SCHEMA_VERSION, bundle: self })
                .expect("serializable"),
        )
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad bundle file: {e}")))
    }
}

/// Output of [`SchemeInstance::privacy_check`].
#[derive(Debug, Clone, Serialize)]
pub struct PrivacyReport {
    pub subset: Vec<String>,
    pub trials: usize,
    pub exact_private: bool,
    pub distinct_tuples: usize,
    pub per_secret_trials: Vec<(u64, usize)>,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
}
