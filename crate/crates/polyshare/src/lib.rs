//! Multipartite access structures determined by uniform polymatroids.
//!
//! A uniform polymatroid (given by a nonincreasing increment sequence) and a
//! compatible monotone family of block subsets determine a multipartite
//! access structure through the minimal base vectors of the family members.
//! This crate builds those structures, computes and classifies the
//! hierarchical preorder they induce on blocks, reproduces the full 4-block
//! classification grid, and realizes the structures as ideal linear
//! secret-sharing schemes over prime fields with end-to-end share,
//! reconstruct and privacy verification.
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `polyshare` binary exposes the same pipelines as subcommands with
//! machine-readable output.
//!
//! ```
//! use polyshare::{classify_instance, DeltaFamily, OrderType, UniformPolymatroid};
//!
//! let z = UniformPolymatroid::from_increments(vec![3, 2, 1, 1])?;
//! let d = DeltaFamily::parse("{1}", z.m())?;
//! let report = classify_instance(&z, &d, None)?;
//! // one superior block over three independent ones
//! assert_eq!(report.order_type.table_code(4)?, "M");
//! assert!(matches!(report.order_type, OrderType::Lambda { .. }));
//! assert_eq!(report.max_chain, 2);
//! # Ok::<(), polyshare::Error>(())
//! ```

pub mod access;
pub mod compat;
pub mod enumerate;
pub mod error;
pub mod gf;
pub mod ground;
pub mod hierarchy;
pub mod polymatroid;
pub mod represent;
pub mod scheme;

pub use access::AccessStructure;
pub use compat::{
    check_compatibility, is_compatible, CompatibilityViolation, DeltaFamily,
};
pub use error::Error;
pub use ground::{GroundSet, Partition, PointVector, SubsetMask};
pub use hierarchy::{classify_instance, classify_structure, HierarchyReport, OrderType, PreorderRelation};
pub use polymatroid::{UniformPolymatroid, VertexSpec};
pub use represent::{
    build_eta2_explicit, build_representation, default_prime, find_beta, realize_delta,
    verify_port, Extension, RealizationPath, Representation, DEFAULT_BETA_TRIES,
};
pub use scheme::{assign_vectors, ParticipantId, SchemeInstance, ShareBundle};
