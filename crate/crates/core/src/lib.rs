//! Perfect subdirect covers of finite families of perfect permutation
//! groups, built level by level along the star series, with certificates
//! that an independent verifier re-checks from scratch.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod catalog;
pub mod certificate;
pub mod chain;
pub mod construction;
pub mod covering;
pub mod error;
pub mod gmodule;
pub mod group;
pub mod hom;
pub mod lifting;
pub mod perm;
pub mod product;
pub mod quotient;
pub mod snf;
pub mod structure;
pub mod textfmt;
pub mod verify;
pub mod word;

pub use certificate::Certificate;
pub use construction::{construct, ConstructOptions, Construction, DEFAULT_BUDGET};
pub use error::{Error, Result};
pub use group::{PermGroup, DEFAULT_CAP};
pub use hom::Homomorphism;
pub use perm::Permutation;
pub use product::{DirectProduct, ProductElement};
pub use verify::{verify_certificate, verify_json, VerificationReport, VerifyOptions};
pub use word::Word;
