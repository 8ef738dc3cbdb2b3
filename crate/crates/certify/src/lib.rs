//! Certificates for affinity verdicts, verifiers that recheck them from the
//! structure constants alone, and a brute-force oracle for nilradicals of
//! class at most two.
//!
//! Nothing here depends on the decision procedure: every quantity a
//! certificate refers to is recomputed with `exact-linalg` and `lie-core`.

mod cert;
mod oracle;
mod verify;

pub use cert::{Certificate, EmbeddingCert, SectionCert, VerdictKind};
pub use oracle::{oracle_decide_class2, OracleError, ORACLE_MAX_DIM};
pub use verify::{canonical_functional, verify, verify_embedding, verify_section, Rejection};
