//! Orchestrated-activity signals: near-duplicate rings, account synchrony,
//! and cross-platform spread.

pub mod lsh;
pub mod minhash;
pub mod score;
pub mod shingle;
pub mod synchrony;

pub use lsh::{find_duplicate_clusters, DuplicateCluster, LshParams};
pub use minhash::{minhash_signature, MinHasher, Signature};
pub use score::{coordination_score, CoordinationScore, CoordinationWeights};
pub use shingle::shingle;
pub use synchrony::{synchrony, Synchrony};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoordinationParams {
    pub lsh: LshParams,
    pub sync_window_secs: i64,
    /// Accounts with fewer posts in a narrative do not count toward max synchrony.
    pub sync_min_posts: usize,
    /// Duplicate clusters count toward `dup_fraction` only with this many accounts.
    pub min_dup_accounts: usize,
    pub weights: CoordinationWeights,
}

impl Default for CoordinationParams {
    fn default() -> Self {
        Self {
            lsh: LshParams::default(),
            sync_window_secs: synchrony::DEFAULT_SYNC_WINDOW_SECS,
            sync_min_posts: 3,
            min_dup_accounts: 3,
            weights: CoordinationWeights::default(),
        }
    }
}
