use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Engagement {
    pub likes: u64,
    pub shares: u64,
    pub replies: u64,
}

impl Engagement {
    pub fn total(&self) -> u64 {
        self.likes + self.shares + self.replies
    }
}

/// One normalized social-media item, whatever platform it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Post {
    pub post_id: String,
    pub platform: String,
    pub author_id: String,
    /// Account creation time; `None` when the platform does not expose it.
    #[serde(default)]
    pub author_created_at: Option<i64>,
    #[serde(default)]
    pub author_followers: u64,
    #[serde(default)]
    pub author_following: u64,
    pub text: String,
    pub created_at: i64,
    #[serde(default)]
    pub urls: Vec<String>,
    #[serde(default)]
    pub engagement: Engagement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reply_to: Option<String>,
    /// Unmapped platform fields, carried along but never read by the pipeline.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl Post {
    /// Account age in seconds at the time of this post, when known.
    pub fn account_age_secs(&self) -> Option<i64> {
        self.author_created_at.map(|c| self.created_at - c)
    }
}
