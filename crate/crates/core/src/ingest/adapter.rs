//! Declarative platform adapters.
//!
//! Each platform is described by a mapping from unified [`Post`] field names
//! to dotted paths inside that platform's JSON records, e.g.
//!
//! ```toml
//! platform = "alpha"
//! [fields]
//! post_id = "id"
//! author_id = "user.handle"
//! text = "body"
//! created_at = "ts"
//! likes = "stats.likes"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use chrono::DateTime;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ingest::post::{Engagement, Post};
use crate::ingest::url::{canonicalize_url, find_urls};

pub const REQUIRED_FIELDS: &[&str] = &["post_id", "author_id", "text", "created_at"];

pub const OPTIONAL_FIELDS: &[&str] = &[
    "author_created_at",
    "author_followers",
    "author_following",
    "likes",
    "shares",
    "replies",
    "reply_to",
    "urls",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Adapter {
    pub platform: String,
    /// Unified field name -> dotted source path.
    pub fields: BTreeMap<String, String>,
    /// Keep unmapped top-level record fields in `Post::extra`.
    #[serde(default)]
    pub keep_extra: bool,
}

impl Adapter {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let adapter: Adapter = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        adapter.validate()?;
        Ok(adapter)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        if self.platform.trim().is_empty() {
            return Err(Error::Config("adapter platform tag is empty".into()));
        }
        for req in REQUIRED_FIELDS {
            if !self.fields.contains_key(*req) {
                return Err(Error::Config(format!(
                    "adapter `{}` does not map required field `{req}`",
                    self.platform
                )));
            }
        }
        for key in self.fields.keys() {
            if !REQUIRED_FIELDS.contains(&key.as_str()) && !OPTIONAL_FIELDS.contains(&key.as_str()) {
                return Err(Error::Config(format!(
                    "adapter `{}` maps unknown field `{key}`",
                    self.platform
                )));
            }
        }
        Ok(())
    }

    fn lookup<'a>(&self, record: &'a Value, field: &str) -> Option<&'a Value> {
        let path = self.fields.get(field)?;
        let mut cur = record;
        for part in path.split('.') {
            cur = match cur {
                Value::Object(map) => map.get(part)?,
                Value::Array(items) => items.get(part.parse::<usize>().ok()?)?,
                _ => return None,
            };
        }
        if cur.is_null() {
            None
        } else {
            Some(cur)
        }
    }
}

fn as_id(field: &str, v: &Value) -> Result<String> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => {
            return Err(Error::BadField {
                field: field.into(),
                reason: format!("expected string or number, got {v}"),
            })
        }
    };
    if s.is_empty() {
        return Err(Error::MissingField(field.into()));
    }
    Ok(s)
}

/// Unix seconds from an integer, a float, a numeric string or an RFC 3339 string.
pub fn parse_timestamp(field: &str, v: &Value) -> Result<i64> {
    let bad = || Error::BadTimestamp(format!("{field}={v}"));
    let ts = match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => i,
            None => n.as_f64().filter(|f| f.is_finite()).ok_or_else(bad)?.floor() as i64,
        },
        Value::String(s) => {
            let s = s.trim();
            if let Ok(i) = s.parse::<i64>() {
                i
            } else if let Ok(f) = s.parse::<f64>() {
                if !f.is_finite() {
                    return Err(bad());
                }
                f.floor() as i64
            } else {
                DateTime::parse_from_rfc3339(s).map_err(|_| bad())?.timestamp()
            }
        }
        _ => return Err(bad()),
    };
    if ts <= 0 {
        return Err(bad());
    }
    Ok(ts)
}

fn as_count(field: &str, v: &Value) -> Result<u64> {
    let bad = |reason: &str| Error::BadField {
        field: field.into(),
        reason: format!("{reason}: {v}"),
    };
    match v {
        Value::Number(n) => n.as_u64().ok_or_else(|| bad("expected non-negative integer")),
        Value::String(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| bad("expected non-negative integer")),
        _ => Err(bad("expected non-negative integer")),
    }
}

fn optional<T>(
    adapter: &Adapter,
    record: &Value,
    field: &str,
    conv: impl Fn(&str, &Value) -> Result<T>,
) -> Result<Option<T>> {
    adapter.lookup(record, field).map(|v| conv(field, v)).transpose()
}

fn required<'a>(adapter: &Adapter, record: &'a Value, field: &str) -> Result<&'a Value> {
    adapter
        .lookup(record, field)
        .ok_or_else(|| Error::MissingField(field.into()))
}

/// Canonical URLs from raw strings: unparseable ones are skipped, shortener
/// targets substituted, duplicates dropped keeping first occurrence.
pub fn canonical_urls<'a>(
    raw: impl IntoIterator<Item = &'a str>,
    shorteners: &BTreeMap<String, String>,
) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in raw {
        let Ok(mut canon) = canonicalize_url(r) else {
            log::debug!("skipping unparseable url {r:?}");
            continue;
        };
        if let Some(target) = shorteners.get(&canon) {
            match canonicalize_url(target) {
                Ok(t) => canon = t,
                Err(_) => log::debug!("shortener target {target:?} is not a url"),
            }
        }
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

/// Map one platform record onto the unified [`Post`] schema.
///
/// `shorteners` maps canonical short URLs to their targets (static, no network).
pub fn normalize(record: &Value, adapter: &Adapter, shorteners: &BTreeMap<String, String>) -> Result<Post> {
    let post_id = as_id("post_id", required(adapter, record, "post_id")?)?;
    let author_id = as_id("author_id", required(adapter, record, "author_id")?)?;
    let text = match required(adapter, record, "text")? {
        Value::String(s) => s.clone(),
        other => {
            return Err(Error::BadField {
                field: "text".into(),
                reason: format!("expected string, got {other}"),
            })
        }
    };
    let created_at = parse_timestamp("created_at", required(adapter, record, "created_at")?)?;

    let author_created_at = optional(adapter, record, "author_created_at", parse_timestamp)?;
    if let Some(ac) = author_created_at {
        if ac > created_at {
            return Err(Error::BadTimestamp(format!(
                "author_created_at={ac} is after created_at={created_at}"
            )));
        }
    }

    let mut raw_urls: Vec<String> = find_urls(&text).into_iter().map(str::to_string).collect();
    match adapter.lookup(record, "urls") {
        None => {}
        Some(Value::String(s)) => raw_urls.push(s.clone()),
        Some(Value::Array(items)) => {
            for item in items {
                match item {
                    Value::String(s) => raw_urls.push(s.clone()),
                    Value::Object(map) => {
                        // common {"url": "..."} / {"expanded_url": "..."} shapes
                        if let Some(Value::String(s)) = map.get("expanded_url").or_else(|| map.get("url")) {
                            raw_urls.push(s.clone());
                        }
                    }
                    _ => {}
                }
            }
        }
        Some(other) => {
            return Err(Error::BadField {
                field: "urls".into(),
                reason: format!("expected string or list, got {other}"),
            })
        }
    }
    let urls = canonical_urls(raw_urls.iter().map(String::as_str), shorteners);

    let mut extra = BTreeMap::new();
    if adapter.keep_extra {
        if let Value::Object(map) = record {
            let mapped_roots: BTreeSet<&str> = adapter
                .fields
                .values()
                .map(|p| p.split('.').next().unwrap_or(p))
                .collect();
            for (k, v) in map {
                if !mapped_roots.contains(k.as_str()) {
                    extra.insert(k.clone(), v.clone());
                }
            }
        }
    }

    Ok(Post {
        post_id,
        platform: adapter.platform.clone(),
        author_id,
        author_created_at,
        author_followers: optional(adapter, record, "author_followers", as_count)?.unwrap_or(0),
        author_following: optional(adapter, record, "author_following", as_count)?.unwrap_or(0),
        text,
        created_at,
        urls,
        engagement: Engagement {
            likes: optional(adapter, record, "likes", as_count)?.unwrap_or(0),
            shares: optional(adapter, record, "shares", as_count)?.unwrap_or(0),
            replies: optional(adapter, record, "replies", as_count)?.unwrap_or(0),
        },
        reply_to: optional(adapter, record, "reply_to", as_id)?,
        extra,
    })
}
