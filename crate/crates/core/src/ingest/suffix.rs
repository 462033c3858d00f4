//! Registrable-domain lookup against a public-suffix rule set.

use std::collections::HashSet;
use std::net::{Ipv4Addr, Ipv6Addr};
use std::sync::LazyLock;

use crate::ingest::url::host_of;

const BUNDLED: &str = include_str!("../../data/public_suffix_snapshot.dat");

static BUNDLED_LIST: LazyLock<SuffixList> = LazyLock::new(|| SuffixList::parse(BUNDLED));

/// Public-suffix rules in the Public Suffix List text format.
#[derive(Debug, Clone, Default)]
pub struct SuffixList {
    rules: HashSet<String>,
    /// `*.foo.bar` stored as `foo.bar`.
    wildcards: HashSet<String>,
    /// `!baz.foo.bar` stored as `baz.foo.bar`.
    exceptions: HashSet<String>,
}

impl SuffixList {
    pub fn bundled() -> &'static SuffixList {
        &BUNDLED_LIST
    }

    pub fn parse(text: &str) -> Self {
        let mut list = SuffixList::default();
        for line in text.lines() {
            let rule = line.split_whitespace().next().unwrap_or("");
            if rule.is_empty() || rule.starts_with("//") {
                continue;
            }
            let rule = rule.to_lowercase();
            if let Some(rest) = rule.strip_prefix('!') {
                list.exceptions.insert(rest.to_string());
            } else if let Some(rest) = rule.strip_prefix("*.") {
                list.wildcards.insert(rest.to_string());
            } else {
                list.rules.insert(rule);
            }
        }
        list
    }

    pub fn len(&self) -> usize {
        self.rules.len() + self.wildcards.len() + self.exceptions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of trailing labels of `labels` forming the public suffix.
    fn suffix_len(&self, labels: &[&str]) -> usize {
        let n = labels.len();
        for i in 0..n {
            if self.exceptions.contains(&labels[i..].join(".")) {
                return n - i - 1;
            }
        }
        let mut best = 1;
        for i in 0..n {
            let len = n - i;
            if len <= best {
                break;
            }
            if self.rules.contains(&labels[i..].join("."))
                || (i + 1 < n && self.wildcards.contains(&labels[i + 1..].join(".")))
            {
                best = len;
            }
        }
        best
    }

    /// Registrable domain (public suffix plus one label) of a host name.
    /// IP literals and hosts that are themselves a public suffix come back unchanged.
    pub fn registrable_host(&self, host: &str) -> String {
        let host = host.trim_end_matches('.').to_lowercase();
        let bare = host.trim_start_matches('[').trim_end_matches(']');
        if bare.parse::<Ipv4Addr>().is_ok() || bare.parse::<Ipv6Addr>().is_ok() {
            return host;
        }
        let labels: Vec<&str> = host.split('.').filter(|l| !l.is_empty()).collect();
        if labels.is_empty() {
            return host;
        }
        let suffix = self.suffix_len(&labels);
        if labels.len() > suffix {
            labels[labels.len() - suffix - 1..].join(".")
        } else {
            labels.join(".")
        }
    }

    pub fn registrable_domain(&self, canonical_url: &str) -> Option<String> {
        host_of(canonical_url).map(|h| self.registrable_host(&h))
    }
}

/// Registrable domain of a canonical URL using the bundled suffix snapshot.
/// Falls back to treating the input as a bare host when it does not parse.
pub fn registrable_domain(canonical_url: &str) -> String {
    let list = SuffixList::bundled();
    list.registrable_domain(canonical_url)
        .unwrap_or_else(|| list.registrable_host(canonical_url))
}
