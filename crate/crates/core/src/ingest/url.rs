//! URL extraction and canonicalization.
//!
//! Canonical form: lowercase scheme and host, no default port, no userinfo,
//! no fragment, tracking parameters removed, no trailing slash on non-root
//! paths, uppercase percent-encoding hex.

use std::sync::LazyLock;

use regex::Regex;
use url::Url;

use crate::error::{Error, Result};

/// Query keys dropped during canonicalization. Entries ending in `*` are prefixes.
pub const TRACKING_PARAMS: &[&str] = &["utm_*", "fbclid", "gclid", "igshid", "s", "ref_src"];

static URL_IN_TEXT: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r#"(?i)\bhttps?://[^\s<>"'`]+"#).expect("static regex"));

const TRAILING_PUNCT: &[char] = &['.', ',', ';', ':', '!', '?', ')', ']', '}', '\'', '"', '>'];

/// Raw URL substrings in `text`, in order of appearance.
pub fn find_urls(text: &str) -> Vec<&str> {
    URL_IN_TEXT
        .find_iter(text)
        .map(|m| m.as_str().trim_end_matches(TRAILING_PUNCT))
        .filter(|s| !s.is_empty())
        .collect()
}

/// Byte ranges of URLs in `text`, matching [`find_urls`].
pub fn url_ranges(text: &str) -> Vec<std::ops::Range<usize>> {
    URL_IN_TEXT
        .find_iter(text)
        .map(|m| {
            let trimmed = m.as_str().trim_end_matches(TRAILING_PUNCT);
            m.start()..m.start() + trimmed.len()
        })
        .collect()
}

fn is_tracking_key(key: &str) -> bool {
    let key = key.to_ascii_lowercase();
    TRACKING_PARAMS.iter().any(|p| match p.strip_suffix('*') {
        Some(prefix) => key.starts_with(prefix),
        None => key == *p,
    })
}

fn upper_percent_hex(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut out = String::with_capacity(s.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%'
            && i + 2 < bytes.len()
            && bytes[i + 1].is_ascii_hexdigit()
            && bytes[i + 2].is_ascii_hexdigit()
        {
            out.push('%');
            out.push(bytes[i + 1].to_ascii_uppercase() as char);
            out.push(bytes[i + 2].to_ascii_uppercase() as char);
            i += 3;
        } else {
            let ch = s[i..].chars().next().expect("in bounds");
            out.push(ch);
            i += ch.len_utf8();
        }
    }
    out
}

pub fn canonicalize_url(raw: &str) -> Result<String> {
    let parsed = Url::parse(raw.trim()).map_err(|_| Error::NotAUrl(raw.to_string()))?;
    let scheme = parsed.scheme();
    if scheme != "http" && scheme != "https" {
        return Err(Error::NotAUrl(raw.to_string()));
    }
    let host = match parsed.host_str() {
        Some(h) if !h.is_empty() => h.trim_end_matches('.').to_ascii_lowercase(),
        _ => return Err(Error::NotAUrl(raw.to_string())),
    };

    let mut out = format!("{scheme}://{host}");
    if let Some(port) = parsed.port() {
        out.push(':');
        out.push_str(&port.to_string());
    }

    let mut path = upper_percent_hex(parsed.path());
    while path.len() > 1 && path.ends_with('/') {
        path.pop();
    }
    if path.is_empty() {
        path.push('/');
    }
    out.push_str(&path);

    if let Some(query) = parsed.query() {
        let kept: Vec<String> = query
            .split('&')
            .filter(|piece| !piece.is_empty())
            .filter(|piece| {
                let key = piece.split('=').next().unwrap_or("");
                !is_tracking_key(key)
            })
            .map(upper_percent_hex)
            .collect();
        if !kept.is_empty() {
            out.push('?');
            out.push_str(&kept.join("&"));
        }
    }
    Ok(out)
}

/// Host part of a canonical URL.
pub fn host_of(canonical: &str) -> Option<String> {
    Url::parse(canonical)
        .ok()
        .and_then(|u| u.host_str().map(|h| h.trim_end_matches('.').to_ascii_lowercase()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn applies_each_rule_once() {
        assert_eq!(
            canonicalize_url("HTTP://News.Site:80/A/?utm_medium=social#top").unwrap(),
            "http://news.site/A"
        );
    }

    #[test]
    fn trailing_slash_only_off_non_root() {
        assert_eq!(canonicalize_url("https://a.b/path/").unwrap(), "https://a.b/path");
        assert_eq!(canonicalize_url("https://a.b/").unwrap(), "https://a.b/");
        assert_eq!(canonicalize_url("https://a.b").unwrap(), "https://a.b/");
    }

    #[test]
    fn drops_exact_tracking_list_only() {
        let u = "https://x.org/p?id=7&utm_source=a&UTM_Campaign=b&fbclid=1&gclid=2&igshid=3&s=20&ref_src=tw&sort=new";
        assert_eq!(canonicalize_url(u).unwrap(), "https://x.org/p?id=7&sort=new");
        // `ss` and `source` are not on the list
        assert_eq!(
            canonicalize_url("https://x.org/?ss=1&source=2").unwrap(),
            "https://x.org/?ss=1&source=2"
        );
    }

    #[test]
    fn keeps_non_default_port_and_uppercases_hex() {
        assert_eq!(
            canonicalize_url("https://x.org:8443/a%2fb?q=%e2%9c%93").unwrap(),
            "https://x.org:8443/a%2Fb?q=%E2%9C%93"
        );
        assert_eq!(canonicalize_url("https://x.org:443/a").unwrap(), "https://x.org/a");
    }

    #[test]
    fn rejects_non_http() {
        assert!(matches!(canonicalize_url("ftp://x.org/a"), Err(Error::NotAUrl(_))));
        assert!(matches!(canonicalize_url("not a url"), Err(Error::NotAUrl(_))));
        assert!(matches!(canonicalize_url("/relative/path"), Err(Error::NotAUrl(_))));
    }

    #[test]
    fn finds_urls_in_text() {
        let text = "see https://Example.com/a?utm_source=x, and (http://b.org/c).";
        assert_eq!(
            find_urls(text),
            ["https://Example.com/a?utm_source=x", "http://b.org/c"]
        );
        let ranges = url_ranges(text);
        assert_eq!(&text[ranges[1].clone()], "http://b.org/c");
    }
}
