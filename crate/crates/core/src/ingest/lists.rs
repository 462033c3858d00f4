//! Reference lists: low-credibility domains, entity aliases, propaganda lexicon.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::suffix::SuffixList;

/// Starter propaganda lexicon shipped with the crate. Illustrative only:
/// real deployments supply their own.
pub const STARTER_LEXICON: &str = include_str!("../../data/starter_lexicon.json");

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SourceLists {
    /// Registrable domains, lowercase, no scheme.
    pub low_credibility_domains: BTreeSet<String>,
    /// Case-folded alias -> canonical entity name.
    pub entity_dictionary: BTreeMap<String, String>,
    /// Technique name -> case-folded cue phrases (`*` matches one word).
    pub propaganda_lexicon: BTreeMap<String, Vec<String>>,
}

impl SourceLists {
    pub fn new(
        domains: impl IntoIterator<Item = String>,
        dictionary: BTreeMap<String, String>,
        lexicon: BTreeMap<String, Vec<String>>,
    ) -> Result<Self> {
        let suffixes = SuffixList::bundled();
        let low_credibility_domains = domains
            .into_iter()
            .filter_map(|d| normalize_domain_entry(&d))
            .map(|host| suffixes.registrable_host(&host))
            .collect();

        let mut entity_dictionary = BTreeMap::new();
        for (alias, canonical) in dictionary {
            let alias = alias.trim().to_lowercase();
            let canonical = canonical.trim().to_lowercase();
            if alias.is_empty() || canonical.is_empty() {
                return Err(Error::Config(format!(
                    "entity dictionary entry {alias:?} -> {canonical:?} has an empty side"
                )));
            }
            entity_dictionary.insert(alias, canonical);
        }

        let mut propaganda_lexicon = BTreeMap::new();
        for (technique, cues) in lexicon {
            let cues: Vec<String> = cues
                .iter()
                .map(|c| c.trim().to_lowercase())
                .filter(|c| !c.is_empty())
                .collect();
            if technique.trim().is_empty() || cues.is_empty() {
                return Err(Error::Config(format!("lexicon technique {technique:?} has no cues")));
            }
            propaganda_lexicon.insert(technique.trim().to_string(), cues);
        }

        Ok(Self {
            low_credibility_domains,
            entity_dictionary,
            propaganda_lexicon,
        })
    }

    pub fn starter_lexicon() -> BTreeMap<String, Vec<String>> {
        serde_json::from_str(STARTER_LEXICON).expect("bundled lexicon is valid json")
    }

    pub fn load(domains: Option<&Path>, dictionary: Option<&Path>, lexicon: Option<&Path>) -> Result<Self> {
        let domains = match domains {
            Some(p) => read_domain_list(p)?,
            None => Vec::new(),
        };
        let dictionary = match dictionary {
            Some(p) => read_json(p)?,
            None => BTreeMap::new(),
        };
        let lexicon = match lexicon {
            Some(p) => read_json(p)?,
            None => Self::starter_lexicon(),
        };
        Self::new(domains, dictionary, lexicon)
    }

    pub fn is_low_credibility(&self, registrable: &str) -> bool {
        self.low_credibility_domains.contains(registrable)
    }
}

/// `https://www.Foo.com/path` -> `www.foo.com`; comments and blanks -> None.
fn normalize_domain_entry(line: &str) -> Option<String> {
    let line = line.split('#').next()?.trim().to_lowercase();
    if line.is_empty() {
        return None;
    }
    let no_scheme = line
        .strip_prefix("https://")
        .or_else(|| line.strip_prefix("http://"))
        .unwrap_or(&line);
    let host = no_scheme.split(['/', '?', ':']).next()?.trim_end_matches('.');
    (!host.is_empty()).then(|| host.to_string())
}

pub fn read_domain_list(path: &Path) -> Result<Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(text.lines().map(str::to_string).collect())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_entries_reduce_to_registrable() {
        let lists = SourceLists::new(
            vec![
                "# comment".into(),
                "".into(),
                "https://WWW.KansasDailyNews.com/about".into(),
                "news.blogspot.com".into(),
            ],
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let got: Vec<_> = lists.low_credibility_domains.iter().cloned().collect();
        assert_eq!(got, ["kansasdailynews.com", "news.blogspot.com"]);
    }

    #[test]
    fn empty_alias_target_rejected() {
        let mut dict = BTreeMap::new();
        dict.insert("x".to_string(), " ".to_string());
        assert!(SourceLists::new(vec![], dict, BTreeMap::new()).is_err());
    }

    #[test]
    fn starter_lexicon_shape() {
        let lex = SourceLists::starter_lexicon();
        assert!(lex.len() >= 5);
        assert!(lex.values().all(|cues| cues.len() >= 10));
    }
}
