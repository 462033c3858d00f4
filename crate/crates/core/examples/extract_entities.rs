//! Entity extraction: hashtags, mentions, shared domains and dictionary terms.

use std::collections::BTreeMap;

use narratrace::entities::extract_entities;
use narratrace::ingest::{Post, SourceLists};

fn main() -> narratrace::Result<()> {
    let dictionary = BTreeMap::from([
        ("secretary clinton".to_string(), "hillary_clinton".to_string()),
        ("hillary".to_string(), "hillary_clinton".to_string()),
        ("election".to_string(), "election".to_string()),
    ]);
    let lists = SourceLists::new(Vec::new(), dictionary, SourceLists::starter_lexicon())?;

    let texts = [
        "Secretary Clinton spoke today about the #Election https://www.example.com/a",
        "@newsdesk what did Hillary say? #election #Debate",
        "nothing to see here",
    ];
    for (i, text) in texts.iter().enumerate() {
        let post = Post {
            post_id: format!("p{i}"),
            platform: "demo".into(),
            author_id: "someone".into(),
            author_created_at: None,
            author_followers: 0,
            author_following: 0,
            text: text.to_string(),
            created_at: 1_700_000_000,
            urls: Vec::new(),
            engagement: Default::default(),
            reply_to: None,
            extra: Default::default(),
        };
        let found: Vec<String> = extract_entities(&post, &lists)
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("{text}\n  {}", found.join(", "));
    }
    Ok(())
}
