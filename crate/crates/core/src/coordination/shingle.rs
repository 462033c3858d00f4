use std::collections::BTreeSet;

use crate::hashing::hash_str;

pub const DEFAULT_SHINGLE_K: usize = 5;

/// Case-folded whitespace tokens with punctuation removed.
pub fn normalized_tokens(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|w| {
            w.chars()
                .filter(|c| c.is_alphanumeric())
                .flat_map(char::to_lowercase)
                .collect::<String>()
        })
        .filter(|w| !w.is_empty())
        .collect()
}

/// All consecutive `k`-word sequences. Texts shorter than `k` tokens yield
/// their single full-token tuple; texts with no tokens yield nothing.
pub fn shingle(text: &str, k: usize) -> BTreeSet<String> {
    let tokens = normalized_tokens(text);
    shingles_of_tokens(&tokens, k)
}

fn shingles_of_tokens(tokens: &[String], k: usize) -> BTreeSet<String> {
    let k = k.max(1);
    if tokens.is_empty() {
        return BTreeSet::new();
    }
    if tokens.len() < k {
        return std::iter::once(tokens.join(" ")).collect();
    }
    tokens.windows(k).map(|w| w.join(" ")).collect()
}

/// Sorted, deduplicated 64-bit hashes of the shingles of `text`.
pub fn shingle_hashes(text: &str, k: usize) -> Vec<u64> {
    let tokens = normalized_tokens(text);
    let mut hashes: Vec<u64> = shingles_of_tokens(&tokens, k).iter().map(|s| hash_str(s)).collect();
    hashes.sort_unstable();
    hashes.dedup();
    hashes
}
