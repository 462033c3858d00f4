//! MinHash signatures, LSH banding and exact verification of near-duplicates.

use narratrace::coordination::lsh::{sketch_texts, verified_pairs, LshParams};
use narratrace::coordination::shingle;

fn main() -> narratrace::Result<()> {
    let texts = [
        "the council voted late last night to close the old harbour bridge for repairs until spring",
        "the council voted late last night to close the old harbour bridge for repairs until summer",
        "BREAKING the council voted late last night to close the old harbour bridge for repairs until spring",
        "a quiet morning at the farmers market with fresh bread and far too many tomatoes",
        "the council met yesterday but postponed any decision on the harbour bridge",
    ];
    let params = LshParams::default();
    let sketches = sketch_texts(&texts, &params);
    println!(
        "{} hashes in {} bands of {} rows, j_dup {}",
        params.num_hashes, params.bands, params.rows, params.j_dup
    );
    for (i, t) in texts.iter().enumerate() {
        println!("  [{i}] {} shingles", shingle(t, params.shingle_k).len());
    }
    for p in verified_pairs(&sketches, &params)? {
        let est = match (&sketches.signatures[p.a], &sketches.signatures[p.b]) {
            (Some(a), Some(b)) => a.estimate_jaccard(b),
            _ => f64::NAN,
        };
        println!(
            "  [{}] ~ [{}]  exact {:.3}, MinHash estimate {:.3}",
            p.a, p.b, p.jaccard, est
        );
    }
    Ok(())
}
