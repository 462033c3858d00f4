//! Lexicon-based technique spans and the agenda score they feed.

use narratrace::agenda::{detect_techniques, fuse_agenda, DEFAULT_LAMBDA};
use narratrace::ingest::SourceLists;
use narratrace::text::token_count;

fn main() {
    let lexicon = SourceLists::starter_lexicon();
    let text = "Wake up! The so-called experts are corrupt traitors. True American patriots \
                know what are they hiding. Do your own research.";
    let hits = detect_techniques("demo", text, &lexicon);
    for h in &hits {
        println!("{:>16}  {:?}  {:?}", h.technique, &text[h.span.0..h.span.1], h.span);
    }
    let score = fuse_agenda("demo", &hits, token_count(text), lexicon.len(), DEFAULT_LAMBDA);
    println!(
        "{} tokens, {:.1} hits/100 tokens, diversity {:.2}, agenda score {:.3}",
        token_count(text),
        score.hits_per_100_tokens,
        score.technique_diversity,
        score.score
    );
}
