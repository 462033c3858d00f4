//! URL canonicalization and registrable-domain extraction.
//!
//!     cargo run --example canonicalize_urls [-- URL...]

use narratrace::ingest::{canonicalize_url, registrable_domain};

fn main() {
    let mut urls: Vec<String> = std::env::args().skip(1).collect();
    if urls.is_empty() {
        urls = [
            "HTTPS://Example.COM:443/story/?utm_source=tw&id=7#comments",
            "http://news.bbc.co.uk/world/?fbclid=abc",
            "https://m.blog.example.com.au/p/%7euser/",
            "https://t.co/?s=20&ref_src=twsrc",
            "not a url",
        ]
        .map(String::from)
        .to_vec();
    }
    for raw in &urls {
        match canonicalize_url(raw) {
            Ok(c) => println!("{raw}\n  -> {c}\n  domain {}", registrable_domain(&c)),
            Err(e) => println!("{raw}\n  !! {e}"),
        }
    }
}
