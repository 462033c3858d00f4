//! Word pools and text builders for synthetic posts.

use rand::seq::IndexedRandom;
use rand::Rng;

pub const FILLER: &[&str] = &[
    "about",
    "after",
    "again",
    "against",
    "ahead",
    "almost",
    "along",
    "already",
    "also",
    "always",
    "another",
    "anyone",
    "around",
    "asked",
    "away",
    "back",
    "because",
    "before",
    "behind",
    "being",
    "believe",
    "better",
    "between",
    "beyond",
    "bring",
    "build",
    "busy",
    "called",
    "came",
    "cannot",
    "care",
    "case",
    "change",
    "check",
    "city",
    "clear",
    "close",
    "come",
    "could",
    "council",
    "country",
    "couple",
    "course",
    "crowd",
    "daily",
    "data",
    "days",
    "deal",
    "decide",
    "details",
    "different",
    "done",
    "down",
    "during",
    "early",
    "easy",
    "either",
    "else",
    "enough",
    "even",
    "evening",
    "every",
    "everyone",
    "exactly",
    "expect",
    "fact",
    "fair",
    "family",
    "far",
    "feel",
    "few",
    "finally",
    "find",
    "first",
    "folks",
    "follow",
    "found",
    "free",
    "friday",
    "friends",
    "full",
    "future",
    "give",
    "glad",
    "going",
    "good",
    "great",
    "group",
    "guess",
    "half",
    "happen",
    "hard",
    "head",
    "hear",
    "heard",
    "help",
    "here",
    "high",
    "hold",
    "home",
    "honest",
    "hope",
    "hours",
    "house",
    "idea",
    "important",
    "inside",
    "instead",
    "interesting",
    "issue",
    "just",
    "keep",
    "kind",
    "knew",
    "know",
    "last",
    "late",
    "later",
    "least",
    "leave",
    "less",
    "likely",
    "little",
    "live",
    "local",
    "long",
    "look",
    "looking",
    "lot",
    "made",
    "make",
    "many",
    "matter",
    "maybe",
    "mean",
    "meeting",
    "might",
    "mind",
    "minutes",
    "moment",
    "monday",
    "month",
    "more",
    "morning",
    "most",
    "move",
    "much",
    "must",
    "need",
    "never",
    "news",
    "next",
    "nice",
    "night",
    "nothing",
    "notice",
    "number",
    "often",
    "okay",
    "once",
    "only",
    "open",
    "other",
    "over",
    "part",
    "past",
    "people",
    "perhaps",
    "place",
    "plan",
    "plenty",
    "point",
    "possible",
    "pretty",
    "probably",
    "public",
    "put",
    "question",
    "quite",
    "rather",
    "read",
    "ready",
    "really",
    "reason",
    "recent",
    "remember",
    "report",
    "rest",
    "right",
    "road",
    "room",
    "said",
    "same",
    "saw",
    "school",
    "second",
    "seems",
    "seen",
    "sense",
    "serious",
    "several",
    "share",
    "short",
    "should",
    "show",
    "side",
    "simple",
    "since",
    "small",
    "someone",
    "something",
    "soon",
    "sort",
    "speak",
    "start",
    "still",
    "story",
    "street",
    "such",
    "sure",
    "table",
    "take",
    "talk",
    "team",
    "tell",
    "than",
    "thanks",
    "their",
    "then",
    "there",
    "these",
    "thing",
    "think",
    "those",
    "though",
    "thought",
    "through",
    "today",
    "together",
    "told",
    "tomorrow",
    "tonight",
    "town",
    "tried",
    "true",
    "trying",
    "turn",
    "under",
    "until",
    "update",
    "usual",
    "very",
    "wait",
    "want",
    "watch",
    "water",
    "week",
    "weekend",
    "well",
    "went",
    "what",
    "when",
    "where",
    "which",
    "while",
    "whole",
    "will",
    "with",
    "without",
    "wonder",
    "word",
    "work",
    "world",
    "worth",
    "would",
    "write",
    "year",
    "years",
    "young",
    "yourself",
];

pub const FIRST_NAMES: &[&str] = &[
    "alex", "amara", "ben", "carla", "chen", "dana", "diego", "elena", "farah", "gus", "hana", "ian", "ines", "jamal",
    "jo", "kai", "kofi", "lena", "luis", "maya", "mike", "nadia", "noor", "omar", "priya", "quinn", "rosa", "sam",
    "sara", "tariq", "tess", "uma", "vic", "wen", "yara", "zane",
];

pub const LAST_WORDS: &[&str] = &[
    "baker", "brook", "stone", "field", "rivers", "hill", "ward", "lane", "frost", "marsh", "reed", "vale", "grant",
    "cole", "pike", "moss", "birch", "quill", "north", "west",
];

/// Organic discussion topics: `(hashtags, dictionary term, aliases)`.
pub const TOPICS: &[(&[&str], &str, &[&str])] = &[
    (
        &["#transitplan", "#busfares"],
        "city transit board",
        &["transit board", "ctb"],
    ),
    (
        &["#harborfestival", "#harborfest"],
        "harbor festival",
        &["harborfest committee"],
    ),
    (&["#schoolbudget", "#teachers"], "school district", &["district office"]),
    (&["#rivercleanup", "#cleanwater"], "river trust", &["the river trust"]),
    (&["#stormwatch", "#weatheralert"], "weather service", &["met office"]),
    (
        &["#housingvote", "#rentcontrol"],
        "housing authority",
        &["housing office"],
    ),
    (&["#marathon", "#runclub"], "city marathon", &["the marathon"]),
    (&["#techsummit", "#startups"], "tech summit", &["summit organizers"]),
    (&["#libraryweek", "#booklovers"], "public library", &["central library"]),
    (&["#foodtrucks", "#streetfood"], "night market", &["the night market"]),
    (
        &["#budgettalks", "#citycouncil"],
        "finance committee",
        &["council finance committee"],
    ),
    (&["#wildfiresmoke", "#airquality"], "air quality board", &["aqb"]),
    (&["#cupfinal", "#derbyday"], "united fc", &["united football club"]),
    (&["#roadworks", "#detour"], "public works", &["works department"]),
    (&["#museumnight", "#artwalk"], "city museum", &["the museum"]),
    (&["#flushot", "#clinic"], "health department", &["public health office"]),
    (&["#bikelanes", "#cyclists"], "mobility office", &["bike program"]),
    (
        &["#farmersmarket", "#localfood"],
        "growers cooperative",
        &["growers coop"],
    ),
    (
        &["#concertseries", "#livemusic"],
        "riverside stage",
        &["the riverside stage"],
    ),
    (&["#jobsfair", "#hiring"], "workforce center", &["job center"]),
    (&["#parkrenewal", "#greenspace"], "parks department", &["parks dept"]),
    (&["#powerout", "#gridupdate"], "electric utility", &["power company"]),
    (
        &["#electionday", "#pollingplace"],
        "elections office",
        &["board of elections"],
    ),
    (
        &["#stadiumdeal", "#taxdollars"],
        "stadium authority",
        &["arena authority"],
    ),
];

/// Outlets organic accounts link to. Some use multi-label public suffixes.
pub const MAINSTREAM_DOMAINS: &[&str] = &[
    "metroherald.com",
    "www.dailyledger.net",
    "news.eveningpost.co.uk",
    "thecoastaltimes.com.au",
    "civicradio.org",
    "www.valleytribune.com",
    "channel9local.com",
    "www.northgazette.co.uk",
    "citybeat.news",
    "harborobserver.com",
    "m.metroherald.com",
    "pressbureau.org",
];

/// Low-credibility outlets that organic accounts occasionally share.
pub const STRAY_LOWCRED_DOMAINS: &[&str] = &["realtruthnow.com", "clickshockdaily.net", "thehiddenwire.info"];

const CAMPAIGN_TAG_HEADS: &[&str] = &[
    "wakeup",
    "stopthe",
    "savethe",
    "exposethe",
    "defend",
    "protect",
    "reject",
    "unmask",
    "rescue",
    "reclaim",
];
const CAMPAIGN_TAG_TAILS: &[&str] = &[
    "ballots", "border", "farms", "schools", "truckers", "vaccines", "grid", "pensions", "harbor", "rallies", "courts",
    "borough",
];
const OUTLET_HEADS: &[&str] = &[
    "patriot",
    "freedom",
    "liberty",
    "eagle",
    "heartland",
    "frontier",
    "sentinel",
    "minuteman",
    "homeland",
    "citizen",
    "beacon",
    "ironclad",
];
const OUTLET_TAILS: &[&str] = &[
    "dispatch", "wire", "report", "insider", "herald", "alert", "journal", "bulletin",
];
const OUTLET_TLDS: &[&str] = &["com", "net", "info", "news", "co", "org"];

/// Distinct campaign hashtag for index `i`.
pub fn campaign_hashtag(i: usize) -> String {
    let h = CAMPAIGN_TAG_HEADS[i % CAMPAIGN_TAG_HEADS.len()];
    let t = CAMPAIGN_TAG_TAILS[(i * 7 + i / CAMPAIGN_TAG_HEADS.len()) % CAMPAIGN_TAG_TAILS.len()];
    let round = i / (CAMPAIGN_TAG_HEADS.len() * CAMPAIGN_TAG_TAILS.len());
    if round == 0 {
        format!("#{h}{t}")
    } else {
        format!("#{h}{t}{round}")
    }
}

/// Distinct outlet domain for index `i`.
pub fn campaign_domain(i: usize) -> String {
    let h = OUTLET_HEADS[i % OUTLET_HEADS.len()];
    let t = OUTLET_TAILS[(i / OUTLET_HEADS.len() + i) % OUTLET_TAILS.len()];
    let tld = OUTLET_TLDS[(i * 5) % OUTLET_TLDS.len()];
    let round = i / (OUTLET_HEADS.len() * OUTLET_TAILS.len());
    if round == 0 {
        format!("{h}{t}.{tld}")
    } else {
        format!("{h}{t}{round}.{tld}")
    }
}

pub fn filler<R: Rng>(rng: &mut R) -> &'static str {
    FILLER.choose(rng).expect("nonempty pool")
}

pub fn filler_words<R: Rng>(rng: &mut R, n: usize) -> Vec<String> {
    (0..n).map(|_| filler(rng).to_string()).collect()
}

/// A cue with any `*` replaced by a filler word.
pub fn realize_cue<R: Rng>(rng: &mut R, cue: &str) -> String {
    cue.split_whitespace()
        .map(|w| if w == "*" { filler(rng) } else { w })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Insert `items` (each possibly several words) at random interior
/// positions of `words`, keeping the first and last `margin` words free.
pub fn insert_interior<R: Rng>(rng: &mut R, words: &mut Vec<String>, items: &[String], margin: usize) {
    for item in items {
        let lo = margin.min(words.len());
        let hi = words.len().saturating_sub(margin).max(lo);
        let at = rng.random_range(lo..=hi);
        words.insert(at, item.clone());
    }
}

/// One boundary edit: replace, add or drop a word at either end.
pub fn boundary_edit<R: Rng>(rng: &mut R, words: &mut Vec<String>) {
    let w = filler(rng).to_string();
    match rng.random_range(0..6) {
        0 if !words.is_empty() => words[0] = w,
        1 if !words.is_empty() => {
            let n = words.len();
            words[n - 1] = w;
        }
        2 => words.insert(0, w),
        3 => words.push(w),
        4 if words.len() > 1 => {
            words.remove(0);
        }
        5 if words.len() > 1 => {
            words.pop();
        }
        _ => words.push(w),
    }
}
