//! Transparent inauthentic-account rules over observed profiles.

use narratrace::credibility::{account_flags, AccountProfile, AccountThresholds};

fn main() {
    let t = AccountThresholds::default();
    let day = 86_400;
    let start = 1_700_000_000;
    let profiles = [
        AccountProfile {
            account_id: "maria_lopez".into(),
            created_at: Some(start - 900 * day),
            followers: 410,
            following: 380,
            post_times: vec![start, start + 7200],
        },
        AccountProfile {
            account_id: "patriot48213377".into(),
            created_at: Some(start - 4 * day),
            followers: 3,
            following: 900,
            post_times: vec![start],
        },
        AccountProfile {
            account_id: "newsfeed_bot".into(),
            created_at: Some(start - 400 * day),
            followers: 20,
            following: 5000,
            post_times: (0..30).map(|i| start + i * 60).collect(),
        },
    ];
    for p in &profiles {
        let a = account_flags(p, &t);
        let flags: Vec<String> = a.flags.iter().map(|f| format!("{f:?}")).collect();
        println!(
            "{:<18} inauthentic={:<5} [{}]",
            a.account_id,
            a.inauthentic,
            flags.join(", ")
        );
    }
}
