use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One time window: `[start, start + window_len)` and the indices of the
/// posts falling inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub index: usize,
    pub start: i64,
    pub posts: Vec<usize>,
}

/// Assign sorted timestamps to windows starting at `times[0] + k * stride`.
///
/// Every window from 0 through the last one containing a post is returned,
/// including empty ones, so window indices are consecutive.
pub fn window_posts(times: &[i64], window_len: i64, stride: i64) -> Result<Vec<Window>> {
    if window_len <= 0 || stride <= 0 || stride > window_len {
        return Err(Error::BadWindow { window_len, stride });
    }
    let Some(&t0) = times.first() else {
        return Ok(Vec::new());
    };
    debug_assert!(times.windows(2).all(|w| w[0] <= w[1]), "times must be sorted");
    let last = *times.last().expect("nonempty");
    let n_windows = ((last - t0) / stride + 1) as usize;
    let mut windows: Vec<Window> = (0..n_windows)
        .map(|k| Window {
            index: k,
            start: t0 + k as i64 * stride,
            posts: Vec::new(),
        })
        .collect();
    for (i, &t) in times.iter().enumerate() {
        let offset = t - t0;
        let k_max = offset / stride;
        // smallest k with k*stride + window_len > offset
        let k_min = if offset >= window_len {
            (offset - window_len) / stride + 1
        } else {
            0
        };
        for k in k_min..=k_max {
            windows[k as usize].posts.push(i);
        }
    }
    Ok(windows)
}
