//! Volume burst scoring against trailing windows.

/// Default event threshold on the burst z-score.
pub const DEFAULT_Z_EVENT: f64 = 3.0;

/// z-score of `series[t]` against up to `k_trailing` preceding values.
///
/// Fewer than two preceding values give 0. The standard deviation
/// (population, two-pass) is floored at 1 so flat histories stay finite.
pub fn burst_z(series: &[f64], t: usize, k_trailing: usize) -> f64 {
    let available = t.min(k_trailing);
    if available < 2 || t >= series.len() {
        return 0.0;
    }
    let history = &series[t - available..t];
    let n = history.len() as f64;
    let mean = history.iter().sum::<f64>() / n;
    let var = history.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (series[t] - mean) / var.sqrt().max(1.0)
}

pub fn burst_scores(series: &[f64], k_trailing: usize) -> Vec<f64> {
    (0..series.len()).map(|t| burst_z(series, t, k_trailing)).collect()
}

pub fn is_event(z: f64, z_event: f64) -> bool {
    z >= z_event
}
