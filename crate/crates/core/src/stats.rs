//! Sample statistics used to check the samplers.

/// Kendall's tau-a of paired samples without ties, in `O(N log N)`:
/// sort by the first coordinate and count inversions of the second.
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "paired samples must have equal length");
    let n = xs.len();
    if n < 2 {
        return f64::NAN;
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_unstable_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut v: Vec<f64> = idx.iter().map(|&i| ys[i]).collect();
    let mut buf = vec![0.0; n];
    let discordant = count_inversions(&mut v, &mut buf) as f64;
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    1.0 - 2.0 * discordant / pairs
}

/// Bottom-up merge sort returning the number of inversions.
fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    let mut inv = 0u64;
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if v[j] < v[i] {
                    buf[k] = v[j];
                    inv += (mid - i) as u64;
                    j += 1;
                } else {
                    buf[k] = v[i];
                    i += 1;
                }
                k += 1;
            }
            buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
            k += mid - i;
            buf[k..k + hi - j].copy_from_slice(&v[j..hi]);
            v[lo..hi].copy_from_slice(&buf[lo..hi]);
            lo = hi;
        }
        width *= 2;
    }
    inv
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n − F|`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut s = samples.to_vec();
    s.sort_unstable_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            ((i + 1) as f64 / n - f).max(f - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_tau(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len();
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += ((xs[i] - xs[j]) * (ys[i] - ys[j])).signum();
            }
        }
        s / (n * (n - 1) / 2) as f64
    }

    #[test]
    fn tau_matches_brute_force() {
        let xs: Vec<f64> = (0..301).map(|i| ((i * 7919) % 301) as f64 + 0.25).collect();
        let ys: Vec<f64> = (0..301).map(|i| ((i * 104_729 + 13) % 307) as f64 * 0.5).collect();
        assert!((kendall_tau(&xs, &ys) - brute_tau(&xs, &ys)).abs() < 1e-14);
    }

    #[test]
    fn tau_extremes() {
        let xs: Vec<f64> = (0..100).map(f64::from).collect();
        let rev: Vec<f64> = xs.iter().map(|v| -v).collect();
        assert_eq!(kendall_tau(&xs, &xs), 1.0);
        assert_eq!(kendall_tau(&xs, &rev), -1.0);
    }

    #[test]
    fn ks_of_exact_grid() {
        let s: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let d = ks_statistic(&s, |x| x);
        assert!((d - 0.0005).abs() < 1e-12);
        let d = ks_statistic(&s, |x| x * x);
        assert!(d > 0.2);
    }
}
