//! Shared inputs for the kernel benchmarks.

/// `n` points spread over `(0, 1/2]`, denser near the origin where the
/// series switch matters most.
pub fn sample_points(n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            0.5 * t * t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn points_in_domain() {
        let p = super::sample_points(64);
        assert_eq!(p.len(), 64);
        assert!(p.iter().all(|&x| x > 0.0 && x <= 0.5));
        assert_eq!(p[63], 0.5);
    }
}
