use super::SystemParams;

/// Long-run mean version age at the server, `p_e / beta`.
pub fn server_age(params: &SystemParams) -> f64 {
    params.event_rate() / params.sample_rate()
}

/// Long-run mean version age at a direct subscriber: the server age plus one
/// event step of transmission lag, `p_e (1/beta + 1)`.
pub fn subscriber_age(params: &SystemParams) -> f64 {
    params.event_rate() * (1.0 / params.sample_rate() + 1.0)
}

/// Strict upper bound `L x_S` on a non-subscriber's mean age.
pub fn ac_threshold(params: &SystemParams) -> f64 {
    params.tolerance() * subscriber_age(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p_e: f64, beta: f64, l: f64) -> SystemParams {
        SystemParams::new(p_e, beta, 0.2, l).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn server_age_examples() {
        assert!(close(server_age(&params(0.3, 0.6, 10.0)), 0.5));
        assert!(close(server_age(&params(0.3, 1.0, 10.0)), 0.3));
        assert!(close(server_age(&params(0.05, 0.5, 10.0)), 0.1));
    }

    #[test]
    fn subscriber_age_examples() {
        assert!(close(subscriber_age(&params(0.3, 0.6, 10.0)), 0.8));
        assert!(close(subscriber_age(&params(0.3, 1.0, 10.0)), 0.6));
        assert!(close(subscriber_age(&params(0.1, 0.2, 10.0)), 0.6));
    }

    #[test]
    fn threshold_examples() {
        assert!(close(ac_threshold(&params(0.3, 0.6, 10.0)), 8.0));
        assert!(close(ac_threshold(&params(0.3, 1.0, 2.0)), 1.2));
        let p = params(0.17, 0.43, 1.0);
        assert_eq!(ac_threshold(&p), subscriber_age(&p));
    }

    #[test]
    fn monotone_on_grid() {
        // 12 x 12 grid of (p_e, beta) pairs
        let grid: Vec<f64> = (1..=12).map(|i| i as f64 / 12.0).collect();
        for &p_e in &grid {
            for w in grid.windows(2) {
                let lo = params(p_e, w[0], 2.0);
                let hi = params(p_e, w[1], 2.0);
                assert!(server_age(&hi) < server_age(&lo));
                assert!(subscriber_age(&hi) < subscriber_age(&lo));
            }
        }
        for &beta in &grid {
            for w in grid.windows(2) {
                let lo = params(w[0], beta, 2.0);
                let hi = params(w[1], beta, 2.0);
                assert!(server_age(&hi) > server_age(&lo));
                assert!(subscriber_age(&hi) > subscriber_age(&lo));
            }
        }
    }

    #[test]
    fn subscriber_lags_server_by_one_event_step() {
        for i in 1..=20 {
            for j in 1..=20 {
                let p = params(i as f64 / 20.0, j as f64 / 20.0, 3.0);
                let gap = subscriber_age(&p) - server_age(&p);
                assert!((gap - p.event_rate()).abs() < 1e-12);
            }
        }
    }
}
