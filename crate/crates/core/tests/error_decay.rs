//! Decay of the relative transformation error `(T_k^(n) - s)/(s_n - s)`
//! on model sequences with an infinite inverse-power expansion,
//! `s_n - s = σ_n/(n + 1.5) = σ_n Σ_j (-1/2)^j/(n+1)^{j+1}` with `σ_n = 1`
//! or `(-1)^n`, and `ω_n = σ_n/(n+1)`. Theory gives `O(n^{-k})` for the
//! monotone and `O(n^{-2k})` for the alternating model.

use cnct::transforms::{levin_direct, weniger_direct};

const ORDER: u32 = 2;

fn model(alternating: bool) -> (Vec<f64>, Vec<f64>) {
    let sign = |n: usize| if alternating && n % 2 == 1 { -1.0 } else { 1.0 };
    let s = (0..48).map(|n| sign(n) / (n as f64 + 1.5)).collect();
    let w = (0..48).map(|n| sign(n) / (n as f64 + 1.0)).collect();
    (s, w)
}

/// Least-squares slope of `ln|ratio|` against `ln n` over `n ∈ [10, 40]`.
fn fitted_slope(alternating: bool, levin: bool) -> f64 {
    let (s, w) = model(alternating);
    let pts: Vec<(f64, f64)> = (10..=40)
        .map(|n| {
            let t = if levin {
                levin_direct(1.0, &s, &w, ORDER, n)
            } else {
                weniger_direct(1.0, &s, &w, ORDER, n)
            }
            .unwrap()
            .value;
            ((n as f64).ln(), (t / s[n]).abs().ln())
        })
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn alternating_model_decays_like_n_to_minus_2k() {
    for levin in [true, false] {
        let slope = fitted_slope(true, levin);
        assert!(slope <= -3.5, "slope {slope}");
        assert!((slope + 2.0 * ORDER as f64).abs() <= 0.5, "slope {slope}");
    }
}

#[test]
fn monotone_model_decays_like_n_to_minus_k() {
    for levin in [true, false] {
        let slope = fitted_slope(false, levin);
        assert!(slope <= -1.5, "slope {slope}");
        assert!((slope + ORDER as f64).abs() <= 0.5, "slope {slope}");
    }
}
