//! Divergent alternating series on which the transforms are exact at a
//! fixed order.

use cnct::driver::{
    diagonal_rows, zeta_alt_rows, AccelerationOptions, AccelerationRequest, DiagonalRow, Mode,
};
use cnct::functions::{one_f_zero_terms, one_f_zero_value, zeta_neg_int};

const ULP: f64 = f64::EPSILON;

/// Within 8 ulp of `exact`; for a zero target, 8 ulp of the largest partial
/// sum that entered the transform.
fn exact_within_8_ulp(got: f64, exact: f64, rows: &[DiagonalRow<f64>]) -> bool {
    let scale = if exact == 0.0 {
        rows.iter().map(|r| r.partial_sum.abs()).fold(0.0, f64::max)
    } else {
        exact.abs()
    };
    (got - exact).abs() <= 8.0 * ULP * scale
}

fn beta(beta: f64) -> AccelerationOptions {
    AccelerationOptions {
        beta,
        ..Default::default()
    }
}

#[test]
fn levin_beta_two_on_zeta_at_negative_integers() {
    for l in 0..=4u32 {
        let k = l as usize + 1;
        let rows = zeta_alt_rows(-(l as f64), &beta(2.0), k).unwrap();
        let exact = zeta_neg_int(l).unwrap();
        let got = rows[k].levin_d.value;
        assert!(
            exact_within_8_ulp(got, exact, &rows),
            "l={l}: {got} vs {exact}"
        );
    }
}

#[test]
fn weniger_beta_two_on_one_f_zero() {
    for l in 0..=4u32 {
        let k = l as usize + 1;
        let req = AccelerationRequest::new(one_f_zero_terms(l).unwrap())
            .mode(Mode::AccelerateGivenAlternating)
            .beta(2.0);
        let rows: Vec<DiagonalRow<f64>> = diagonal_rows(&req, k).unwrap();
        let exact = one_f_zero_value(l).unwrap();
        let got = rows[k].weniger_delta.value;
        assert!(
            exact_within_8_ulp(got, exact, &rows),
            "l={l}: {got} vs {exact}"
        );
    }
}

#[test]
fn weniger_beta_one_is_exact_only_for_low_powers() {
    for l in [1u32, 2] {
        let rows = zeta_alt_rows(-(l as f64), &beta(1.0), 12).unwrap();
        let exact = zeta_neg_int(l).unwrap();
        for k in 3..=12 {
            let got = rows[k].weniger_delta.value;
            assert!(
                exact_within_8_ulp(got, exact, &rows[..=k]),
                "l={l} k={k}: {got}"
            );
        }
    }
    let rows = zeta_alt_rows(-3.0, &beta(1.0), 3).unwrap();
    let residual = (rows[3].weniger_delta.value - zeta_neg_int(3).unwrap()).abs();
    assert!(residual > 1e-6, "residual {residual}");
}

#[test]
fn divergent_partial_sums_transform_to_zeta_minus_one() {
    let rows = zeta_alt_rows(-1.0, &beta(1.0), 15).unwrap();
    let scaled: Vec<f64> = rows.iter().map(|r| r.partial_sum * 10.0).collect();
    // |S_n| grows without bound
    for pair in scaled.windows(3).step_by(2) {
        assert!(pair[2].abs() > pair[0].abs());
    }
    assert!((scaled[15] - 26.666_666_666_666_67).abs() < 1e-12);
    let target = -1.0 / 12.0 * 10.0;
    assert!((rows[13].levin_d.value * 10.0 - target).abs() <= 1e-13);
    for row in &rows[3..] {
        assert!((row.weniger_delta.value * 10.0 - target).abs() <= 8.0 * ULP * target.abs());
    }
}
