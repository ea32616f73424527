use crate::scalar::Scalar;
use crate::series::PartialSums;

/// Euler transform of `Σ (-1)^k u_k`.
///
/// Returns `E_0..E_{n}` with `E_n = Σ_{k≤n} (-1)^k Δ^k u_0 / 2^{k+1}`, where
/// `n + 1 = u.len()`. Forward differences come from an in-place difference
/// triangle rather than binomial sums.
pub fn euler_transform<S: Scalar>(u: &[S]) -> PartialSums<S> {
    let mut diffs = u.to_vec();
    let mut out = PartialSums::new();
    let mut scale = 0.5;
    for k in 0..u.len() {
        let term = diffs[0].scale(scale);
        out.push_term(if k % 2 == 0 { term } else { -term });
        for i in 0..diffs.len() - k - 1 {
            diffs[i] = diffs[i + 1] - diffs[i];
        }
        scale *= 0.5;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grandi_series() {
        let e = euler_transform(&[1.0; 8]);
        assert!(e.iter().all(|&x| x == 0.5));
    }

    #[test]
    fn matches_binomial_differences() {
        // Δ^k u_0 = Σ_m (-1)^(k-m) C(k,m) u_m
        let u: Vec<f64> = (0..10).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        let e = euler_transform(&u);
        let mut acc = 0.0;
        for k in 0..u.len() {
            let mut delta = 0.0;
            let mut binom = 1.0;
            for m in 0..=k {
                let sign = if (k - m) % 2 == 0 { 1.0 } else { -1.0 };
                delta += sign * binom * u[m];
                binom = binom * (k - m) as f64 / (m + 1) as f64;
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * delta / 2f64.powi(k as i32 + 1);
            assert!((e[k] - acc).abs() < 1e-14);
        }
        // Σ (-1)^k/(k+1) = ln 2, and the transformed series converges like 2^-n
        assert!((e[9] - std::f64::consts::LN_2).abs() < 1e-3);
    }

    #[test]
    fn empty_input() {
        assert!(euler_transform::<f64>(&[]).is_empty());
    }
}
