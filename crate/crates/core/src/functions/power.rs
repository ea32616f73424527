//! Powers `z^n` of a real argument, O(1) in `n`.

/// A real base, optionally known through its complement `w = 1 - z`.
///
/// Close to 1 the complement carries the argument to full relative
/// precision where `z` itself does not; `z^n` is then `exp(n log1p(-w))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Power {
    z: f64,
    log: Option<f64>,
}

impl Power {
    pub(crate) fn new(z: f64) -> Self {
        Self { z, log: None }
    }

    pub(crate) fn from_complement(w: f64) -> Self {
        Self {
            z: 1.0 - w,
            log: Some((-w).ln_1p()),
        }
    }

    pub(crate) fn base(self) -> f64 {
        self.z
    }

    pub(crate) fn pow(self, n: u64) -> f64 {
        if let Some(l) = self.log {
            let nf = n as f64;
            let p = nf * l;
            // first-order correction for the rounding of the product
            return p.exp() * (1.0 + nf.mul_add(l, -p));
        }
        let mag = self.z.abs().powf(n as f64);
        if self.z < 0.0 && n % 2 == 1 {
            -mag
        } else {
            mag
        }
    }
}

/// Checks a complement `w` of an argument `1 - w` in `[0, 1)`.
pub(crate) fn check_complement(w: f64) -> Result<(), super::FunctionError> {
    if w > 0.0 && w <= 1.0 {
        Ok(())
    } else {
        Err(super::FunctionError::Domain(format!(
            "complement 1 - z must lie in (0, 1], got {w}"
        )))
    }
}
