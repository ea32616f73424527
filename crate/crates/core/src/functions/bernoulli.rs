use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::FunctionError;

/// Largest `q` accepted by [`bernoulli_numbers`].
pub const MAX_BERNOULLI_HALF_INDEX: u32 = 30;

/// Bernoulli numbers `B_0..B_{2q}` (convention `B_1 = -1/2`).
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    exact: Vec<BigRational>,
    values: Vec<f64>,
}

impl BernoulliTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, m: usize) -> Option<f64> {
        self.values.get(m).copied()
    }

    pub fn exact(&self, m: usize) -> Option<&BigRational> {
        self.exact.get(m)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn full_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let top = 2 * MAX_BERNOULLI_HALF_INDEX as usize;
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut exact: Vec<BigRational> = Vec::with_capacity(top + 1);
        exact.push(BigRational::from_integer(1.into()));
        for m in 1..=top {
            let mut binom = BigInt::from(1);
            let mut acc = BigRational::zero();
            for (j, b) in exact.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * (m + 1 - j) / (j + 1);
            }
            exact.push(-acc / BigRational::from_integer((m + 1).into()));
        }
        let values = exact
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect();
        BernoulliTable { exact, values }
    })
}

/// `B_0..B_{2q}` for `q ≤ 30`, computed once in exact rational arithmetic.
pub fn bernoulli_numbers(q: u32) -> Result<BernoulliTable, FunctionError> {
    if q > MAX_BERNOULLI_HALF_INDEX {
        return Err(FunctionError::Unsupported(q));
    }
    let full = full_table();
    let len = 2 * q as usize + 1;
    Ok(BernoulliTable {
        exact: full.exact[..len].to_vec(),
        values: full.values[..len].to_vec(),
    })
}

/// Shared table used by the zeta helpers.
pub(crate) fn bernoulli(m: usize) -> &'static BigRational {
    &full_table().exact[m]
}
