use serde::{Deserialize, Serialize};

use super::ExactScalar;
use crate::error::{Error, Result};

/// Default cap on numerator/denominator bit length.
pub const DEFAULT_BIT_LIMIT: u64 = 1 << 16;

/// Default truncation threshold for numeric sums, `2^-80`.
pub const DEFAULT_EPSILON_BITS: u32 = 80;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Formal,
    Numeric,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Formal => f.write_str("formal"),
            Mode::Numeric => f.write_str("numeric"),
        }
    }
}

/// The fixed base `q` together with the truncation policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QContext {
    q: ExactScalar,
    mode: Mode,
    order: usize,
    epsilon: ExactScalar,
    bit_limit: u64,
}

impl QContext {
    /// Validates `q` for the given mode: `q != 0`, `|q| < 1` in numeric mode,
    /// and `q^k != 1` for every `1 <= k <= 2 * order` so that no `(q;q)_k`
    /// used at this order vanishes.
    pub fn new(q: ExactScalar, mode: Mode, order: usize) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::InvalidQ("q must be nonzero".into()));
        }
        if mode == Mode::Numeric && q.abs() >= ExactScalar::one() {
            return Err(Error::InvalidQ(format!("numeric mode needs |q| < 1, got {q}")));
        }
        let mut power = ExactScalar::one();
        for k in 1..=2 * order.max(1) {
            power = &power * &q;
            if power.is_one() {
                return Err(Error::InvalidQ(format!("q = {q} is a root of unity (q^{k} = 1)")));
            }
        }
        Ok(QContext { q, mode, order, epsilon: ExactScalar::pow2(-(DEFAULT_EPSILON_BITS as i64)), bit_limit: DEFAULT_BIT_LIMIT })
    }

    pub fn with_epsilon_bits(mut self, bits: u32) -> Self {
        self.epsilon = ExactScalar::pow2(-(bits as i64));
        self
    }

    pub fn with_bit_limit(mut self, limit: u64) -> Self {
        self.bit_limit = limit;
        self
    }

    pub fn q(&self) -> &ExactScalar {
        &self.q
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn epsilon(&self) -> &ExactScalar {
        &self.epsilon
    }

    pub fn bit_limit(&self) -> u64 {
        self.bit_limit
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_q() {
        assert!(QContext::new(ExactScalar::zero(), Mode::Formal, 4).is_err());
        assert!(QContext::new(ExactScalar::one(), Mode::Formal, 4).is_err());
        assert!(QContext::new(ExactScalar::from_int(-1), Mode::Formal, 4).is_err());
        assert!(QContext::new(ExactScalar::from_int(2), Mode::Numeric, 4).is_err());
        assert!(QContext::new(ExactScalar::from_int(2), Mode::Formal, 4).is_ok());
        assert!(QContext::new(ExactScalar::ratio(-1, 2), Mode::Numeric, 4).is_ok());
    }
}
