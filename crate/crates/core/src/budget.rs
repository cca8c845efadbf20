use thiserror::Error;

use crate::exterior::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget exceeded: {what} needs dimension {needed}, budget is {budget}")]
pub struct BudgetExceeded {
    pub what: String,
    pub needed: usize,
    pub budget: usize,
}

/// Upper bound on the dimension of any exterior power a computation builds.
///
/// The default, `C(64, 2) = 2016`, lets a minimal-model tower grow to 64
/// generators and a Chevalley–Eilenberg complex reach dimension 13.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_dim: binomial(64, 2),
        }
    }
}

impl Budget {
    pub fn new(max_dim: usize) -> Self {
        Budget { max_dim }
    }

    pub fn check(&self, what: impl Into<String>, needed: usize) -> Result<(), BudgetExceeded> {
        if needed > self.max_dim {
            Err(BudgetExceeded {
                what: what.into(),
                needed,
                budget: self.max_dim,
            })
        } else {
            Ok(())
        }
    }

    /// Every exterior power of an `n`-dimensional space fits.
    pub fn check_exterior(&self, n: usize) -> Result<(), BudgetExceeded> {
        self.check(format!("exterior algebra on {n} generators"), binomial(n, n / 2))
    }
}
