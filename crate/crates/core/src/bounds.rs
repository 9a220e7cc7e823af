//! Exact upper-bound formulas `(a n + b) / d` for planar Turán numbers.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::detect::{ForbiddenFamily, Pattern};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("no bound formula for family `{0}`")]
    NoFormula(String),
    #[error("bound for `{family}` holds from n = {n_min}, asked for n = {n}")]
    BelowThreshold {
        family: String,
        n: usize,
        n_min: usize,
    },
}

/// `ex_P(n, F) <= (slope * n + intercept) / denominator` for `n >= n_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundFormula {
    pub slope: i64,
    pub intercept: i64,
    pub denominator: i64,
    pub n_min: usize,
}

impl BoundFormula {
    const fn new(slope: i64, intercept: i64, denominator: i64, n_min: usize) -> Self {
        BoundFormula {
            slope,
            intercept,
            denominator,
            n_min,
        }
    }

    fn numerator(&self, n: usize) -> i64 {
        self.slope * n as i64 + self.intercept
    }

    /// Exact value, ignoring the threshold.
    pub fn value(&self, n: usize) -> Ratio<i64> {
        Ratio::new(self.numerator(n), self.denominator)
    }

    /// Largest integer not above the bound.
    pub fn floor(&self, n: usize) -> i64 {
        self.numerator(n).div_euclid(self.denominator)
    }

    /// `edges <= bound(n)` by cross-multiplication.
    pub fn admits(&self, edges: usize, n: usize) -> bool {
        edges as i64 * self.denominator <= self.numerator(n)
    }
}

impl fmt::Display for BoundFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.intercept < 0 { '-' } else { '+' };
        write!(
            f,
            "({}n{}{})/{}",
            self.slope,
            sign,
            self.intercept.abs(),
            self.denominator
        )
    }
}

/// Formula for a supported family: Θ4, Θ5, Θ6, Θ6 with K5 minus an edge,
/// C4, C5 and C6 (through Θ6, since C6-free graphs are Θ6-free).
pub fn bound_formula(family: &ForbiddenFamily) -> Option<BoundFormula> {
    use Pattern::*;
    Some(match family.members() {
        [Theta(4)] => BoundFormula::new(12, -24, 5, 4),
        [Theta(5)] => BoundFormula::new(5, -10, 2, 5),
        [Theta(6)] => BoundFormula::new(18, -36, 7, 6),
        [Theta(6), K5Minus] => BoundFormula::new(12, -24, 5, 6),
        [Cycle(4)] => BoundFormula::new(15, -30, 7, 4),
        [Cycle(5)] => BoundFormula::new(12, -33, 5, 11),
        [Cycle(6)] => BoundFormula::new(18, -36, 7, 6),
        _ => return None,
    })
}

pub fn bound(family: &ForbiddenFamily, n: usize) -> Result<Ratio<i64>, BoundError> {
    let formula = bound_formula(family).ok_or_else(|| BoundError::NoFormula(family.label()))?;
    if n < formula.n_min {
        return Err(BoundError::BelowThreshold {
            family: family.label(),
            n,
            n_min: formula.n_min,
        });
    }
    Ok(formula.value(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(tag: &str) -> ForbiddenFamily {
        tag.parse().unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(bound(&fam("theta4"), 12), Ok(Ratio::from_integer(24)));
        assert_eq!(bound(&fam("theta6"), 9), Ok(Ratio::from_integer(18)));
        assert_eq!(bound(&fam("theta5"), 50), Ok(Ratio::from_integer(120)));
        assert_eq!(bound(&fam("theta4"), 4), Ok(Ratio::new(24, 5)));
        assert_eq!(bound(&fam("theta5"), 5), Ok(Ratio::new(15, 2)));
        assert_eq!(bound(&fam("theta6"), 10), Ok(Ratio::new(144, 7)));
    }

    #[test]
    fn thresholds() {
        assert!(matches!(
            bound(&fam("c5"), 10),
            Err(BoundError::BelowThreshold { n_min: 11, .. })
        ));
        assert!(bound(&fam("c5"), 11).is_ok());
        assert!(matches!(bound(&fam("c3"), 5), Err(BoundError::NoFormula(_))));
    }

    #[test]
    fn cross_multiplied_comparison() {
        let f = bound_formula(&fam("theta6")).unwrap();
        assert!(f.admits(20, 10));
        assert!(!f.admits(21, 10));
        assert_eq!(f.floor(10), 20);
        assert_eq!(f.to_string(), "(18n-36)/7");
        let c5 = bound_formula(&fam("c5")).unwrap();
        assert_eq!(c5.floor(11), 19);
    }
}
