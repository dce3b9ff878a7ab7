//! Exact nonnegative ratios compared by integer cross-multiplication.
//! No floating point is involved anywhere in ordering decisions.

use serde::{Deserialize, Serialize};

/// `num / den` with a zero denominator standing for "undefined / +inf";
/// undefined ratios compare greater than every defined one, so they never
/// win a minimum.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ExactRatio {
    pub num: u64,
    pub den: u64,
}

impl ExactRatio {
    pub fn new(num: u64, den: u64) -> Self {
        ExactRatio { num, den }
    }

    pub fn zero() -> Self {
        ExactRatio { num: 0, den: 1 }
    }

    pub fn is_defined(&self) -> bool {
        self.den != 0
    }
}

impl PartialEq for ExactRatio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == std::cmp::Ordering::Equal
    }
}

impl Eq for ExactRatio {}

impl PartialOrd for ExactRatio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRatio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self.den == 0, other.den == 0) {
            (true, true) => self.num.cmp(&other.num),
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            (false, false) => {
                let lhs = self.num as u128 * other.den as u128;
                let rhs = other.num as u128 * self.den as u128;
                lhs.cmp(&rhs)
            }
        }
    }
}

impl std::fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_multiplied_equality() {
        assert_eq!(ExactRatio::new(1, 2), ExactRatio::new(2, 4));
        assert!(ExactRatio::new(1, 3) < ExactRatio::new(1, 2));
        assert!(ExactRatio::new(0, 5) < ExactRatio::new(1, 1000));
    }

    #[test]
    fn undefined_sorts_last() {
        assert!(ExactRatio::new(3, 0) > ExactRatio::new(1000, 1));
        assert!(ExactRatio::new(0, 1) < ExactRatio::new(0, 0));
    }

    #[test]
    fn no_overflow_on_large_counts() {
        let a = ExactRatio::new(u64::MAX - 1, u64::MAX);
        let b = ExactRatio::new(u64::MAX, u64::MAX);
        assert!(a < b);
    }
}
