use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv};

/// Exact function value.
pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Midpoint of two rationals, `None` on overflow.
pub fn midpoint(a: Rational, b: Rational) -> Option<Rational> {
    a.checked_add(&b)?.checked_div(&int(2))
}

/// A level for sublevel complexes: an exact rational or one of the two
/// infinite sentinels. Variant order gives `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LevelValue {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl LevelValue {
    pub fn finite(self) -> Option<Rational> {
        match self {
            LevelValue::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl From<Rational> for LevelValue {
    fn from(r: Rational) -> Self {
        LevelValue::Finite(r)
    }
}

impl From<i64> for LevelValue {
    fn from(n: i64) -> Self {
        LevelValue::Finite(int(n))
    }
}

impl PartialEq<Rational> for LevelValue {
    fn eq(&self, other: &Rational) -> bool {
        *self == LevelValue::Finite(*other)
    }
}

impl PartialOrd<Rational> for LevelValue {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(&LevelValue::Finite(*other)))
    }
}

impl fmt::Display for LevelValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelValue::NegInf => f.write_str("-inf"),
            LevelValue::Finite(r) => write!(f, "{r}"),
            LevelValue::PosInf => f.write_str("+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinel_order() {
        assert!(LevelValue::NegInf < LevelValue::from(-1_000_000));
        assert!(LevelValue::from(i64::MAX) < LevelValue::PosInf);
        assert!(LevelValue::from(Rational::new(1, 3)) < LevelValue::from(Rational::new(1, 2)));
        assert_eq!(LevelValue::from(Rational::new(4, 2)), int(2));
    }

    #[test]
    fn midpoints() {
        assert_eq!(midpoint(int(1), int(2)), Some(Rational::new(3, 2)));
        assert_eq!(midpoint(int(i64::MAX), int(i64::MAX)), None);
    }
}
