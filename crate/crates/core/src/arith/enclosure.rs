use std::fmt;

use super::{dyadic_ceil, dyadic_floor, format_fraction, BigRational};
use crate::{Error, Result};

/// A closed rational interval `[lo, hi]` known to contain some real constant.
///
/// Every operation rounds outward, so the represented constant stays inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: BigRational,
    hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Precondition(format!(
                "enclosure endpoints out of order: {} > {}",
                format_fraction(&lo),
                format_fraction(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: BigRational) -> Self {
        Self {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        BigRational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::from(&self.lo + &self.hi) / 2u32
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// True when `other` lies inside `self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Product with an exact non-negative factor.
    pub fn scale(&self, factor: &BigRational) -> Self {
        debug_assert!(*factor >= 0);
        Self {
            lo: BigRational::from(&self.lo * factor),
            hi: BigRational::from(&self.hi * factor),
        }
    }

    /// Product of two enclosures with non-negative lower endpoints.
    pub fn mul_nonneg(&self, other: &Enclosure) -> Self {
        debug_assert!(self.lo >= 0 && other.lo >= 0);
        Self {
            lo: BigRational::from(&self.lo * &other.lo),
            hi: BigRational::from(&self.hi * &other.hi),
        }
    }

    /// Widens both endpoints to multiples of `2^-bits`.
    pub fn outward_dyadic(&self, bits: u32) -> Self {
        Self {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_fraction(&self.lo),
            format_fraction(&self.hi)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_reversed_endpoints() {
        assert!(Enclosure::new(BigRational::from(2), BigRational::from(1)).is_err());
        let e = Enclosure::new(BigRational::from(1), BigRational::from(2)).unwrap();
        assert!(e.contains(&BigRational::from((3, 2))));
        assert!(!e.contains(&BigRational::from(3)));
        assert_eq!(e.midpoint(), BigRational::from((3, 2)));
        assert_eq!(e.to_string(), "[1/1, 2/1]");
    }

    #[test]
    fn outward_rounding_encloses_original() {
        let e = Enclosure::new(BigRational::from((1, 3)), BigRational::from((2, 3))).unwrap();
        let r = e.outward_dyadic(8);
        assert!(r.encloses(&e));
        assert!(r.width() < BigRational::from((1, 3)) + BigRational::from((2, 256)));
    }

    #[test]
    fn products() {
        let e = Enclosure::new(BigRational::from(1), BigRational::from(2)).unwrap();
        let s = e.scale(&BigRational::from((1, 2)));
        assert_eq!(
            s,
            Enclosure::new(BigRational::from((1, 2)), BigRational::from(1)).unwrap()
        );
        let p = e.mul_nonneg(&e);
        assert_eq!(
            p,
            Enclosure::new(BigRational::from(1), BigRational::from(4)).unwrap()
        );
        assert!(p.intersects(&e));
    }
}
