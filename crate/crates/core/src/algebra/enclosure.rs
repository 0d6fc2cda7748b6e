use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    /// Enclosure from two f64 bounds (exact conversion).
    pub fn from_f64(lo: f64, hi: f64) -> Self {
        Self::new(
            BigRational::from_float(lo).expect("finite bound"),
            BigRational::from_float(hi).expect("finite bound"),
        )
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn width_le_pow2(&self, bits: u64) -> bool {
        let w = self.width();
        w * BigRational::from_integer(BigInt::one() << bits as usize) <= BigRational::one()
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, o: &Enclosure) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn excludes_zero(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn add(&self, o: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn sub(&self, o: &Enclosure) -> Enclosure {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }

    /// Square root of the nonnegative part, outward-rounded on a 2^-bits grid.
    pub fn sqrt(&self, bits: u64) -> Enclosure {
        let scale = BigInt::one() << (2 * bits) as usize;
        let den = BigInt::one() << bits as usize;
        let lo = if self.lo.is_positive() {
            let a = (&self.lo * BigRational::from_integer(scale.clone()))
                .floor()
                .to_integer();
            BigRational::new(a.sqrt(), den.clone())
        } else {
            BigRational::zero()
        };
        let b = (&self.hi * BigRational::from_integer(scale))
            .ceil()
            .to_integer();
        let b = if b.is_negative() { BigInt::zero() } else { b };
        let hi = BigRational::new(b.sqrt() + 1, den);
        Enclosure { lo, hi }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64_pair();
        write!(f, "[{a:.17e}, {b:.17e}]")
    }
}

/// Floor of a rational.
pub fn rat_floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}
