//! Exact arithmetic in Q(2cos(pi/L)) and a single quadratic extension above it.

pub mod enclosure;
pub mod field;
pub mod poly;
pub mod quad;

use std::fmt::Debug;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed};

pub use enclosure::Enclosure;
pub use field::{FieldElement, NumberField};
pub use quad::{base_sqrt, quad_roots, quad_solve, ExactForm, RealAlgebraic, SquareRoot};

use crate::error::Result;
use enclosure::rat_floor;

/// Common interface for the two levels of the tower.
pub trait Tower: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn from_base(x: FieldElement) -> Self;
    fn field(&self) -> &Arc<NumberField>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn signum(&self) -> i32;
    /// Enclosure at working precision `bits`; width shrinks as bits grows.
    fn enclose(&self, bits: u64) -> Enclosure;
    /// Canonical coefficients for hashing values that live in one common extension.
    fn key(&self) -> Vec<BigRational>;
    fn exact_form(&self) -> ExactForm;

    fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    fn rational(&self, r: BigRational) -> Self {
        Self::from_base(FieldElement::from_rational(self.field(), r))
    }

    fn int(&self, n: i64) -> Self {
        self.rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    fn cmp_to(&self, o: &Self) -> std::cmp::Ordering {
        self.sub(o).signum().cmp(&0)
    }

    fn lt(&self, o: &Self) -> bool {
        self.cmp_to(o).is_lt()
    }

    fn le(&self, o: &Self) -> bool {
        self.cmp_to(o).is_le()
    }

    fn to_f64(&self) -> f64 {
        use num::ToPrimitive;
        refine(self, 64).mid().to_f64().unwrap_or(f64::NAN)
    }
}

impl Tower for FieldElement {
    fn from_base(x: FieldElement) -> Self {
        x
    }
    fn field(&self) -> &Arc<NumberField> {
        FieldElement::field(self)
    }
    fn add(&self, o: &Self) -> Self {
        FieldElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FieldElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FieldElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        FieldElement::inv(self)
    }
    fn signum(&self) -> i32 {
        FieldElement::signum(self)
    }
    fn enclose(&self, bits: u64) -> Enclosure {
        FieldElement::enclose(self, bits)
    }
    fn key(&self) -> Vec<BigRational> {
        self.coeffs().to_vec()
    }
    fn exact_form(&self) -> ExactForm {
        RealAlgebraic::from_base(self.clone()).exact_form()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
}

impl Tower for RealAlgebraic {
    fn from_base(x: FieldElement) -> Self {
        RealAlgebraic::from_base(x)
    }
    fn field(&self) -> &Arc<NumberField> {
        RealAlgebraic::field(self)
    }
    fn add(&self, o: &Self) -> Self {
        RealAlgebraic::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RealAlgebraic::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RealAlgebraic::mul(self, o)
    }
    fn neg(&self) -> Self {
        RealAlgebraic::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RealAlgebraic::inv(self)
    }
    fn signum(&self) -> i32 {
        RealAlgebraic::signum(self)
    }
    fn enclose(&self, bits: u64) -> Enclosure {
        RealAlgebraic::enclose(self, bits)
    }
    fn key(&self) -> Vec<BigRational> {
        RealAlgebraic::key(self)
    }
    fn exact_form(&self) -> ExactForm {
        RealAlgebraic::exact_form(self)
    }
    fn cmp_to(&self, o: &Self) -> std::cmp::Ordering {
        self.cmp_exact(o)
    }
}

/// Exact floor: enclosure first, one exact sign test at the boundary otherwise.
pub fn floor<T: Tower>(x: &T) -> BigInt {
    let mut bits = 64u64;
    let e = loop {
        let e = x.enclose(bits);
        if e.width_le_pow2(8) {
            break e;
        }
        bits *= 2;
    };
    let c = rat_floor(&e.hi);
    if BigRational::from_integer(c.clone()) <= e.lo {
        return c;
    }
    if x.sub(&x.rational(BigRational::from_integer(c.clone())))
        .signum()
        >= 0
    {
        c
    } else {
        c - 1
    }
}

/// Dyadic cell `[floor(x 2^b) / 2^b, (floor(x 2^b) + 1) / 2^b]`; nested as `bits` grows.
pub fn refine<T: Tower>(x: &T, bits: u64) -> Enclosure {
    let scale = BigInt::one() << bits as usize;
    let f = floor(&x.rational(BigRational::from_integer(scale.clone())).mul(x));
    Enclosure::new(
        BigRational::new(f.clone(), scale.clone()),
        BigRational::new(f + 1, scale),
    )
}

/// Decimal rendering truncated toward zero, so more digits only extend the string.
pub fn decimal<T: Tower>(x: &T, digits: usize) -> String {
    let neg = x.signum() < 0;
    let a = if neg { x.neg() } else { x.clone() };
    let scale = num::pow(BigInt::from(10), digits);
    let n = floor(&a.rational(BigRational::from_integer(scale.clone())).mul(&a));
    let int = &n / &scale;
    let frac = (&n % &scale).abs();
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>digits$}")
    }
}

#[cfg(test)]
mod tests;
