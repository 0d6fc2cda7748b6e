//! The real cyclotomic field generated by theta = 2cos(pi/L), and its elements as
//! residues modulo the minimal polynomial of theta.

use std::fmt;
use std::sync::Arc;

use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::enclosure::Enclosure;
use super::poly::{self, IntPoly, RatPoly};
use crate::error::{Error, Result};

/// Bits of theta kept precomputed; finer requests are computed on demand.
const CACHED_BITS: u64 = 1024;

#[derive(Debug)]
pub struct NumberField {
    order: u64,
    minpoly: IntPoly,
    minpoly_rat: RatPoly,
    theta_scaled: BigInt,
}

impl NumberField {
    /// Field generated by 2cos(pi/order).
    pub fn new(order: u64) -> Arc<NumberField> {
        assert!(order >= 3, "field order must be at least 3");
        let minpoly = poly::minpoly_of_nu(order);
        let minpoly_rat = poly::rat_from_int(&minpoly);
        let mut f = NumberField {
            order,
            minpoly,
            minpoly_rat,
            theta_scaled: BigInt::zero(),
        };
        f.theta_scaled = f.theta_floor_uncached(CACHED_BITS);
        Arc::new(f)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// floor(theta * 2^bits).
    pub fn theta_floor(&self, bits: u64) -> BigInt {
        if bits <= CACHED_BITS {
            &self.theta_scaled >> (CACHED_BITS - bits) as usize
        } else {
            self.theta_floor_uncached(bits)
        }
    }

    /// Rational interval of width 2^-bits isolating theta (a single point when theta is rational).
    pub fn theta_enclosure(&self, bits: u64) -> Enclosure {
        if self.degree() == 1 {
            let v = -BigRational::from_integer(self.minpoly[0].clone());
            return Enclosure::point(v);
        }
        let p = self.theta_floor(bits);
        let den = BigInt::one() << bits as usize;
        Enclosure::new(
            BigRational::new(p.clone(), den.clone()),
            BigRational::new(p + 1, den),
        )
    }

    fn theta_floor_uncached(&self, bits: u64) -> BigInt {
        if self.degree() == 1 {
            let v = -BigRational::from_integer(self.minpoly[0].clone());
            return (v * BigRational::from_integer(BigInt::one() << bits as usize))
                .floor()
                .to_integer();
        }
        // Newton from the double-precision guess, then certify the bracket by sign changes.
        // theta is the largest root of a monic polynomial, so the polynomial is negative just
        // left of it and positive just right of it.
        let guess = 2.0 * (std::f64::consts::PI / self.order as f64).cos();
        let mut x = BigRational::from_float(guess).expect("finite guess");
        let deriv: IntPoly = self
            .minpoly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let work = bits + 16;
        let scale = BigRational::from_integer(BigInt::one() << work as usize);
        let mut prec = 50u64;
        loop {
            let fx = poly::int_eval(&self.minpoly, &x);
            let dx = poly::int_eval(&deriv, &x);
            x = &x - fx / dx;
            x = (&x * &scale).round() / &scale;
            if prec >= work {
                break;
            }
            prec *= 2;
        }
        let mut p = (x * BigRational::from_integer(BigInt::one() << bits as usize))
            .floor()
            .to_integer();
        loop {
            if poly::int_sign_at_dyadic(&self.minpoly, &p, bits) > 0 {
                p -= 1;
            } else if poly::int_sign_at_dyadic(&self.minpoly, &(&p + 1), bits) < 0 {
                p += 1;
            } else {
                return p;
            }
        }
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn from_coeffs(field: &Arc<NumberField>, mut coeffs: Vec<BigRational>) -> Self {
        let d = field.degree();
        if coeffs.len() > d {
            let (_, r) = poly::rat_divrem(&coeffs, &field.minpoly_rat);
            coeffs = r;
        }
        coeffs.resize(d, BigRational::zero());
        FieldElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> Self {
        Self::from_coeffs(field, vec![r])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![])
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator theta.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coeffs(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// 2cos(j*pi/L) expressed in the field, via the recurrence D_{i+1} = theta*D_i - D_{i-1}.
    pub fn two_cos_multiple(field: &Arc<NumberField>, j: usize) -> Self {
        let d = poly::dickson(j);
        Self::from_coeffs(field, poly::rat_from_int(&d))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn same_field(&self, o: &Self) {
        assert_eq!(self.field.order, o.field.order, "field mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_field(o);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_field(o);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FieldElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_field(o);
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &o.coeffs[0]],
            };
        }
        // integer arithmetic over a common denominator; the minimal polynomial is monic
        let (xa, da) = self.integer_form();
        let (xb, db) = o.integer_form();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in xa.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in xb.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let m = &self.field.minpoly;
        for top in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().enumerate().take(d) {
                if !mj.is_zero() {
                    prod[top - d + j] -= &c * mj;
                }
            }
        }
        prod.truncate(d);
        let den = da * db;
        let coeffs = prod
            .into_iter()
            .map(|c| {
                if den.is_one() {
                    BigRational::from_integer(c)
                } else {
                    BigRational::new(c, den.clone())
                }
            })
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(FieldElement {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            });
        }
        // Extended Euclid in Q[x]: track s with s*a = r (mod minpoly).
        let mut r0: RatPoly = self.field.minpoly_rat.clone();
        let mut r1: RatPoly = self.coeffs.clone();
        poly::trim_rat(&mut r1);
        let mut s0: RatPoly = vec![];
        let mut s1: RatPoly = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly::rat_divrem(&r0, &r1);
            let s = poly::rat_sub(&s0, &poly::rat_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = r1[0].clone();
        let out: RatPoly = s1.iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(&self.field, out))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer numerators over a common positive denominator.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }

    /// Bounds on den * 2^(bits*(d-1)) * value, given theta in [p, p+1] / 2^bits.
    fn scaled_bounds(nums: &[BigInt], p: &BigInt, bits: u64) -> (BigInt, BigInt) {
        let d = nums.len();
        let q = p + 1;
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        let mut pw_lo = BigInt::one();
        let mut pw_hi = BigInt::one();
        for (i, a) in nums.iter().enumerate() {
            if !a.is_zero() {
                let shift = bits as usize * (d - 1 - i);
                let small = (a * &pw_lo) << shift;
                let large = (a * &pw_hi) << shift;
                if a.is_positive() {
                    lo += small;
                    hi += large;
                } else {
                    lo += large;
                    hi += small;
                }
            }
            pw_lo *= p;
            pw_hi *= &q;
        }
        (lo, hi)
    }

    /// Exact sign under the real embedding theta = 2cos(pi/L).
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.field.degree() == 1 {
            return poly::sign_of(self.coeffs[0].numer());
        }
        let (nums, _) = self.integer_form();
        let mut bits = 64u64;
        loop {
            let p = self.field.theta_floor(bits);
            let (lo, hi) = Self::scaled_bounds(&nums, &p, bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Rational enclosure computed from a theta enclosure at the given working precision.
    pub fn enclose(&self, bits: u64) -> Enclosure {
        if self.field.degree() == 1 || self.as_rational().is_some() {
            return Enclosure::point(self.coeffs[0].clone());
        }
        let (nums, den) = self.integer_form();
        let p = self.field.theta_floor(bits);
        let (lo, hi) = Self::scaled_bounds(&nums, &p, bits);
        let d = nums.len();
        let scale = den << (bits as usize * (d - 1));
        Enclosure::new(
            BigRational::new(lo, scale.clone()),
            BigRational::new(hi, scale),
        )
    }

    /// Enclosure of width at most 2^-target.
    pub fn enclose_width(&self, target: u64) -> Enclosure {
        let mut bits = target.max(32) + 8;
        loop {
            let e = self.enclose(bits);
            if e.width_le_pow2(target) {
                return e;
            }
            bits += bits / 2 + 16;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Norm down to the rationals: determinant of multiplication by self.
    pub fn norm(&self) -> BigRational {
        let d = self.field.degree();
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        let mut basis = Self::one(&self.field);
        let g = Self::generator(&self.field);
        for _ in 0..d {
            rows.push(self.mul(&basis).coeffs);
            basis = basis.mul(&g);
        }
        determinant(rows)
    }
}

fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
