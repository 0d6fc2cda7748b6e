//! Numbers p + q*sqrt(D) with p, q, D in the base field and D >= 0.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::Serialize;

use super::enclosure::Enclosure;
use super::field::{FieldElement, NumberField};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RealAlgebraic {
    p: FieldElement,
    q: FieldElement,
    d: FieldElement,
}

/// Serializable exact form: coefficient vectors of p, q and the radicand, as rational strings.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExactForm {
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub radicand: Vec<String>,
}

fn coeff_strings(x: &FieldElement) -> Vec<String> {
    x.coeffs().iter().map(|c| c.to_string()).collect()
}

/// Result of trying to take an exact square root in the base field.
#[derive(Debug)]
pub enum SquareRoot {
    Root(FieldElement),
    NotSquare,
    Unknown,
}

/// Attempt to write `d` as the square of a nonnegative base-field element.
pub fn base_sqrt(d: &FieldElement) -> SquareRoot {
    let field = d.field().clone();
    if d.is_zero() {
        return SquareRoot::Root(d.clone());
    }
    if d.signum() < 0 {
        return SquareRoot::NotSquare;
    }
    match field.degree() {
        1 => match rational_sqrt(&d.coeffs()[0]) {
            Some(r) => SquareRoot::Root(FieldElement::from_rational(&field, r)),
            None => SquareRoot::NotSquare,
        },
        2 => quadratic_field_sqrt(d),
        _ => {
            if rational_sqrt(&d.norm()).is_none() {
                SquareRoot::NotSquare
            } else {
                SquareRoot::Unknown
            }
        }
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let m = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&m * &m) == r.denom() {
        Some(BigRational::new(n, m))
    } else {
        None
    }
}

/// Undetermined coefficients: (x0 + x1 t)^2 = a + b t with t^2 = e + f t.
fn quadratic_field_sqrt(d: &FieldElement) -> SquareRoot {
    let field = d.field().clone();
    let m = field.minpoly();
    let e = BigRational::from_integer(-m[0].clone());
    let f = BigRational::from_integer(-m[1].clone());
    let a = d.coeffs()[0].clone();
    let b = d.coeffs()[1].clone();
    let mk = |x0: BigRational, x1: BigRational| {
        let y = FieldElement::from_coeffs(&field, vec![x0, x1]);
        if y.signum() < 0 {
            y.neg()
        } else {
            y
        }
    };
    if b.is_zero() {
        if let Some(r) = rational_sqrt(&a) {
            return SquareRoot::Root(mk(r, BigRational::zero()));
        }
    }
    // With X = x1^2: (f^2 + 4e) X^2 - (2bf + 4a) X + b^2 = 0.
    let two = BigRational::from_integer(BigInt::from(2));
    let four = BigRational::from_integer(BigInt::from(4));
    let qa = &f * &f + &four * &e;
    let qb = -(&two * &b * &f + &four * &a);
    let qc = &b * &b;
    let mut candidates = Vec::new();
    if qa.is_zero() {
        if !qb.is_zero() {
            candidates.push(-&qc / &qb);
        }
    } else {
        let disc = &qb * &qb - &four * &qa * &qc;
        if let Some(s) = rational_sqrt(&disc) {
            candidates.push((-&qb + &s) / (&two * &qa));
            candidates.push((-&qb - &s) / (&two * &qa));
        }
    }
    for x in candidates {
        if !x.is_positive() {
            continue;
        }
        if let Some(x1) = rational_sqrt(&x) {
            let x0 = (&b - &f * &x) / (&two * &x1);
            let y = mk(x0, x1);
            if &y.mul(&y) == d {
                return SquareRoot::Root(y);
            }
        }
    }
    SquareRoot::NotSquare
}

/// Largest s found by small-prime trial division (plus a final square check) with s^2 | g.
fn small_primes() -> &'static [u32] {
    static PRIMES: std::sync::OnceLock<Vec<u32>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 5000usize;
        let mut sieve = vec![true; limit + 1];
        let mut out = Vec::new();
        for p in 2..=limit {
            if sieve[p] {
                out.push(p as u32);
                (p * p..=limit).step_by(p).for_each(|j| sieve[j] = false);
            }
        }
        out
    })
}

fn integer_square_part(g: &BigInt) -> BigInt {
    let mut rest = g.abs();
    let mut s = BigInt::one();
    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let p2 = p as u64 * p as u64;
        while (&rest % p2).is_zero() {
            rest /= p2;
            s *= p;
        }
        if (&rest % p).is_zero() {
            rest /= p;
        }
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
    }
    s
}

impl RealAlgebraic {
    /// Builds p + q*sqrt(d), normalizing the radicand.
    pub fn new(p: FieldElement, q: FieldElement, d: FieldElement) -> Self {
        assert!(d.signum() >= 0, "negative radicand");
        let mut x = RealAlgebraic { p, q, d };
        x.normalize();
        x
    }

    pub fn from_base(p: FieldElement) -> Self {
        let z = FieldElement::zero(p.field());
        RealAlgebraic {
            q: z.clone(),
            d: z,
            p,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> Self {
        Self::from_base(FieldElement::from_rational(field, r))
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_base(FieldElement::from_int(field, n))
    }

    /// sqrt(d) itself.
    pub fn sqrt_of(d: FieldElement) -> Self {
        let one = FieldElement::one(d.field());
        let zero = FieldElement::zero(d.field());
        Self::new(zero, one, d)
    }

    fn normalize(&mut self) {
        if self.q.is_zero() || self.d.is_zero() {
            self.q = FieldElement::zero(self.p.field());
            self.d = self.q.clone();
            return;
        }
        // Pull rational square content out of the radicand.
        let field = self.d.field().clone();
        let den = self
            .d
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .d
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g_den = g.clone() * &den;
        let s = integer_square_part(&g_den);
        // d = (num/den) => d * den^2 / s^2 has integer coefficients, sqrt(d) = (s/den) sqrt(that)
        let factor = BigRational::from_integer(&den * &den) / BigRational::from_integer(&s * &s);
        self.d = self.d.scale(&factor);
        self.q = self.q.scale(&BigRational::new(s, den));
        if let SquareRoot::Root(r) = base_sqrt(&self.d) {
            self.p = self.p.add(&self.q.mul(&r));
            self.q = FieldElement::zero(&field);
            self.d = self.q.clone();
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.p.field()
    }

    pub fn rational_part(&self) -> &FieldElement {
        &self.p
    }

    pub fn radical_coeff(&self) -> &FieldElement {
        &self.q
    }

    pub fn radicand(&self) -> &FieldElement {
        &self.d
    }

    pub fn is_base(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_base(&self) -> Option<&FieldElement> {
        self.is_base().then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    fn shared_radicand(&self, o: &Self) -> Result<FieldElement> {
        if o.q.is_zero() {
            Ok(self.d.clone())
        } else if self.q.is_zero() || self.d == o.d {
            Ok(o.d.clone())
        } else {
            Err(Error::NestedExtension)
        }
    }

    fn raw(p: FieldElement, q: FieldElement, d: FieldElement) -> Self {
        let mut x = RealAlgebraic { p, q, d };
        if x.q.is_zero() {
            x.d = x.q.clone();
        }
        x
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        let d = self.shared_radicand(o)?;
        Ok(Self::raw(self.p.add(&o.p), self.q.add(&o.q), d))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let d = self.shared_radicand(o)?;
        let p = self.p.mul(&o.p).add(&self.q.mul(&o.q).mul(&d));
        let q = self.p.mul(&o.q).add(&self.q.mul(&o.p));
        Ok(Self::raw(p, q, d))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("mixed quadratic extensions")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("mixed quadratic extensions")
    }

    pub fn neg(&self) -> Self {
        Self::raw(self.p.neg(), self.q.neg(), self.d.clone())
    }

    pub fn scale_base(&self, c: &FieldElement) -> Self {
        Self::raw(self.p.mul(c), self.q.mul(c), self.d.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.q.is_zero() {
            return Ok(Self::from_base(self.p.inv()?));
        }
        let norm = self.p.mul(&self.p).sub(&self.q.mul(&self.q).mul(&self.d));
        if norm.is_zero() {
            // sqrt(d) = |p/q| lies in the base field.
            let r = self.p.div(&self.q)?;
            let r = if r.signum() < 0 { r.neg() } else { r };
            let v = self.p.add(&self.q.mul(&r));
            return Ok(Self::from_base(v.inv()?));
        }
        let ni = norm.inv()?;
        Ok(Self::raw(
            self.p.mul(&ni),
            self.q.neg().mul(&ni),
            self.d.clone(),
        ))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.checked_mul(&o.inv()?)
    }

    pub fn signum(&self) -> i32 {
        sign_pq(&self.p, &self.q, &self.d)
    }

    /// Exact comparison, also across different radicands.
    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        let s = if self.shared_radicand(o).is_ok() {
            self.sub(o).signum()
        } else {
            // X = (p1 - p2) + q1 sqrt(d1), Y = q2 sqrt(d2); sign(X - Y).
            let xp = self.p.sub(&o.p);
            let sx = sign_pq(&xp, &self.q, &self.d);
            let sy = o.q.signum();
            if sx != sy {
                (sx - sy).signum()
            } else if sx == 0 {
                0
            } else {
                let a = xp
                    .mul(&xp)
                    .add(&self.q.mul(&self.q).mul(&self.d))
                    .sub(&o.q.mul(&o.q).mul(&o.d));
                let two = FieldElement::from_int(xp.field(), 2);
                let b = two.mul(&xp).mul(&self.q);
                sign_pq(&a, &b, &self.d) * sx
            }
        };
        s.cmp(&0)
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.cmp_exact(&Self::from_rational(self.field(), r.clone()))
    }

    /// Rational enclosure at the given working precision (not width-guaranteed).
    pub fn enclose(&self, bits: u64) -> Enclosure {
        let pe = self.p.enclose(bits);
        if self.q.is_zero() {
            return pe;
        }
        let qe = self.q.enclose(bits);
        let de = self.d.enclose(bits);
        pe.add(&qe.mul(&de.sqrt(bits + 4)))
    }

    pub fn exact_form(&self) -> ExactForm {
        ExactForm {
            p: coeff_strings(&self.p),
            q: coeff_strings(&self.q),
            radicand: coeff_strings(&self.d),
        }
    }

    /// Canonical coefficients, valid for hashing values sharing one radicand.
    pub fn key(&self) -> Vec<BigRational> {
        let mut k = self.p.coeffs().to_vec();
        if !self.q.is_zero() {
            k.extend_from_slice(self.q.coeffs());
            k.extend_from_slice(self.d.coeffs());
        }
        k
    }
}

fn sign_pq(p: &FieldElement, q: &FieldElement, d: &FieldElement) -> i32 {
    let sq = if d.is_zero() { 0 } else { q.signum() };
    let sp = p.signum();
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    let n = p.mul(p).sub(&q.mul(q).mul(d));
    n.signum() * sp
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_exact(o) == Ordering::Equal
    }
}
impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for RealAlgebraic {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_exact(o)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else {
            write!(f, "[{}] + [{}]*sqrt({})", self.p, self.q, self.d)
        }
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Real roots of a X^2 + b X + c over the base field, ascending.
pub fn quad_roots(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<Vec<RealAlgebraic>> {
    let field = a.field().clone();
    if a.is_zero() {
        if b.is_zero() {
            return if c.is_zero() {
                Err(Error::RootSelection("identically zero equation".into()))
            } else {
                Ok(vec![])
            };
        }
        return Ok(vec![RealAlgebraic::from_base(c.neg().div(b)?)]);
    }
    let four = FieldElement::from_int(&field, 4);
    let disc = b.mul(b).sub(&four.mul(a).mul(c));
    match disc.signum() {
        -1 => Err(Error::NegativeDiscriminant),
        0 => {
            let two_a = a.add(a);
            Ok(vec![RealAlgebraic::from_base(b.neg().div(&two_a)?)])
        }
        _ => {
            let inv2a = a.add(a).inv()?;
            let centre = b.neg().mul(&inv2a);
            let r1 = RealAlgebraic::new(centre.clone(), inv2a.clone(), disc.clone());
            let r2 = RealAlgebraic::new(centre, inv2a.neg(), disc);
            let mut v = vec![r1, r2];
            v.sort();
            Ok(v)
        }
    }
}

/// The unique root of a X^2 + b X + c inside the closed selector.
pub fn quad_solve(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    selector: &Enclosure,
) -> Result<RealAlgebraic> {
    let roots = quad_roots(a, b, c)?;
    let inside: Vec<RealAlgebraic> = roots
        .into_iter()
        .filter(|r| {
            r.cmp_rational(&selector.lo) != Ordering::Less
                && r.cmp_rational(&selector.hi) != Ordering::Greater
        })
        .collect();
    match inside.len() {
        0 => Err(Error::NoRootInSelector),
        1 => Ok(inside.into_iter().next().unwrap()),
        _ => Err(Error::TwoRootsInSelector),
    }
}
