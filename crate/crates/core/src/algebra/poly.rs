//! Dense univariate polynomials, low degree first.

use num::{BigInt, BigRational, One, Zero};

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<BigRational>;

pub fn trim_int(p: &mut IntPoly) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trim_rat(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn int_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn int_sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let n = a.len().max(b.len());
    let mut out: IntPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim_int(&mut out);
    out
}

/// Exact division by a monic divisor; panics if the remainder is nonzero.
pub fn int_div_exact(a: &[BigInt], monic: &[BigInt]) -> IntPoly {
    let mut rem = a.to_vec();
    let dm = monic.len() - 1;
    if rem.len() <= dm {
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dm];
    for i in (0..q.len()).rev() {
        let c = rem[i + dm].clone();
        if c.is_zero() {
            continue;
        }
        for (j, m) in monic.iter().enumerate() {
            rem[i + j] -= &c * m;
        }
        q[i] = c;
    }
    assert!(
        rem.iter().all(|c| c.is_zero()),
        "inexact polynomial division"
    );
    q
}

/// Cyclotomic polynomial of order `n`, built recursively from z^n - 1.
pub fn cyclotomic(n: u64) -> IntPoly {
    let mut p: IntPoly = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = int_div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

/// D_j with D_0 = 2, D_1 = x, D_{j+1} = x D_j - D_{j-1}; satisfies D_j(z + 1/z) = z^j + z^-j.
pub fn dickson(j: usize) -> IntPoly {
    let x: IntPoly = vec![BigInt::zero(), BigInt::one()];
    let mut prev: IntPoly = vec![BigInt::from(2)];
    if j == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..j {
        let next = int_sub(&int_mul(&x, &cur), &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of 2cos(pi/n): the symmetrized cyclotomic polynomial of order 2n.
pub fn minpoly_of_nu(n: u64) -> IntPoly {
    assert!(n >= 2);
    let phi = cyclotomic(2 * n);
    let e = (phi.len() - 1) / 2;
    let mut out: IntPoly = vec![phi[e].clone()];
    for i in 1..=e {
        let d = dickson(i);
        let c = &phi[e + i];
        if out.len() < d.len() {
            out.resize(d.len(), BigInt::zero());
        }
        for (k, dk) in d.iter().enumerate() {
            out[k] += c * dk;
        }
    }
    trim_int(&mut out);
    out
}

pub fn rat_from_int(p: &[BigInt]) -> RatPoly {
    p.iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect()
}

pub fn rat_mul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_rat(&mut out);
    out
}

pub fn rat_sub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let mut out: RatPoly = (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_else(BigRational::zero)
                - b.get(i).cloned().unwrap_or_else(BigRational::zero)
        })
        .collect();
    trim_rat(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero after trimming.
pub fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut rem = a.to_vec();
    trim_rat(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = &rem[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, m) in b.iter().enumerate() {
            rem[i + j] -= &c * m;
        }
        q[i] = c;
    }
    trim_rat(&mut rem);
    trim_rat(&mut q);
    (q, rem)
}

/// Evaluate an integer polynomial at a rational point.
pub fn int_eval(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Sign of p(num / 2^bits), computed in integers.
pub fn int_sign_at_dyadic(p: &[BigInt], num: &BigInt, bits: u64) -> i32 {
    let d = p.len() - 1;
    let mut total = BigInt::zero();
    let mut pw = BigInt::one();
    for (i, c) in p.iter().enumerate() {
        total += (c * &pw) << (bits as usize * (d - i));
        pw *= num;
    }
    sign_of(&total)
}

pub fn sign_of(x: &BigInt) -> i32 {
    match x.sign() {
        num::bigint::Sign::Minus => -1,
        num::bigint::Sign::NoSign => 0,
        num::bigint::Sign::Plus => 1,
    }
}
