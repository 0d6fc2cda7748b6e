//! The interval maps, their digits and orbits, admissibility, and the behaviour at the two
//! extreme parameter values.

use std::cmp::Ordering;

use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::algebra::{floor, quad_roots, FieldElement, RealAlgebraic, Tower};
use crate::error::{Error, Result};
use crate::moebius::{Ext, Group, ProjMatrix};
use crate::report::Report;
use crate::words::{digit_seq_cmp, Digit};

/// A parameter value together with its interval `[(alpha - 1) t, alpha t)`.
#[derive(Clone, Debug)]
pub struct AlphaParam<T: Tower> {
    group: Group,
    value: T,
    t: T,
    left: T,
    right: T,
    c: ProjMatrix<T>,
}

impl<T: Tower> AlphaParam<T> {
    pub fn new(group: &Group, value: T) -> Result<Self> {
        if value.signum() < 0 || value.cmp_to(&value.int(1)).is_gt() {
            return Err(Error::Inconsistent("alpha must lie in [0, 1]".into()));
        }
        let t = T::from_base(group.t().clone());
        let right = value.mul(&t);
        let left = right.sub(&t);
        Ok(AlphaParam {
            group: group.clone(),
            value,
            t,
            left,
            right,
            c: group.c().lift(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn value(&self) -> &T {
        &self.value
    }
    pub fn t(&self) -> &T {
        &self.t
    }
    pub fn left(&self) -> &T {
        &self.left
    }
    pub fn right(&self) -> &T {
        &self.right
    }

    /// Membership in the half-open interval.
    pub fn contains(&self, x: &T) -> bool {
        self.left.le(x) && x.lt(&self.right)
    }

    pub fn contains_closed(&self, x: &T) -> bool {
        self.left.le(x) && x.le(&self.right)
    }

    /// One application of the map: the digit (k, l) and the image A^k C^l x.
    pub fn step(&self, x: &T) -> Result<(Digit, T)> {
        if !self.contains_closed(x) {
            return Err(Error::Inconsistent(
                "step called outside the closed interval".into(),
            ));
        }
        let mut y = x.clone();
        for l in 1..self.group.m {
            y = self.c.act(&y).ok_or(Error::Pole(l as usize))?;
            if !self.contains(&y) {
                let one = y.int(1);
                let s = y.div(&self.t)?.add(&one).sub(&self.value);
                let k = -floor(&s);
                let k = i64::try_from(k)
                    .map_err(|_| Error::Inconsistent("digit out of range".into()))?;
                let image = y.add(&self.t.mul(&y.int(k)));
                return Ok((Digit::new(k, l as u32), image));
            }
        }
        Err(Error::Inconsistent(
            "no exponent of C leaves the interval".into(),
        ))
    }

    /// Orbit of `x` for at most `steps` steps, stopping at an exact return to the left endpoint
    /// or at a pole.
    pub fn orbit(&self, x: &T, steps: usize) -> Result<OrbitRecord<T>> {
        self.run(x, steps, true)
    }

    /// Orbit that does not stop at the left endpoint.
    pub fn orbit_through(&self, x: &T, steps: usize) -> Result<OrbitRecord<T>> {
        self.run(x, steps, false)
    }

    fn run(&self, x: &T, steps: usize, stop_at_left: bool) -> Result<OrbitRecord<T>> {
        let mut rec = OrbitRecord {
            start: x.clone(),
            steps: vec![],
            returned_to_left: None,
            pole: None,
        };
        let mut cur = x.clone();
        for i in 0..steps {
            match self.step(&cur) {
                Ok((d, y)) => {
                    let back = y == self.left;
                    rec.steps.push((d, y.clone()));
                    cur = y;
                    if back {
                        rec.returned_to_left = Some(i + 1);
                        if stop_at_left {
                            break;
                        }
                    }
                }
                Err(Error::Pole(l)) => {
                    rec.pole = Some(l);
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(rec)
    }

    /// First `len` digits of the left endpoint orbit.
    pub fn lower_digits(&self, len: usize) -> Result<Vec<Digit>> {
        Ok(self.orbit_through(&self.left.clone(), len)?.digits())
    }

    /// First `len` digits of the right endpoint orbit.
    pub fn upper_digits(&self, len: usize) -> Result<Vec<Digit>> {
        Ok(self.orbit_through(&self.right.clone(), len)?.digits())
    }

    /// The alphabet, described by the first digits of both endpoints.
    pub fn alphabet(&self) -> Result<Alphabet> {
        let lo = self.step(&self.left)?.0;
        let hi = match self.step(&self.right) {
            Ok((d, _)) => Some(d),
            Err(Error::Pole(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Alphabet {
            lower: lo,
            upper: hi,
            m: self.group.m,
        })
    }

    /// Suffix sandwich test between the endpoint digit prefixes.
    pub fn admissible(&self, word: &[Digit]) -> Result<bool> {
        let alpha = self.alphabet()?;
        if !word.iter().all(|d| alpha.contains(d)) {
            return Ok(false);
        }
        let lower = self.lower_digits(word.len())?;
        let upper = self.upper_digits(word.len())?;
        for j in 0..word.len() {
            let s = &word[j..];
            let lo = &lower[..s.len().min(lower.len())];
            let hi = &upper[..s.len().min(upper.len())];
            if digit_seq_cmp(&s[..lo.len()], lo) == Ordering::Less {
                return Ok(false);
            }
            if digit_seq_cmp(&s[..hi.len()], hi) == Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl AlphaParam<FieldElement> {
    pub fn rational(group: &Group, value: BigRational) -> Result<Self> {
        Self::new(group, FieldElement::from_rational(group.field(), value))
    }
}

/// A finite orbit segment.
#[derive(Clone, Debug)]
pub struct OrbitRecord<T> {
    pub start: T,
    pub steps: Vec<(Digit, T)>,
    /// Step index at which the orbit landed exactly on the left endpoint.
    pub returned_to_left: Option<usize>,
    /// Exponent of C whose pole was hit after the recorded steps.
    pub pole: Option<usize>,
}

impl<T: Clone> OrbitRecord<T> {
    pub fn digits(&self) -> Vec<Digit> {
        self.steps.iter().map(|s| s.0).collect()
    }

    /// Point after `i` steps (0 is the start).
    pub fn point(&self, i: usize) -> &T {
        if i == 0 {
            &self.start
        } else {
            &self.steps[i - 1].1
        }
    }

    pub fn points(&self) -> Vec<T> {
        std::iter::once(self.start.clone())
            .chain(self.steps.iter().map(|s| s.1.clone()))
            .collect()
    }
}

/// The digits that occur for one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    pub lower: Digit,
    /// `None` when the right endpoint sits on a pole (alpha = 0): no upper bound.
    pub upper: Option<Digit>,
    pub m: u64,
}

impl Alphabet {
    pub fn contains(&self, d: &Digit) -> bool {
        if d.k == 0 || d.l == 0 || d.l as u64 >= self.m {
            return false;
        }
        let lk = self.lower.k;
        let Some(up) = self.upper else {
            return d.l == 1 && d.k < 0;
        };
        (d.l == up.l && d.k >= up.k) || (d.l <= up.l && d.k <= lk) || (d.l < up.l && d.k > 0)
    }
}

/// The parameter alpha whose right endpoint alpha t is fixed by `m`, chosen in `[lo, hi]`.
pub fn alpha_fixing(
    group: &Group,
    m: &ProjMatrix<FieldElement>,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<RealAlgebraic> {
    let t = group.t();
    let (a, b, c) = m.fixed_point_equation();
    let roots = quad_roots(&a.mul(t).mul(t), &b.mul(t), &c)?;
    let inside: Vec<_> = roots
        .into_iter()
        .filter(|r| r.cmp_rational(lo).is_ge() && r.cmp_rational(hi).is_le())
        .collect();
    match inside.len() {
        0 => Err(Error::NoRootInSelector),
        1 => Ok(inside.into_iter().next().unwrap()),
        _ => Err(Error::TwoRootsInSelector),
    }
}

fn unit_interval() -> (BigRational, BigRational) {
    (BigRational::zero(), BigRational::one())
}

/// The constants separating the three parameter regimes.
#[derive(Clone, Debug)]
pub struct RegimeConstants {
    pub gamma: RealAlgebraic,
    pub epsilon: RealAlgebraic,
    pub delta: RealAlgebraic,
}

pub fn regime_constants(group: &Group) -> Result<RegimeConstants> {
    let (a, c) = (group.a(), group.c());
    let (lo, hi) = unit_interval();
    let ai = a.pow(-1);
    let ci = c.pow(-1);
    let gamma = alpha_fixing(group, &ci.mul(&ai), &lo, &hi)?;
    let epsilon = alpha_fixing(group, &ai.mul(&c).mul(&ai), &lo, &hi)?;
    let delta = alpha_fixing(group, &a.mul(&ci).mul(&a).mul(&ci).mul(&ai), &lo, &hi)?;
    if delta >= epsilon || gamma >= delta {
        return Err(Error::Inconsistent("regime constants out of order".into()));
    }
    Ok(RegimeConstants {
        gamma,
        epsilon,
        delta,
    })
}

fn fe(group: &Group, k: i64) -> FieldElement {
    FieldElement::from_int(group.field(), k)
}

/// Exact claims about the orbit of the left endpoint when alpha = 0.
pub fn alpha0_suite(group: &Group) -> Result<Report> {
    let (m, n) = (group.m as i64, group.n as i64);
    let mut rep = Report::new(format!("alpha=0 (m={m}, n={n})"));
    let p = AlphaParam::rational(group, BigRational::zero())?;
    let l0 = p.left().clone();
    let nu = group.nu().clone();
    let (a, c) = (group.a(), group.c());
    let b = a.pow(-1).mul(&c);
    let block = a.pow(-2).mul(&c).mul(&b.pow(n - 2));
    let neg_inv_nu = nu.inv()?.neg();

    let lo = b.pow(n - 3).act(&l0);
    let hi = b.pow(n - 2).act(&l0);
    let ok = matches!((&lo, &hi), (Some(x), Some(y)) if x.lt(&neg_inv_nu) && neg_inv_nu.lt(y));
    rep.push("(i) B^{n-3} l0 < -1/nu < B^{n-2} l0", ok, "");
    let ii = block.pow(m - 2).act(&l0);
    rep.push(
        "(ii) block^{m-2} l0 = -nu",
        ii.as_ref() == Some(&nu.neg()),
        "",
    );
    let iii = block.apply(&Ext::Finite(nu.neg()));
    rep.push("(iii) block (-nu) = infinity", iii == Ext::Infinity, "");

    let period = (m * n - m - n) as usize;
    let orb = p.orbit(&l0, period + 1)?;
    rep.push(
        "orbit period",
        orb.returned_to_left == Some(period),
        format!("returned at {:?}, expected {period}", orb.returned_to_left),
    );
    let mut expect = Vec::new();
    for _ in 0..m - 2 {
        expect.extend(vec![Digit::simple(-1); (n - 2) as usize]);
        expect.push(Digit::simple(-2));
    }
    expect.extend(vec![Digit::simple(-1); (n - 3) as usize]);
    expect.push(Digit::simple(-2));
    rep.push(
        "period digits equal the word of W",
        orb.digits() == expect,
        "",
    );

    let pts = orb.points();
    if pts.len() > period {
        let mut chain = Vec::new();
        for r in 0..=(n - 2) as usize {
            let mut i = r;
            while i < period {
                chain.push(i);
                i += (n - 1) as usize;
            }
        }
        let sorted = chain.windows(2).all(|w| pts[w[0]].lt(&pts[w[1]]));
        rep.push(
            "real order of the orbit",
            sorted && chain.len() == period,
            format!("{chain:?}"),
        );
        let last = *chain.last().unwrap();
        let neg_inv_t = group.t().inv()?.neg();
        rep.push(
            "rightmost orbit point is -1/t",
            pts[last] == neg_inv_t,
            format!("index {last}"),
        );
    } else {
        rep.push("real order of the orbit", false, "orbit too short");
        rep.push("rightmost orbit point is -1/t", false, "orbit too short");
    }
    let w = group.w();
    let minus_t = group.t().neg();
    rep.push("W fixes -t", w.act(&minus_t).as_ref() == Some(&minus_t), "");
    Ok(rep)
}

/// Exact claims about the map at alpha = 1.
pub fn alpha1_suite(group: &Group, k_cap: i64) -> Result<Report> {
    let (m, n) = (group.m as i64, group.n as i64);
    let mut rep = Report::new(format!("alpha=1 (m={m}, n={n})"));
    let p = AlphaParam::rational(group, BigRational::one())?;
    let t = group.t().clone();
    let mu = group.mu().clone();
    let (a, c) = (group.a(), group.c());

    let orb = p.orbit(&t, (n - 1) as usize)?;
    let head = vec![Digit::new(1, (m - 1) as u32); (n - 2) as usize];
    let reached =
        orb.steps.len() == (n - 2) as usize && orb.steps.last().map(|s| &s.1) == Some(&mu);
    rep.push(
        "orbit of t: (A C^{m-1})^{n-2} t = mu",
        orb.digits() == head && reached,
        format!(
            "digits {:?}",
            orb.digits()
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
        ),
    );
    rep.push(
        "pole of C^{m-1} at mu",
        orb.pole == Some((m - 1) as usize),
        format!("{:?}", orb.pole),
    );
    let u = group.u();
    rep.push("U t = t", u.act(&t).as_ref() == Some(&t), "");
    let closing = a.mul(&c.pow(m - 2)).act(&mu);
    rep.push("A C^{m-2} mu = t", closing.as_ref() == Some(&t), "");

    let left = mu.add(&t.inv()?);
    let top = a.mul(&c.pow(m - 1));
    let left_ok =
        top.act(&left) == Some(fe(group, 0)) && p.step(&left)?.0 == Digit::new(1, (m - 1) as u32);
    let t_ok = p.step(&t)?.0 == Digit::new(1, (m - 1) as u32);
    let not_full = top.act(&t).map(|x| x.lt(&t)).unwrap_or(false);
    rep.push(
        "non-full cylinder (1, m-1) = [mu + 1/t, t]",
        left_ok && t_ok && not_full,
        "",
    );

    let mut full = true;
    let mut detail = String::new();
    for l in 1..m {
        for k in 1..=k_cap {
            if l == m - 1 && k == 1 {
                continue;
            }
            if !cylinder_is_full(group, k, l)? {
                full = false;
                detail.push_str(&format!("({k},{l}) "));
            }
        }
    }
    rep.push("remaining cylinders are full", full, detail);
    Ok(rep)
}

/// Whether the alpha = 1 cylinder (k, l) maps onto the whole interval: its preimage interval
/// carries no pole of C^j (j <= l) and C^j stays inside for j < l.
fn cylinder_is_full(group: &Group, k: i64, l: i64) -> Result<bool> {
    let t = group.t().clone();
    let zero = fe(group, 0);
    let map = group.a_pow(k).mul(&group.c_pow(l));
    let inv = map.pow(-1);
    let (Some(lo), Some(hi)) = (inv.act(&zero), inv.act(&t)) else {
        return Ok(false);
    };
    let (lo, hi) = if lo.lt(&hi) { (lo, hi) } else { (hi, lo) };
    for j in 1..=l {
        let cj = group.c_pow(j);
        if let Ext::Finite(pole) = cj.pow(-1).apply(&Ext::Infinity) {
            if lo.lt(&pole) && pole.lt(&hi) {
                return Ok(false);
            }
        }
        if j < l {
            for x in [&lo, &hi] {
                match cj.act(x) {
                    Some(y) if y.signum() >= 0 && y.le(&t) => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
