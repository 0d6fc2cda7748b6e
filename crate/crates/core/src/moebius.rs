//! Projective 2x2 matrices over the tower, the triangle-group generators, and words in A, C.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::integer::Integer;
use serde::Serialize;

use crate::algebra::{FieldElement, NumberField, Tower};
use crate::error::{Error, Result};
use crate::words::{Digit, TreeWord};

/// The group G_{m,n}: its field and the scalars mu = 2cos(pi/m), nu = 2cos(pi/n), t = mu + nu.
#[derive(Clone, Debug)]
pub struct Group {
    pub m: u64,
    pub n: u64,
    field: Arc<NumberField>,
    mu: FieldElement,
    nu: FieldElement,
    t: FieldElement,
}

impl Group {
    pub fn new(m: u64, n: u64) -> Result<Group> {
        if m < 3 || n < 3 {
            return Err(Error::Inconsistent(format!(
                "orders must be at least 3 (m={m}, n={n})"
            )));
        }
        // mu = 1 is rational when m = 3, so the field of nu alone suffices.
        let order = if m == 3 { n } else { m.lcm(&n) };
        let field = NumberField::new(order);
        let mu = if m == 3 {
            FieldElement::one(&field)
        } else {
            FieldElement::two_cos_multiple(&field, (order / m) as usize)
        };
        let nu = FieldElement::two_cos_multiple(&field, (order / n) as usize);
        let t = mu.add(&nu);
        Ok(Group {
            m,
            n,
            field,
            mu,
            nu,
            t,
        })
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }
    pub fn mu(&self) -> &FieldElement {
        &self.mu
    }
    pub fn nu(&self) -> &FieldElement {
        &self.nu
    }
    pub fn t(&self) -> &FieldElement {
        &self.t
    }

    fn scalar(&self, k: i64) -> FieldElement {
        FieldElement::from_int(&self.field, k)
    }

    /// A = (1 t; 0 1).
    pub fn a(&self) -> ProjMatrix<FieldElement> {
        ProjMatrix::new(
            self.scalar(1),
            self.t.clone(),
            self.scalar(0),
            self.scalar(1),
        )
    }

    /// B = (nu 1; -1 0).
    pub fn b(&self) -> ProjMatrix<FieldElement> {
        ProjMatrix::new(
            self.nu.clone(),
            self.scalar(1),
            self.scalar(-1),
            self.scalar(0),
        )
    }

    /// C = (-mu 1; -1 0) = AB.
    pub fn c(&self) -> ProjMatrix<FieldElement> {
        ProjMatrix::new(
            self.mu.neg(),
            self.scalar(1),
            self.scalar(-1),
            self.scalar(0),
        )
    }

    pub fn generators(
        &self,
    ) -> (
        ProjMatrix<FieldElement>,
        ProjMatrix<FieldElement>,
        ProjMatrix<FieldElement>,
    ) {
        (self.a(), self.b(), self.c())
    }

    pub fn identity(&self) -> ProjMatrix<FieldElement> {
        ProjMatrix::identity(&self.field)
    }

    /// A^k: translation by k t, built directly.
    pub fn a_pow(&self, k: i64) -> ProjMatrix<FieldElement> {
        ProjMatrix::new(
            self.scalar(1),
            self.t.mul(&self.scalar(k)),
            self.scalar(0),
            self.scalar(1),
        )
    }

    pub fn c_pow(&self, l: i64) -> ProjMatrix<FieldElement> {
        self.c().pow(l)
    }

    pub fn eval_word(&self, w: &GroupWord) -> ProjMatrix<FieldElement> {
        let mut acc = self.identity();
        for &(g, e) in w.factors() {
            let f = match g {
                Gen::A => self.a_pow(e),
                Gen::C => self.c_pow(e),
            };
            acc = acc.mul(&f);
        }
        acc
    }

    /// Product A^{k_N} C^{l_N} ... A^{k_1} C^{l_1} for digits listed in orbit order.
    pub fn digits_matrix(&self, digits: &[Digit]) -> ProjMatrix<FieldElement> {
        let c_pows: Vec<_> = (0..self.m as i64).map(|l| self.c_pow(l)).collect();
        let step = |acc: ProjMatrix<FieldElement>, d: &Digit| {
            let m = c_pows[d.l as usize % self.m as usize].mul(&acc);
            // left multiplication by A^k adds k t times the bottom row to the top row
            let kt = self.t.mul(&self.scalar(d.k));
            ProjMatrix::new(m.a.add(&kt.mul(&m.c)), m.b.add(&kt.mul(&m.d)), m.c, m.d)
        };
        let mut acc = self.identity();
        let mut i = 0;
        while i < digits.len() {
            // long repetitions of a short block are applied as one matrix power
            let run = (1..=4).find_map(|p| {
                let block = digits.get(i..i + p)?;
                let reps = digits[i..]
                    .chunks_exact(p)
                    .take_while(|c| *c == block)
                    .count();
                (reps >= 4).then_some((p, reps))
            });
            match run {
                Some((p, reps)) => {
                    let block = digits[i..i + p].iter().fold(self.identity(), step);
                    acc = block.pow(reps as i64).mul(&acc);
                    i += p * reps;
                }
                None => {
                    acc = step(acc, &digits[i]);
                    i += 1;
                }
            }
        }
        acc
    }

    /// W = A^{-1} C^{-1} A C A.
    pub fn w(&self) -> ProjMatrix<FieldElement> {
        self.eval_word(&"A^-1 C^-1 A C A".parse().expect("static word"))
    }

    /// U = A C^{m-2} (A C^{-1})^{n-2}.
    pub fn u(&self) -> ProjMatrix<FieldElement> {
        let mut w = GroupWord::from_factors(vec![(Gen::A, 1), (Gen::C, self.m as i64 - 2)]);
        w = w.concat(
            &GroupWord::from_factors(vec![(Gen::A, 1), (Gen::C, -1)]).pow(self.n as i64 - 2),
        );
        self.eval_word(&w)
    }

    /// Right matrix R of the interval family indexed by (k, v).
    pub fn right_matrix(&self, k: i64, v: &TreeWord) -> Result<ProjMatrix<FieldElement>> {
        let digits = if k >= 1 {
            crate::words::upper_digits_small(k, v)
        } else {
            crate::words::upper_digits_large(k, v, self.n)?
        };
        Ok(self.digits_matrix(&digits))
    }

    /// Left matrix L of the interval family indexed by (k, v).
    pub fn left_matrix(&self, k: i64, v: &TreeWord) -> Result<ProjMatrix<FieldElement>> {
        let digits = if k >= 1 {
            crate::words::lower_digits_small(k, v, self.n)
        } else {
            if k == -1 {
                crate::words::check_trimmed(v, self.n)?;
            }
            crate::words::lower_digits_large(k, v)
        };
        Ok(self.digits_matrix(&digits).mul(&self.a_pow(-1)))
    }
}

#[derive(Clone, PartialEq)]
pub struct ProjMatrix<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// A point of the extended real line.
#[derive(Clone, Debug, PartialEq)]
pub enum Ext<T> {
    Finite(T),
    Infinity,
}

impl<T> Ext<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Ext::Finite(x) => Some(x),
            Ext::Infinity => None,
        }
    }
}

impl<T: Tower> ProjMatrix<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        ProjMatrix { a, b, c, d }
    }

    pub fn identity(field: &Arc<NumberField>) -> Self {
        let one = T::from_base(FieldElement::one(field));
        let zero = T::from_base(FieldElement::zero(field));
        ProjMatrix::new(one.clone(), zero.clone(), zero, one)
    }

    pub fn mul(&self, o: &Self) -> Self {
        ProjMatrix {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    pub fn det(&self) -> T {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn trace(&self) -> T {
        self.a.add(&self.d)
    }

    /// Adjugate; the projective inverse.
    pub fn adjugate(&self) -> Self {
        ProjMatrix::new(self.d.clone(), self.b.neg(), self.c.neg(), self.a.clone())
    }

    pub fn neg(&self) -> Self {
        ProjMatrix::new(self.a.neg(), self.b.neg(), self.c.neg(), self.d.neg())
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut base = if e < 0 { self.adjugate() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.a.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.proj_eq(&Self::identity(self.a.field()))
    }

    /// Equality up to a global sign.
    pub fn proj_eq(&self, o: &Self) -> bool {
        self == o || *self == o.neg()
    }

    pub fn apply(&self, x: &Ext<T>) -> Ext<T> {
        match x {
            Ext::Infinity => {
                if self.c.is_zero() {
                    Ext::Infinity
                } else {
                    Ext::Finite(self.a.div(&self.c).expect("nonzero"))
                }
            }
            Ext::Finite(x) => {
                let den = self.c.mul(x).add(&self.d);
                if den.is_zero() {
                    Ext::Infinity
                } else {
                    Ext::Finite(self.a.mul(x).add(&self.b).div(&den).expect("nonzero"))
                }
            }
        }
    }

    /// Image of a finite point; `None` at the pole.
    pub fn act(&self, x: &T) -> Option<T> {
        self.apply(&Ext::Finite(x.clone())).finite()
    }

    /// Coefficients of the fixed-point equation c x^2 + (d - a) x - b = 0.
    pub fn fixed_point_equation(&self) -> (T, T, T) {
        (self.c.clone(), self.d.sub(&self.a), self.b.neg())
    }

    pub fn map<U: Tower>(&self, f: impl Fn(&T) -> U) -> ProjMatrix<U> {
        ProjMatrix::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

impl ProjMatrix<FieldElement> {
    pub fn lift<U: Tower>(&self) -> ProjMatrix<U> {
        self.map(|x| U::from_base(x.clone()))
    }
}

impl<T: Tower> fmt::Debug for ProjMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} {:?}; {:?} {:?})", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    A,
    C,
}

/// Freely reduced word in A and C; factors are written left to right, the rightmost acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    factors: Vec<(Gen, i64)>,
}

impl GroupWord {
    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn from_factors(f: Vec<(Gen, i64)>) -> Self {
        let mut w = GroupWord::empty();
        for (g, e) in f {
            w.push(g, e);
        }
        w
    }

    pub fn factors(&self) -> &[(Gen, i64)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        if let Some(last) = self.factors.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    self.factors.pop();
                }
                return;
            }
        }
        self.factors.push((g, e));
    }

    pub fn concat(&self, o: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &(g, e) in &o.factors {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            factors: self.factors.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> GroupWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = GroupWord::empty();
        for _ in 0..e.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Word of a digit sequence given in orbit order.
    pub fn from_digits(digits: &[Digit]) -> GroupWord {
        let mut w = GroupWord::empty();
        for d in digits.iter().rev() {
            w.push(Gen::A, d.k);
            w.push(Gen::C, d.l as i64);
        }
        w
    }

    /// Read the word back as digits A^k C^l in orbit order; fails on negative powers of C
    /// or on a word that does not split into such pairs.
    pub fn to_digits(&self) -> Result<Vec<Digit>> {
        let f = &self.factors;
        if !f.len().is_multiple_of(2) {
            return Err(Error::InvalidWord(format!(
                "{self} does not split into digits"
            )));
        }
        let mut out = Vec::with_capacity(f.len() / 2);
        for pair in f.chunks(2) {
            match (pair[0], pair[1]) {
                ((Gen::A, k), (Gen::C, l)) => {
                    if l < 0 {
                        return Err(Error::NegativePower(format!("C^{l} in {self}")));
                    }
                    out.push(Digit { k, l: l as u32 });
                }
                _ => {
                    return Err(Error::InvalidWord(format!(
                        "{self} does not split into digits"
                    )))
                }
            }
        }
        out.reverse();
        Ok(out)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(g, e)| {
                let s = match g {
                    Gen::A => "A",
                    Gen::C => "C",
                };
                if e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut w = GroupWord::empty();
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(w);
        }
        for tok in s.split_whitespace() {
            let (g, rest) = tok.split_at(1);
            let g = match g {
                "A" => Gen::A,
                "C" => Gen::C,
                _ => return Err(Error::Parse(format!("unknown generator in '{tok}'"))),
            };
            let e = if rest.is_empty() {
                1
            } else {
                let r = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("expected '^' in '{tok}'")))?;
                let r = r.trim_start_matches('{').trim_end_matches('}');
                r.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?
            };
            w.push(g, e);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RealAlgebraic;
    use proptest::prelude::*;

    #[test]
    fn generator_basics() {
        let g = Group::new(3, 3).unwrap();
        assert_eq!(g.t(), &FieldElement::from_int(g.field(), 2));
        let (a, b, c) = g.generators();
        assert_eq!(a.mul(&b), c);
        assert!(c.pow(3).is_identity());
        assert!(b.pow(3).is_identity());
        for (m, n) in [(3, 4), (3, 7), (4, 6), (5, 7), (4, 4), (6, 8)] {
            let g = Group::new(m, n).unwrap();
            let (a, b, c) = g.generators();
            assert_eq!(a.mul(&b), c);
            assert!(c.pow(m as i64).is_identity(), "C order {m}");
            assert!(b.pow(n as i64).is_identity(), "B order {n}");
            assert!(!c.pow(m as i64 - 1).is_identity());
            // C elliptic, A parabolic.
            let tr = c.trace();
            assert_eq!(
                tr.mul(&tr)
                    .sub(&FieldElement::from_int(g.field(), 4))
                    .signum(),
                -1
            );
            assert_eq!(a.trace(), FieldElement::from_int(g.field(), 2));
        }
    }

    #[test]
    fn actions() {
        let g = Group::new(3, 5).unwrap();
        let t = g.t().clone();
        assert_eq!(
            g.a().apply(&Ext::Finite(t.neg())),
            Ext::Finite(FieldElement::zero(g.field()))
        );
        assert_eq!(
            g.b().apply(&Ext::Finite(FieldElement::zero(g.field()))),
            Ext::Infinity
        );
        assert_eq!(g.identity().apply(&Ext::Finite(t.clone())), Ext::Finite(t));
        assert_eq!(g.a().apply(&Ext::Infinity), Ext::Infinity);
    }

    #[test]
    fn word_forms() {
        for m in 3..=6u64 {
            for n in m..=8u64 {
                let g = Group::new(m, n).unwrap();
                let w = g.w();
                assert_eq!(w.det(), FieldElement::one(g.field()));
                let mt = Ext::Finite(g.t().neg());
                assert_eq!(w.apply(&mt), mt, "W fixes -t at ({m},{n})");
            }
        }
        let g = Group::new(3, 3).unwrap();
        assert!(g.eval_word(&GroupWord::empty()).is_identity());
    }

    #[test]
    fn parse_and_print() {
        let w: GroupWord = "A^-2 C A^-1 C".parse().unwrap();
        assert_eq!(w.to_string(), "A^-2 C A^-1 C");
        let w: GroupWord = "A C C^-1 A^{2}".parse().unwrap();
        assert_eq!(w.to_string(), "A^3");
        assert!("B".parse::<GroupWord>().is_err());
        let d = vec![Digit { k: 1, l: 2 }, Digit { k: -1, l: 1 }];
        assert_eq!(GroupWord::from_digits(&d).to_digits().unwrap(), d);
        assert!(matches!(
            "C^-1 A".parse::<GroupWord>().unwrap().to_digits(),
            Err(Error::InvalidWord(_))
        ));
        assert!(matches!(
            "A C^-1".parse::<GroupWord>().unwrap().to_digits(),
            Err(Error::NegativePower(_))
        ));
    }

    #[test]
    fn proj_eq_sign() {
        let g = Group::new(3, 4).unwrap();
        assert!(g.a().proj_eq(&g.a().neg()));
        assert!(g.a().proj_eq(&g.a()));
        assert!(!g.a().proj_eq(&g.c()));
    }

    fn word_strategy() -> impl Strategy<Value = GroupWord> {
        prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..6).prop_map(|v| {
            GroupWord::from_factors(
                v.into_iter()
                    .map(|(b, e)| (if b { Gen::A } else { Gen::C }, e))
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn det_one_and_composition(n in 3u64..=7, w1 in word_strategy(), w2 in word_strategy(), x in -20i64..20, pick in 0u8..3) {
            let g = Group::new(3, n).unwrap();
            let m1 = g.eval_word(&w1);
            let m2 = g.eval_word(&w2);
            prop_assert_eq!(m1.det(), FieldElement::one(g.field()));
            prop_assert!(g.eval_word(&w1.concat(&w2)).proj_eq(&m1.mul(&m2)));
            let pt = match pick {
                0 => Ext::Infinity,
                // a pole of m2 when c != 0
                1 if !m2.c.is_zero() => Ext::Finite(m2.d.neg().div(&m2.c).unwrap()),
                _ => Ext::Finite(FieldElement::from_int(g.field(), x).mul(g.nu()).add(&FieldElement::from_int(g.field(), 1))),
            };
            prop_assert_eq!(m1.mul(&m2).apply(&pt), m1.apply(&m2.apply(&pt)));
            let lifted: ProjMatrix<RealAlgebraic> = m1.lift();
            prop_assert_eq!(lifted.det(), RealAlgebraic::from_int(g.field(), 1));
        }
    }
}
