//! Synchronization intervals: their endpoints, expected meeting indices, and checks of the
//! orbit behaviour on and around them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    decimal, refine, Enclosure, ExactForm, FieldElement, NumberField, RealAlgebraic, Tower,
};
use crate::dynamics::{regime_constants, AlphaParam, RegimeConstants};
use crate::error::{Error, Result};
use crate::moebius::{Group, ProjMatrix};
use crate::report::Report;
use crate::words::{
    enumerate_tree, enumerate_trimmed, frak_f, in_trimmed, lower_digits_large, lower_digits_small,
    lower_digits_small_core, lower_len_small, upper_digits_large, upper_digits_large_word,
    upper_digits_small, upper_digits_small_word, w_block, Digit, TreeWord, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Small,
    Mid,
    Large,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Small => "small",
            Regime::Mid => "mid",
            Regime::Large => "large",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "small" => Ok(Regime::Small),
            "mid" => Ok(Regime::Mid),
            "large" => Ok(Regime::Large),
            _ => Err(Error::Parse(format!("unknown regime '{s}'"))),
        }
    }
}

impl Regime {
    /// Parameter range `[lo, hi]` of the regime.
    pub fn range(
        &self,
        rc: &RegimeConstants,
        field: &Arc<NumberField>,
    ) -> (RealAlgebraic, RealAlgebraic) {
        let zero = RealAlgebraic::from_int(field, 0);
        let one = RealAlgebraic::from_int(field, 1);
        match self {
            Regime::Small => (zero, rc.gamma.clone()),
            Regime::Mid => (rc.gamma.clone(), rc.epsilon.clone()),
            Regime::Large => (rc.epsilon.clone(), one),
        }
    }
}

/// One (potential) synchronization interval.
#[derive(Clone, Debug)]
pub struct SyncInterval {
    pub regime: Regime,
    /// Positive in the small regime; -k (negative) otherwise.
    pub k: i64,
    pub v: TreeWord,
    pub zeta: RealAlgebraic,
    pub eta: RealAlgebraic,
    pub omega: RealAlgebraic,
    pub i_expected: usize,
    /// Base right index; in the large and middle regimes the meeting may come one step later.
    pub j_expected: usize,
    pub right: ProjMatrix<FieldElement>,
    pub left: ProjMatrix<FieldElement>,
}

impl SyncInterval {
    /// Endpoints `(lo, hi)` of the synchronization interval, closed at `lo`, open at `hi`.
    pub fn sync_bounds(&self) -> (&RealAlgebraic, &RealAlgebraic) {
        match self.regime {
            Regime::Small => (&self.zeta, &self.eta),
            _ => (&self.eta, &self.zeta),
        }
    }

    /// Endpoints of the cylinder containing the interval.
    pub fn cylinder_bounds(&self) -> (&RealAlgebraic, &RealAlgebraic) {
        match self.regime {
            Regime::Small => (&self.zeta, &self.omega),
            _ => (&self.omega, &self.zeta),
        }
    }

    pub fn j_candidates(&self) -> Vec<usize> {
        match self.regime {
            Regime::Small => vec![self.j_expected],
            _ => vec![self.j_expected, self.j_expected + 1],
        }
    }

    pub fn contains(&self, alpha: &RealAlgebraic) -> bool {
        let (lo, hi) = self.sync_bounds();
        lo.cmp_exact(alpha).is_le() && alpha.cmp_exact(hi).is_lt()
    }

    /// Enclosure of the interval length with endpoint cells of width 2^-bits.
    pub fn length(&self, bits: u64) -> Enclosure {
        let (lo, hi) = self.sync_bounds();
        refine(hi, bits).sub(&refine(lo, bits))
    }

    /// Interior point where the right orbit passes through 0.
    pub fn chi(&self, group: &Group) -> Result<FieldElement> {
        let x = self
            .right
            .pow(-1)
            .act(&FieldElement::zero(group.field()))
            .ok_or(Error::DivisionByZero)?;
        x.div(group.t())
    }

    pub fn row(&self, digits: usize) -> IntervalRow {
        let dec = |x: &RealAlgebraic| decimal(x, digits);
        let len = self.length(4 * digits as u64 + 16);
        IntervalRow {
            regime: self.regime,
            k: self.k,
            v: self.v.to_string(),
            path: self.v.path().to_vec(),
            zeta_exact: self.zeta.exact_form(),
            zeta_dec: dec(&self.zeta),
            eta_exact: self.eta.exact_form(),
            eta_dec: dec(&self.eta),
            omega_exact: self.omega.exact_form(),
            omega_dec: dec(&self.omega),
            i: self.i_expected,
            j: self.j_expected,
            length_dec: rat_decimal(&len.lo.clone().max(BigRational::zero()), digits),
            length: len.mid().to_f64().unwrap_or(f64::NAN),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalRow {
    pub regime: Regime,
    pub k: i64,
    pub v: String,
    pub path: Vec<i64>,
    pub zeta_exact: ExactForm,
    pub zeta_dec: String,
    pub eta_exact: ExactForm,
    pub eta_dec: String,
    pub omega_exact: ExactForm,
    pub omega_dec: String,
    pub i: usize,
    pub j: usize,
    /// Lower bound of the length, truncated to the requested digits.
    pub length_dec: String,
    pub length: f64,
}

/// Parameter whose right endpoint is fixed by `m`, chosen inside `[lo, hi]`.
pub fn alpha_fixed_in(
    group: &Group,
    m: &ProjMatrix<FieldElement>,
    lo: &RealAlgebraic,
    hi: &RealAlgebraic,
) -> Result<RealAlgebraic> {
    let t = group.t();
    let (a, b, c) = m.fixed_point_equation();
    let mut roots = crate::algebra::quad_roots(&a.mul(t).mul(t), &b.mul(t), &c)?;
    roots.dedup();
    let inside: Vec<_> = roots
        .into_iter()
        .filter(|r| lo.cmp_exact(r).is_le() && r.cmp_exact(hi).is_le())
        .collect();
    match inside.len() {
        0 => Err(Error::NoRootInSelector),
        1 => Ok(inside.into_iter().next().unwrap()),
        _ => Err(Error::TwoRootsInSelector),
    }
}

fn regime_of(k: i64) -> Regime {
    match k {
        k if k >= 1 => Regime::Small,
        -1 => Regime::Mid,
        _ => Regime::Large,
    }
}

/// Endpoints and expected indices for (k, v); the regime follows from the sign of k
/// (k >= 1 small, k = -1 middle, k <= -2 large).
pub fn endpoints(group: &Group, k: i64, v: &TreeWord) -> Result<SyncInterval> {
    let rc = regime_constants(group)?;
    endpoints_with(group, &rc, k, v)
}

pub fn endpoints_with(
    group: &Group,
    rc: &RegimeConstants,
    k: i64,
    v: &TreeWord,
) -> Result<SyncInterval> {
    if k == 0 {
        return Err(Error::InvalidWord("k must be nonzero".into()));
    }
    let regime = regime_of(k);
    let n = group.n;
    let (lo, hi) = regime.range(rc, group.field());
    let (a, c) = (group.a(), group.c());
    let ai = a.pow(-1);
    let right = group.right_matrix(k, v)?;
    // L = C^-1 A C R (small) or C^-1 A C^2 R (large); both are checked against the digit
    // products in the relations module
    let left = match regime {
        Regime::Small => c.pow(-1).mul(&a).mul(&c).mul(&right),
        Regime::Large => c.pow(-1).mul(&a).mul(&c.pow(2)).mul(&right),
        Regime::Mid => group.left_matrix(k, v)?,
    };
    let f = frak_f(&v.word());
    let sel = |m: &ProjMatrix<FieldElement>| alpha_fixed_in(group, m, &lo, &hi);
    match regime {
        Regime::Small => {
            let zeta = sel(&a.mul(&right))?;
            let eta = sel(&c.pow(-1).mul(&a).mul(&c).mul(&right))?;
            let omega = sel(&group.digits_matrix(&upper_digits_small_word(k, &f)))?;
            Ok(SyncInterval {
                regime,
                k,
                v: v.clone(),
                zeta,
                eta,
                omega,
                i_expected: lower_len_small(k, v, n) as usize + 1,
                j_expected: v.upper_len() as usize + 1,
                right,
                left,
            })
        }
        Regime::Mid | Regime::Large => {
            let zeta = sel(&left)?;
            let eta = sel(&a.mul(&c).mul(&right))?;
            let period = group.digits_matrix(&f.simple_digits(k, k - 1));
            let omega = match sel(&a.mul(&period).mul(&ai)) {
                Ok(w) => w,
                Err(Error::NegativeDiscriminant | Error::NoRootInSelector)
                    if regime == Regime::Mid && v.is_single() =>
                {
                    rc.gamma.clone()
                }
                Err(e) => return Err(e),
            };
            let upper = upper_digits_large(k, v, n)?;
            Ok(SyncInterval {
                regime,
                k,
                v: v.clone(),
                zeta,
                eta,
                omega,
                i_expected: v.upper_len() as usize + 1,
                j_expected: upper.len() + 1,
                right,
                left,
            })
        }
    }
}

/// All intervals of a regime within the caps, in canonical (k, length, path) order.
pub fn enumerate_intervals(
    group: &Group,
    regime: Regime,
    k_max: i64,
    len_max: usize,
    q_cap: i64,
) -> Result<Vec<SyncInterval>> {
    let rc = regime_constants(group)?;
    let jobs: Vec<(i64, TreeWord)> = match regime {
        Regime::Mid => enumerate_trimmed(len_max, q_cap, group.n)
            .into_iter()
            .map(|v| (-1, v))
            .collect(),
        _ => {
            let words = enumerate_tree(len_max, q_cap);
            let ks: Vec<i64> = if regime == Regime::Small {
                (1..=k_max).collect()
            } else {
                (2..=k_max).map(|k| -k).collect()
            };
            ks.into_iter()
                .flat_map(|k| words.iter().map(move |v| (k, v.clone())))
                .collect()
        }
    };
    jobs.par_iter()
        .map(|(k, v)| endpoints_with(group, &rc, *k, v))
        .collect()
}

/// Evidence of synchronization at one parameter value.
#[derive(Clone, Debug, Serialize)]
pub struct SyncWitness {
    pub alpha: String,
    pub i: usize,
    pub j: usize,
    pub point: String,
    pub expected_i: usize,
    pub expected_j: Vec<usize>,
    pub indices_match: bool,
    pub pre_relation: bool,
}

/// First meeting `r_j = l_i` of the two endpoint orbits within `cap` steps.
pub fn find_meeting<T: Tower>(p: &AlphaParam<T>, cap: usize) -> Result<Option<(usize, usize, T)>> {
    let r = p.orbit_through(p.right(), cap)?;
    let l = p.orbit_through(p.left(), cap)?;
    let mut seen: HashMap<Vec<BigRational>, usize> = HashMap::new();
    for (j, x) in r.points().iter().enumerate() {
        seen.entry(x.key()).or_insert(j);
    }
    for (i, x) in l.points().iter().enumerate().skip(1) {
        if let Some(&j) = seen.get(&x.key()) {
            if j >= 1 && *r.point(j) == *x {
                return Ok(Some((i, j, x.clone())));
            }
        }
    }
    Ok(None)
}

pub fn verify_sync<T: Tower>(
    group: &Group,
    iv: &SyncInterval,
    alpha: T,
    cap: usize,
) -> Result<SyncWitness> {
    let p = AlphaParam::new(group, alpha)?;
    let (i, j, pt) = find_meeting(&p, cap)?.ok_or(Error::NoSync(cap))?;
    let r = p.orbit_through(p.right(), j.max(iv.j_expected))?;
    let l = p.orbit_through(p.left(), i)?;
    let relation: ProjMatrix<T> = match iv.regime {
        Regime::Small => group.c().pow(-1).mul(&group.a()).mul(&group.c()).lift(),
        _ => group
            .c()
            .pow(-1)
            .mul(&group.a())
            .mul(&group.c().pow(-1))
            .lift(),
    };
    let j0 = iv.j_expected;
    let pre = i >= 1
        && j0 >= 1
        && r.steps.len() + 1 >= j0
        && relation.act(r.point(j0 - 1)).as_ref() == Some(l.point(i - 1));
    let mut expected_j = iv.j_candidates();
    if iv.regime != Regime::Small {
        // the later meeting happens exactly when the j-th right step used C^2
        let late = r
            .steps
            .get(j0 - 1)
            .map(|s| s.0 == Digit::new(1, 2))
            .unwrap_or(false);
        expected_j = vec![if late { j0 + 1 } else { j0 }];
    }
    Ok(SyncWitness {
        alpha: decimal(p.value(), 12),
        i,
        j,
        point: decimal(&pt, 12),
        expected_i: iv.i_expected,
        indices_match: i == iv.i_expected && expected_j.contains(&j),
        expected_j,
        pre_relation: pre,
    })
}

/// Rational points strictly inside `(lo, hi)`, spread evenly and rounded to short dyadics.
pub fn interior_samples(lo: &RealAlgebraic, hi: &RealAlgebraic, count: usize) -> Vec<BigRational> {
    if count == 0 || hi.cmp_exact(lo).is_le() {
        return vec![];
    }
    let spread = 64 - (count as u64 + 1).leading_zeros() as usize + 8;
    let mut bits = 64u64;
    loop {
        let a = refine(lo, bits).hi;
        let b = refine(hi, bits).lo;
        if a < b {
            let den = BigInt::from(count as u64 + 1);
            let out: Vec<BigRational> = (1..=count)
                .map(|s| &a + (&b - &a) * BigRational::new(BigInt::from(s as u64), den.clone()))
                .map(|x| round_dyadic(&x, bits as usize + spread))
                .filter(|x| lo.cmp_rational(x).is_lt() && hi.cmp_rational(x).is_gt())
                .collect();
            if out.len() == count || bits >= 1 << 16 {
                return out;
            }
        }
        bits *= 2;
    }
}

fn round_dyadic(x: &BigRational, bits: usize) -> BigRational {
    let s = BigInt::one() << bits;
    BigRational::new(
        (x * BigRational::from_integer(s.clone()))
            .round()
            .to_integer(),
        s,
    )
}

fn seq_str(d: &[Digit]) -> String {
    d.iter()
        .map(|x| {
            if x.l == 1 {
                x.k.to_string()
            } else {
                x.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

fn prefix_check(rep: &mut Report, name: &str, got: &[Digit], want: &[Digit]) {
    let n = want.len();
    let ok = got.len() >= n && got[..n] == want[..];
    let detail = if ok {
        String::new()
    } else {
        format!(
            "got {} want {}",
            seq_str(&got[..n.min(got.len())]),
            seq_str(want)
        )
    };
    rep.push(name, ok, detail);
}

fn lower_large_word(k: i64, w: &Word) -> Vec<Digit> {
    w.simple_digits(k, k - 1)
}

/// Digit-sequence certificates at interior samples and at the exact endpoints.
pub fn digit_certificates(group: &Group, iv: &SyncInterval, samples: usize) -> Result<Report> {
    let n = group.n;
    let (k, v) = (iv.k, &iv.v);
    let mut rep = Report::new(format!("{} k={} v={}", iv.regime, k, v));
    let (lo, hi) = iv.sync_bounds();
    let (want_lower, want_upper) = match iv.regime {
        Regime::Small => (lower_digits_small(k, v, n), upper_digits_small(k, v)),
        _ => (lower_digits_large(k, v), upper_digits_large(k, v, n)?),
    };
    for a in interior_samples(lo, hi, samples) {
        let p = AlphaParam::rational(group, a.clone())?;
        let tag = format!("alpha={}", a);
        prefix_check(
            &mut rep,
            &format!("{tag} lower"),
            &p.lower_digits(want_lower.len())?,
            &want_lower,
        );
        prefix_check(
            &mut rep,
            &format!("{tag} upper"),
            &p.upper_digits(want_upper.len())?,
            &want_upper,
        );
    }
    let vp = v.prime();
    let rev = vp.reverse();
    let tail = v.word().concat(&vp.pow(2));
    match iv.regime {
        Regime::Small => {
            let pe = AlphaParam::new(group, iv.eta.clone())?;
            let want = upper_digits_small_word(k, &tail);
            prefix_check(
                &mut rep,
                "eta upper = v (v')^inf",
                &pe.upper_digits(want.len())?,
                &want,
            );
            let pz = AlphaParam::new(group, iv.zeta.clone())?;
            let m: ProjMatrix<RealAlgebraic> = group
                .digits_matrix(&upper_digits_small_word(k, &rev))
                .lift();
            rep.push(
                "zeta right point fixed by reversed v'",
                m.act(pz.right()).as_ref() == Some(pz.right()),
                "",
            );
            prefix_check(
                &mut rep,
                "zeta upper",
                &pz.upper_digits(want_upper.len())?,
                &want_upper,
            );
            if v.letters() == [1] {
                let mut want = w_block(n).repeat(k as usize + 1);
                want.extend(vec![Digit::simple(-1); n as usize - 3]);
                want.push(Digit::simple(-2));
                want.extend(w_block(n).repeat(k as usize));
                prefix_check(
                    &mut rep,
                    "zeta lower (v = 1)",
                    &pz.lower_digits(want.len())?,
                    &want,
                );
                let po = AlphaParam::new(group, iv.omega.clone())?;
                let mut want = w_block(n).repeat(k as usize);
                want.extend(vec![Digit::simple(-1); n as usize - 3]);
                want.push(Digit::simple(-2));
                want.extend(w_block(n).repeat(k as usize - 1));
                prefix_check(
                    &mut rep,
                    "omega lower (v = 1)",
                    &po.lower_digits(want.len())?,
                    &want,
                );
            } else {
                let want = lower_digits_small_core(k, &v.word(), n);
                prefix_check(&mut rep, "zeta lower", &pz.lower_digits(want.len())?, &want);
            }
        }
        Regime::Large | Regime::Mid => {
            let pe = AlphaParam::new(group, iv.eta.clone())?;
            let want = lower_large_word(k, &tail);
            prefix_check(
                &mut rep,
                "eta lower = v (v')^inf",
                &pe.lower_digits(want.len())?,
                &want,
            );
            let pz = AlphaParam::new(group, iv.zeta.clone())?;
            let period = lower_large_word(k, &rev);
            let want: Vec<Digit> = period.repeat(2);
            prefix_check(
                &mut rep,
                "zeta lower purely periodic",
                &pz.lower_digits(want.len())?,
                &want,
            );
            if iv.regime == Regime::Large {
                let head = vec![Digit::new(1, 2); n as usize - 2];
                let mut want = head.clone();
                if v.is_single() {
                    let (e, _, g) = crate::words::large_blocks(k, n);
                    want = upper_digits_large(k, v, n)?;
                    for _ in 0..2 {
                        want.extend(g.iter().copied());
                        want.extend(e.repeat(v.c1() as usize));
                    }
                } else {
                    want.extend(upper_digits_large_word(k, &rev.pow(2), n)?);
                }
                prefix_check(&mut rep, "zeta upper", &pz.upper_digits(want.len())?, &want);
                if v.letters() == [1] {
                    let po = AlphaParam::new(group, iv.omega.clone())?;
                    let (e, _, _) = crate::words::large_blocks(k, n);
                    let mut want = Vec::new();
                    let mut u = vec![Digit::new(1, 2); n as usize - 2];
                    u.push(Digit::new(1, 1));
                    want.extend(u.repeat((-k - 1) as usize));
                    want.extend(vec![Digit::new(1, 2); n as usize - 3]);
                    want.extend(e.repeat(2));
                    prefix_check(
                        &mut rep,
                        "omega upper (v = 1)",
                        &po.upper_digits(want.len())?,
                        &want,
                    );
                }
                let (found, detail) = locate_beta(group, iv, &want_upper, 2)?;
                rep.push("beta witness below eta", found, detail);
            }
        }
    }
    Ok(rep)
}

/// Search below eta for a parameter whose right digits start with (b (1,1))^reps, probing
/// at eta - width/2^j and bisecting on j.
fn locate_beta(
    group: &Group,
    iv: &SyncInterval,
    upper: &[Digit],
    reps: usize,
) -> Result<(bool, String)> {
    let mut block = upper.to_vec();
    block.push(Digit::new(1, 1));
    let want = block.repeat(reps);
    let (lo, hi) = iv.cylinder_bounds();
    let eta = refine(&iv.eta, 200).mid();
    let width = refine(hi, 200).mid() - refine(lo, 200).mid();
    let scale = width.recip().to_f64().unwrap_or(1e300).log2().max(0.0) as usize;
    let probe = |j: usize| -> Result<Option<BigRational>> {
        let off = &width / BigRational::from_integer(BigInt::one() << (j + 1));
        let a = round_dyadic(&(&eta - off), scale + j + 12);
        if iv.eta.cmp_rational(&a).is_le() || lo.cmp_rational(&a).is_ge() {
            return Ok(None);
        }
        let got = AlphaParam::rational(group, a.clone())?.upper_digits(want.len())?;
        Ok((got.len() >= want.len() && got[..want.len()] == want[..]).then_some(a))
    };
    let (mut bad, mut good) = (0usize, 64usize);
    let Some(mut best) = probe(good)? else {
        return Ok((false, "no witness found".into()));
    };
    while good - bad > 1 {
        let mid = (bad + good) / 2;
        match probe(mid)? {
            Some(a) => {
                good = mid;
                best = a;
            }
            None => bad = mid,
        }
    }
    Ok((
        true,
        format!("beta ~ {:.15}", best.to_f64().unwrap_or(f64::NAN)),
    ))
}

fn eq_report(rep: &mut Report, name: &str, a: &RealAlgebraic, b: &RealAlgebraic) {
    let ok = a.cmp_exact(b) == Ordering::Equal;
    rep.push(
        name,
        ok,
        if ok {
            String::new()
        } else {
            format!("{} vs {}", decimal(a, 12), decimal(b, 12))
        },
    );
}

/// Abutment, disjointness and limit checks for the children of one word.
pub fn partition_check(group: &Group, k: i64, parent: &TreeWord, q_max: i64) -> Result<Report> {
    let rc = regime_constants(group)?;
    let q_min = if parent.is_single() { -1 } else { 0 };
    let mut cache = HashMap::new();
    cache.insert(parent.clone(), endpoints_with(group, &rc, k, parent)?);
    for q in q_min..=q_max {
        if let Ok(v) = parent.theta(q) {
            cache.insert(v.clone(), endpoints_with(group, &rc, k, &v)?);
        }
    }
    Ok(partition_from(group.n, k, parent, q_max, &cache))
}

fn partition_from(
    n: u64,
    k: i64,
    parent: &TreeWord,
    q_max: i64,
    cache: &HashMap<TreeWord, SyncInterval>,
) -> Report {
    let regime = regime_of(k);
    let mut rep = Report::new(format!("{regime} k={k} parent={parent}"));
    let par = &cache[parent];
    let q_min = if parent.is_single() { -1 } else { 0 };
    let mut kids = Vec::new();
    let mut slot = 0usize;
    for q in q_min..=q_max {
        let Ok(v) = parent.theta(q) else { continue };
        if regime == Regime::Mid && !in_trimmed(&v, n) {
            continue;
        }
        if let Some(iv) = cache.get(&v) {
            kids.push((slot, q, iv));
        }
        slot += 1;
    }
    if let Some((0, _, first)) = kids.first() {
        if regime != Regime::Mid {
            eq_report(
                &mut rep,
                "first child shares the outer endpoint",
                &first.omega,
                &par.omega,
            );
        }
    }
    for w in kids.windows(2) {
        let ((sa, qa, a), (sb, qb, b)) = (&w[0], &w[1]);
        if sb - sa == 1 {
            eq_report(
                &mut rep,
                &format!("omega(q={qb}) = zeta(q={qa})"),
                &b.omega,
                &a.zeta,
            );
        }
    }
    let mut all: Vec<&SyncInterval> = vec![par];
    all.extend(kids.iter().map(|x| x.2));
    for iv in &all {
        let (slo, shi) = iv.sync_bounds();
        let (clo, chi) = iv.cylinder_bounds();
        let inside =
            clo.cmp_exact(slo).is_le() && shi.cmp_exact(chi).is_le() && slo.cmp_exact(shi).is_lt();
        rep.push(format!("J inside I for {}", iv.v), inside, "");
    }
    rep.push("pairwise disjoint", disjoint(&all), "");
    // children move monotonically toward the parent's eta from the outer side
    let toward = |a: &RealAlgebraic, b: &RealAlgebraic| match regime {
        Regime::Small => a.cmp_exact(b).is_lt(),
        _ => a.cmp_exact(b).is_gt(),
    };
    let zs: Vec<&RealAlgebraic> = kids
        .iter()
        .filter(|(_, q, _)| *q >= 0)
        .map(|(_, _, c)| &c.zeta)
        .collect();
    let mono = zs.windows(2).all(|w| toward(w[1], w[0])) && zs.iter().all(|z| !toward(z, &par.eta));
    rep.push("children zeta approach parent eta", mono, "");
    rep
}

/// Partition checks for every enumerated parent in all three regimes, the regime tiling,
/// and disjointness of each regime's full interval family. Children beyond the caps are
/// left out.
pub fn partition_suite(group: &Group, k_max: i64, len_max: usize, q_cap: i64) -> Result<Report> {
    let mut rep = Report::new(format!(
        "partitions n={} k<={k_max} |v|<={len_max} q<={q_cap}",
        group.n
    ));
    rep.extend(regime_tiling(group, k_max)?);
    for regime in [Regime::Small, Regime::Mid, Regime::Large] {
        let ivs = enumerate_intervals(group, regime, k_max, len_max, q_cap)?;
        let mut by_k: HashMap<i64, HashMap<TreeWord, SyncInterval>> = HashMap::new();
        for iv in &ivs {
            by_k.entry(iv.k)
                .or_default()
                .insert(iv.v.clone(), iv.clone());
        }
        let refs: Vec<&SyncInterval> = ivs.iter().collect();
        let mut bad = Vec::new();
        let mut checks = 0usize;
        let mut ks: Vec<&i64> = by_k.keys().collect();
        ks.sort();
        for k in ks {
            let cache = &by_k[k];
            let mut parents: Vec<&TreeWord> = cache.keys().collect();
            parents.sort();
            for p in parents {
                let r = partition_from(group.n, *k, p, q_cap, cache);
                checks += r.checks.len();
                bad.extend(r.failures().map(|c| format!("{}: {}", r.title, c.name)));
            }
        }
        let detail = if bad.is_empty() {
            format!("{checks} checks")
        } else {
            bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
        };
        rep.push(
            format!("{regime}: children abut and nest ({} intervals)", ivs.len()),
            bad.is_empty(),
            detail,
        );
        rep.push(
            format!("{regime}: all intervals pairwise disjoint"),
            disjoint(&refs),
            "",
        );
    }
    Ok(rep)
}

/// Exact pairwise disjointness of synchronization intervals.
pub fn disjoint(ivs: &[&SyncInterval]) -> bool {
    let chained = |s: &[&SyncInterval]| {
        s.windows(2)
            .all(|w| w[0].sync_bounds().1.cmp_exact(w[1].sync_bounds().0).is_le())
    };
    // a misordered pair always fails the exact chain test, so the approximate sort is only
    // a fast path
    let mut keyed: Vec<(BigRational, &SyncInterval)> = ivs
        .iter()
        .map(|iv| (refine(iv.sync_bounds().0, 64).mid(), *iv))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let sorted: Vec<&SyncInterval> = keyed.into_iter().map(|x| x.1).collect();
    if chained(&sorted) {
        return true;
    }
    let mut sorted = sorted;
    sorted.sort_by(|a, b| a.sync_bounds().0.cmp_exact(b.sync_bounds().0));
    chained(&sorted)
}

/// Top-level tiling of each regime by the cylinders of single letters.
pub fn regime_tiling(group: &Group, k_max: i64) -> Result<Report> {
    let rc = regime_constants(group)?;
    let n = group.n;
    let mut rep = Report::new(format!("regime tiling n={n}"));
    let one = TreeWord::root();
    let s1 = endpoints_with(group, &rc, 1, &one)?;
    eq_report(&mut rep, "omega_{1,1} = gamma", &s1.omega, &rc.gamma);
    for k in 1..k_max {
        let a = endpoints_with(group, &rc, k, &one)?;
        let b = endpoints_with(group, &rc, k + 1, &one)?;
        eq_report(
            &mut rep,
            &format!("omega_{{{},1}} = zeta_{{{k},1}}", k + 1),
            &b.omega,
            &a.zeta,
        );
    }
    let l2 = endpoints_with(group, &rc, -2, &one)?;
    eq_report(&mut rep, "omega_{-2,1} = epsilon", &l2.omega, &rc.epsilon);
    for k in 2..k_max.max(3) {
        let a = endpoints_with(group, &rc, -k, &one)?;
        let b = endpoints_with(group, &rc, -k - 1, &one)?;
        eq_report(
            &mut rep,
            &format!("omega_{{-{},1}} = zeta_{{-{k},1}}", k + 1),
            &b.omega,
            &a.zeta,
        );
    }
    if n >= 3 {
        let top = (n - 2) as u32;
        let m1 = endpoints_with(group, &rc, -1, &TreeWord::root())?;
        eq_report(&mut rep, "zeta_{-1,1} = epsilon", &m1.zeta, &rc.epsilon);
        let last = endpoints_with(group, &rc, -1, &TreeWord::single(top))?;
        eq_report(&mut rep, "eta_{-1,n-2} = gamma", &last.eta, &rc.gamma);
        for c in 1..top {
            let a = endpoints_with(group, &rc, -1, &TreeWord::single(c))?;
            let b = endpoints_with(group, &rc, -1, &TreeWord::single(c + 1))?;
            rep.push(
                format!("zeta_{{-1,{}}} < zeta_{{-1,{c}}}", c + 1),
                b.zeta.cmp_exact(&a.zeta).is_lt(),
                "",
            );
        }
    }
    Ok(rep)
}

/// Coverage of a regime by the enumerated synchronization intervals.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageRow {
    pub k_max: i64,
    pub len_max: usize,
    pub q_cap: i64,
    pub intervals: usize,
    pub covered: f64,
    pub coverage: f64,
    pub coverage_lower_bound: String,
    pub disjoint: bool,
}

pub fn measure_row(
    group: &Group,
    regime: Regime,
    k_max: i64,
    len_max: usize,
    q_cap: i64,
) -> Result<CoverageRow> {
    let rc = regime_constants(group)?;
    let ivs = enumerate_intervals(group, regime, k_max, len_max, q_cap)?;
    let (lo, hi) = regime.range(&rc, group.field());
    let total = refine(&hi, 96).sub(&refine(&lo, 96));
    let mut sum_lo = BigRational::zero();
    for iv in &ivs {
        sum_lo += iv.length(96).lo;
    }
    let lb = &sum_lo / &total.hi;
    let refs: Vec<&SyncInterval> = ivs.iter().collect();
    Ok(CoverageRow {
        k_max,
        len_max,
        q_cap,
        intervals: ivs.len(),
        covered: sum_lo.to_f64().unwrap_or(f64::NAN),
        coverage: lb.to_f64().unwrap_or(f64::NAN),
        coverage_lower_bound: rat_decimal(&lb, 8),
        disjoint: disjoint(&refs),
    })
}

/// Truncated decimal of a nonnegative rational.
fn rat_decimal(x: &BigRational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10), digits);
    let n = (x * BigRational::from_integer(scale.clone()))
        .floor()
        .to_integer();
    format!("{}.{:0>digits$}", &n / &scale, (&n % &scale).to_string())
}

pub fn measure_report(
    group: &Group,
    regime: Regime,
    caps: &[(i64, usize, i64)],
) -> Result<Vec<CoverageRow>> {
    caps.iter()
        .map(|&(k, l, q)| measure_row(group, regime, k, l, q))
        .collect()
}

/// Nested cylinders along a path of child exponents and digit confinement at the midpoint of
/// the innermost one.
#[derive(Clone, Debug, Serialize)]
pub struct NonSyncReport {
    pub k: i64,
    pub path: Vec<i64>,
    /// Exponents appended (all 1) so that the innermost word covers `depth` digits.
    pub extension: usize,
    pub nested: bool,
    pub enclosure: (f64, f64),
    pub upper_confined: bool,
    pub lower_confined: bool,
    pub depth: usize,
}

impl NonSyncReport {
    pub fn pass(&self) -> bool {
        self.nested && self.upper_confined && self.lower_confined
    }
}

fn confined(regime: Regime, k: i64, d: &[Digit], upper: bool) -> bool {
    d.iter().all(|x| match (regime, upper) {
        (Regime::Small, true) => x.l == 1 && (x.k == k || x.k == k + 1),
        (Regime::Small, false) => x.l == 1 && (x.k == -1 || x.k == -2),
        (_, true) => x.k == 1 && (x.l == 1 || x.l == 2),
        (_, false) => x.l == 1 && (x.k == k || x.k == k - 1),
    })
}

pub fn nonsync_point(group: &Group, k: i64, q_path: &[i64], depth: usize) -> Result<NonSyncReport> {
    let rc = regime_constants(group)?;
    let regime = regime_of(k);
    let mut v = TreeWord::root();
    let mut ivs = vec![endpoints_with(group, &rc, k, &v)?];
    for &q in q_path {
        v = v.theta(q)?;
        ivs.push(endpoints_with(group, &rc, k, &v)?);
    }
    let covered = |v: &TreeWord| -> usize {
        match regime {
            Regime::Small => (v.upper_len() as usize).min(lower_len_small(k, v, group.n) as usize),
            _ => v.upper_len() as usize,
        }
    };
    let mut extension = 0;
    while covered(&v) < depth {
        v = v.theta(1)?;
        ivs.push(endpoints_with(group, &rc, k, &v)?);
        extension += 1;
    }
    let nested = ivs.windows(2).all(|w| {
        let (a0, a1) = w[0].cylinder_bounds();
        let (b0, b1) = w[1].cylinder_bounds();
        a0.cmp_exact(b0).is_le() && b1.cmp_exact(a1).is_le()
    });
    let (c0, c1) = ivs.last().unwrap().cylinder_bounds();
    let (mut upper_confined, mut lower_confined) = (false, false);
    if let Some(a) = interior_samples(c0, c1, 1).first() {
        let p = AlphaParam::rational(group, a.clone())?;
        // the large-regime upper digits are blocks over {(1,1),(1,2)}, so only the lower
        // sequence is indexed by letters of the word
        let upper_len = if regime == Regime::Small {
            depth
        } else {
            upper_digits_large(k, &v, group.n)?.len().min(depth)
        };
        upper_confined = confined(regime, k, &p.upper_digits(upper_len)?, true);
        lower_confined = confined(regime, k, &p.lower_digits(depth)?, false);
    }
    Ok(NonSyncReport {
        k,
        path: q_path.to_vec(),
        extension,
        nested,
        enclosure: (c0.to_f64(), c1.to_f64()),
        upper_confined,
        lower_confined,
        depth,
    })
}

#[cfg(test)]
mod tests;
