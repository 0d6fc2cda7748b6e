//! Sampled data behind the endpoint-image and cylinder plots.

use alphacf::algebra::decimal;
use alphacf::dynamics::{regime_constants, AlphaParam};
use alphacf::{Digit, FieldElement, Group, Result, Tower};
use num::BigRational;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CurveRow {
    pub kind: &'static str,
    pub label: String,
    pub alpha: String,
    pub x: String,
    pub l1: String,
    pub r1: String,
    pub l1_digit: String,
    pub r1_digit: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderRow {
    pub alpha: String,
    pub x_alpha: String,
    pub k: i64,
    pub l: u32,
    pub lo: String,
    pub hi: String,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn image(p: &AlphaParam<FieldElement>, x: &FieldElement, digits: usize) -> (String, String) {
    match p.step(x) {
        Ok((d, y)) => (decimal(&y, digits), d.to_string()),
        Err(_) => (String::new(), String::new()),
    }
}

/// First images of both endpoints along a grid of parameters; the grid covers the window
/// `x_lo < alpha t < x_hi` when given, otherwise `0 < alpha <= 1`. Marker rows give
/// gamma t and epsilon t.
pub fn endpoint_curves(
    group: &Group,
    samples: usize,
    window: Option<(BigRational, BigRational)>,
    digits: usize,
) -> Result<Vec<CurveRow>> {
    let f = group.field();
    let t = group.t();
    let t_inv = t.inv()?;
    let mut rows = Vec::new();
    let rc = regime_constants(group)?;
    for (label, c) in [("gamma", &rc.gamma), ("epsilon", &rc.epsilon)] {
        let x = c.scale_base(t);
        rows.push(CurveRow {
            kind: "marker",
            label: label.into(),
            alpha: decimal(c, digits),
            x: decimal(&x, digits),
            l1: String::new(),
            r1: String::new(),
            l1_digit: String::new(),
            r1_digit: String::new(),
        });
    }
    for i in 1..=samples {
        let alpha = match &window {
            Some((lo, hi)) => {
                let x = lo + (hi - lo) * q(i as i64, samples as i64 + 1);
                FieldElement::from_rational(f, x).mul(&t_inv)
            }
            None => FieldElement::from_rational(f, q(i as i64, samples as i64)),
        };
        let Ok(p) = AlphaParam::new(group, alpha.clone()) else {
            continue;
        };
        let (l1, l1_digit) = image(&p, p.left(), digits);
        let (r1, r1_digit) = image(&p, p.right(), digits);
        rows.push(CurveRow {
            kind: "curve",
            label: String::new(),
            alpha: decimal(&alpha, digits),
            x: decimal(p.right(), digits),
            l1,
            r1,
            l1_digit,
            r1_digit,
        });
    }
    Ok(rows)
}

/// Cylinders of each digit with `|k| <= k_bound` for `alpha = i / samples`, in the
/// coordinate `x` of the interval `[(alpha - 1) t, alpha t)`.
pub fn cylinders(
    group: &Group,
    samples: usize,
    k_bound: i64,
    digits: usize,
) -> Result<Vec<CylinderRow>> {
    let f = group.field();
    let mut rows = Vec::new();
    for i in 1..=samples {
        let alpha = FieldElement::from_rational(f, q(i as i64, samples as i64));
        let p = AlphaParam::new(group, alpha.clone())?;
        let (l0, r0) = (p.left().clone(), p.right().clone());
        let mut cuts = vec![l0.clone(), r0.clone()];
        for l in 1..group.m as i64 {
            let back = group.c_pow(-l);
            cuts.extend([back.act(&l0), back.act(&r0)].into_iter().flatten());
            for k in -k_bound..=k_bound + 1 {
                cuts.extend(group.a_pow(k).mul(&group.c_pow(l)).pow(-1).act(&l0));
            }
        }
        cuts.retain(|x| l0.le(x) && x.le(&r0));
        cuts.sort_by(|a, b| a.cmp_to(b));
        cuts.dedup();
        let half = FieldElement::from_rational(f, q(1, 2));
        let mut segs: Vec<(Digit, FieldElement, FieldElement)> = Vec::new();
        for w in cuts.windows(2) {
            let mid = w[0].add(&w[1]).mul(&half);
            let Ok((d, _)) = p.step(&mid) else { continue };
            if d.k.abs() > k_bound {
                continue;
            }
            match segs.last_mut() {
                Some((pd, _, hi)) if *pd == d && *hi == w[0] => *hi = w[1].clone(),
                _ => segs.push((d, w[0].clone(), w[1].clone())),
            }
        }
        for (d, lo, hi) in segs {
            rows.push(CylinderRow {
                alpha: decimal(&alpha, digits),
                x_alpha: decimal(&r0, digits),
                k: d.k,
                l: d.l,
                lo: decimal(&lo, digits),
                hi: decimal(&hi, digits),
            });
        }
    }
    Ok(rows)
}
