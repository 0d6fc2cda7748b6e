//! Parameter and word syntax accepted on the command line.

use std::str::FromStr;

use alphacf::dynamics::regime_constants;
use alphacf::sync::endpoints;
use alphacf::{Group, RealAlgebraic, TreeWord};
use num::{BigInt, BigRational, One, Zero};

/// A parameter value: exact rational, or an algebraic structural constant.
#[derive(Clone, Debug)]
pub enum Alpha {
    Rational(BigRational),
    Algebraic(RealAlgebraic),
}

/// Rational literal: `p/q`, an integer, or a finite decimal such as `0.15`.
pub fn rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| format!("bad decimal '{s}'"))?;
        let den = num::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    BigRational::from_str(s).map_err(|_| format!("bad rational '{s}'"))
}

/// Tree word given by its letters: `313`, or comma separated when a letter exceeds 9.
pub fn tree_word(s: &str) -> Result<TreeWord, String> {
    let letters: Option<Vec<u32>> = if s.contains(',') {
        s.split(',').map(|x| x.trim().parse().ok()).collect()
    } else {
        s.chars().map(|c| c.to_digit(10)).collect()
    };
    let letters = letters.ok_or_else(|| format!("bad word '{s}'"))?;
    if letters.is_empty() || letters.contains(&0) {
        return Err(format!("bad word '{s}'"));
    }
    TreeWord::parse_letters(&letters).map_err(|e| e.to_string())
}

/// Rational literal or one of gamma, epsilon, delta, zeta:k:v, eta:k:v, omega:k:v.
pub fn alpha(group: &Group, s: &str) -> Result<Alpha, String> {
    let named = |x: RealAlgebraic| match x.as_base().and_then(|b| b.as_rational()) {
        Some(r) => Alpha::Rational(r),
        None => Alpha::Algebraic(x),
    };
    match s {
        "gamma" | "epsilon" | "delta" => {
            let rc = regime_constants(group).map_err(|e| e.to_string())?;
            let x = match s {
                "gamma" => rc.gamma,
                "epsilon" => rc.epsilon,
                _ => rc.delta,
            };
            return Ok(named(x));
        }
        _ => {}
    }
    let parts: Vec<&str> = s.split(':').collect();
    if let [name @ ("zeta" | "eta" | "omega"), k, v] = parts[..] {
        let k: i64 = k.parse().map_err(|_| format!("bad k in '{s}'"))?;
        let iv = endpoints(group, k, &tree_word(v)?).map_err(|e| e.to_string())?;
        let x = match name {
            "zeta" => iv.zeta,
            "eta" => iv.eta,
            _ => iv.omega,
        };
        return Ok(named(x));
    }
    let r = rational(s)?;
    if r < BigRational::zero() || r > BigRational::one() {
        return Err(format!("alpha {s} outside [0, 1]"));
    }
    Ok(Alpha::Rational(r))
}

/// Cap triples `k,len,q` separated by semicolons.
pub fn caps(s: &str) -> Result<Vec<(i64, usize, i64)>, String> {
    s.split(';')
        .map(|t| {
            let f: Vec<&str> = t.split(',').map(str::trim).collect();
            match f[..] {
                [k, l, q] => Ok((
                    k.parse().map_err(|_| format!("bad cap '{t}'"))?,
                    l.parse().map_err(|_| format!("bad cap '{t}'"))?,
                    q.parse().map_err(|_| format!("bad cap '{t}'"))?,
                )),
                _ => Err(format!("cap '{t}' needs three fields k,len,q")),
            }
        })
        .collect()
}
