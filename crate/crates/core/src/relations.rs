//! Exact group identities behind the endpoint matrices, checked over finite grids.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::FieldElement;
use crate::error::Result;
use crate::moebius::{Ext, Group, ProjMatrix};
use crate::report::Report;
use crate::words::{enumerate_tree, enumerate_trimmed};

type M = ProjMatrix<FieldElement>;

/// Grid bounds for the identity suite.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Grid {
    pub n_max: u64,
    pub k_max: i64,
    pub vec_len: usize,
    pub entry_max: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n_max: 8,
            k_max: 5,
            vec_len: 3,
            entry_max: 4,
        }
    }
}

struct Gens {
    a: M,
    ai: M,
    c: M,
    ci: M,
    w: M,
    u: M,
    /// A^{-1} C, of order n.
    b: M,
    /// A C^2.
    ac2: M,
    n: i64,
}

impl Gens {
    fn new(g: &Group) -> Self {
        let (a, c) = (g.a(), g.c());
        Gens {
            ai: a.pow(-1),
            ci: c.pow(-1),
            b: a.pow(-1).mul(&c),
            ac2: a.mul(&c).mul(&c),
            w: g.w(),
            u: g.u(),
            n: g.n as i64,
            a,
            c,
        }
    }

    fn ak_c(&self, k: i64) -> M {
        self.a.pow(k).mul(&self.c)
    }
}

fn prod(ms: &[M]) -> M {
    let mut it = ms.iter();
    let first = it.next().expect("nonempty product").clone();
    it.fold(first, |acc, m| acc.mul(m))
}

/// Long defining product of W against its short form, and W fixing -t.
pub fn verify_w_forms(g: &Group) -> (bool, bool) {
    let (a, c) = (g.a(), g.c());
    let long = prod(&[
        a.pow(-2).mul(&c),
        a.pow(-1).mul(&c).pow(g.n as i64 - 3),
        a.pow(-2)
            .mul(&c)
            .mul(&a.pow(-1).mul(&c).pow(g.n as i64 - 2))
            .pow(g.m as i64 - 2),
    ]);
    let w = g.w();
    let mt = g.t().neg();
    let fixes = w.apply(&Ext::Finite(mt.clone())) == Ext::Finite(mt);
    (long.proj_eq(&w), fixes)
}

fn short_right(x: &Gens, u: i64, k: i64, a: u32) -> bool {
    let lhs = x.a.pow(u).mul(&x.c).mul(&x.ak_c(k).pow(a as i64));
    let block = prod(&[x.w.pow(k - 1), x.a.pow(-2), x.c.clone(), x.b.pow(x.n - 3)]);
    let rhs = prod(&[
        x.a.pow(u - 1),
        x.c.clone(),
        x.b.pow(x.n - 2),
        block.pow(a as i64 - 1),
        x.w.pow(k),
        x.ai.clone(),
    ]);
    lhs.proj_eq(&rhs)
}

pub fn verify_short_right(g: &Group, u: i64, k: i64, a: u32) -> bool {
    short_right(&Gens::new(g), u, k, a)
}

fn w_middle(x: &Gens, k: i64) -> bool {
    let lhs = prod(&[
        x.w.clone(),
        x.ai.clone(),
        x.ak_c(k),
        x.ai.clone(),
        x.c.clone(),
    ]);
    let rhs = prod(&[
        x.a.pow(-2),
        x.c.clone(),
        x.b.pow(x.n - 3),
        x.w.pow(k),
        x.a.pow(-2),
        x.c.clone(),
    ]);
    lhs.proj_eq(&rhs)
}

pub fn verify_w_middle(g: &Group, k: i64) -> bool {
    w_middle(&Gens::new(g), k)
}

/// Powers M^0..=M^max of a fixed matrix.
struct Powers(Vec<M>);

impl Powers {
    fn new(m: &M, max: u32) -> Self {
        let mut v = vec![ProjMatrix::identity(m.a.field())];
        for _ in 0..max {
            v.push(v.last().unwrap().mul(m));
        }
        Powers(v)
    }

    fn get(&self, e: u32) -> &M {
        &self.0[e as usize]
    }
}

/// Blocks shared by every exponent vector at one k.
struct LongTables {
    lo: Powers,
    hi: Powers,
    ra: Powers,
    rb: Powers,
    tail: M,
}

/// The run (A^lo C)^{a_s} (A^hi C)^{b_{s-1}} ... (A^lo C)^{a_1} and the matching blocks on the
/// right-hand side; vectors are indexed from 1 (a[0] = a_1).
fn interleaved(t: &LongTables, av: &[u32], bv: &[u32]) -> M {
    let s = av.len();
    let mut out = t.lo.get(av[s - 1]).clone();
    for i in (0..s - 1).rev() {
        out = out.mul(t.hi.get(bv[i])).mul(t.lo.get(av[i]));
    }
    out
}

fn small_tables(x: &Gens, k: i64, max: u32) -> LongTables {
    LongTables {
        lo: Powers::new(&x.ak_c(k), max),
        hi: Powers::new(&x.ak_c(k + 1), max),
        ra: Powers::new(
            &prod(&[x.b.pow(x.n - 3), x.w.pow(k - 1), x.a.pow(-2), x.c.clone()]),
            max,
        ),
        rb: Powers::new(
            &prod(&[x.b.pow(x.n - 3), x.w.pow(k), x.a.pow(-2), x.c.clone()]),
            max,
        ),
        tail: prod(&[x.b.pow(x.n - 3), x.w.pow(k), x.ai.clone()]),
    }
}

fn long_small(x: &Gens, t: &LongTables, u: i64, av: &[u32], bv: &[u32]) -> bool {
    let s = av.len();
    let lhs = x.a.pow(u).mul(&x.c).mul(&interleaved(t, av, bv));
    let mut rhs = prod(&[x.a.pow(u - 1), x.c.clone(), x.ai.clone(), x.c.clone()]);
    for i in (1..s).rev() {
        rhs = rhs.mul(t.ra.get(av[i])).mul(t.rb.get(bv[i - 1]));
    }
    rhs = prod(&[rhs, t.ra.get(av[0] - 1).clone(), t.tail.clone()]);
    lhs.proj_eq(&rhs)
}

pub fn verify_long_small(g: &Group, u: i64, k: i64, av: &[u32], bv: &[u32]) -> bool {
    assert_eq!(av.len(), bv.len() + 1);
    let x = Gens::new(g);
    let max = av.iter().chain(bv).copied().max().unwrap_or(1) + 1;
    long_small(&x, &small_tables(&x, k, max), u, av, bv)
}

fn one_step(x: &Gens, k: i64, a: u32) -> bool {
    let lhs = prod(&[
        x.c.clone(),
        x.ai.clone(),
        x.c.clone(),
        x.ak_c(-k).pow(a as i64),
        x.ai.clone(),
    ]);
    let block = prod(&[x.ac2.pow(x.n - 3), x.u.pow(k - 2), x.a.clone(), x.c.clone()]);
    let rhs = prod(&[block.pow(a as i64 - 1), x.ac2.pow(x.n - 3), x.u.pow(k - 1)]);
    lhs.proj_eq(&rhs)
}

pub fn verify_one_step(g: &Group, k: i64, a: u32) -> bool {
    one_step(&Gens::new(g), k, a)
}

fn large_tables(x: &Gens, k: i64, max: u32) -> LongTables {
    let tail = x.ac2.pow(x.n - 3);
    LongTables {
        lo: Powers::new(&x.ak_c(-k), max),
        hi: Powers::new(&x.ak_c(-k - 1), max),
        ra: Powers::new(
            &prod(&[tail.clone(), x.u.pow(k - 2), x.a.clone(), x.c.clone()]),
            max,
        ),
        rb: Powers::new(
            &prod(&[tail.clone(), x.u.pow(k - 1), x.a.clone(), x.c.clone()]),
            max,
        ),
        tail: tail.mul(&x.u.pow(k - 1)),
    }
}

fn long_large(x: &Gens, t: &LongTables, av: &[u32], bv: &[u32]) -> bool {
    let s = av.len();
    let lhs = prod(&[
        x.c.clone(),
        x.ai.clone(),
        x.c.clone(),
        interleaved(t, av, bv),
        x.ai.clone(),
    ]);
    let joint = prod(&[x.ac2.pow(x.n - 3), x.a.clone(), x.c.clone(), x.ac2.clone()]);
    // each joint absorbs one block from the following a-run; the last run gives one back
    let mut rhs = t.ra.get(av[s - 1] - if s == 1 { 1 } else { 0 }).clone();
    for i in (0..s - 1).rev() {
        let e = if i == 0 { 0 } else { 1 };
        rhs = prod(&[
            rhs,
            t.rb.get(bv[i] - 1).clone(),
            joint.clone(),
            t.ra.get(av[i] + e).clone(),
        ]);
    }
    rhs.mul(&t.tail).proj_eq(&lhs)
}

pub fn verify_long_large(g: &Group, k: i64, av: &[u32], bv: &[u32]) -> bool {
    assert_eq!(av.len(), bv.len() + 1);
    let x = Gens::new(g);
    let max = av.iter().chain(bv).copied().max().unwrap_or(1) + 1;
    long_large(&x, &large_tables(&x, k, max), av, bv)
}

/// Left endpoint matrices are fixed conjugates of the right ones, over enumerated words.
pub fn verify_endpoint_relations(
    g: &Group,
    k_max: i64,
    len_max: usize,
    q_cap: i64,
) -> Result<(usize, Vec<String>)> {
    let x = Gens::new(g);
    let small = x.ci.mul(&x.a).mul(&x.c);
    let large = small.mul(&x.c);
    let mut cases = 0;
    let mut bad = Vec::new();
    let words = enumerate_tree(len_max, q_cap);
    let mut check = |k: i64, v: &crate::words::TreeWord, conj: &M| -> Result<()> {
        cases += 1;
        if !g
            .left_matrix(k, v)?
            .proj_eq(&conj.mul(&g.right_matrix(k, v)?))
        {
            bad.push(format!("k={k} v={v}"));
        }
        Ok(())
    };
    for k in 1..=k_max {
        for v in &words {
            check(k, v, &small)?;
            if k >= 2 {
                check(-k, v, &large)?;
            }
        }
    }
    for v in enumerate_trimmed(len_max, q_cap, g.n) {
        check(-1, &v, &large)?;
    }
    Ok((cases, bad))
}

/// Exponent vectors (a, b) with |a| = |b| + 1 <= len and entries in 1..=max.
pub fn exponent_vectors(len: usize, max: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for s in 1..=len {
        for a in (0..s).map(|_| 1..=max).multi_cartesian_product() {
            for b in (0..s - 1).map(|_| 1..=max).multi_cartesian_product() {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

fn family(rep: &mut Report, name: String, results: Vec<(bool, String)>) {
    let total = results.len();
    let bad: Vec<String> = results
        .into_iter()
        .filter(|r| !r.0)
        .map(|r| r.1)
        .take(5)
        .collect();
    let detail = if bad.is_empty() {
        format!("{total} cases")
    } else {
        format!("{total} cases, failing: {}", bad.join("; "))
    };
    rep.push(name, bad.is_empty(), detail);
}

/// Every identity over the grid, one check per (family, n).
pub fn identity_suite(grid: &Grid) -> Result<Report> {
    let mut rep = Report::new("identities");
    for n in 3..=grid.n_max {
        for m in 3..=n {
            let (eq, fixes) = verify_w_forms(&Group::new(m, n)?);
            rep.push(format!("W forms agree (m={m}, n={n})"), eq, "");
            rep.push(format!("W fixes -t (m={m}, n={n})"), fixes, "");
        }
    }
    let vecs = exponent_vectors(grid.vec_len, grid.entry_max);
    for n in 3..=grid.n_max {
        let g = Group::new(3, n)?;
        let x = Gens::new(&g);
        let ks: Vec<i64> = (1..=grid.k_max).collect();
        let e = grid.entry_max;

        let cases: Vec<(i64, i64, u32)> = (-2..=2)
            .cartesian_product(ks.clone())
            .cartesian_product(1..=e)
            .map(|((u, k), a)| (u, k, a))
            .collect();
        let r = cases
            .par_iter()
            .map(|&(u, k, a)| (short_right(&x, u, k, a), format!("u={u} k={k} a={a}")))
            .collect();
        family(&mut rep, format!("short right word (n={n})"), r);

        let r = (1..=10)
            .into_par_iter()
            .map(|k| (w_middle(&x, k), format!("k={k}")))
            .collect();
        family(&mut rep, format!("W in the middle (n={n})"), r);

        let cases: Vec<(i64, i64, &(Vec<u32>, Vec<u32>))> = [0i64, 1]
            .into_iter()
            .cartesian_product(ks.clone())
            .cartesian_product(&vecs)
            .map(|((u, k), v)| (u, k, v))
            .collect();
        let tables: Vec<LongTables> = ks.iter().map(|&k| small_tables(&x, k, e + 1)).collect();
        let r = cases
            .par_iter()
            .map(|&(u, k, (a, b))| {
                (
                    long_small(&x, &tables[k as usize - 1], u, a, b),
                    format!("u={u} k={k} a={a:?} b={b:?}"),
                )
            })
            .collect();
        family(&mut rep, format!("long small word (n={n})"), r);

        let cases: Vec<(i64, u32)> = ks.iter().copied().cartesian_product(1..=e).collect();
        let r = cases
            .par_iter()
            .map(|&(k, a)| (one_step(&x, k, a), format!("k={k} a={a}")))
            .collect();
        family(&mut rep, format!("one step large (n={n})"), r);

        let ltables: Vec<LongTables> = ks.iter().map(|&k| large_tables(&x, k, e + 1)).collect();
        let cases: Vec<(i64, &(Vec<u32>, Vec<u32>))> =
            ks.iter().copied().cartesian_product(&vecs).collect();
        let r = cases
            .par_iter()
            .map(|&(k, (a, b))| {
                (
                    long_large(&x, &ltables[k as usize - 1], a, b),
                    format!("k={k} a={a:?} b={b:?}"),
                )
            })
            .collect();
        family(&mut rep, format!("long large word (n={n})"), r);

        let (count, bad) = verify_endpoint_relations(&g, grid.k_max, 7, 3)?;
        rep.push(
            format!("left = conjugate of right (n={n})"),
            bad.is_empty(),
            format!("{count} cases {}", bad.iter().take(5).join("; ")),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
