//! Alternating c/d words, the tree generated from `1` by the child operators, and the digit
//! sequences attached to tree words.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moebius::{Gen, GroupWord};
use crate::report::Report;

/// One step `A^k C^l` of an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Digit {
    pub k: i64,
    pub l: u32,
}

impl Digit {
    pub const fn new(k: i64, l: u32) -> Digit {
        Digit { k, l }
    }

    /// A digit with `l = 1`.
    pub const fn simple(k: i64) -> Digit {
        Digit { k, l: 1 }
    }

    /// Key realizing the spatial order of cylinders: all `l = 1` digits lie left of `l = 2`,
    /// and within one `l` the order runs -1, -2, ..., then ..., 2, 1.
    fn order_key(&self) -> (u32, bool, i64) {
        (self.l, self.k > 0, -self.k)
    }
}

impl PartialOrd for Digit {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Digit {
    fn cmp(&self, o: &Self) -> Ordering {
        self.order_key().cmp(&o.order_key())
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// Lexicographic comparison of digit sequences under the digit order; a proper prefix is smaller.
pub fn digit_seq_cmp(a: &[Digit], b: &[Digit]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Word with alternating letter roles; `first_is_c` tells the role of the first letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    pub letters: Vec<u32>,
    pub first_is_c: bool,
}

impl Word {
    pub fn new(letters: Vec<u32>, first_is_c: bool) -> Word {
        Word {
            letters,
            first_is_c,
        }
    }

    pub fn c_first(letters: &[u32]) -> Word {
        Word::new(letters.to_vec(), true)
    }

    pub fn empty() -> Word {
        Word::new(vec![], true)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Role of letter i (true for a c-letter).
    pub fn is_c(&self, i: usize) -> bool {
        i.is_multiple_of(2) == self.first_is_c
    }

    pub fn last_is_c(&self) -> bool {
        self.is_c(self.len().saturating_sub(1))
    }

    /// Concatenation; adjacent letters of equal role merge by addition.
    pub fn concat(&self, o: &Word) -> Word {
        if self.is_empty() {
            return o.clone();
        }
        if o.is_empty() {
            return self.clone();
        }
        let mut letters = self.letters.clone();
        if self.last_is_c() == o.first_is_c {
            *letters.last_mut().unwrap() += o.letters[0];
            letters.extend_from_slice(&o.letters[1..]);
        } else {
            letters.extend_from_slice(&o.letters);
        }
        Word::new(letters, self.first_is_c)
    }

    pub fn pow(&self, q: usize) -> Word {
        (0..q).fold(Word::empty(), |acc, _| acc.concat(self))
    }

    pub fn reverse(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        let first = if self.is_empty() {
            true
        } else {
            self.last_is_c()
        };
        Word::new(letters, first)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word::new(self.letters[..len].to_vec(), self.first_is_c)
    }

    pub fn is_palindrome(&self) -> bool {
        self.letters.iter().eq(self.letters.iter().rev())
    }

    /// Expansion into the two-symbol alphabet: each c-letter becomes a run of `true`
    /// and each d-letter a run of `false`; `false` sorts below `true`.
    pub fn expand(&self) -> Vec<bool> {
        let mut out = Vec::new();
        for (i, &x) in self.letters.iter().enumerate() {
            let c = self.is_c(i);
            out.extend(std::iter::repeat_n(c, x as usize));
        }
        out
    }

    /// Digits obtained by sending c-letters to `c_digit` and d-letters to `d_digit`.
    pub fn simple_digits(&self, c_digit: i64, d_digit: i64) -> Vec<Digit> {
        self.expand()
            .into_iter()
            .map(|c| Digit::simple(if c { c_digit } else { d_digit }))
            .collect()
    }

    pub fn letter_sum(&self) -> u64 {
        self.letters.iter().map(|&x| x as u64).sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Eventually periodic sequence over {false < true}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventuallyPeriodic {
    pub pre: Vec<bool>,
    pub period: Vec<bool>,
}

impl EventuallyPeriodic {
    pub fn new(pre: &Word, period: &Word) -> Self {
        assert!(!period.is_empty(), "empty period");
        EventuallyPeriodic {
            pre: pre.expand(),
            period: period.expand(),
        }
    }

    pub fn purely(period: &Word) -> Self {
        Self::new(&Word::empty(), period)
    }

    fn at(&self, i: usize) -> bool {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    /// Two such sequences agreeing on max(pre) + both periods positions agree everywhere.
    pub fn compare(&self, o: &Self) -> Ordering {
        let n = self.pre.len().max(o.pre.len()) + self.period.len() + o.period.len();
        (0..n)
            .map(|i| self.at(i).cmp(&o.at(i)))
            .find(|c| c.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

/// Order of eventually periodic words, via their two-symbol expansions.
pub fn word_order(x: &EventuallyPeriodic, y: &EventuallyPeriodic) -> Ordering {
    x.compare(y)
}

/// Comparison of finite words; `None` when one expansion is a prefix of the other.
pub fn finite_order(x: &Word, y: &Word) -> Option<Ordering> {
    let (a, b) = (x.expand(), y.expand());
    a.iter().zip(&b).map(|(p, q)| p.cmp(q)).find(|c| c.is_ne())
}

/// A word of the tree, with the exponents of the operators that built it from `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TreeWord {
    letters: Vec<u32>,
    path: Vec<i64>,
    parent_len: Option<usize>,
}

impl PartialOrd for TreeWord {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for TreeWord {
    /// Canonical order: by length, then construction path.
    fn cmp(&self, o: &Self) -> Ordering {
        (self.letters.len(), &self.path).cmp(&(o.letters.len(), &o.path))
    }
}

impl TreeWord {
    pub fn root() -> TreeWord {
        TreeWord {
            letters: vec![1],
            path: vec![],
            parent_len: None,
        }
    }

    /// Single letter `c`, reached from 1 by the successor chain.
    pub fn single(c: u32) -> TreeWord {
        assert!(c >= 1);
        TreeWord {
            letters: vec![c],
            path: vec![-1; c as usize - 1],
            parent_len: None,
        }
    }

    pub fn from_path(path: &[i64]) -> Result<TreeWord> {
        path.iter().try_fold(TreeWord::root(), |v, &q| v.theta(q))
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn path(&self) -> &[i64] {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn word(&self) -> Word {
        Word::c_first(&self.letters)
    }

    pub fn is_single(&self) -> bool {
        self.letters.len() == 1
    }

    pub fn c1(&self) -> u32 {
        self.letters[0]
    }

    pub fn parent(&self) -> Option<TreeWord> {
        if self.path.is_empty() {
            None
        } else {
            Some(TreeWord::from_path(&self.path[..self.path.len() - 1]).expect("valid prefix path"))
        }
    }

    /// Exponent of the last operator applied.
    pub fn last_q(&self) -> Option<i64> {
        self.path.last().copied()
    }

    /// Sum of all letters, the length of the upper digit sequence.
    pub fn upper_len(&self) -> u64 {
        self.word().letter_sum()
    }

    pub fn c_sum(&self) -> u64 {
        self.letters.iter().step_by(2).map(|&x| x as u64).sum()
    }

    pub fn d_sum(&self) -> u64 {
        self.letters
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&x| x as u64)
            .sum()
    }

    /// The child operator with exponent `q`.
    pub fn theta(&self, q: i64) -> Result<TreeWord> {
        let mut path = self.path.clone();
        path.push(q);
        if self.is_single() {
            let c = self.c1();
            let letters = match (c, q) {
                (_, -1) => {
                    return Ok(TreeWord {
                        letters: vec![c + 1],
                        path,
                        parent_len: None,
                    })
                }
                (1, 0) => return Err(Error::UndefinedOperator("theta_0 of 1".into())),
                (1, q) if q >= 1 => vec![1, q as u32, 1],
                (c, q) if q >= 0 => {
                    let mut l = vec![c];
                    for _ in 0..q {
                        l.extend([1, c - 1]);
                    }
                    l.extend([1, c]);
                    l
                }
                _ => return Err(Error::UndefinedOperator(format!("theta_{q} of {c}"))),
            };
            return Ok(TreeWord {
                letters,
                path,
                parent_len: Some(1),
            });
        }
        if q < 0 {
            return Err(Error::UndefinedOperator(format!(
                "theta_{q} of a word of length {}",
                self.len()
            )));
        }
        let w = self
            .word()
            .concat(&self.prime().pow(q as usize))
            .concat(&self.double_prime()?);
        Ok(TreeWord {
            letters: w.letters,
            path,
            parent_len: Some(self.len()),
        })
    }

    /// The period word v'; it starts with a d-letter.
    pub fn prime(&self) -> Word {
        let l = &self.letters;
        if l == &[1] {
            return Word::new(vec![1], false);
        }
        if l[0] != 1 {
            let mut out = vec![1, l[0] - 1];
            out.extend_from_slice(&l[1..]);
            Word::new(out, false)
        } else {
            let mut out = vec![l[1] + 1];
            out.extend_from_slice(&l[2..]);
            Word::new(out, false)
        }
    }

    /// Suffix v'' with v = parent . v''.
    pub fn double_prime(&self) -> Result<Word> {
        match self.parent_len {
            Some(p) if !self.is_single() => Ok(Word::new(self.letters[p..].to_vec(), false)),
            _ => Err(Error::InvalidWord(format!("'{self}' has no parent prefix"))),
        }
    }

    /// Recover a construction path for arbitrary letters by bounded search.
    pub fn parse_letters(letters: &[u32]) -> Result<TreeWord> {
        let mut memo = HashMap::new();
        find_in_tree(letters, &mut memo).ok_or_else(|| {
            Error::InvalidWord(format!("{} is not a tree word", Word::c_first(letters)))
        })
    }
}

fn find_in_tree(
    target: &[u32],
    memo: &mut HashMap<Vec<u32>, Option<TreeWord>>,
) -> Option<TreeWord> {
    if let Some(r) = memo.get(target) {
        return r.clone();
    }
    let res = (|| {
        if target.is_empty() || target.len().is_multiple_of(2) || target.contains(&0) {
            return None;
        }
        if target.len() == 1 {
            return Some(TreeWord::single(target[0]));
        }
        for plen in (1..target.len()).step_by(2) {
            let Some(u) = find_in_tree(&target[..plen], memo) else {
                continue;
            };
            let q_max = target.len() as i64;
            let q_min = if u.letters == [1] { 1 } else { 0 };
            for q in q_min..=q_max {
                let Ok(v) = u.theta(q) else { break };
                if v.len() > target.len() {
                    break;
                }
                if v.letters == target {
                    return Some(v);
                }
            }
        }
        None
    })();
    memo.insert(target.to_vec(), res.clone());
    res
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word())
    }
}

/// Tree words up to `max_len` letters with all operator exponents at most `q_cap`;
/// single letters are capped at `q_cap + 1`. Sorted by (length, path).
pub fn enumerate_tree(max_len: usize, q_cap: i64) -> Vec<TreeWord> {
    let mut out = BTreeSet::new();
    let mut stack = vec![TreeWord::root()];
    while let Some(v) = stack.pop() {
        if v.is_single() && (v.c1() as i64) < q_cap + 1 {
            stack.push(v.theta(-1).expect("successor"));
        }
        for q in 0..=q_cap {
            match v.theta(q) {
                Ok(c) if c.len() <= max_len => stack.push(c),
                Ok(_) => break,
                Err(_) => continue,
            }
        }
        out.insert(v);
    }
    out.into_iter().collect()
}

/// Membership in the trimmed tree used for k = -1.
pub fn in_trimmed(v: &TreeWord, n: u64) -> bool {
    let top = n as i64 - 2;
    if top < 1 {
        return false;
    }
    if v.letters == [top as u32] {
        return true;
    }
    (v.c1() as i64) < top && v.letters.iter().step_by(2).all(|&c| (c as i64) <= top)
}

pub fn check_trimmed(v: &TreeWord, n: u64) -> Result<()> {
    if in_trimmed(v, n) {
        Ok(())
    } else {
        Err(Error::InvalidWord(format!(
            "{v} lies outside the trimmed tree for n={n}"
        )))
    }
}

pub fn enumerate_trimmed(max_len: usize, q_cap: i64, n: u64) -> Vec<TreeWord> {
    enumerate_tree(max_len, q_cap.max(n as i64))
        .into_iter()
        .filter(|v| in_trimmed(v, n))
        .filter(|v| v.path.iter().all(|&q| q <= q_cap))
        .collect()
}

/// Derived word: run lengths of the two-letter block structure.
pub fn derived(v: &TreeWord) -> Result<Word> {
    let l = v.letters();
    let c1 = l[0];
    let (runs_of, a, b): (Vec<u32>, u32, u32) = if c1 > 1 {
        if l.iter().skip(1).step_by(2).any(|&d| d != 1) {
            return Err(Error::AlphabetViolation(format!(
                "{v}: d-letters must all be 1"
            )));
        }
        (l.iter().step_by(2).copied().collect(), c1, c1 - 1)
    } else {
        if l.len() == 1 {
            return Err(Error::UndefinedOperator("derived word of 1".into()));
        }
        if l.iter().step_by(2).any(|&c| c != 1) {
            return Err(Error::AlphabetViolation(format!(
                "{v}: c-letters must all be 1"
            )));
        }
        let d1 = l[1];
        (l.iter().skip(1).step_by(2).copied().collect(), d1, d1 + 1)
    };
    let mut runs: Vec<(u32, u32)> = Vec::new();
    for x in runs_of {
        if x != a && x != b {
            return Err(Error::AlphabetViolation(format!(
                "{v}: letter {x} outside {{{a},{b}}}"
            )));
        }
        match runs.last_mut() {
            Some((y, n)) if *y == x => *n += 1,
            _ => runs.push((x, 1)),
        }
    }
    if runs.last().map(|r| r.0) != Some(a) {
        return Err(Error::InvalidWord(format!(
            "{v}: block structure does not close"
        )));
    }
    Ok(Word::c_first(&runs.iter().map(|r| r.1).collect::<Vec<_>>()))
}

/// Longest prefix whose periodic extension is minimal among all prefixes.
pub fn frak_f(v: &Word) -> Word {
    let mut best = v.prefix(1);
    let mut best_seq = EventuallyPeriodic::purely(&best);
    for len in 2..=v.len() {
        let p = v.prefix(len);
        let s = EventuallyPeriodic::purely(&p);
        if s.compare(&best_seq) != Ordering::Greater {
            best = p;
            best_seq = s;
        }
    }
    best
}

/// Closed form of the full-branched prefix from the construction path; `None` when no
/// closed form applies.
pub fn frak_f_closed(v: &TreeWord) -> Option<Word> {
    if v.is_single() {
        return Some(v.word());
    }
    let path = v.path();
    let zeros = path.iter().rev().take_while(|&&q| q == 0).count();
    if zeros > 0 {
        let base = TreeWord::from_path(&path[..path.len() - zeros]).ok()?;
        if base.is_single() {
            let c = base.c1();
            return Some(Word::c_first(&[c, 1]).pow(zeros));
        }
        let u = base.parent()?;
        let mid = base.len().checked_sub(2 * u.len())?;
        if base.letters[..u.len()] != base.letters[base.len() - u.len()..] {
            return None;
        }
        let ua = Word::c_first(&base.letters[..u.len() + mid]);
        return Some(ua.pow(zeros + 1));
    }
    let q = v.last_q()? as usize;
    let u = v.parent()?;
    let up = u.prime();
    if u.is_single() {
        let tail = if u.c1() == 1 {
            Word::new(vec![1], false)
        } else {
            up.concat(&Word::new(vec![1], false))
        };
        return Some(u.word().concat(&up.pow(q - 1)).concat(&tail));
    }
    let grand = u.parent()?.letters;
    let cut = up.len().checked_sub(grand.len())?;
    if up.letters[cut..] != grand[..] {
        return None;
    }
    let y = Word::new(up.letters[..cut].to_vec(), false);
    Some(u.word().concat(&up.pow(q - 1)).concat(&y))
}

/// Structural properties of every enumerated tree word, one check per property
/// (failures name the offending words).
pub fn word_suite(max_len: usize, q_cap: i64) -> Report {
    let words = enumerate_tree(max_len, q_cap);
    let mut rep = Report::new(format!("tree words |v| <= {max_len}, q <= {q_cap}"));
    let mut bad: [Vec<String>; 8] = Default::default();
    let mut counted = [0usize; 8];
    let mut note = |slot: usize, ok: bool, v: &TreeWord, bad: &mut [Vec<String>; 8]| {
        counted[slot] += 1;
        if !ok && bad[slot].len() < 5 {
            bad[slot].push(v.to_string());
        }
    };
    for v in &words {
        let word = v.word();
        note(0, word.is_palindrome(), v, &mut bad);
        if let Ok(vpp) = v.double_prime() {
            note(
                1,
                finite_order(&v.prime(), &vpp) == Some(Ordering::Less),
                v,
                &mut bad,
            );
        }
        if let Ok(du) = derived(v) {
            if let Ok(du) = TreeWord::parse_letters(&du.letters) {
                for q in 0..=q_cap {
                    let Ok(child) = v.theta(q) else { continue };
                    if child.len() > max_len {
                        break;
                    }
                    let q2 = if du.is_single() && (q == 0 || du.c1() > 1) {
                        q - 1
                    } else {
                        q
                    };
                    let ok = match (derived(&child), du.theta(q2)) {
                        (Ok(d), Ok(e)) => d.letters == e.letters(),
                        _ => false,
                    };
                    note(2, ok, &child, &mut bad);
                }
            }
        }
        let f = frak_f(&word);
        if let Some(c) = frak_f_closed(v) {
            note(3, c == f, v, &mut bad);
        }
        if !v.is_single() {
            note(4, f.len().is_multiple_of(2), v, &mut bad);
        }
        note(
            5,
            f.concat(&f).expand().starts_with(&word.expand()),
            v,
            &mut bad,
        );
        if let (Some(q), Some(u)) = (v.last_q(), v.parent()) {
            if q >= 1 && !(u.letters() == [1] && q == 1) {
                let ok = u
                    .theta(q - 1)
                    .map(|s| s.prime().reverse() == f)
                    .unwrap_or(false);
                note(6, ok, v, &mut bad);
            }
        }
        if v.len() == 3 && v.letters()[1] == 1 && v.letters()[0] == v.letters()[2] {
            note(7, f == Word::c_first(&[v.c1(), 1]), v, &mut bad);
        }
    }
    let names = [
        "palindrome",
        "period word precedes parent complement",
        "derived word commutes with children",
        "closed-form branched prefix equals scan",
        "branched prefix has even length",
        "word is a prefix of its branched prefix squared",
        "branched prefix is the reversed sibling period",
        "branched prefix of c1c is c1",
    ];
    for (i, name) in names.iter().enumerate() {
        let detail = if bad[i].is_empty() {
            format!("{} words", counted[i])
        } else {
            format!("{} words, failing: {}", counted[i], bad[i].join(", "))
        };
        rep.push(*name, bad[i].is_empty() && counted[i] > 0, detail);
    }
    let golden = |path: &[i64], expect: &[u32]| {
        TreeWord::from_path(path)
            .map(|v| frak_f(&v.word()).letters == expect)
            .unwrap_or(false)
    };
    rep.push("branched prefix of 111", golden(&[1], &[1, 1]), "expect 11");
    rep.push(
        "branched prefix of the first child of 313",
        golden(&[-1, -1, 0, 1], &[3, 1, 3, 1, 2, 1]),
        "expect 313121",
    );
    rep
}

// ---- digit sequences ----

/// Upper simplified digits for k >= 1: c-letters give k, d-letters give k + 1.
pub fn upper_digits_small(k: i64, v: &TreeWord) -> Vec<Digit> {
    v.word().simple_digits(k, k + 1)
}

/// Upper simplified digits of an arbitrary alternating word.
pub fn upper_digits_small_word(k: i64, w: &Word) -> Vec<Digit> {
    w.simple_digits(k, k + 1)
}

fn minus_ones(n: i64) -> Vec<Digit> {
    vec![Digit::simple(-1); n.max(0) as usize]
}

/// The period of the left endpoint orbit at alpha = 0 when m = 3.
pub fn w_block(n: u64) -> Vec<Digit> {
    let n = n as i64;
    let mut out = minus_ones(n - 2);
    out.push(Digit::simple(-2));
    out.extend(minus_ones(n - 3));
    out.push(Digit::simple(-2));
    out
}

fn repeat(d: &[Digit], times: usize) -> Vec<Digit> {
    d.iter().copied().cycle().take(d.len() * times).collect()
}

/// Blocks used for the lower digits when k >= 1: (c-block, d-block).
pub fn lower_blocks_small(k: i64, n: u64) -> (Vec<Digit>, Vec<Digit>) {
    let mut head = minus_ones(n as i64 - 3);
    head.push(Digit::simple(-2));
    let w = w_block(n);
    let mut c = head.clone();
    c.extend(repeat(&w, (k - 1) as usize));
    let mut d = head;
    d.extend(repeat(&w, k as usize));
    (c, d)
}

/// Lower simplified digits for k >= 1.
pub fn lower_digits_small(k: i64, v: &TreeWord, n: u64) -> Vec<Digit> {
    let mut out = lower_digits_small_core(k, &v.word(), n);
    out.extend(minus_ones(n as i64 - 2));
    out
}

/// `w^k` followed by the block expansion of the word (first c-letter shortened by one).
pub fn lower_digits_small_core(k: i64, word: &Word, n: u64) -> Vec<Digit> {
    let (cb, db) = lower_blocks_small(k, n);
    let mut out = repeat(&w_block(n), k as usize);
    for (i, &x) in word.letters.iter().enumerate() {
        let is_c = word.is_c(i);
        let times = if i == 0 && is_c {
            x as usize - 1
        } else {
            x as usize
        };
        out.extend(repeat(if is_c { &cb } else { &db }, times));
    }
    out
}

/// Length of the lower digits with k >= 1.
pub fn lower_len_small(k: i64, v: &TreeWord, n: u64) -> u64 {
    let n = n as i64;
    let per_c = (k - 1) * (2 * n - 3) + n - 2;
    let per_d = k * (2 * n - 3) + n - 2;
    (2 * n - 3 + per_c * v.c_sum() as i64 + per_d * v.d_sum() as i64) as u64
}

/// Lower simplified digits for k <= -1: c-letters give k, d-letters give k - 1.
pub fn lower_digits_large(k: i64, v: &TreeWord) -> Vec<Digit> {
    v.word().simple_digits(k, k - 1)
}

const D11: Digit = Digit::new(1, 1);
const D12: Digit = Digit::new(1, 2);

/// Upper digits for k <= -1 as a group word, assembled block by block in orbit order.
fn upper_large_word(k: i64, word: &Word, n: u64, with_head: bool) -> GroupWord {
    let kk = -k;
    let n = n as usize;
    let mut u_blk = vec![D12; n - 2];
    u_blk.push(D11);
    let tail = vec![D12; n - 3];
    let blk = |p: usize| {
        let mut b = vec![D11];
        b.extend(repeat(&u_blk, p));
        b.extend(tail.iter().copied());
        GroupWord::from_digits(&b)
    };
    let e_word = if kk == 1 {
        GroupWord::from_digits(&[D12]).inverse()
    } else {
        blk((kk - 2) as usize)
    };
    let f_word = blk((kk - 1) as usize);
    let mut acc = if with_head {
        GroupWord::from_digits(&vec![D12; n - 2])
    } else {
        GroupWord::empty()
    };
    for (i, &x) in word.letters.iter().enumerate() {
        let b = if word.is_c(i) { &e_word } else { &f_word };
        for _ in 0..x {
            acc = b.concat(&acc);
        }
    }
    acc
}

fn words_to_digits(w: &GroupWord, what: &str) -> Result<Vec<Digit>> {
    let digits = w
        .to_digits()
        .map_err(|e| Error::NegativePower(format!("{what}: {e}")))?;
    if let Some(d) = digits.iter().find(|d| d.k <= 0) {
        return Err(Error::NegativePower(format!("{what}: digit {d}")));
    }
    Ok(digits)
}

/// Upper digits for k <= -1; for k = -1 inverse blocks must cancel completely.
pub fn upper_digits_large(k: i64, v: &TreeWord, n: u64) -> Result<Vec<Digit>> {
    if k >= 0 {
        return Err(Error::InvalidWord(format!(
            "large-regime index must be negative, got {k}"
        )));
    }
    if k == -1 {
        check_trimmed(v, n)?;
    }
    words_to_digits(
        &upper_large_word(k, &v.word(), n, true),
        &format!("upper digits of ({k}, {v})"),
    )
}

/// Upper digit blocks of an arbitrary word (no leading head), for periodic tails.
pub fn upper_digits_large_word(k: i64, w: &Word, n: u64) -> Result<Vec<Digit>> {
    words_to_digits(
        &upper_large_word(k, w, n, false),
        &format!("upper digits of ({k}, {w})"),
    )
}

/// Both digit sequences for k <= -1.
pub fn digits_large(k: i64, v: &TreeWord, n: u64) -> Result<(Vec<Digit>, Vec<Digit>)> {
    Ok((lower_digits_large(k, v), upper_digits_large(k, v, n)?))
}

/// The blocks (E, F, G) for k <= -2 as digit sequences.
pub fn large_blocks(k: i64, n: u64) -> (Vec<Digit>, Vec<Digit>, Vec<Digit>) {
    let n = n as usize;
    let kk = (-k) as usize;
    let mut u_blk = vec![D12; n - 2];
    u_blk.push(D11);
    let tail = vec![D12; n - 3];
    let blk = |p: usize| {
        let mut b = vec![D11];
        b.extend(repeat(&u_blk, p));
        b.extend(tail.iter().copied());
        b
    };
    let mut g = vec![D12, D11];
    g.extend(tail.iter().copied());
    (blk(kk - 2), blk(kk - 1), g)
}

/// Convenience: `Gen` exposure for word-level debugging output.
pub fn digits_to_word_string(d: &[Digit]) -> String {
    let w = GroupWord::from_digits(d);
    let _ = Gen::A;
    w.to_string()
}
