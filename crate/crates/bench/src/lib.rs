//! Fixed workloads shared by the benchmarks and their sanity checks. Each returns a small
//! summary so results can be checked as well as timed.

use alphacf::dynamics::{regime_constants, AlphaParam};
use alphacf::relations::{identity_suite, Grid};
use alphacf::sync::{endpoints, measure_row, verify_sync, Regime};
use alphacf::words::word_suite;
use alphacf::{FieldElement, Group, NumberField, TreeWord};
use num::BigRational;

pub fn group(n: u64) -> Group {
    Group::new(3, n).expect("valid signature")
}

/// Repeated multiplication in the degree-3 field for n = 7.
pub fn field_products(rounds: usize) -> FieldElement {
    let f = NumberField::new(7);
    let x = FieldElement::generator(&f).add(&FieldElement::from_rational(
        &f,
        BigRational::new(1.into(), 3.into()),
    ));
    (0..rounds).fold(FieldElement::one(&f), |acc, _| acc.mul(&x))
}

/// Endpoints of every (k, v) with k <= 3 and |v| <= 5 for the given n; returns the count.
pub fn endpoint_table(n: u64) -> usize {
    let g = group(n);
    let words = alphacf::words::enumerate_tree(5, 2);
    let mut count = 0;
    for k in [1i64, 2, 3, -2, -3] {
        for v in &words {
            endpoints(&g, k, v).expect("endpoints");
            count += 1;
        }
    }
    count
}

/// Orbit of the right endpoint for 200 steps at the parameter gamma (quadratic over the
/// base field, so the orbit never meets a pole); returns the step count.
pub fn orbit_200(n: u64) -> usize {
    let g = group(n);
    let gamma = regime_constants(&g).expect("constants").gamma;
    let p = AlphaParam::new(&g, gamma).expect("alpha");
    p.orbit_through(p.right(), 200).expect("orbit").steps.len()
}

/// Synchronization scan at alpha = 3/20 against the interval of (1, 1), n = 3.
pub fn sync_scan() -> (usize, usize) {
    let g = group(3);
    let iv = endpoints(&g, 1, &TreeWord::root()).expect("endpoints");
    let a = FieldElement::from_rational(g.field(), BigRational::new(3.into(), 20.into()));
    let w = verify_sync(&g, &iv, a, 50).expect("scan");
    (w.i, w.j)
}

/// Identity suite on a reduced grid; returns the number of failures.
pub fn identities_small() -> usize {
    let rep = identity_suite(&Grid {
        n_max: 5,
        k_max: 3,
        vec_len: 2,
        entry_max: 3,
    })
    .expect("identities");
    rep.failures().count()
}

/// Word property suite at moderate caps; returns the number of failures.
pub fn words_small() -> usize {
    word_suite(9, 3).failures().count()
}

/// Coverage lower bound of the small regime for n = 3 at caps (10, 5, 4).
pub fn coverage_small() -> String {
    measure_row(&group(3), Regime::Small, 10, 5, 4)
        .expect("measure")
        .coverage_lower_bound
}
