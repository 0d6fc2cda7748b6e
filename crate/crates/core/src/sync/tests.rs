use super::*;
use crate::algebra::FieldElement;
use num::BigRational;

fn g(n: u64) -> Group {
    Group::new(3, n).unwrap()
}

fn quad(group: &Group, p: (i64, i64), q: (i64, i64), d: i64) -> RealAlgebraic {
    let f = group.field();
    let r =
        |x: (i64, i64)| FieldElement::from_rational(f, BigRational::new(x.0.into(), x.1.into()));
    RealAlgebraic::new(r(p), r(q), FieldElement::from_int(f, d))
}

#[test]
fn small_endpoints_n3() {
    let group = g(3);
    let iv = endpoints(&group, 1, &TreeWord::root()).unwrap();
    assert_eq!(iv.zeta, quad(&group, (5, 4), (-1, 4), 21));
    assert_eq!(iv.eta, quad(&group, (-1, 20), (1, 20), 21));
    let rc = regime_constants(&group).unwrap();
    assert_eq!(iv.omega, rc.gamma);
    assert_eq!((iv.i_expected, iv.j_expected), (5, 2));
}

#[test]
fn sample_synchronizes_at_expected_indices() {
    let group = g(3);
    let iv = endpoints(&group, 1, &TreeWord::root()).unwrap();
    let a = FieldElement::from_rational(group.field(), BigRational::new(3.into(), 20.into()));
    let w = verify_sync(&group, &iv, a, 50).unwrap();
    assert_eq!((w.i, w.j), (5, 2));
    assert!(w.indices_match && w.pre_relation);
}

#[test]
fn samples_in_many_intervals() {
    for n in [3u64, 4, 5] {
        let group = g(n);
        for k in [1i64, 2, -1, -2, -3] {
            let words = if k == -1 {
                enumerate_trimmed(5, 1, n)
            } else {
                enumerate_tree(5, 1)
            };
            for v in words.iter().take(6) {
                let iv = endpoints(&group, k, v).unwrap();
                for a in interior_samples(iv.sync_bounds().0, iv.sync_bounds().1, 2) {
                    let alpha = FieldElement::from_rational(group.field(), a.clone());
                    let w = verify_sync(&group, &iv, alpha, 400).unwrap();
                    assert!(
                        w.indices_match && w.pre_relation,
                        "n={n} k={k} v={v} a={a}: {w:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn mid_last_letter_ends_at_gamma() {
    for n in [4u64, 5, 6] {
        let group = g(n);
        let rc = regime_constants(&group).unwrap();
        let iv = endpoints(&group, -1, &TreeWord::single(n as u32 - 2)).unwrap();
        assert_eq!(iv.eta, rc.gamma);
    }
}

#[test]
fn certificates() {
    for n in [3u64, 4] {
        let group = g(n);
        for k in [1i64, 2, -2, -3] {
            for v in enumerate_tree(5, 1).iter().take(5) {
                let iv = endpoints(&group, k, v).unwrap();
                let rep = digit_certificates(&group, &iv, 2).unwrap();
                let bad: Vec<_> = rep.failures().collect();
                assert!(bad.is_empty(), "n={n} k={k} v={v}: {bad:?}");
            }
        }
    }
}

#[test]
fn partitions_and_tiling() {
    for n in [3u64, 4, 5] {
        let group = g(n);
        let rep = regime_tiling(&group, 4).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
        for k in [1i64, 2, -2] {
            for parent in [
                TreeWord::root(),
                TreeWord::single(2),
                TreeWord::from_path(&[1]).unwrap(),
            ] {
                let rep = partition_check(&group, k, &parent, 3).unwrap();
                assert!(
                    rep.all_pass(),
                    "n={n} k={k} {parent}: {:?}",
                    rep.failures().collect::<Vec<_>>()
                );
            }
        }
    }
}

#[test]
fn nonsync_path() {
    let group = g(3);
    for k in [1i64, -2] {
        let r = nonsync_point(&group, k, &[1, 0, 0], 60).unwrap();
        assert!(r.pass(), "{r:?}");
    }
}

#[test]
fn partition_suite_small_caps() {
    for n in [3u64, 4] {
        let rep = partition_suite(&g(n), 3, 5, 2).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}
