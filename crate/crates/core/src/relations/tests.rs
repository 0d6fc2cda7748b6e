use super::*;

fn g(n: u64) -> Group {
    Group::new(3, n).unwrap()
}

#[test]
fn w_forms() {
    for (m, n) in [(3, 3), (5, 7), (4, 6)] {
        assert_eq!(verify_w_forms(&Group::new(m, n).unwrap()), (true, true));
    }
}

#[test]
fn short_identities() {
    for n in 3..=5 {
        for (u, k, a) in [(0, 1, 1), (2, 3, 2), (-1, 2, 4)] {
            assert!(
                verify_short_right(&g(n), u, k, a),
                "n={n} u={u} k={k} a={a}"
            );
        }
        for k in 1..=4 {
            assert!(verify_w_middle(&g(n), k));
            for a in 1..=3 {
                assert!(verify_one_step(&g(n), k, a), "n={n} k={k} a={a}");
            }
        }
    }
}

#[test]
fn long_identities() {
    for n in 3..=5 {
        for (a, b) in exponent_vectors(3, 2) {
            for k in 1..=3 {
                assert!(
                    verify_long_small(&g(n), 0, k, &a, &b),
                    "small n={n} k={k} {a:?} {b:?}"
                );
                assert!(
                    verify_long_large(&g(n), k, &a, &b),
                    "large n={n} k={k} {a:?} {b:?}"
                );
            }
        }
    }
}

#[test]
fn exponent_vector_counts() {
    let v = exponent_vectors(3, 2);
    assert_eq!(v.len(), 2 + 4 * 2 + 8 * 4);
    assert!(v.iter().all(|(a, b)| a.len() == b.len() + 1));
}

#[test]
fn endpoint_conjugates() {
    for n in 3..=5 {
        let (count, bad) = verify_endpoint_relations(&g(n), 3, 5, 2).unwrap();
        assert!(count > 0 && bad.is_empty(), "n={n}: {bad:?}");
    }
}
