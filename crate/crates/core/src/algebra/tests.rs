use super::*;
use num::{BigRational, Zero};
use proptest::prelude::*;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn minpolys_small_orders() {
    assert_eq!(poly::minpoly_of_nu(3), ints(&[-1, 1]));
    assert_eq!(poly::minpoly_of_nu(4), ints(&[-2, 0, 1]));
    assert_eq!(poly::minpoly_of_nu(5), ints(&[-1, -1, 1]));
}

#[test]
fn minpoly_divides_chebyshev_route() {
    // 2cos(pi/n) is a root of D_n(x) + 2, since D_n(2cos x) = 2cos(nx).
    for n in 3..=24u64 {
        let mut target = poly::dickson(n as usize);
        target[0] += 2;
        let _ = poly::int_div_exact(&target, &poly::minpoly_of_nu(n));
    }
}

#[test]
fn theta_matches_cosine() {
    for n in 3..=30u64 {
        let f = NumberField::new(n);
        let g = FieldElement::generator(&f);
        let want = 2.0 * (std::f64::consts::PI / n as f64).cos();
        assert!((g.to_f64() - want).abs() < 1e-12, "n={n}");
        let e = f.theta_enclosure(200);
        assert!(e.width_le_pow2(200));
    }
}

#[test]
fn field_examples() {
    let f5 = NumberField::new(5);
    let nu = FieldElement::generator(&f5);
    let one = FieldElement::one(&f5);
    assert_eq!(nu.mul(&nu), nu.add(&one));
    assert_eq!(nu.sub(&one).signum(), 1);
    let f4 = NumberField::new(4);
    let nu = FieldElement::generator(&f4);
    let one = FieldElement::one(&f4);
    assert_eq!(
        one.add(&nu).mul(&one.sub(&nu)),
        FieldElement::from_int(&f4, -1)
    );
    assert_eq!(nu.add(&FieldElement::zero(&f4)), nu);
    assert_eq!(
        FieldElement::zero(&f4).inv(),
        Err(crate::Error::DivisionByZero)
    );
    assert_eq!(FieldElement::zero(&f4).signum(), 0);
}

#[test]
fn sign_in_extension() {
    let f3 = NumberField::new(3);
    let h = FieldElement::from_rational(&f3, r(1, 2));
    let zeta = RealAlgebraic::new(
        FieldElement::from_rational(&f3, r(5, 2)),
        h.neg(),
        FieldElement::from_int(&f3, 21),
    );
    assert_eq!(zeta.sub(&RealAlgebraic::from_int(&f3, 1)).signum(), -1);
    assert_eq!(decimal(&zeta, 10), "0.2087121525");
}

#[test]
fn quad_solve_examples() {
    let f = NumberField::new(3);
    let c = |n| FieldElement::from_int(&f, n);
    let s2 = quad_solve(
        &c(1),
        &c(0),
        &c(-2),
        &Enclosure::point(r(1, 1)).add(&Enclosure::new(r(0, 1), r(1, 1))),
    )
    .unwrap();
    assert_eq!(s2.mul(&s2), RealAlgebraic::from_int(&f, 2));
    assert!(!s2.is_base());
    let one = quad_solve(&c(1), &c(-1), &c(0), &Enclosure::new(r(1, 2), r(3, 2))).unwrap();
    assert_eq!(one.as_base(), Some(&c(1)));
    // x^2 - 5x + 1 = 0 has (5 - sqrt 21)/2 as its small root.
    let z = quad_solve(&c(1), &c(-5), &c(1), &Enclosure::new(r(0, 1), r(3, 10))).unwrap();
    assert_eq!(decimal(&z, 10), "0.2087121525");
    assert_eq!(
        quad_solve(&c(1), &c(0), &c(1), &Enclosure::new(r(0, 1), r(1, 1))),
        Err(crate::Error::NegativeDiscriminant)
    );
    assert_eq!(
        quad_solve(&c(1), &c(0), &c(-4), &Enclosure::new(r(-3, 1), r(3, 1))),
        Err(crate::Error::TwoRootsInSelector)
    );
    assert_eq!(
        quad_solve(&c(1), &c(0), &c(-4), &Enclosure::new(r(3, 1), r(4, 1))),
        Err(crate::Error::NoRootInSelector)
    );
}

#[test]
fn perfect_squares_collapse() {
    // (G - 1)^2 / 4 in Q(sqrt5) via n = 5: G = nu.
    let f = NumberField::new(5);
    let g = FieldElement::generator(&f);
    let one = FieldElement::one(&f);
    let y = g.sub(&one).scale(&r(1, 2));
    let x = RealAlgebraic::sqrt_of(y.mul(&y));
    assert!(x.is_base());
    assert_eq!(x.as_base(), Some(&y));
    // Over Q: sqrt(12) keeps the radical but pulls out the square content.
    let f3 = NumberField::new(3);
    let x = RealAlgebraic::sqrt_of(FieldElement::from_int(&f3, 12));
    assert_eq!(x.radicand(), &FieldElement::from_int(&f3, 3));
}

#[test]
fn refine_examples() {
    let f5 = NumberField::new(5);
    let e = refine(&FieldElement::generator(&f5), 40);
    assert!(e.width_le_pow2(40));
    assert!(e.contains(&r(16180339887, 10000000000)) || e.lo > r(1618033988, 1000000000));
    let one = FieldElement::one(&f5);
    assert!(refine(&one, 10).contains(&r(1, 1)));
    assert!(refine(&one, 10).width_le_pow2(10));
}

#[test]
fn cross_radicand_comparison() {
    let f = NumberField::new(3);
    let c = |n| FieldElement::from_int(&f, n);
    let s2 = RealAlgebraic::sqrt_of(c(2));
    let s3 = RealAlgebraic::sqrt_of(c(3));
    assert!(s2 < s3);
    assert!(s3.add(&RealAlgebraic::from_int(&f, -1)) < s2);
    let s8 = RealAlgebraic::sqrt_of(c(8));
    assert_eq!(s8, s2.add(&s2));
}

fn elem(f: &std::sync::Arc<NumberField>, v: &[i64]) -> FieldElement {
    FieldElement::from_coeffs(f, v.iter().map(|&x| r(x, 1 + (x.abs() % 3))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn field_axioms(n in 3u64..=12, a in prop::collection::vec(-9i64..9, 6), b in prop::collection::vec(-9i64..9, 6), c in prop::collection::vec(-9i64..9, 6)) {
        let f = NumberField::new(n);
        let d = f.degree();
        let (x, y, z) = (elem(&f, &a[..d.min(6)]), elem(&f, &b[..d.min(6)]), elem(&f, &c[..d.min(6)]));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        if !x.is_zero() {
            prop_assert_eq!(x.mul(&x.inv().unwrap()), FieldElement::one(&f));
        }
    }

    #[test]
    fn sign_agrees_with_enclosure(n in 3u64..=12, a in prop::collection::vec(-9i64..9, 6)) {
        let f = NumberField::new(n);
        let x = elem(&f, &a[..f.degree().min(6)]);
        let e = refine(&x, 128);
        if e.excludes_zero() {
            prop_assert_eq!(x.signum(), if e.mid() > BigRational::zero() { 1 } else { -1 });
        }
    }

    #[test]
    fn refine_is_nested(n in 3u64..=9, a in prop::collection::vec(-9i64..9, 4), b in 1u64..80) {
        let f = NumberField::new(n);
        let x = elem(&f, &a[..f.degree().min(4)]);
        prop_assert!(refine(&x, b).contains_enclosure(&refine(&x, b + 1)));
    }

    #[test]
    fn quad_roots_satisfy_equation(n in 3u64..=7, a in 1i64..6, b in -9i64..9, c in -9i64..9) {
        let f = NumberField::new(n);
        let nu = FieldElement::generator(&f);
        let (fa, fb, fc) = (FieldElement::from_int(&f, a), FieldElement::from_int(&f, b).mul(&nu), FieldElement::from_int(&f, c));
        if let Ok(roots) = quad_roots(&fa, &fb, &fc) {
            for x in roots {
                let lift = |e: &FieldElement| RealAlgebraic::from_base(e.clone());
                let val = lift(&fa).mul(&x).mul(&x).add(&lift(&fb).mul(&x)).add(&lift(&fc));
                prop_assert!(val.is_zero());
            }
        }
    }
}
