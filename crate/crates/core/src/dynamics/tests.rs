use super::*;
use crate::algebra::decimal;
use crate::words::w_block;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn g(m: u64, n: u64) -> Group {
    Group::new(m, n).unwrap()
}

#[test]
fn first_steps() {
    let gr = g(3, 3);
    let p = AlphaParam::rational(&gr, q(0, 1)).unwrap();
    let (d, y) = p.step(p.left()).unwrap();
    assert_eq!(d, Digit::simple(-1));
    // -nu + 1/t with nu = 1, t = 2
    assert_eq!(y, FieldElement::from_rational(gr.field(), q(-1, 2)));

    let p1 = AlphaParam::rational(&gr, q(1, 1)).unwrap();
    let (d, y) = p1.step(p1.right()).unwrap();
    assert_eq!(d, Digit::new(1, 2));
    assert_eq!(Some(y), gr.a().mul(&gr.c().pow(2)).act(p1.right()));

    let ps = AlphaParam::rational(&gr, q(3, 20)).unwrap();
    assert_eq!(ps.step(ps.right()).unwrap().0, Digit::simple(1));
}

#[test]
fn synchronizing_sample() {
    let gr = g(3, 3);
    let p = AlphaParam::rational(&gr, q(3, 20)).unwrap();
    let l = p.orbit_through(p.left(), 5).unwrap();
    let r = p.orbit_through(p.right(), 2).unwrap();
    assert_eq!(l.digits()[..4], [-1, -2, -2, -1].map(Digit::simple));
    assert_eq!(r.digits()[0], Digit::simple(1));
    assert_eq!(l.point(5), r.point(2));
    assert!(!p.admissible(&[Digit::simple(1), Digit::simple(1)]).unwrap());
    assert!(p.admissible(&l.digits()).unwrap());
}

#[test]
fn accidental_meeting() {
    let gr = g(3, 3);
    let f = |k| FieldElement::from_rational(gr.field(), k);
    // alpha = (2 - sqrt 2) / 4
    let alpha = RealAlgebraic::new(f(q(1, 2)), f(q(-1, 4)), f(q(2, 1)));
    let p = AlphaParam::new(&gr, alpha).unwrap();
    let l1 = p.step(p.left()).unwrap().1;
    let r1 = p.step(p.right()).unwrap().1;
    assert_eq!(l1, r1);
}

#[test]
fn zero_orbit_period() {
    for n in 3..=8u64 {
        let gr = g(3, n);
        let p = AlphaParam::rational(&gr, q(0, 1)).unwrap();
        let orb = p.orbit(p.left(), 100).unwrap();
        assert_eq!(orb.returned_to_left, Some(2 * n as usize - 3));
        assert_eq!(orb.digits(), w_block(n));
        for j in 1..=3 {
            let word: Vec<_> = w_block(n)
                .iter()
                .copied()
                .cycle()
                .take(j * (2 * n as usize - 3))
                .collect();
            assert!(p.admissible(&word).unwrap());
        }
    }
}

#[test]
fn extreme_suites() {
    for m in 3..=6u64 {
        for n in m..=7 {
            let gr = g(m, n);
            let r0 = alpha0_suite(&gr).unwrap();
            assert!(r0.all_pass(), "{:?}", r0.failures().collect::<Vec<_>>());
            let r1 = alpha1_suite(&gr, 4).unwrap();
            assert!(r1.all_pass(), "{:?}", r1.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn fig3_chain() {
    let gr = g(5, 7);
    let p = AlphaParam::rational(&gr, q(0, 1)).unwrap();
    let pts = p.orbit(p.left(), 30).unwrap().points();
    let chain = [
        0, 6, 12, 18, 1, 7, 13, 19, 2, 8, 14, 20, 3, 9, 15, 21, 4, 10, 16, 22, 5, 11, 17,
    ];
    assert!(chain.windows(2).all(|w| pts[w[0]].lt(&pts[w[1]])));
}

#[test]
fn regime_constants_n3() {
    let gr = g(3, 3);
    let rc = regime_constants(&gr).unwrap();
    let f = |k| FieldElement::from_rational(gr.field(), k);
    let five = f(q(5, 1));
    assert_eq!(
        rc.epsilon,
        RealAlgebraic::new(f(q(1, 4)), f(q(1, 4)), five.clone())
    );
    assert_eq!(rc.gamma, RealAlgebraic::new(f(q(3, 4)), f(q(-1, 4)), five));
    assert_eq!(decimal(&rc.epsilon, 6), "0.809016");
    for n in 3..=9 {
        let rc = regime_constants(&g(3, n)).unwrap();
        assert!(rc.gamma < rc.delta && rc.delta < rc.epsilon);
    }
}

#[test]
fn alphabets() {
    let gr = g(3, 5);
    let rc = regime_constants(&gr).unwrap();
    let below = rc.gamma.sub(&rc.gamma.rational(q(1, 1000)));
    let a = AlphaParam::new(&gr, below).unwrap().alphabet().unwrap();
    assert_eq!(a.upper.unwrap().l, 1);
    assert_eq!(a.lower, Digit::simple(-1));
    assert!(a.contains(&Digit::simple(a.upper.unwrap().k + 5)));
    assert!(a.contains(&Digit::simple(-7)));
    assert!(!a.contains(&Digit::new(1, 2)));
    let top = AlphaParam::rational(&gr, q(99, 100))
        .unwrap()
        .alphabet()
        .unwrap();
    assert_eq!(top.upper, Some(Digit::new(1, 2)));
    assert!(top.contains(&Digit::simple(3)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn step_stays_inside(n in 3u64..=6, a in 1i64..99, x in 0i64..1000) {
        let gr = g(3, n);
        let p = AlphaParam::rational(&gr, q(a, 100)).unwrap();
        let pt = p.left().add(&p.t().mul(&FieldElement::from_rational(gr.field(), q(x, 1000))));
        if pt.is_zero() { return Ok(()); }
        let (d, y) = p.step(&pt).unwrap();
        prop_assert!(p.contains(&y));
        let back = gr.a_pow(d.k).mul(&gr.c_pow(d.l as i64)).act(&pt).unwrap();
        prop_assert_eq!(back, y);
    }

    #[test]
    fn increasing_on_cylinders(a in 1i64..99, x in 0i64..1000, dx in 1i64..5) {
        let gr = g(3, 4);
        let p = AlphaParam::rational(&gr, q(a, 100)).unwrap();
        let at = |u: i64| p.left().add(&p.t().mul(&FieldElement::from_rational(gr.field(), q(u, 10000))));
        let (x1, x2) = (at(10 * x), at(10 * x + dx));
        if x1.is_zero() || x2.is_zero() { return Ok(()); }
        let (d1, y1) = p.step(&x1).unwrap();
        let (d2, y2) = p.step(&x2).unwrap();
        if d1 == d2 {
            prop_assert!(y1.lt(&y2));
        }
    }
}
