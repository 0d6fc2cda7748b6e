//! Each benchmark workload runs to its expected result; one line per workload, with timing.

use std::time::Instant;

use alphacf_bench as w;

fn main() {
    let checks: Vec<(&str, Box<dyn Fn() -> bool>)> = vec![
        (
            "field products",
            Box::new(|| !w::field_products(64).is_zero()),
        ),
        ("endpoint table n=3", Box::new(|| w::endpoint_table(3) > 0)),
        ("endpoint table n=4", Box::new(|| w::endpoint_table(4) > 0)),
        ("orbit 200 steps n=3", Box::new(|| w::orbit_200(3) == 200)),
        ("orbit 200 steps n=5", Box::new(|| w::orbit_200(5) == 200)),
        (
            "synchronization scan",
            Box::new(|| w::sync_scan() == (5, 2)),
        ),
        (
            "identities reduced grid",
            Box::new(|| w::identities_small() == 0),
        ),
        ("word properties", Box::new(|| w::words_small() == 0)),
        (
            "coverage (10,5,4)",
            Box::new(|| w::coverage_small() == "0.88592966"),
        ),
    ];
    let mut failed = 0;
    for (name, f) in &checks {
        let t = Instant::now();
        let ok = f();
        println!(
            "{} {name} [{:.2?}]",
            if ok { "PASS" } else { "FAIL" },
            t.elapsed()
        );
        failed += usize::from(!ok);
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
