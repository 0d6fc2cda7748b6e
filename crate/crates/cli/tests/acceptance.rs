//! End-to-end checks of the `alphacf` binary, one line per criterion.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphacf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn tree_rows() -> bool {
    let rows = json(&["tree", "--len-max", "5", "--q-cap", "2"]);
    let rows = rows.as_array().unwrap();
    let find = |v: &str| rows.iter().find(|r| r["v"] == v).cloned();
    let root = find("1")
        .map(|r| r["path"] == "" && r["parent"] == "")
        .unwrap_or(false);
    let chain = find("2").map(|r| r["path"] == "-1").unwrap_or(false)
        && find("3").map(|r| r["path"] == "-1,-1").unwrap_or(false);
    let derived = find("3 1 3")
        .map(|r| r["derived"] == "2" && r["parent"] == "3")
        .unwrap_or(false);
    let pal = rows.iter().all(|r| r["palindrome"] == true);
    root && chain && derived && pal
}

fn interval_goldens() -> bool {
    let rows = json(&[
        "intervals",
        "--k-max",
        "1",
        "--len-max",
        "1",
        "--q-cap",
        "1",
        "--digits",
        "12",
    ]);
    let r = &rows[0];
    r["v"] == "1"
        && r["zeta_dec"] == "0.104356076261"
        && r["eta_dec"] == "0.179128784747"
        && r["omega_dec"] == "0.190983005625"
        && r["i"] == 5
        && r["j"] == 2
        && r["zeta_exact"]["radicand"][0] == "21"
}

fn verify_exit_codes() -> bool {
    let ok = run(&["verify", "--k", "1", "--v", "1", "--alpha", "3/20"]);
    let off = run(&[
        "verify", "--k", "1", "--v", "1", "--alpha", "1/2", "--cap", "40",
    ]);
    let w: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap_or_default();
    ok.status.code() == Some(0)
        && w["witness"]["i"] == 5
        && w["witness"]["j"] == 2
        && off.status.code() == Some(1)
}

fn orbit_schema() -> bool {
    let rows = json(&["orbit", "--alpha", "3/20", "--start", "l0", "--steps", "5"]);
    let rows = rows.as_array().unwrap();
    let keys = ["index", "k", "l", "point_decimal", "point_exact"];
    let schema = rows.iter().all(|r| keys.iter().all(|k| r.get(k).is_some()));
    let digits: Vec<i64> = rows[1..].iter().map(|r| r["k"].as_i64().unwrap()).collect();
    let named = json(&["orbit", "--alpha", "zeta:1:1", "--steps", "3"]);
    schema
        && rows.len() == 6
        && digits[..4] == [-1, -2, -2, -1]
        && named.as_array().map(|a| a.len() == 4).unwrap_or(false)
}

fn usage_errors() -> bool {
    let cases: [&[&str]; 5] = [
        &["--precision-bits", "32", "tree"],
        &["bogus"],
        &["orbit", "--alpha", "3/2"],
        &["verify", "--k", "1", "--v", "22", "--alpha", "1/10"],
        &["measure", "--caps", "5,3"],
    ];
    cases.iter().all(|a| run(a).status.code() == Some(2))
}

fn deterministic() -> bool {
    let args = [
        "--format",
        "csv",
        "intervals",
        "--regime",
        "large",
        "--k-max",
        "3",
        "--len-max",
        "3",
    ];
    let (a, b) = (run(&args), run(&args));
    a.status.success()
        && a.stdout == b.stdout
        && stdout(&a).starts_with("regime,k,v,path,zeta_exact,zeta_dec")
}

fn decimals_extend() -> bool {
    let lo = json(&[
        "--precision-bits",
        "64",
        "orbit",
        "--alpha",
        "gamma",
        "--steps",
        "2",
    ]);
    let hi = json(&[
        "--precision-bits",
        "200",
        "orbit",
        "--alpha",
        "gamma",
        "--steps",
        "2",
    ]);
    (0..3).all(|i| {
        let (a, b) = (
            lo[i]["point_decimal"].as_str().unwrap(),
            hi[i]["point_decimal"].as_str().unwrap(),
        );
        b.starts_with(a) && b.len() > a.len()
    })
}

fn figure_curves() -> bool {
    let o = run(&[
        "--format",
        "csv",
        "figure-data",
        "--figure",
        "endpoint-curves",
        "--samples",
        "20",
    ]);
    let s = stdout(&o);
    let header = s.lines().next() == Some("kind,label,alpha,x,l1,r1,l1_digit,r1_digit");
    let gamma_t = s
        .lines()
        .any(|l| l.starts_with("marker,gamma,") && l.contains(",0.3819660112501051517,"));
    let eps_t = s
        .lines()
        .any(|l| l.starts_with("marker,epsilon,") && l.contains(",1.6180339887498948482,"));
    let window = run(&[
        "--format",
        "csv",
        "figure-data",
        "--figure",
        "endpoint-curves",
        "--samples",
        "5",
        "--x-min",
        "0.2087",
        "--x-max",
        "0.3819",
    ]);
    o.status.success() && header && gamma_t && eps_t && stdout(&window).lines().count() == 8
}

fn figure_cylinders() -> bool {
    let rows = json(&[
        "figure-data",
        "--figure",
        "cylinders",
        "--samples",
        "4",
        "--k-bound",
        "3",
    ]);
    let rows = rows.as_array().unwrap();
    // at alpha = 1 the listed cylinders run from (3,1) up to (1,2), which ends at t = 2
    let top: Vec<_> = rows
        .iter()
        .filter(|r| r["alpha"].as_str().unwrap().starts_with("1."))
        .collect();
    let first = top
        .first()
        .map(|r| r["k"] == 3 && r["l"] == 1)
        .unwrap_or(false);
    let last = top
        .last()
        .map(|r| r["k"] == 1 && r["l"] == 2 && r["hi"] == "2.0000000000000000000")
        .unwrap_or(false);
    first && last
}

fn measure_table() -> bool {
    let rows = json(&["measure", "--caps", "3,3,1;5,3,2"]);
    let cov: Vec<f64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["coverage"].as_f64().unwrap())
        .collect();
    cov.len() == 2 && cov[0] < cov[1] && cov[1] < 1.0
}

fn identity_table() -> bool {
    let o = run(&[
        "identities",
        "--n-max",
        "4",
        "--k-max",
        "2",
        "--vec-len",
        "2",
        "--entry-max",
        "2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap_or_default();
    o.status.code() == Some(0)
        && v["checks"]
            .as_array()
            .map(|c| !c.is_empty())
            .unwrap_or(false)
}

fn suite_passes() -> bool {
    let o = run(&["--n", "4", "suite"]);
    o.status.code() == Some(0)
}

fn main() {
    let criteria: [(&str, fn() -> bool); 11] = [
        (
            "tree listing: root, successor chain, derived column",
            tree_rows,
        ),
        ("interval row goldens for k=1, v=1", interval_goldens),
        ("verify exit codes", verify_exit_codes),
        ("orbit schema and named constants", orbit_schema),
        ("usage errors exit with 2", usage_errors),
        ("byte-identical output", deterministic),
        ("higher precision only appends digits", decimals_extend),
        (
            "endpoint curve data with gamma t and epsilon t markers",
            figure_curves,
        ),
        ("cylinder data", figure_cylinders),
        ("coverage table", measure_table),
        ("identity table", identity_table),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let ok = f();
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    let ok = suite_passes();
    println!(
        "{} aggregated suite (n=4)",
        if ok { "PASS" } else { "FAIL" }
    );
    failed += usize::from(!ok);
    if failed > 0 {
        std::process::exit(1);
    }
}
