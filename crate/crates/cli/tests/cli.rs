use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use entrolen::rational;

fn entrolen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entrolen"))
        .args(args)
        .env_remove("ENTROLEN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn bernoulli_args(out: &Path) -> Vec<String> {
    [
        "entropy",
        "--group",
        "Z",
        "--field",
        "gf2",
        "--rank",
        "3",
        "--gen",
        "1*(0)|1;1*(0)|2;1*(0)|3",
        "--nmax",
        "20",
        "--output",
    ]
    .iter()
    .map(|s| s.to_string())
    .chain([out.display().to_string()])
    .collect()
}

#[test]
fn bernoulli_csv_is_exact_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let args = bernoulli_args(path);
        let o = entrolen(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text.as_bytes(), fs::read(&b).unwrap().as_slice());
    assert!(!text.contains('\r') && text.ends_with("3/1\n") && !text.ends_with("\n\n"));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,folner_size,trajectory_dim,ratio"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 20);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[3], "3/1");
        let size: i64 = cols[1].parse().unwrap();
        let dim: i64 = cols[2].parse().unwrap();
        assert_eq!(
            rational::parse(cols[3]).unwrap(),
            rational::ratio(dim, size)
        );
    }
}

#[test]
fn zerodiv_reports_witness() {
    let o = entrolen(&[
        "zerodiv",
        "--group",
        "ZxZ2",
        "--field",
        "gf3",
        "--elem",
        "1*(0,0) + 1*(0,1)",
        "--nmax",
        "20",
        "--radius",
        "6",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("verdict=zero-divisor\n"));
    assert!(out.contains("witness=1*(0,0) + 2*(0,1)\n"));
    assert!(out.contains("submodule_estimate=1/2\n"));

    let o = entrolen(&[
        "zerodiv",
        "--group",
        "Z",
        "--field",
        "gf3",
        "--elem",
        "2*(0) + 1*(1)",
        "--nmax",
        "8",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict=no-evidence\n"));
}

#[test]
fn cocycle_validation() {
    let o = entrolen(&[
        "validate-cocycle",
        "--field",
        "gf4",
        "--group",
        "Z",
        "--sigma",
        "frobenius",
        "--rho",
        "trivial",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("result=pass\n"));
    let o = entrolen(&[
        "validate-cocycle",
        "--field",
        "gf4",
        "--group",
        "Z",
        "--rho",
        "twisted",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(
        &file,
        "group=Z\nfield=gf3\nrank=1\nrho=(0)|(1)|2\n(0)|1|1\n",
    )
    .unwrap();
    let o = entrolen(&["validate-cocycle", "--presentation", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(
        out.contains("cross3=fail\n") && out.contains("cross3_witness=(1)\n"),
        "{out}"
    );
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "# bernoulli\ncommand=entropy\ngroup=Z\nfield=gf2\nrank=2\ngen=1*(0)|1;1*(0)|2\nnmax=30\n",
    )
    .unwrap();
    let o = entrolen(&["--config", cfg.to_str().unwrap(), "--nmax", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 5);
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",2/1")));

    fs::write(&cfg, "command=entropy\ncolour=blue\n").unwrap();
    let o = entrolen(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown key"));
}

#[test]
fn presentation_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("m.txt");
    fs::write(
        &good,
        "group=ZxZ2\nfield=gf3\nrank=1\n(0,0)|1|1;(0,1)|1|1\n",
    )
    .unwrap();
    let o = entrolen(&[
        "entropy",
        "--presentation",
        good.to_str().unwrap(),
        "--nmax",
        "5",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",1/2")));

    let o = entrolen(&[
        "entropy",
        "--presentation",
        good.to_str().unwrap(),
        "--group",
        "Z",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "group=Z\nfield=gf3\nrank=1\n(0)|1|1;(1)|0|1\n").unwrap();
    let o = entrolen(&["entropy", "--presentation", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("line 4, column 9: zero coefficient"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn quotient_and_addition() {
    let o = entrolen(&[
        "quotient-entropy",
        "--group",
        "Z",
        "--field",
        "gf3",
        "--gen",
        "1*(0)|1",
        "--sub-gen",
        "2*(0)|1 + 1*(1)|1",
        "--nmax",
        "6",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let ratios: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().to_string())
        .collect();
    assert_eq!(ratios, ["1/3", "1/5", "1/7", "1/9", "1/11", "1/13"]);

    let o = entrolen(&[
        "addition-check",
        "--group",
        "ZxZ2",
        "--field",
        "gf3",
        "--gen",
        "1*(0,0)|1",
        "--sub-gen",
        "1*(0,0)|1 + 1*(0,1)|1",
        "--nmax",
        "8",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("n,folner_size,dim_t,dim_t_cap_n,dim_image,dim_sub,exact,stabilized\n1,6,6,3,3,3,true,true\n"));
    assert!(stderr(&o).contains("result=pass\n") && stderr(&o).contains("discrepancy=0/1\n"));

    let o = entrolen(&[
        "addition-check",
        "--group",
        "Z",
        "--field",
        "gf3",
        "--gen",
        "1*(0)|1",
        "--sub-gen",
        "2*(0)|1 + 1*(1)|1",
        "--nmax",
        "8",
        "--tol",
        "1/100",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_writes_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.csv");
    let o = entrolen(&[
        "quotient-entropy",
        "--group",
        "Z",
        "--field",
        "gf3",
        "--gen",
        "1*(0)|1",
        "--sub-gen",
        "2*(-5)|1 + 1*(0)|1",
        "--nmax",
        "3",
        "--max-steps",
        "1",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 4);
    assert!(stderr(&o).contains("upper_bound_only=1,2,3"));
}

#[test]
fn tiling_and_folner() {
    let o = entrolen(&[
        "tile", "--group", "Z", "--n", "20", "--tiles", "2", "--eps", "1/10",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("cover_ratio=40/41\n"));
    assert!(out.contains("centers_2=(-18) (-13) (-8) (-3) (2) (7) (12) (17)\n"));

    let o = entrolen(&["tile", "--group", "Z", "--n", "6", "--tiles", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("result=fail\n"));

    let o = entrolen(&["folner-ratios", "--group", "Z", "--nmax", "10"]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("10,21,4,4/21\n"));
    assert!(stderr(&o).contains("exhaustion=pass"));
}

#[test]
fn certified_bound_summary() {
    let o = entrolen(&[
        "entropy",
        "--group",
        "Z",
        "--field",
        "gf2",
        "--gen",
        "1*(0)|1",
        "--nmax",
        "5",
        "--tiles",
        "5",
        "--n-from",
        "40",
        "--n-check",
        "60",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("certified_bound=109/90\n"));
    let o = entrolen(&[
        "entropy", "--group", "Z", "--field", "gf2", "--gen", "1*(0)|1", "--tiles", "5", "--eps",
        "1/4",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seed_environment_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_entrolen"))
        .args(["validate-cocycle", "--group", "Z", "--field", "gf3"])
        .env("ENTROLEN_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ENTROLEN_SEED"));
    let a = Command::new(env!("CARGO_BIN_EXE_entrolen"))
        .args([
            "validate-cocycle",
            "--group",
            "Z^2",
            "--field",
            "gf4",
            "--sigma",
            "frobenius",
            "--seed",
            "3",
        ])
        .env("ENTROLEN_SEED", "11")
        .output()
        .unwrap();
    assert!(a.status.success());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(entrolen(&[]).status.code(), Some(2));
    assert_eq!(
        entrolen(&["entropy", "--group", "Q8", "--field", "gf2", "--gen", "1*(0)|1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        entrolen(&["entropy", "--group", "Z", "--field", "gf6", "--gen", "1*(0)|1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        entrolen(&["entropy", "--group", "Z", "--field", "gf2", "--gen", "1*(0)|2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        entrolen(&["entropy", "--group", "Z", "--field", "gf2", "--gen", "1*(0)|1", "--nmax", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(entrolen(&["bogus"]).status.code(), Some(2));
}
