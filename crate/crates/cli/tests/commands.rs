use std::path::Path;
use std::process::Command as Process;
use std::time::Instant;

use clap::Parser;
use hypermatch::io::parse_hgr;
use hypermatch::IsolatedVertices;
use hypermatch_cli::args::Cli;
use hypermatch_cli::dispatch;
use tempfile::TempDir;

fn run_cli(args: &[&str]) -> (anyhow::Result<bool>, String) {
    let cli = Cli::try_parse_from(std::iter::once("hypermatch").chain(args.iter().copied()))
        .expect("arguments parse");
    let mut out = Vec::new();
    let r = dispatch(&cli.command, &mut out);
    (r, String::from_utf8(out).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (r, out) = run_cli(args);
    assert!(
        r.expect("command succeeds"),
        "command reported failure:\n{out}"
    );
    out
}

fn field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).map(str::trim))
        .unwrap_or_else(|| panic!("no '{key}' in:\n{out}"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn run_single_edge() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "one.hgr", "1 2\n1 2\n");
    let out = ok(&["run", &f, "--workers", "2"]);
    assert_eq!(field(&out, "rounds:"), "1");
    assert_eq!(field(&out, "size:"), "1");
    assert_eq!(field(&out, "round 1:"), "matched 1, deactivated 0");
}

#[test]
fn crcw_and_crew_agree() {
    let inst = "random:n=300,m=400,min=2,max=5,seed=3";
    let a = ok(&[
        "run",
        inst,
        "--variant",
        "crcw",
        "--seed",
        "5",
        "--weights",
        "random",
    ]);
    let b = ok(&[
        "run",
        inst,
        "--variant",
        "crew",
        "--seed",
        "5",
        "--weights",
        "random",
        "--assert-crew",
    ]);
    assert_eq!(field(&a, "weight:"), field(&b, "weight:"));
    assert_eq!(field(&a, "size:"), field(&b, "size:"));
}

#[test]
fn tight_family_run_and_oracle() {
    let out = ok(&["run", "tight:d=3,eps=0.1", "--noise", "0:0", "--oracle"]);
    assert_eq!(field(&out, "weight:"), "1.100000");
    assert!(field(&out, "ratio_vs_oracle:").starts_with("0.366667"));

    let out = ok(&["oracle", "tight:d=3,eps=0.1"]);
    assert_eq!(field(&out, "optimum:"), "3.000000");
    assert_eq!(field(&out, "edges:"), "0 1 2");
}

#[test]
fn emitted_matching_verifies() {
    let dir = TempDir::new().unwrap();
    let inst = write(
        &dir,
        "inst.hgr",
        &hypermatch::io::write_hgr(&hypermatch::io::generate_tight_family(4, 0.5).unwrap()),
    );
    let m = dir.path().join("m.txt");
    let m = m.to_str().unwrap();
    ok(&[
        "run",
        &inst,
        "--variant",
        "opt",
        "--noise",
        "0:0",
        "--emit-matching",
        m,
    ]);
    assert_eq!(
        std::fs::read_to_string(m).unwrap(),
        "# weight=1.500000 size=1 rounds=1\n4\n"
    );
    let out = ok(&["verify", &inst, m]);
    assert_eq!(field(&out, "maximal:"), "yes");
    assert!(out.ends_with("valid\n"));
}

#[test]
fn verify_flags_violations() {
    let dir = TempDir::new().unwrap();
    let spec = "random:n=60,m=200,min=2,max=4,seed=9";
    let inst = dir.path().join("dense.hgr");
    let inst = inst.to_str().unwrap();
    ok(&["generate", spec, "-o", inst]);
    let m = dir.path().join("m.txt");
    let m = m.to_str().unwrap();
    ok(&["run", inst, "--emit-matching", m]);

    // dropping one matched edge frees its vertices; some edge then fits
    let text = std::fs::read_to_string(m).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(1);
    let dropped = write(&dir, "dropped.txt", &lines.join("\n"));
    let (r, out) = run_cli(&["verify", inst, &dropped]);
    assert!(!r.unwrap());
    assert_eq!(field(&out, "maximal:"), "NO");
    assert_eq!(field(&out, "disjoint:"), "yes");

    let h = parse_hgr(
        &std::fs::read_to_string(inst).unwrap(),
        IsolatedVertices::Reject,
    )
    .unwrap();
    let v = h.edge(0)[0];
    let other = h.incident(v).iter().find(|&&e| e != 0).unwrap();
    let clash = write(&dir, "clash.txt", &format!("0\n{other}\n"));
    let (r, out) = run_cli(&["verify", inst, &clash]);
    assert!(!r.unwrap());
    assert_eq!(field(&out, "disjoint:"), "NO");
}

#[test]
fn generate_outputs() {
    let dir = TempDir::new().unwrap();
    let out = ok(&["generate", "tight:d=4,eps=0.2"]);
    let h = parse_hgr(&out, IsolatedVertices::Reject).unwrap();
    assert_eq!((h.num_edges(), h.num_vertices()), (5, 8));
    assert!(h.validate().is_valid());

    let spec = "random:n=500,m=300,min=2,max=6,seed=11";
    let a = ok(&["generate", spec, "--weights", "random"]);
    let b = ok(&["generate", spec, "--weights", "random"]);
    assert_eq!(a, b);
    assert!(parse_hgr(&a, IsolatedVertices::Reject)
        .unwrap()
        .validate()
        .is_valid());

    let p = dir.path().join("g.hgr");
    ok(&["generate", spec, "-o", p.to_str().unwrap()]);
    assert!(Path::new(&p).exists());
    assert!(run_cli(&["generate", "some/file.hgr"]).0.is_err());
}

fn read_csv(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect()
}

#[test]
fn bench_rows_and_summaries() {
    let out = ok(&[
        "bench",
        "tight:d=3,eps=0.1",
        "random:n=200,m=150,min=2,max=4,seed=1",
        "--variants",
        "crcw,greedy",
        "--workers",
        "2",
        "--repeats",
        "3",
        "--oracle",
    ]);
    let header = out.lines().next().unwrap();
    assert_eq!(
        header,
        "instance,variant,workers,seed,generator,repeat,rounds,size,weight,time_ms,\
         edge_visits,pin_visits,ratio_vs_oracle,status"
    );
    let rows = read_csv(&out);
    let data: Vec<_> = rows.iter().filter(|r| &r[13] == "ok").collect();
    assert_eq!(data.len(), 12);
    assert_eq!(rows.iter().filter(|r| &r[5] == "mean").count(), 4);
    assert_eq!(rows.iter().filter(|r| &r[0] == "geomean").count(), 2);
    // the oracle only runs on the small instance
    for r in &data {
        assert_eq!(r[12].is_empty(), r[0].starts_with("random"));
        assert_eq!(r[8].split('.').nth(1).unwrap().len(), 6);
        assert_eq!(r[9].split('.').nth(1).unwrap().len(), 3);
    }
}

#[test]
fn bench_records_failures_and_continues() {
    let (r, out) = run_cli(&[
        "bench",
        "no/such/file.hgr",
        "tight:d=2,eps=0.5",
        "--repeats",
        "1",
        "--workers",
        "1",
    ]);
    assert!(!r.unwrap());
    let rows = read_csv(&out);
    assert!(rows[0][13].starts_with("failed"));
    assert_eq!(&rows[1][13], "ok");
}

#[test]
fn round_cap_is_a_failure() {
    let (r, _) = run_cli(&[
        "run",
        "random:n=300,m=500,min=2,max=5,seed=2",
        "--max-rounds",
        "1",
    ]);
    let e = r.unwrap_err();
    assert!(format!("{e:#}").contains("round"));
}

#[test]
fn run_appends_csv_rows() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("runs.csv");
    let p = csv_path.to_str().unwrap();
    ok(&["run", "tight:d=2,eps=0.5", "--csv", p]);
    ok(&["run", "tight:d=2,eps=0.5", "--csv", p, "--variant", "seq"]);
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert_eq!(read_csv(&text)[1][1].to_string(), "seq");
}

#[test]
fn timed_region_excludes_loading() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("big.hgr");
    let inst = inst.to_str().unwrap();
    ok(&[
        "generate",
        "random:n=40000,m=60000,min=2,max=5,seed=4",
        "-o",
        inst,
    ]);
    let start = Instant::now();
    let out = ok(&["run", inst, "--workers", "1"]);
    let total_ms = start.elapsed().as_secs_f64() * 1e3;
    let timed: f64 = field(&out, "time_ms:").parse().unwrap();
    assert!(timed > 0.0 && timed < total_ms);
}

#[test]
fn metis_input() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.graph", "3 3\n2 3\n1 3\n1 2\n");
    let out = ok(&["run", &f]);
    assert_eq!(field(&out, "n=3 m=3 pins=6 rank=2"), "max_degree=2");
    assert_eq!(field(&out, "size:"), "1");
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_hypermatch");
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "t.hgr", "4 6 1\n1 1 4\n1 2 5\n1 3 6\n1.1 1 2 3\n");
    let good = write(&dir, "good.txt", "3\n");
    let bad = write(&dir, "bad.txt", "0\n");

    let s = Process::new(exe)
        .args(["verify", &inst, &good])
        .output()
        .unwrap();
    assert!(s.status.success());
    let s = Process::new(exe)
        .args(["verify", &inst, &bad])
        .output()
        .unwrap();
    assert!(!s.status.success());
    let s = Process::new(exe)
        .args(["run", "missing.hgr"])
        .output()
        .unwrap();
    assert!(!s.status.success());
    assert!(String::from_utf8_lossy(&s.stderr).contains("missing.hgr"));
    let s = Process::new(exe)
        .args(["run", &inst, "--noise", "0:0", "--workers", "2"])
        .output()
        .unwrap();
    assert!(s.status.success());
    assert!(String::from_utf8_lossy(&s.stdout).contains("weight: 1.100000"));
}
