use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ups(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ups"))
        .current_dir(dir)
        .env_remove("UPS_THREADS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest_value(path: &Path, key: &str) -> String {
    let text = fs::read_to_string(path).unwrap();
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing from {text}"))
        .to_string()
}

fn seed(dir: &Path) {
    fs::write(dir.join("n3.bin"), [0u8]).unwrap();
}

#[test]
fn extend_seed_transcript_and_bytes() {
    let d = tempfile::tempdir().unwrap();
    seed(d.path());
    let o = ups(d.path(), &["extend", "3", "n3.bin", "1", "0", "1", "--manifest", "m.txt"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("total solutions: 2/1"));
    assert_eq!(fs::read(d.path().join("n3.bin.ext0_1.bin")).unwrap(), [0, 1, 0, 1, 0, 1]);
    assert_eq!(manifest_value(&d.path().join("m.txt"), "count.produced"), "2");
    assert_eq!(manifest_value(&d.path().join("m.txt"), "status"), "ok");
}

#[test]
fn existing_output_needs_force() {
    let d = tempfile::tempdir().unwrap();
    seed(d.path());
    assert!(ups(d.path(), &["extend", "3", "n3.bin"]).status.success());
    assert_eq!(ups(d.path(), &["extend", "3", "n3.bin"]).status.code(), Some(2));
    assert!(ups(d.path(), &["extend", "3", "n3.bin", "--force"]).status.success());
}

#[test]
fn sharded_extension_merges_to_the_whole() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    seed(p);
    let mut file = "n3.bin".to_string();
    for n in 3..6 {
        let out = format!("n{}.bin", n + 1);
        assert!(ups(p, &["extend", &n.to_string(), &file, "-o", &out]).status.success());
        file = out;
    }
    let mut parts = Vec::new();
    for from in 0..3 {
        let out = format!("part{from}.bin");
        let (f, t) = (from.to_string(), (from + 1).to_string());
        let o = ups(p, &["extend", "6", "n6.bin", "--parts", "3", "--from", &f, "--to", &t, "-o", &out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        parts.push(out);
    }
    assert!(ups(p, &["extend", "6", "n6.bin", "-o", "whole.bin"]).status.success());
    let mut args = vec!["merge-dedup", "7", "merged.bin"];
    args.extend(parts.iter().map(String::as_str));
    assert!(ups(p, &args).status.success());
    let whole = fs::read(p.join("whole.bin")).unwrap();
    assert_eq!(fs::read(p.join("merged.bin")).unwrap(), whole);
    assert_eq!(whole.len(), 135 * 15);
}

#[test]
fn bounds_for_eleven() {
    let d = tempfile::tempdir().unwrap();
    let o = ups(d.path(), &["bounds", "11", "--kv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("labeled_count=5160960\n"));
    let alpha: f64 = out.lines().find_map(|l| l.strip_prefix("alpha=")).unwrap().parse().unwrap();
    assert!((alpha - 1.293).abs() <= 0.001);
    assert_eq!(ups(d.path(), &["bounds", "3"]).status.code(), Some(3));
}

#[test]
fn listing1_defeats_the_conflict_collection_check() {
    let d = tempfile::tempdir().unwrap();
    let o = ups(d.path(), &["verify-conflict", "data:G+H", "data:listing1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("counterexample: order type 0 embeds all 49 graphs"));
}

#[test]
fn bundled_data() {
    let d = tempfile::tempdir().unwrap();
    let l1 = stdout(&ups(d.path(), &["data", "listing1"]));
    assert_eq!(l1.matches('(').count(), 12);
    assert_eq!(stdout(&ups(d.path(), &["data", "n3"])), "00\n");
    assert_eq!(stdout(&ups(d.path(), &["data", "G+H"])).lines().count(), 49);
    assert_eq!(ups(d.path(), &["data", "nope"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    assert_eq!(ups(p, &["no-such-command"]).status.code(), Some(2));
    assert_eq!(ups(p, &["extend", "3", "n3.bin", "1", "0"]).status.code(), Some(2));
    fs::write(p.join("bad.bin"), [0u8, 1]).unwrap();
    assert_eq!(ups(p, &["stat", "bad.bin", "data:G", "-n", "4"]).status.code(), Some(3));
    assert_eq!(ups(p, &["stat", "bad.bin", "data:G"]).status.code(), Some(2));
    fs::write(p.join("hexagon.txt"), "[(0,0),(10,0),(15,8),(10,16),(0,16),(-5,8)]\n").unwrap();
    let o = ups(p, &["embed", "stacked:6", "hexagon.txt", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(ups(p, &["--threads", "0", "bounds", "5"]).status.code(), Some(2));
}

#[test]
fn stat_is_deterministic_and_shards_concatenate() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    seed(p);
    assert!(ups(p, &["extend", "3", "n3.bin", "-o", "n4.bin"]).status.success());
    assert!(ups(p, &["extend", "4", "n4.bin", "-o", "n5.bin"]).status.success());
    assert!(ups(p, &["extend", "5", "n5.bin", "-o", "n6.bin"]).status.success());
    fs::write(p.join("g.txt"), "0 1 0 2 0 3 1 2 1 3 2 3\n0 1 1 2 2 3 3 4 4 0\n").unwrap();
    let mut digests = Vec::new();
    for (threads, out) in [("1", "a.txt"), ("3", "b.txt")] {
        let m = format!("{out}.manifest");
        let o = ups(p, &["--threads", threads, "--manifest", &m, "stat", "n6.bin", "g.txt", "-n", "6", "-o", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let digest = manifest_value(&p.join(&m), "output.0");
        digests.push(digest.split_once(' ').unwrap().1.to_string());
        assert_eq!(manifest_value(&p.join(&m), "input.0"), manifest_value(&p.join("a.txt.manifest"), "input.0"));
    }
    assert_eq!(digests[0], digests[1]);
    let whole = fs::read_to_string(p.join("a.txt")).unwrap();
    assert_eq!(whole.lines().count(), 16);
    let mut rows: Vec<String> = Vec::new();
    for from in ["0", "1"] {
        let to = if from == "0" { "1" } else { "2" };
        let out = format!("s{from}.txt");
        let args = ["stat", "n6.bin", "g.txt", "-n", "6", "--parts", "2", "--from", from, "--to", to, "-o", &out];
        assert!(ups(p, &args).status.success());
        rows.extend(fs::read_to_string(p.join(&out)).unwrap().lines().map(String::from));
    }
    let mut expected: Vec<String> = whole.lines().map(String::from).collect();
    rows.sort();
    expected.sort();
    assert_eq!(rows, expected);
}

#[test]
fn universal_survivors_and_cover() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path();
    seed(p);
    assert!(ups(p, &["extend", "3", "n3.bin", "-o", "n4.bin"]).status.success());
    assert!(ups(p, &["extend", "4", "n4.bin", "-o", "n5.bin"]).status.success());
    fs::write(p.join("k4.txt"), "0 1 0 2 0 3 1 2 1 3 2 3\n").unwrap();
    let o = ups(p, &["test-universal", "n5.bin", "k4.txt", "-n", "5", "-o", "u.bin"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("universal: 2/3"), "{}", stdout(&o));
    assert_eq!(fs::read(p.join("u.bin")).unwrap().len(), 2 * 6);
    fs::write(p.join("s.txt"), "011\n101\n100\n").unwrap();
    let o = ups(p, &["mincover", "s.txt", "--exact", "--lp", "s.lp"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("conflict collection size: 2"));
    assert!(fs::read_to_string(p.join("s.lp")).unwrap().contains("Minimize"));
    fs::write(p.join("bad.txt"), "11\n").unwrap();
    assert_eq!(ups(p, &["mincover", "bad.txt"]).status.code(), Some(3));
}

#[test]
fn dimacs_diversion() {
    let d = tempfile::tempdir().unwrap();
    let o = ups(d.path(), &["embed", "data:G", "data:listing1", "--dimacs-out", "cnf"]);
    assert!(o.status.success());
    let files = fs::read_dir(d.path().join("cnf")).unwrap().count();
    assert_eq!(files, 27);
    let text = fs::read_to_string(d.path().join("cnf/ot0_graph0.cnf")).unwrap();
    assert!(text.starts_with("p cnf 198 "));
}
