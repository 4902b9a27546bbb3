//! Command-level contract tests: exit codes, file handling, and report
//! determinism, both through the library API and the built binary.

use std::fs;
use std::path::Path;
use std::process::Command;

use chromabound::commands::{self, verify_corpus, ClassSel};
use chromabound::formats;
use chromabound::report::Config;
use chromabound_core::generators::{self, GenSpec};
use chromabound_core::graph::Graph;
use chromabound_core::patterns::ClassId;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chromabound"))
}

fn write(dir: &Path, name: &str, content: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

#[test]
fn exit_codes_follow_the_contract() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.el", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let k4e = write(dir.path(), "k4e.el", "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n");

    // 0: success
    let ok = bin().args(["color", "--class", "auto"]).arg(&c5).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let stdout = String::from_utf8(ok.stdout).unwrap();
    assert!(stdout.contains("class=p12p2 chi=3 omega=2 bound=3 PASS"), "{stdout}");

    // 1: domain failure with a witness
    let bad = bin().args(["check", "--class", "p12p2"]).arg(&k4e).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let stdout = String::from_utf8(bad.stdout).unwrap();
    assert!(stdout.contains("K4-e"), "{stdout}");

    // 2: usage and IO errors
    let missing = bin().args(["oracle", "chi", "no-such-file.el"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let badflag = bin().args(["color", "--class", "bogus"]).arg(&c5).output().unwrap();
    assert_eq!(badflag.status.code(), Some(2));
    let noargs = bin().output().unwrap();
    assert_eq!(noargs.status.code(), Some(2));
}

#[test]
fn oracle_outputs_values_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.el", "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let out = bin().args(["oracle", "chi"]).arg(&k5).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("5"));

    let out = bin().args(["oracle", "omega", "--json"]).arg(&k5).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["omega"], 5);
    assert_eq!(v["clique"], serde_json::json!([0, 1, 2, 3, 4]));

    let c7 = write(dir.path(), "c7.el", "7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n");
    let out = bin().args(["oracle", "perfect"]).arg(&c7).output().unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("false hole"));
}

#[test]
fn gen_writes_graph6_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["gen", "--class", "2p1p3", "-n", "10", "-p", "0.5", "--seed", "11", "--count", "4", "-o"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let file = String::from_utf8(out.stdout).unwrap().trim().to_string();
    let text = fs::read_to_string(&file).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    for line in lines {
        let g = formats::graph6_decode(line).unwrap();
        assert_eq!(g.n(), 10);
        assert!(chromabound_core::patterns::is_free(
            &g,
            &ClassId::TwoP1P3K4e.forbidden()
        ));
    }

    // same seed, same bytes
    let dir2 = tempfile::tempdir().unwrap();
    let out2 = bin()
        .args(["gen", "--class", "2p1p3", "-n", "10", "-p", "0.5", "--seed", "11", "--count", "4", "-o"])
        .arg(dir2.path())
        .output()
        .unwrap();
    let file2 = String::from_utf8(out2.stdout).unwrap().trim().to_string();
    assert_eq!(fs::read_to_string(&file).unwrap(), fs::read_to_string(file2).unwrap());
}

#[test]
fn color_good_mode_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    // three disjoint K4s joined by nothing: good, omega 4
    let (g, p) = generators::random_good_graph([4, 4, 4], [0.0; 3], 5);
    let g6 = formats::graph6_encode(&g).unwrap();
    let graph_file = write(dir.path(), "good.g6", &format!("{g6}\n"));
    let q: Vec<String> = p
        .parts
        .iter()
        .map(|s| s.to_vec().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let part_file = write(dir.path(), "parts.txt", &format!("{}\n{}\n{}\n", q[0], q[1], q[2]));

    let out = bin()
        .args(["color", "--good", "--partition"])
        .arg(&part_file)
        .arg(&graph_file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("chi=4"));

    // certificate emission alongside normal coloring
    let cert_path = dir.path().join("cert.json");
    let out = bin()
        .args(["color", "--class", "2p1p3", "--certificate"])
        .arg(&cert_path)
        .arg(&graph_file)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let cert: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["schema_version"], "1.0");
    assert!(cert["steps"].as_array().unwrap().iter().all(|s| s["step"].is_string()));
}

#[test]
fn decompose_prints_stable_layout() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "host.el",
        // C5 plus one B_1 vertex (adjacent to v0, v1)
        "6 7\n0 1\n1 2\n2 3\n3 4\n4 0\n5 0\n5 1\n",
    );
    let out = bin().args(["decompose"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("C = [0, 1, 2, 3, 4]"), "{stdout}");
    assert!(stdout.contains("B1 = [5]"), "{stdout}");
    assert!(stdout.contains("O1[i=1] PASS"), "{stdout}");
    assert!(stdout.contains("L8[i=5] PASS"), "{stdout}");
}

#[test]
fn verify_fails_on_foreign_corpus_members() {
    let dir = tempfile::tempdir().unwrap();
    // P7 contains P1+2P2, so it cannot pass a class-1 verify
    let p7 = Graph::path(7);
    write(
        dir.path(),
        "corpus.g6",
        &format!(
            "{}\n{}\n",
            formats::graph6_encode(&Graph::cycle(5)).unwrap(),
            formats::graph6_encode(&p7).unwrap()
        ),
    );
    let out = bin()
        .args(["verify", "--class", "p12p2", "--dir"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("not in class"), "{stdout}");
    assert!(stdout.contains("passed=1 failed=1"), "{stdout}");
}

#[test]
fn verify_textbook_corpus_palettes() {
    // K1, C5, K4, K7 under class 1: all pass with palettes 1, 3, 4, 7
    let corpus = vec![
        ("k1".to_string(), Graph::complete(1)),
        ("c5".to_string(), Graph::cycle(5)),
        ("k4".to_string(), Graph::complete(4)),
        ("k7".to_string(), Graph::complete(7)),
    ];
    let report = verify_corpus(
        &corpus,
        ClassSel::Fixed(ClassId::P12P2K4e),
        &Config::default(),
        None,
    );
    assert!(report.all_pass());
    let palettes: Vec<usize> = report
        .records
        .iter()
        .map(|r| r.chi_algorithm.unwrap())
        .collect();
    assert_eq!(palettes, vec![1, 3, 4, 7]);
}

#[test]
fn verify_report_is_deterministic_modulo_timing() {
    let corpus: Vec<(String, Graph)> = (0..25u64)
        .map(|k| {
            let spec = GenSpec::in_class(4 + (k as usize % 9), 0.5, ClassId::P12P2K4e, 7_000 + k);
            (format!("g{k}"), generators::random_in_class(&spec).unwrap())
        })
        .collect();
    let config = Config { threads: 4, ..Config::default() };
    let a = verify_corpus(&corpus, ClassSel::Fixed(ClassId::P12P2K4e), &config, None);
    let b = verify_corpus(&corpus, ClassSel::Fixed(ClassId::P12P2K4e), &config, None);
    assert_eq!(a.stable_hash, b.stable_hash);
    let strip = |json: &str| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    assert_eq!(strip(&a.to_json()), strip(&b.to_json()));
    assert!(a.all_pass());
}

#[test]
fn verify_json_and_cert_dir_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus_dir = dir.path().join("corpus");
    fs::create_dir(&corpus_dir).unwrap();
    write(
        &corpus_dir,
        "k.g6",
        &format!("{}\n", formats::graph6_encode(&Graph::complete(7)).unwrap()),
    );
    let report_path = dir.path().join("report.json");
    let cert_dir = dir.path().join("certs");
    let out = bin()
        .args(["verify", "--class", "2p1p3", "--dir"])
        .arg(&corpus_dir)
        .arg("--out")
        .arg(&report_path)
        .arg("--cert-dir")
        .arg(&cert_dir)
        .arg("--json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema_version"], "1.0");
    assert_eq!(report["summary"]["failed"], 0);
    assert_eq!(report["records"][0]["chi_algorithm"], 7);
    let on_disk: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(on_disk["stable_hash"], report["stable_hash"]);
    assert_eq!(fs::read_dir(&cert_dir).unwrap().count(), 1);
}

#[test]
fn thread_env_override_is_respected() {
    let dir = tempfile::tempdir().unwrap();
    let corpus_dir = dir.path().join("corpus");
    fs::create_dir(&corpus_dir).unwrap();
    write(
        &corpus_dir,
        "c.g6",
        &format!("{}\n", formats::graph6_encode(&Graph::cycle(5)).unwrap()),
    );
    let out = bin()
        .env("CHROMABOUND_THREADS", "2")
        .args(["verify", "--class", "p12p2", "--dir"])
        .arg(&corpus_dir)
        .arg("--json")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["config"]["threads"], 2);
}

#[test]
fn library_exit_code_constants() {
    assert_eq!(commands::EXIT_OK, 0);
    assert_eq!(commands::EXIT_DOMAIN, 1);
    assert_eq!(commands::EXIT_USAGE, 2);
}
