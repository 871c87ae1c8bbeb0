use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qfac::analysis::machines_agree_bounded;
use qfac::constructions::{build_lhp_dfa, build_modp_moqfa};
use qfac::models::random;
use qfac::{Alphabet, AnyMachine, Machine, MachineDocument};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn qfac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_doc(dir: &TempDir, name: &str, m: AnyMachine) -> PathBuf {
    let path = dir.path().join(name);
    MachineDocument::new(&m, None).save(&path).unwrap();
    path
}

fn load(path: &Path) -> AnyMachine {
    MachineDocument::load(path).unwrap().to_machine().unwrap()
}

#[test]
fn build_lhp_dfa_has_seven_states() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.json");
    let o = qfac(&["build", "lhp-dfa", "--h", "1", "--p", "2", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Dfa(d) = load(&out) else { panic!("not a dfa") };
    assert_eq!(d.num_states(), 7);
    assert_eq!(d, build_lhp_dfa(1, 2).unwrap());
}

#[test]
fn exact_finite_runs_exactly() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("f.json");
    let o = qfac(&["build", "exact-finite", "--lang", "0,01", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Qfac(q) = load(&out) else { panic!("not a qfac") };
    assert_eq!(q.num_classical(), 4);

    let single = dir.path().join("single.json");
    assert_eq!(code(&qfac(&["build", "exact-finite", "--lang", "0", "--out", path_str(&single)])), 0);
    let run = |w: &str| stdout(&qfac(&["run", "--input", path_str(&single), "--word", w]));
    assert_eq!(run("0"), "accept 1.000000000000\n");
    assert_eq!(run("00"), "accept 0.000000000000\n");
}

#[test]
fn run_matches_library_evaluation() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mm = random::mmqfa(3, Alphabet::binary(), &mut rng);
    let path = write_doc(&dir, "mm.json", mm.clone().into());
    let o = qfac(&["run", "--input", path_str(&path), "--word", "0110"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let (acc, rej) = mm.probabilities("0110").unwrap();
    assert_eq!(stdout(&o), format!("accept {acc:.12}\nreject {rej:.12}\n"));

    let all_accepting = qfac::MoQfa::new(
        vec!["a".into(), "b".into()],
        Alphabet::binary(),
        qfac::StateVector::basis(2, 0),
        vec![qfac::Matrix::identity(2), qfac::Matrix::identity(2)],
        vec![true, true],
    )
    .unwrap();
    let path = write_doc(&dir, "mo.json", all_accepting.into());
    let csv = dir.path().join("run.csv");
    let o = qfac(&["run", "--input", path_str(&path), "--word", "0101", "--csv", path_str(&csv)]);
    assert_eq!(stdout(&o), "accept 1.000000000000\n");
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text, "machine,word,accept,reject\nmo1qfa,0101,1.0,\n");
}

#[test]
fn modp_build_echoes_seed_and_certificate() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("m.json");
    let o = qfac(&["build", "modp", "--p", "5", "--eps", "0.2", "--seed", "7", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let doc = MachineDocument::load(&out).unwrap();
    let meta = doc.meta.clone().unwrap();
    assert_eq!(meta["seed"], 7);
    let certificate = meta["modp"]["certificate"].as_f64().unwrap();
    assert!(certificate <= 0.2);
    let library = build_modp_moqfa(5, 0.2, 7).unwrap();
    assert_eq!(certificate, library.params.certificate);
    assert_eq!(doc.to_machine().unwrap(), AnyMachine::Mo(library.machine));

    // A seed is required for randomized builds.
    let o = qfac(&["build", "modp", "--p", "5", "--eps", "0.2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn builds_are_deterministic() {
    let a = qfac(&["build", "lhp-qfac", "--h", "1", "--p", "3", "--eps", "0.2", "--seed", "3"]);
    let b = qfac(&["build", "lhp-qfac", "--h", "1", "--p", "3", "--eps", "0.2", "--seed", "3"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let doc = MachineDocument::parse(&stdout(&a)).unwrap();
    let AnyMachine::Qfac(q) = doc.to_machine().unwrap() else { panic!() };
    assert_eq!(q.num_classical(), 4);
}

#[test]
fn validate_reports_violations() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("good.json");
    qfac(&["build", "lhp-qfac", "--h", "1", "--p", "2", "--eps", "0.2", "--seed", "1", "--out", path_str(&good)]);
    let o = qfac(&["validate", "--input", path_str(&good)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let pfa = qfac::Pfa::new(
        vec!["a".into(), "b".into()],
        Alphabet::unary(),
        vec![1.0, 0.0],
        vec![vec![0.5, 0.5, 0.3, 0.9]],
        vec![false, true],
    )
    .unwrap();
    let bad = write_doc(&dir, "bad.json", pfa.into());
    let o = qfac(&["validate", "--input", path_str(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("row 1"), "{}", stdout(&o));

    // Simulation refuses invalid machines.
    assert_eq!(code(&qfac(&["run", "--input", path_str(&bad), "--word", "0"])), 1);

    let unknown = dir.path().join("unknown.json");
    fs::write(&unknown, r#"{"schema_version": "1", "type": "turing"}"#).unwrap();
    let o = qfac(&["validate", "--input", path_str(&unknown)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cannot parse"), "{}", stderr(&o));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn detect_lists_witnesses() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("d.json");
    qfac(&["build", "lhp-dfa", "--h", "1", "--p", "2", "--out", path_str(&d)]);
    let o = qfac(&["detect", "--input", path_str(&d), "--which", "both"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2, "{text}");
    assert!(text.contains("mm_forbidden: q1=q0,0 q2=q1,0"), "{text}");
    assert!(text.contains("f_construction:"), "{text}");
    assert_eq!(code(&qfac(&["detect", "--input", path_str(&d), "--expect-none"])), 1);

    let one = qfac::Dfa::from_edges(&["a"], Alphabet::binary(), "a", &["a"], &[("a", '0', "a"), ("a", '1', "a")])
        .unwrap();
    let one = write_doc(&dir, "one.json", one.into());
    let o = qfac(&["detect", "--input", path_str(&one), "--expect-none"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "mm: none\nf: none\n");
}

#[test]
fn detect_minimizes_with_notice() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("d.json");
    qfac(&["build", "lhp-dfa", "--h", "2", "--p", "3", "--out", path_str(&d)]);
    let o = qfac(&["detect", "--input", path_str(&d), "--which", "mm"]);
    assert_eq!(code(&o), 0);
    let AnyMachine::Dfa(raw) = load(&d) else { panic!() };
    if raw.minimize().num_states() != raw.num_states() {
        assert!(stderr(&o).contains("minimal"), "{}", stderr(&o));
    }

    // A padded automaton always triggers the notice.
    let padded = qfac::Dfa::from_edges(
        &["a", "b"],
        Alphabet::unary(),
        "a",
        &["a", "b"],
        &[("a", '0', "b"), ("b", '0', "a")],
    )
    .unwrap();
    let padded = write_doc(&dir, "padded.json", padded.into());
    let o = qfac(&["detect", "--input", path_str(&padded)]);
    assert!(stderr(&o).contains("note: input has 2 states"), "{}", stderr(&o));
}

#[test]
fn minimize_and_product() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("d.json");
    let m = dir.path().join("m.json");
    qfac(&["build", "lhp-dfa", "--h", "1", "--p", "3", "--out", path_str(&d)]);
    let o = qfac(&["minimize", "--input", path_str(&d), "--out", path_str(&m)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Dfa(min) = load(&m) else { panic!() };
    assert_eq!(min.num_states(), 10);

    let p = dir.path().join("p.json");
    let o = qfac(&["product", "--input", path_str(&d), "--with", path_str(&m), "--op", "diff", "--out", path_str(&p)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Dfa(diff) = load(&p) else { panic!() };
    assert!(diff.is_empty_language());

    let mo = dir.path().join("mo.json");
    qfac(&["build", "modp", "--p", "3", "--eps", "0.2", "--seed", "2", "--alphabet", "01", "--out", path_str(&mo)]);
    let base = dir.path().join("base.json");
    qfac(&["build", "base-dfa", "--h", "1", "--out", path_str(&base)]);
    let q = dir.path().join("q.json");
    let o = qfac(&["product", "--input", path_str(&base), "--with", path_str(&mo), "--out", path_str(&q)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Qfac(q) = load(&q) else { panic!() };
    assert_eq!(q.num_classical(), 4);

    let o = qfac(&["product", "--input", path_str(&base), "--with", path_str(&mo), "--op", "diff"]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn convert_both_directions() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ml = random::multiletter(2, 3, Alphabet::binary(), &mut rng);
    let ml_path = write_doc(&dir, "ml.json", ml.clone().into());
    let out = dir.path().join("q.json");
    let o = qfac(&["convert", "--input", path_str(&ml_path), "--to", "qfac", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Qfac(q) = load(&out) else { panic!() };
    assert_eq!(q.num_classical(), 3);
    assert_eq!(machines_agree_bounded(&ml, &q, 6, 1e-9).unwrap(), None);

    let rev = random::reversible_qfac(2, 2, Alphabet::binary(), &mut rng);
    let rev_path = write_doc(&dir, "rev.json", rev.clone().into());
    let out = dir.path().join("mo.json");
    let o = qfac(&["convert", "--input", path_str(&rev_path), "--to", "mo", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let AnyMachine::Mo(mo) = load(&out) else { panic!() };
    assert_eq!(mo.dim(), 4);
    assert_eq!(machines_agree_bounded(&rev, &mo, 6, 1e-9).unwrap(), None);

    let finite = dir.path().join("finite.json");
    qfac(&["build", "exact-finite", "--lang", "0", "--out", path_str(&finite)]);
    let o = qfac(&["convert", "--input", path_str(&finite), "--to", "mo"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not reversible"), "{}", stderr(&o));

    let o = qfac(&["convert", "--input", path_str(&finite), "--to", "qfac"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn report_and_bound() {
    let dir = TempDir::new().unwrap();
    let q = dir.path().join("q.json");
    qfac(&["build", "lhp-qfac", "--h", "1", "--p", "5", "--eps", "0.2", "--seed", "7", "--out", path_str(&q)]);
    let csv = dir.path().join("r.csv");
    let o = qfac(&["report", "--input", path_str(&q), "--lang", "lhp:1,5", "--max-len", "12", "--csv", path_str(&csv)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("member min 1.0000000000"), "{text}");
    assert!(text.contains("bound qfac_dfa: m = 16"), "{text}");
    let table = fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("machine,language,max_len,members"), "{table}");
    assert!(table.contains("lhp:1,5"), "{table}");
    assert!(table.contains("bound_name,lhs,rhs,holds,inputs"), "{table}");

    let dfa = dir.path().join("d.json");
    qfac(&["build", "lhp-dfa", "--h", "1", "--p", "5", "--out", path_str(&dfa)]);
    let lang = format!("dfa:{}", path_str(&dfa));
    let by_dfa = qfac(&["report", "--input", path_str(&q), "--lang", &lang, "--max-len", "12"]);
    assert_eq!(stdout(&by_dfa), text);

    let o = qfac(&["report", "--input", path_str(&q), "--lang", "regex:1*"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn succinctness_experiment_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("s.csv");
    let args = ["experiment", "succinctness", "--h", "1", "--p", "2,3,5", "--eps", "0.2", "--seed", "7", "--max-len", "10"];
    let o = qfac(&[&args[..], &["--csv", path_str(&csv)]].concat());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("h,p,epsilon,dfa_states,pfa_lower_bound,qfac_classical,qfac_quantum,mm_forbidden,f_construction,observed_isolation,max_len")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let sizes: Vec<&str> = rows.iter().map(|r| r[3]).collect();
    assert_eq!(sizes, ["7", "10", "16"]);
    for r in &rows {
        assert_eq!(r[5], "4");
        assert_eq!((r[7], r[8]), ("true", "true"));
        assert!(r[9].parse::<f64>().unwrap() > 0.0);
    }
    // Byte-stable across runs.
    let again = qfac(&args);
    assert_eq!(stdout(&again), text);
}

#[test]
fn round_trip_preserves_semantics() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let machines: Vec<AnyMachine> = vec![
        random::moqfa(3, Alphabet::binary(), &mut rng).into(),
        random::mmqfa(2, Alphabet::binary(), &mut rng).into(),
        random::multiletter(2, 2, Alphabet::binary(), &mut rng).into(),
        random::qfac(2, 3, Alphabet::binary(), &mut rng).into(),
        build_lhp_dfa(1, 2).unwrap().into(),
    ];
    for (i, m) in machines.into_iter().enumerate() {
        let path = write_doc(&dir, &format!("m{i}.json"), m.clone());
        let o = qfac(&["validate", "--input", path_str(&path)]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        let back = load(&path);
        assert_eq!(machines_agree_bounded(&m, &back, 5, 1e-12).unwrap(), None);
        assert!(back.validate().is_empty());
    }
}
