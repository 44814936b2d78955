use std::path::Path;
use std::process::{Command, Output};

fn apolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(args)
        .env_remove("APOLAR_DEFAULT_PRIME")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

const TWISTED_CUBIC: &str = "x0*x2-x1^2;x0*x3-x1*x2;x1*x3-x2^2";

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 4] = [
        (&["hilbert", "--random-cubic", "n=4"], "hilbert_random_cubic.txt"),
        (&["decompose-binary", "x0^5+x1^5+(x0+x1)^5"], "decompose_binary.txt"),
        (&["betti", "--ideal", TWISTED_CUBIC, "--nvars", "4", "--codim", "2"], "betti_twisted_cubic.txt"),
        (&["--field", "q", "apolar-ideal", "x0*x1*x2"], "apolar_ideal.txt"),
    ];
    for (args, file) in cases {
        let o = apolar(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o), golden(file), "{args:?}");
    }
}

#[test]
fn outputs_are_byte_deterministic() {
    for args in [
        &["hilbert", "--random-cubic", "n=4", "--seed", "7"][..],
        &["--format", "json", "spinor-section", "--seed", "3"],
        &["reproduce-paper"],
    ] {
        assert_eq!(apolar(args).stdout, apolar(args).stdout, "{args:?}");
    }
}

#[test]
fn seeds_change_random_draws() {
    let a = stdout(&apolar(&["hilbert", "--random-cubic", "n=4", "--seed", "1"]));
    let b = stdout(&apolar(&["hilbert", "--random-cubic", "n=4", "--seed", "2"]));
    assert_ne!(a, b);
    assert!(a.contains("hilbert_function: (1,5,5,1) [stated]"));
}

#[test]
fn decomposition_coefficients() {
    let t = stdout(&apolar(&["decompose-binary", "x0^5+x1^5+(x0+x1)^5"]));
    assert!(t.contains("lambdas: 1, 1, 1 [derived]"));
    assert!(t.contains("summands: 3"));
}

#[test]
fn vsp_degree_is_the_last_line() {
    let o = apolar(&["vsp-invariants"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert_eq!(t.lines().last(), Some("deg VSP(F,8) = 660"));
    assert!(!t.contains("MISMATCH"));
}

#[test]
fn json_carries_seed_and_provenance() {
    let o = apolar(&["--format", "json", "--seed", "42", "hilbert", "--random-cubic", "n=4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["command"], "hilbert");
    assert_eq!(v["pass"], true);
    let item = v["items"].as_array().unwrap().iter().find(|i| i["key"] == "hilbert_function").unwrap();
    assert_eq!(item["provenance"], "stated");
    assert_eq!(item["value"], "(1,5,5,1)");
}

#[test]
fn exit_codes() {
    // failed certificate: two points cannot present x0*x1*x2
    let o = apolar(&["verify-powersum", "x0*x1*x2", "--points", "1,0,0;0,1,0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("status: FAIL\n"));
    // bad input
    let o = apolar(&["hilbert", "x0^^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: parse error at line 1, column 4"));
    let o = apolar(&["--field", "q", "reproduce-paper"]);
    assert_eq!(o.status.code(), Some(2));
    let o = apolar(&["--field", "gfp:91", "hilbert", "x0^2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fields_and_prime_override() {
    let t = stdout(&apolar(&["--field", "gfp:101", "hilbert", "x0^2*x1"]));
    assert!(t.contains("field: GF(101)\n"));
    let t = stdout(&apolar(&["--prime", "103", "hilbert", "x0^2*x1"]));
    assert!(t.contains("field: GF(103)\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_apolar"))
        .args(["hilbert", "x0^2*x1"])
        .env("APOLAR_DEFAULT_PRIME", "7")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("field: GF(7)\n"));
}

#[test]
fn file_inputs_and_out() {
    let dir = std::env::temp_dir().join(format!("apolar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let form = dir.join("form.txt");
    std::fs::write(&form, "x0*x1*x2\n").unwrap();
    let out = dir.join("out.txt");
    let o = apolar(&[
        "--field",
        "q",
        "--out",
        out.to_str().unwrap(),
        "apolar-ideal",
        &format!("@{}", form.display()),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden("apolar_ideal.txt"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn relation_of_a_general_cubic_threefold() {
    let o = apolar(&["quadratic-relation", "--random-cubic"]);
    assert!(o.status.success());
    let t = stdout(&o);
    assert!(t.contains("relations: 1 [stated]"));
    assert!(t.contains("rank: 10 [stated]"));
}

#[test]
fn checklist_without_timings() {
    let t = stdout(&apolar(&["reproduce-paper"]));
    assert_eq!(t.matches("[PASS]").count(), 10);
    assert!(!t.contains(" s of "));
    assert!(t.ends_with("10 of 10 criteria pass\n"));
    let t = stdout(&apolar(&["reproduce-paper", "--timings"]));
    assert!(t.contains(" s of "));
}
