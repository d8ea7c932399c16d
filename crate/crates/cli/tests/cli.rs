use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const S4: &str = "degree: 4\n(1 2 3 4)\n(1 2)\nsubgroup V4normal: (1 2)(3 4); (1 3)(2 4)\n";
const A4: &str = "degree: 4\n(1 2 3)\n(1 2)(3 4)\n";
const V4: &str = "degree: 4\n(1 2)(3 4)\n(1 3)(2 4)\n";
const Z3: &str = "degree: 3\n(1 2 3)\n";
const Z3_IN_GL22: &str = "0 1\n1 1\n";
const INVERSION_ON_Z3: &str = "(1 3 2)\n";

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [
            ("s4.grp", S4),
            ("a4.grp", A4),
            ("v4.grp", V4),
            ("z3.grp", Z3),
            ("z3.mat", Z3_IN_GL22),
            ("inv.aut", INVERSION_ON_Z3),
        ] {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.path(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_fusionkit"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn error_doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap_or_else(|e| {
        panic!("stderr is not JSON ({e}): {}", String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn verify_plfg_s4_at_two() {
    let f = Fixture::new();
    let out = f.run(&["verify-plfg", "--group", "s4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
    let doc = report(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["command"], "verify-plfg");
    assert_eq!(doc["ok"], true);
    let r = &doc["report"];
    assert_eq!(r["saturation"]["saturated"], true);
    for axiom in ["axiom_a", "axiom_b", "axiom_c"] {
        assert_eq!(r[axiom]["holds"], true, "{axiom}");
    }
    assert_eq!(r["sylow_order"], 8);
}

#[test]
fn saturate_normal_four_group_fails_axiom_one() {
    let f = Fixture::new();
    let out = f.run(&["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "V4normal"]);
    assert_eq!(code(&out), 1);
    let doc = report(&out);
    assert_eq!(doc["ok"], false);
    let sat = &doc["report"]["saturation"];
    assert_eq!(sat["saturated"], false);
    let failures = sat["axiom_i_failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["aut_s_order"], 1);
    assert_eq!(failures[0]["aut_f_order"], 6);
}

#[test]
fn saturate_sylow_passes() {
    let f = Fixture::new();
    let out = f.run(&["saturate", "--group", "s4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["report"]["s_order"], 8);
}

#[test]
fn subgroup_in_cycle_notation() {
    let f = Fixture::new();
    let out = f.run(&["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "(1 2)(3 4); (1 3)(2 4)"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn classify_abelian_four_group() {
    // Odd-order subgroups of GL(2,2): the trivial group and A3.
    let f = Fixture::new();
    let out = f.run(&["classify-abelian", "--group", "v4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
    let doc = report(&out);
    assert_eq!(doc["report"]["count"], 2);
    assert_eq!(doc["report"]["classification"]["agree"], true);
    assert_eq!(doc["report"]["classification"]["w_orders"], serde_json::json!([1, 3]));
}

#[test]
fn fusion_centrics_and_linking() {
    let f = Fixture::new();
    let out = f.run(&["fusion", "--group", "s4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
    let out = f.run(&["centrics", "--group", "s4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["report"]["count"], 4);
    let out = f.run(&["linking", "--group", "a4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn cohomology_of_inversion_vanishes() {
    let f = Fixture::new();
    let out = f.run(&["cohomology", "--group", "z3.grp", "--prime", "3", "--W", "inv.aut"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["report"]["h2_vanishes"], true);
}

#[test]
fn idempotent_runs() {
    let f = Fixture::new();
    let out = f.run(&["idempotent", "--group", "a4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
    let r = &report(&out)["report"];
    assert_eq!(r["exact"], true);
    let out = f.run(&["idempotent", "--group", "z3.grp", "--prime", "3", "--W", "inv.aut"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn frobenius_check_s4() {
    let f = Fixture::new();
    let out = f.run(&["frobenius-check", "--group", "s4.grp", "--prime", "2"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn invariants_of_z3_at_two() {
    let f = Fixture::new();
    let out = f.run(&["invariants", "--prime", "2", "--rank", "2", "--W", "z3.mat", "--max-degree", "6"]);
    assert_eq!(code(&out), 0);
    let r = &report(&out)["report"];
    assert_eq!(r["molien_agrees"], true);
    assert_eq!(r["molien"], serde_json::json!([1, 0, 1, 2, 1, 2, 3]));
}

#[test]
fn coh_check_passes() {
    let f = Fixture::new();
    let out = f.run(&["coh-check", "--prime", "2", "--W", "z3.mat", "--max-degree", "8"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["report"]["passed"], true);
}

#[test]
fn input_errors_exit_two() {
    let f = Fixture::new();
    f.write("bad.grp", "degree: 3\n(1 2 7)\n");
    f.write("bad.mat", "1 1\n1 1\n");
    f.write("even.mat", "0 1\n1 0\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["fusion", "--group", "missing.grp", "--prime", "2"],
        vec!["fusion", "--group", "s4.grp", "--prime", "4"],
        vec!["fusion", "--group", "s4.grp"],
        vec!["fusion", "--group", "bad.grp", "--prime", "2"],
        vec!["saturate", "--group", "s4.grp", "--prime", "2", "--subgroup", "NoSuchName"],
        vec!["invariants", "--prime", "2", "--W", "bad.mat"],
        vec!["invariants", "--prime", "2", "--W", "even.mat"],
        vec!["fusion", "--group", "s4.grp", "--prime", "2", "--precision", "0"],
    ];
    for args in cases {
        let out = f.run(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        let err = error_doc(&out);
        assert!(err["error"].is_string(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["no-such-command"])), 2);
    assert_eq!(code(&f.run(&["fusion", "--prime", "two"])), 2);
    assert_eq!(code(&f.run(&[])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let f = Fixture::new();
    for args in [
        vec!["verify-plfg", "--group", "s4.grp", "--prime", "2"],
        vec!["classify-abelian", "--group", "v4.grp", "--prime", "2"],
        vec!["idempotent", "--group", "a4.grp", "--prime", "2"],
        vec!["invariants", "--prime", "2", "--W", "z3.mat", "--max-degree", "8"],
    ] {
        let a = f.run(&args);
        let b = f.run(&args);
        let mut seq = args.clone();
        seq.push("--sequential");
        let c = f.run(&seq);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?} sequential");
    }
}

#[test]
fn out_flag_writes_file() {
    let f = Fixture::new();
    let target = f.path("report.json");
    let out = f.run(&["centrics", "--group", "s4.grp", "--prime", "2", "--out", target.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&target).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["command"], "centrics");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let f = Fixture::new();
    let cfg = f.write("run.cfg", "# batch settings\ngroup = s4.grp\nprime = 3\n");
    let cfg = cfg.to_str().unwrap();
    let from_file = report(&f.run(&["saturate", "--config", cfg]));
    assert_eq!(from_file["report"]["s_order"], 3);
    let overridden = report(&f.run(&["saturate", "--config", cfg, "--prime", "2"]));
    assert_eq!(overridden["report"]["s_order"], 8);
}

#[test]
fn malformed_config_exits_two() {
    let f = Fixture::new();
    for (name, text) in [("a.cfg", "prime 2\n"), ("b.cfg", "prime = x\n"), ("c.cfg", "colour = red\n")] {
        let p = f.write(name, text);
        let out = f.run(&["fusion", "--group", "s4.grp", "--config", p.to_str().unwrap()]);
        assert_eq!(code(&out), 2, "{name}");
    }
}
