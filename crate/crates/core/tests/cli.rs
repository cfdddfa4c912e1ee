use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_treeset")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

/// Parses stdout and checks it against the shipped schema.
fn valid(name: &str, stdout: &str) -> Value {
    let value: Value = serde_json::from_str(stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{stdout}");
    value
}

#[test]
fn analyze_tribonacci_passes() {
    let (code, out, _) = run(&["analyze", "--preset", "tribonacci", "--depth", "12", "--check", "tree,complexity"]);
    assert_eq!(code, 0);
    let v = valid("harness-report", &out);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_periodic_fails_with_one() {
    let (code, out, _) = run(&["analyze", "--preset", "periodic-ab", "--depth", "8", "--check", "tree,recurrent"]);
    assert_eq!(code, 1);
    valid("harness-report", &out);
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(run(&["analyze", "--preset", "none"]).0, 2);
    assert_eq!(run(&["analyze", "--preset", "fibonacci", "--check", "nonsense"]).0, 2);
    assert_eq!(run(&["generate", "--morphism", "a->ab; b"]).0, 2);
    assert_eq!(run(&["generate"]).0, 2);
    assert_eq!(run(&["fg", "index", "--words", "ab,c", "--alphabet", "ab"]).0, 2);
}

#[test]
fn generate_round_trips_through_file() {
    let (code, out, _) = run(&["generate", "--preset", "fibonacci", "--depth", "9"]);
    assert_eq!(code, 0);
    let v = valid("factor-set", &out);
    assert_eq!(v["words"].as_array().unwrap().len(), 1 + (1..=9).map(|n| n + 1).sum::<usize>());
    let path = std::env::temp_dir().join(format!("treeset-cli-{}.json", std::process::id()));
    std::fs::write(&path, &out).unwrap();
    let (code, text, _) = run(&["generate", "--file", path.to_str().unwrap(), "--depth", "3", "--format", "text"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(text.lines().last().unwrap(), "3\t4\taab aba baa bab");
}

#[test]
fn morphism_and_iet_sources() {
    let (code, out, _) = run(&["generate", "--morphism", "a->ab; b->ac; c->a", "--depth", "5"]);
    assert_eq!(code, 0);
    let trib = valid("factor-set", &out);
    let (_, preset, _) = run(&["generate", "--preset", "tribonacci", "--depth", "5"]);
    assert_eq!(trib["words"], serde_json::from_str::<Value>(&preset).unwrap()["words"]);
    let (code, out, _) = run(&["generate", "--preset", "golden-rotation", "--depth", "6"]);
    assert_eq!(code, 0);
    assert_eq!(valid("factor-set", &out)["source"]["kind"], "iet");
}

#[test]
fn analyze_graph_is_dot() {
    let (code, out, _) = run(&["analyze", "--preset", "fibonacci", "--depth", "8", "--graph", "aba"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph") || out.starts_with("graph"), "{out}");
}

#[test]
fn returns_with_derived_set() {
    let (code, out, _) = run(&["returns", "--preset", "tribonacci", "--depth", "30", "--word", "a", "--derived"]);
    assert_eq!(code, 0);
    let v = valid("returns", &out);
    assert_eq!(v["returns"]["first_returns"], serde_json::json!(["a", "ba", "ca"]));
    assert_eq!(v["derived"]["recurrent"], true);
}

#[test]
fn code_subcommands() {
    let (code, out, _) = run(&["code", "check", "--preset", "fibonacci", "--depth", "10", "--code", "aa ab ba"]);
    assert_eq!(code, 0);
    assert_eq!(valid("code-check", &out)["s_maximal_bifix"], true);
    let (code, out, _) = run(&["code", "degree", "--preset", "fibonacci", "--depth", "10", "--code", "aa ab ba"]);
    assert_eq!(code, 0);
    assert_eq!(valid("code-degree", &out)["degree"], 2);
    let (code, out, _) =
        run(&["code", "compose", "--alphabet", "ab", "--coding", "u->a; v->baab; w->bab", "--y", "uu uvu uw v wu"]);
    assert_eq!(code, 0);
    assert_eq!(valid("code-compose", &out)["x"], serde_json::json!(["aa", "abaaba", "abab", "baab", "baba"]));
    let args = [
        "code",
        "decompose",
        "--alphabet",
        "ab",
        "--x",
        "aa abab abaaba baab baba",
        "--z",
        "a baab bab",
        "--names",
        "uvw",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(valid("code-decompose", &out)["coding"], "u->a; v->baab; w->bab");
    let (code, out, _) = run(&["code", "decompose", "--alphabet", "ab", "--x", "abab ba", "--z", "aa ab ba"]);
    assert_eq!(code, 1);
    valid("code-decompose", &out);
}

#[test]
fn groupcode_of_the_symmetric_group() {
    let args = [
        "code",
        "groupcode",
        "--preset",
        "tribonacci",
        "--depth",
        "40",
        "--group",
        "a=(12); b=(13); c=(23)",
        "--degree",
        "3",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let v = valid("groupcode", &out);
    assert_eq!(v["index"], 6);
    assert_eq!(v["x"].as_array().unwrap().len(), 13);
}

#[test]
fn fg_subcommands() {
    let (code, out, _) = run(&["fg", "tame", "--basis", "ba,cba,cca"]);
    assert_eq!(code, 0);
    let v = valid("tame", &out);
    assert_eq!(v["outcome"], "tame");
    assert!(!v["steps"].as_array().unwrap().is_empty());
    let (code, out, _) = run(&["fg", "fold", "--words", "aa,ab,ba"]);
    assert_eq!(code, 0);
    assert_eq!(valid("fold", &out)["index"], 2);
    let (code, out, _) = run(&["fg", "index", "--words", "ab,ba^-1"]);
    assert_eq!(code, 0);
    assert_eq!(valid("fg-index", &out)["index"], "infinite");
    let (code, out, _) = run(&["fg", "basis", "--words", "ab,acb,acc"]);
    assert_eq!(code, 0);
    assert_eq!(valid("fg-basis", &out)["basis"], true);
    assert_eq!(run(&["fg", "basis", "--words", "aa,ab,ba"]).0, 1);
    let (code, out, _) = run(&["fg", "fold", "--words", "aa,ab", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(out.contains("doublecircle"));
}

#[test]
fn decode_fibonacci() {
    let (code, out, _) = run(&["decode", "--preset", "fibonacci", "--depth", "24", "--coding", "c->aa; d->ab; e->ba"]);
    assert_eq!(code, 0);
    let v = valid("factor-set", &out);
    assert_eq!(v["source"]["kind"], "decoded");
    assert_eq!(run(&["decode", "--preset", "fibonacci", "--depth", "24", "--coding", "c->a; d->ab"]).0, 1);
}

#[test]
fn verify_subcommands() {
    let args = [
        "verify",
        "tree-closure",
        "--preset",
        "tribonacci",
        "--depth",
        "240",
        "--coding",
        "x->aa; y->ab; z->ac; t->ba; u->ca",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    valid("harness-report", &out);
    let args = [
        "verify",
        "degree-mult",
        "--preset",
        "fibonacci",
        "--depth",
        "60",
        "--x",
        "aa abab abaaba baab baba",
        "--z",
        "a baab bab",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(valid("degree-report", &out)["product_holds"], true);
    let args = [
        "verify",
        "group",
        "--preset",
        "tribonacci",
        "--depth",
        "40",
        "--group",
        "a=(12); b=(13); c=(23)",
        "--degree",
        "3",
        "--samples",
        "a,ab",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    valid("harness-report", &out);
    let (code, out, _) = run(&["verify", "props", "--cases", "40", "--only", "conjugation,saturation"]);
    assert_eq!(code, 0);
    assert_eq!(valid("property-reports", &out).as_array().unwrap().len(), 2);
}

#[test]
fn sadic_subcommands() {
    let (code, out, _) =
        run(&["sadic", "extract", "--preset", "ac-bac-cbac", "--depth", "32", "--steps", "3", "--max-depth", "256"]);
    assert_eq!(code, 0);
    let v = valid("sadic-extract", &out);
    assert_eq!(v["replay_matches"], true);
    let morphisms = "a->ac; b->b; c->c | a->a; b->ba; c->c | a->a; b->b; c->cb";
    let args =
        ["sadic", "replay", "--morphisms", morphisms, "--repeat", "2", "--depth", "6", "--against", "ac-bac-cbac"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let v = valid("sadic-replay", &out);
    assert_eq!(v["matches"], true);
    assert_eq!(v["primitivity"]["s"], 4);
}
