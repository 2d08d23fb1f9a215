use std::path::PathBuf;

use freezeset::fixtures;
use freezeset_cli::document::{parse_image, ImageDocument};
use freezeset_cli::{run_with_budget_env, CommandOutput};

const KITE_SET: &str = "(0,1);(3,0);(4,3);(5,2)";

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn run(args: &[&str]) -> CommandOutput {
    run_with_budget_env(std::iter::once("freezeset").chain(args.iter().copied()), None)
}

#[test]
fn verify_kite_frozen() {
    let out = run(&["verify", "--image", &data("kite.json"), "--set", KITE_SET]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("verdict: frozen"));
}

#[test]
fn verify_refuted_exits_one() {
    let out = run(&["verify", "--image", "kite", "--set", "(0,1);(3,0);(4,3)"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("witness moves:"));
}

#[test]
fn budget_exhaustion_exits_two() {
    let out = run(&["verify", "--image", "kite", "--set", "", "--budget", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("budget-exhausted"));
}

#[test]
fn budget_from_environment() {
    let args = ["freezeset", "verify", "--image", "kite", "--set", ""];
    assert_eq!(run_with_budget_env(args, Some("1".into())).code, 2);
    assert_eq!(run_with_budget_env(args, None).code, 1);
    // the flag wins over the environment
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget", "1000000"]);
    assert_eq!(run_with_budget_env(with_flag, Some("1".into())).code, 1);
    assert_eq!(run_with_budget_env(args, Some("lots".into())).code, 64);
}

#[test]
fn certify_kite() {
    let out = run(&["certify", "--image", "kite", "--set", KITE_SET]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("certificate: certified"));
    let trace_lines = out.stdout.lines().skip_while(|l| *l != "trace:").skip(1).count();
    assert_eq!(trace_lines, 4);
}

#[test]
fn certify_inconclusive_exits_three() {
    let out = run(&["certify", "--image", "kite", "--set", "(0,1)"]);
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("unforced:"));
}

#[test]
fn minimize_kite_boundary_only() {
    let out = run(&["minimize", "--image", "kite", "--boundary-only", "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["sets"], serde_json::json!([[[0, 1], [3, 0], [4, 3], [5, 2]]]));
    assert_eq!(v["minimum_size"], 4);
}

#[test]
fn minimize_without_pruning_agrees() {
    let out = run(&["minimize", "--image", "kite", "--no-theorem-pruning"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("sets: 1\n  (0,1);(3,0);(4,3);(5,2)\n"));
}

#[test]
fn analyze_json_kite() {
    let out = run(&["analyze", "--image", "kite", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["d1"], serde_json::json!([[0, 1]]));
    assert_eq!(v["w"], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(v["t"], serde_json::json!([[3, 0], [4, 3], [5, 2]]));
    assert_eq!(v["image"]["size"], 10);
    assert!(v["image"]["grid_convention"].as_str().unwrap().contains("top"));
}

#[test]
fn excludable_reports_counterexample() {
    let out = run(&["excludable", "--image", "staircase", "--set", "(0,2)"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("excludable: false"));
    assert!(out.stdout.contains("counterexample:"));
    let out = run(&["excludable", "--image", "kite", "--set", "(1,2);(2,1)"]);
    assert!(out.stdout.contains("excludable: true"));
}

#[test]
fn enum_maps_counts() {
    let out = run(&["enum-maps", "--image", "square-c1", "--limit", "3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("continuous maps: 63997\n"));
    assert!(out.stdout.contains("sample (3 shown):"));
}

#[test]
fn render_kite_matches_golden() {
    let out = run(&["render", "--image", "kite", "--set", KITE_SET]);
    assert_eq!(out.stdout, golden("kite.txt"));
    let out = run(&["render", "--image", &data("kite.json"), "--set", KITE_SET, "--format", "svg"]);
    assert_eq!(out.stdout, golden("kite.svg"));
}

#[test]
fn grid_file_with_adjacency() {
    let path = data("staircase.grid");
    let out = run(&["analyze", "--image", &path, "--adjacency", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("W: (0,1);(1,0)"));
    assert_eq!(run(&["analyze", "--image", &path]).code, 64);
    assert_eq!(run(&["analyze", "--image", &path, "--adjacency", "3"]).code, 65);
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(run(&["frobnicate"]).code, 64);
    assert_eq!(run(&["verify", "--image", "kite"]).code, 64);
    assert_eq!(run(&["verify", "--image", "no/such/file", "--set", ""]).code, 64);
    assert_eq!(run(&["verify", "--image", "kite", "--set", "(0,1"]).code, 64);
    assert_eq!(run(&["verify", "--image", "kite", "--set", "(7,7)"]).code, 65);
    assert_eq!(run(&["verify", "--image", "kite", "--set", "", "--budget", "0"]).code, 64);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn disconnected_image_is_data_error() {
    let dir = std::env::temp_dir().join(format!("freezeset-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("split.grid");
    std::fs::write(&path, "#.#\n").unwrap();
    let out = run(&["verify", "--image", path.to_str().unwrap(), "--adjacency", "1", "--set", ""]);
    assert_eq!(out.code, 65);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["analyze", "--image", "kite"][..],
        &["verify", "--image", "kite", "--set", "(0,1)"],
        &["minimize", "--image", "square-c2", "--json"],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn threads_do_not_change_verdicts() {
    let one = run(&["verify", "--image", "square-c2", "--set", "(0,0);(2,2)"]);
    let four = run(&["verify", "--image", "square-c2", "--set", "(0,0);(2,2)", "--threads", "4"]);
    assert_eq!(one.code, four.code);
}

#[test]
fn document_round_trip() {
    for (name, image) in [("kite", fixtures::kite()), ("diamond", fixtures::diamond())] {
        let text = std::fs::read_to_string(data(&format!("{name}.json"))).unwrap();
        let loaded = parse_image(&text, None).unwrap();
        assert_eq!(loaded.image, image);
        let again = ImageDocument::from_image(&loaded.image, loaded.name.clone()).to_json();
        assert_eq!(parse_image(&again, None).unwrap().image, image);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_freezeset");
    let status = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args)
            .env_remove("FREEZE_BUDGET")
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["verify", "--image", "kite", "--set", KITE_SET]), Some(0));
    assert_eq!(status(&["verify", "--image", "kite", "--set", "(0,1)"]), Some(1));
    assert_eq!(status(&["certify", "--image", "kite", "--set", "(0,1)"]), Some(3));
    assert_eq!(status(&["bogus"]), Some(64));
}
