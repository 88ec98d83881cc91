use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legtangle")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn count(path: &Path, class: &str) -> usize {
    let text = std::fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    doc.descendants().filter(|n| n.attribute("class") == Some(class)).count()
}

fn render(dir: &Path, args: &[&str]) -> Vec<String> {
    let mut full = vec!["--out", dir.to_str().unwrap(), "render"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn cf_prints_the_expansion() {
    let out = run(&["cf", "37/26"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(3,1,2,2,1)\n");
    let out = run(&["cf", "10/6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(2,1,1)\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("reduced to 5/3"));
}

#[test]
fn bad_input_exits_two_and_names_the_token() {
    let out = run(&["cf", "0/3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("0/3"));

    let out = run(&["diagram", "5/3", "(2,1,x)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`x`"));

    let out = run(&["diagram", "5/3", "(2,1,1^2)"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["--strand-writhe", "mixed", "cf", "5/3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_carry_schema_and_input() {
    let v = json(&["diagram", "5/3", "(2^1,1,1)"]);
    assert_eq!(v["schema"], "legtangle/1");
    assert_eq!(v["convention"], "self");
    assert_eq!(v["input"]["q"], "5/3");
    assert_eq!(v["diagram"]["dots"].as_array().unwrap().len(), 4);
    assert_eq!(v["diagram"]["boxes"].as_array().unwrap().len(), 2);
    assert!(v["notes"][0].as_str().unwrap().contains("ignored"));
}

#[test]
fn invariants_of_the_unknot() {
    let v = json(&["invariants", "5/3"]);
    assert_eq!(v["unknot"]["invariants"]["tb"], -5);
    assert_eq!(v["unknot"]["invariants"]["r"], 0);
    assert_eq!(v["unknot"]["certificate_squares"], 4);
    assert_eq!(v["connectivity"], "1");
    let half = json(&["--strand-writhe", "half-mixed", "invariants", "5/3"]);
    assert_eq!(half["convention"], "half-mixed");
}

#[test]
fn classify_reports_the_rule() {
    let v = json(&["classify", "5/3", "(2,1,1)", "(2,1^1,1)"]);
    assert_eq!(v["outcome"], "Isotopic");
    assert_eq!(v["rule"], "vertical-flype");
    let v = json(&["classify", "5/3", "(2,1,1)", "(2,1,1^1)"]);
    assert_eq!(v["outcome"], "NotIsotopic");
    let v = json(&["classify", "19/11", "(2,1,2^1,1,1)", "(2,1,2,1,1^1)"]);
    assert_eq!(v["outcome"], "NotIsotopic");
    assert_eq!(v["rule"], "ordered-bijection");
    assert_eq!(v["witness"]["pair"], serde_json::json!([1, 1]));
}

#[test]
fn enumerate_is_symmetric() {
    let out = run(&["enumerate", "37/26", "--brief"]);
    assert!(out.status.success());
    let rows: Vec<Value> = out.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty()).map(|l| serde_json::from_slice(l).unwrap()).collect();
    assert_eq!(rows.len(), 36 * 36);
    for r in &rows {
        assert!(r.get("evidence").is_none());
        let back = rows.iter().find(|s| s["f"] == r["g"] && s["g"] == r["f"]).unwrap();
        assert_eq!(back["outcome"], r["outcome"]);
        assert_eq!(back["rule"], r["rule"]);
    }
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let out = run(&["--out", path.to_str().unwrap(), "diagram", "5/3"]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["diagram"]["vector"], "(2,1,1)");
}

#[test]
fn render_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let written = render(dir.path(), &["5/3", "(2,1^1,1)"]);
    let names: Vec<String> = written.iter().map(|p| Path::new(p).file_name().unwrap().to_string_lossy().into_owned()).collect();
    assert_eq!(names, ["5_3-f0-1-0-boxdot.svg", "5_3-f0-1-0-tangle.svg", "5_3-unknot.svg", "5_3-f0-1-0-foliation.svg"]);
}

#[test]
fn boxdot_glyph_counts() {
    let dir = tempfile::tempdir().unwrap();
    render(dir.path(), &["5/3", "--layers", "marks,signs"]);
    let svg = dir.path().join("5_3-f0-0-0-boxdot.svg");
    assert_eq!(count(&svg, "dot"), 4);
    assert_eq!(count(&svg, "box"), 2);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    for n in doc.descendants().filter(|n| matches!(n.attribute("class"), Some("dot" | "box"))) {
        assert!(matches!(n.attribute("fill"), Some("#d62728" | "#1f5fd6")));
    }

    let dir = tempfile::tempdir().unwrap();
    render(dir.path(), &["5/3", "--layers", "template"]);
    let svg = dir.path().join("5_3-f0-0-0-boxdot.svg");
    // boxes (i-1/2, j) and dots (i, j-1/2) over the whole template
    assert_eq!(count(&svg, "template-box"), 5 * 4);
    assert_eq!(count(&svg, "template-dot"), 6 * 3);
}

#[test]
fn front_glyph_counts() {
    let dir = tempfile::tempdir().unwrap();
    render(dir.path(), &["5/3", "--layers", "tangle,unknot"]);
    assert_eq!(count(&dir.path().join("5_3-f0-0-0-tangle.svg"), "gap"), 4);
    let unknot = dir.path().join("5_3-unknot.svg");
    assert_eq!(count(&unknot, "cusp"), 6);
    assert_eq!(count(&unknot, "gap"), 22);

    let dir = tempfile::tempdir().unwrap();
    render(dir.path(), &["1/1", "--layers", "unknot"]);
    assert_eq!(count(&dir.path().join("1_1-unknot.svg"), "gap"), 0);
}

#[test]
fn foliation_pairs_hyperbolic_points() {
    let dir = tempfile::tempdir().unwrap();
    render(dir.path(), &["5/3", "--layers", "foliation"]);
    let text = std::fs::read_to_string(dir.path().join("5_3-f0-0-0-foliation.svg")).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.attribute("class") == Some("elliptic")).count(), 4);
    let hyperbolic: Vec<_> = doc.descendants().filter(|n| n.attribute("class") == Some("hyperbolic")).collect();
    assert_eq!(hyperbolic.len(), 2);
    for h in hyperbolic {
        let mut signs: Vec<&str> = h.children().filter_map(|c| c.attribute("data-sign")).collect();
        signs.sort();
        assert_eq!(signs, ["+", "-"]);
    }
}

#[test]
fn render_rejects_bad_options() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["--out", d, "render", "5/3", "--layers", ""]).status.code(), Some(2));
    assert_eq!(run(&["--out", d, "render", "5/3", "--layers", "glitter"]).status.code(), Some(2));
    assert_eq!(run(&["--out", d, "render", "5/3", "--scale", "0"]).status.code(), Some(2));
}
