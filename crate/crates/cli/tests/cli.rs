use std::cmp::Ordering;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::json;
use simprep_cli::output::{BarcodeArtifact, NerveArtifact, ReplaceArtifact, SaBarcodeArtifact};
use simprep_core::realroots::thom_encode;
use simprep_core::{ThomEncoding, UPoly};
use tempfile::TempDir;

fn simprep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simprep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, v: serde_json::Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn sphere_catalog() -> serde_json::Value {
    json!({"entries": [
        {"key": ["a", "b"], "members": ["c", "d"]},
        {"key": ["c", "d"], "members": ["e", "f"]},
        {"key": ["e", "f"], "members": []}
    ]})
}

fn annulus_scene() -> serde_json::Value {
    let sq = |x: i64, y: i64| json!([[x, y], [x + 1, y + 1]]);
    json!({"dim": 2, "sets": {
        "A": [sq(0, 0), sq(1, 0), sq(2, 0), sq(2, 1)],
        "B": [sq(2, 2), sq(1, 2), sq(0, 2), sq(0, 1)]
    }})
}

fn grid_torus() -> serde_json::Value {
    let idx = |a: usize, b: usize| (a % 4) * 4 + (b % 4);
    let mut tris = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            tris.push(vec![idx(a, b), idx(a + 1, b), idx(a + 1, b + 1)]);
            tris.push(vec![idx(a, b), idx(a, b + 1), idx(a + 1, b + 1)]);
        }
    }
    json!({"complex": {"vertices": 16, "simplices": tris},
           "values": [0, 4, 5, 4, 2, 4, 5, 4, 2, 4, 4, 4, 1, 3, 5, 4]})
}

fn csv_rows(text: &str) -> Vec<String> {
    text.lines().skip(1).map(str::to_string).collect()
}

#[test]
fn replace_sphere_catalog_prints_betti() {
    let dir = TempDir::new().unwrap();
    let cat = write(&dir, "catalog.json", sphere_catalog());
    let out = dir.path().join("delta.json");
    let o = simprep(&[
        "replace",
        "--catalog",
        s(&cat),
        "--ell",
        "2",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "b: 1 0 1\n");
    let delta: ReplaceArtifact = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(delta.poset.elements.len(), 6);
    assert_eq!(delta.betti, vec![1, 0, 1]);
    assert_eq!(delta.labels, vec!["a", "b"]);
}

#[test]
fn replace_annulus_scene() {
    let dir = TempDir::new().unwrap();
    let scene = write(&dir, "scene.json", annulus_scene());
    let o = simprep(&["replace", "--scene", s(&scene), "--ell", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "b: 1 1\n");
}

#[test]
fn replace_empty_scene() {
    let dir = TempDir::new().unwrap();
    let scene = write(&dir, "scene.json", json!({"dim": 2, "sets": {}}));
    let out = dir.path().join("delta.json");
    let o = simprep(&[
        "replace",
        "--scene",
        s(&scene),
        "--ell",
        "1",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "b: \n");
    let delta: ReplaceArtifact = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(delta.complex.simplices.is_empty());
}

#[test]
fn replace_missing_entry_exits_3_with_key() {
    let dir = TempDir::new().unwrap();
    let cat = write(
        &dir,
        "catalog.json",
        json!({"entries": [{"key": ["a", "b"], "members": ["c", "d"]}]}),
    );
    let o = simprep(&["replace", "--catalog", s(&cat), "--ell", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("[c,d]"), "{}", stderr(&o));
}

#[test]
fn replace_schema_error_exits_2() {
    let dir = TempDir::new().unwrap();
    let cat = write(&dir, "catalog.json", json!({"entries": [{"key": ["a"]}]}));
    let o = simprep(&["replace", "--catalog", s(&cat), "--ell", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let scene = write(
        &dir,
        "scene.json",
        json!({"dim": 2, "sets": {"A": [[[0, 0, 0], [1, 1, 1]]]}}),
    );
    let o = simprep(&["replace", "--scene", s(&scene), "--ell", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn replace_budget_exhaustion_exits_1() {
    let dir = TempDir::new().unwrap();
    let cat = write(&dir, "catalog.json", sphere_catalog());
    let o = simprep(&[
        "replace",
        "--catalog",
        s(&cat),
        "--ell",
        "2",
        "--budget",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget"));
}

#[test]
fn barcode_torus_has_four_rows() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "filt.json", grid_torus());
    let out = dir.path().join("bars.csv");
    let o = simprep(&[
        "barcode",
        "--filtration",
        s(&f),
        "--ell",
        "2",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("p,birth,death,multiplicity\n"));
    assert_eq!(
        csv_rows(&text),
        vec!["0,0,inf,1", "1,2,inf,1", "1,4,inf,1", "2,5,inf,1"]
    );
}

#[test]
fn barcode_single_point() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "filt.json",
        json!({"vertices": 1, "labels": ["3/2"], "complexes": [[[0]]]}),
    );
    let o = simprep(&["barcode", "--filtration", s(&f), "--ell", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(csv_rows(&stdout(&o)), vec!["0,3/2,inf,1"]);
}

#[test]
fn barcode_triangle_fill() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "filt.json",
        json!({"vertices": 3, "labels": [0, 1],
               "complexes": [[[0, 1], [1, 2], [0, 2]], [[0, 1, 2]]]}),
    );
    let o = simprep(&["barcode", "--filtration", s(&f), "--ell", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(csv_rows(&stdout(&o)).contains(&"1,0,1,1".to_string()));
}

#[test]
fn barcode_non_nested_names_the_simplex() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "filt.json",
        json!({"vertices": 3, "complexes": [[[0, 1]], [[1, 2]]]}),
    );
    let o = simprep(&["barcode", "--filtration", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("[0]") || err.contains("[0, 1]"), "{err}");
}

#[test]
fn barcode_json_round_trip_and_determinism() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "filt.json", grid_torus());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = simprep(&["barcode", "--filtration", s(&f), "--out", s(out)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let bars: BarcodeArtifact = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&bars).unwrap() + "\n", text);
    assert_eq!(bars.bars.len(), 4);
}

#[test]
fn replace_output_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let scene = write(&dir, "scene.json", annulus_scene());
    let mut texts = Vec::new();
    for name in ["a.json", "b.json"] {
        let out = dir.path().join(name);
        let o = simprep(&[
            "replace",
            "--scene",
            s(&scene),
            "--ell",
            "1",
            "--out",
            s(&out),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        texts.push(fs::read_to_string(&out).unwrap());
    }
    assert_eq!(texts[0], texts[1]);
    let delta: ReplaceArtifact = serde_json::from_str(&texts[0]).unwrap();
    let again: ReplaceArtifact =
        serde_json::from_str(&serde_json::to_string(&delta).unwrap()).unwrap();
    assert_eq!(delta, again);
}

#[test]
fn sa_barcode_parabola_on_interval() {
    let o = simprep(&[
        "sa-barcode",
        "--set",
        "1 - X^2 >= 0",
        "--poly",
        "X^2",
        "--ell",
        "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("p,birth,death,multiplicity,birth_approx,death_approx\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1, "{text}");
    assert!(rows[0].starts_with("0,"));
    assert!(rows[0].ends_with(",inf,1,0.000000,inf"), "{}", rows[0]);
}

#[test]
fn sa_barcode_two_intervals_born_at_left_ends() {
    let o = simprep(&[
        "sa-barcode",
        "--set",
        "(X + 2)*(X + 1) <= 0 or (X - 1)*(X - 2) <= 0",
        "--poly",
        "X",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let art: SaBarcodeArtifact = serde_json::from_str(&stdout(&o)).unwrap();
    let births: Vec<ThomEncoding> = art
        .bars
        .iter()
        .map(|b| ThomEncoding::from_json(&b.birth).unwrap())
        .collect();
    assert_eq!(births.len(), 2);
    assert!(art.bars.iter().all(|b| b.death.is_none() && b.p == 0));
    let roots = thom_encode(&UPoly::parse("(T + 2)*(T - 1)").unwrap()).unwrap();
    for (b, r) in births.iter().zip(&roots) {
        assert_eq!(b.compare(r), Ordering::Equal);
    }
}

#[test]
fn sa_barcode_empty_set() {
    let o = simprep(&["sa-barcode", "--set", "X^2 + 1 <= 0", "--poly", "X"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(csv_rows(&stdout(&o)).is_empty());
}

#[test]
fn sa_barcode_unbounded_and_open_sets_exit_4() {
    let o = simprep(&["sa-barcode", "--set", "X >= 0", "--poly", "X"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!stderr(&o).trim().is_empty());
    let o = simprep(&["sa-barcode", "--set", "X^2 - 1 < 0", "--poly", "X"]);
    assert_eq!(o.status.code(), Some(4));
    let o = simprep(&[
        "sa-barcode",
        "--set",
        "X >= 0",
        "--poly",
        "X",
        "--radius",
        "3",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn nerve_of_annulus_halves() {
    let dir = TempDir::new().unwrap();
    let scene = write(&dir, "scene.json", annulus_scene());
    let out = dir.path().join("nerve.json");
    let o = simprep(&[
        "nerve",
        "--scene",
        s(&scene),
        "--ell",
        "1",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "b: 1 0\n");
    let n: NerveArtifact = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(n.complex.simplices, vec![vec![0, 1]]);
}

#[test]
fn betti_of_hollow_triangle_with_csv() {
    let dir = TempDir::new().unwrap();
    let k = write(
        &dir,
        "k.json",
        json!({"vertices": 3, "simplices": [[0, 1], [1, 2], [0, 2]]}),
    );
    let out = dir.path().join("betti.csv");
    let o = simprep(&["betti", "--complex", s(&k), "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "b: 1 1\n");
    assert_eq!(fs::read_to_string(&out).unwrap(), "p,betti\n0,1\n1,1\n");
}

#[test]
fn betti_rejects_out_of_range_vertex() {
    let dir = TempDir::new().unwrap();
    let k = write(
        &dir,
        "k.json",
        json!({"vertices": 2, "simplices": [[0, 5]]}),
    );
    let o = simprep(&["betti", "--complex", s(&k)]);
    assert_eq!(o.status.code(), Some(2));
}
