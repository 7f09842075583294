//! End-to-end checks of the binary: exit codes, report content, and the
//! family emitters.

use fiberings_cli::report::Report;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fiberings"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fiberings-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn validate_accepts_every_family() {
    for (kind, n) in [
        ("basic", "2"),
        ("line", "3"),
        ("tower", "2"),
        ("line", "1"),
        ("tower", "1"),
    ] {
        let path = std::env::temp_dir()
            .join("fiberings-cli-tests")
            .join(format!("{kind}-{n}.toml"));
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        let emit = bin()
            .args(["family", kind, n, "-o"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(
            emit.status.success(),
            "family {kind} {n}: {}",
            stderr_of(&emit)
        );
        let check = bin().arg("validate").arg(&path).output().unwrap();
        assert_eq!(
            check.status.code(),
            Some(0),
            "{kind} {n}: {}",
            stderr_of(&check)
        );
    }
}

#[test]
fn duplicate_label_exits_2_and_names_the_vertex() {
    let path = write_temp(
        "duplicate.toml",
        r#"
[group]
kind = "cyclic"
order = 2

[surface]
genus = 3

[graph]
colors = ["+", "-"]

[[graph.edges]]
plus = 0
minus = 1
label_plus = 1
label_minus = 0

[[graph.edges]]
plus = 0
minus = 1
label_plus = 1
label_minus = 1
"#,
    );
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("vertex 0"),
        "stderr names the vertex: {}",
        stderr_of(&out)
    );
}

#[test]
fn malformed_file_exits_3() {
    let path = write_temp("malformed.toml", "[group\nkind =");
    let out = bin().arg("validate").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(3));

    let unknown_key = write_temp(
        "unknown-key.toml",
        "[group]\nkind = \"trivial\"\n\n[surface]\ngenus = 2\nfrobnicate = 3\n\n[graph]\ncolors = [\"+\"]\n",
    );
    let out = bin().arg("validate").arg(&unknown_key).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "unknown keys are parse errors");
}

#[test]
fn basic_report_is_torelli() {
    let path = std::env::temp_dir()
        .join("fiberings-cli-tests")
        .join("basic2.toml");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    assert!(bin()
        .args(["family", "basic", "2", "-o"])
        .arg(&path)
        .output()
        .unwrap()
        .status
        .success());
    let out = bin()
        .args(["fiberings"])
        .arg(&path)
        .args(["--monodromy", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.fiberings.len(), 4);
    assert!(report
        .monodromy
        .iter()
        .all(|m| m.torelli && m.lagrangian_invariant));
    assert_eq!(report.signature.as_ref().unwrap().value, 0);
    assert_eq!(
        report.construction.as_ref().unwrap().euler_characteristic,
        12
    );
}

#[test]
fn line3_certify_emits_28_valid_certificates() {
    let path = std::env::temp_dir()
        .join("fiberings-cli-tests")
        .join("line3.toml");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    assert!(bin()
        .args(["family", "line", "3", "-o"])
        .arg(&path)
        .output()
        .unwrap()
        .status
        .success());
    let out = bin()
        .args(["fiberings"])
        .arg(&path)
        .args(["--certify", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.fiberings.len(), 8);
    assert_eq!(report.certificates.len(), 28);
    assert!(report.certificates.iter().all(|c| c.verified));
    assert_eq!(
        report.construction.as_ref().unwrap().euler_characteristic,
        64
    );
}

#[test]
fn double_edge_has_non_torelli_generator() {
    let path = write_temp(
        "double-edge.toml",
        r#"
[group]
kind = "cyclic"
order = 2

[surface]
genus = 3
action = "cyclic-cover"

[graph]
colors = ["+", "-"]

[[graph.edges]]
plus = 0
minus = 1
label_plus = 0
label_minus = 0

[[graph.edges]]
plus = 0
minus = 1
label_plus = 1
label_minus = 1
"#,
    );
    let out = bin()
        .args(["fiberings"])
        .arg(&path)
        .args(["--monodromy", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert!(
        report.monodromy.iter().any(|m| !m.torelli),
        "a generator moves fiber homology"
    );
    assert!(
        report.monodromy.iter().any(|m| m
            .generators
            .iter()
            .any(|g| !g.torelli && !g.matrix.is_empty())),
        "matrices are included"
    );
    assert!(report.monodromy.iter().all(|m| m.lagrangian_invariant));
}

#[test]
fn bounds_examples() {
    let out = bin().args(["bounds", "4", "--json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.bounds.len(), 1);
    let row = &report.bounds[0];
    assert_eq!(row.lower, "2");
    // sigma_0(4) * 5^14.
    assert_eq!(row.upper, "18310546875");

    let out = bin().args(["bounds", "1", "--json"]).output().unwrap();
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.bounds[0].lower, "1");
    assert_eq!(report.bounds[0].upper, "256");

    let out = bin()
        .args(["bounds", "1", "--sweep", "50", "--json"])
        .output()
        .unwrap();
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.bounds.len(), 50);
    for row in &report.bounds {
        let lower: num_bigint::BigUint = row.lower.parse().unwrap();
        let upper: num_bigint::BigUint = row.upper.parse().unwrap();
        assert!(lower <= upper, "row d = {}", row.d);
    }
}

#[test]
fn tower_report_counts_fiberings() {
    let path = std::env::temp_dir()
        .join("fiberings-cli-tests")
        .join("tower2.toml");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    assert!(bin()
        .args(["family", "tower", "2", "-o"])
        .arg(&path)
        .output()
        .unwrap()
        .status
        .success());
    let out = bin()
        .args(["fiberings"])
        .arg(&path)
        .args(["--json"])
        .output()
        .unwrap();
    let report = Report::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(report.fiberings.len(), 3);
    let bases: Vec<usize> = report.fiberings.iter().map(|f| f.base_genus).collect();
    assert_eq!(bases, vec![5, 3, 2]);
}

#[test]
fn enumeration_guard_exits_2() {
    // 21 vertices exceed the enumeration guard.
    let file = fiberings_cli::file_format::line_family_file(21).unwrap();
    let path = write_temp("line21.toml", &file.emit());
    let out = bin().args(["fiberings"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("21"));
}

#[test]
fn family_out_of_range_exits_2() {
    let out = bin().args(["family", "tower", "40"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["family", "basic", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn human_and_json_views_share_content() {
    let path = std::env::temp_dir()
        .join("fiberings-cli-tests")
        .join("basic3.toml");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    assert!(bin()
        .args(["family", "basic", "3", "-o"])
        .arg(&path)
        .output()
        .unwrap()
        .status
        .success());
    let human = bin().args(["fiberings"]).arg(&path).output().unwrap();
    let json = bin()
        .args(["fiberings"])
        .arg(&path)
        .arg("--json")
        .output()
        .unwrap();
    let report = Report::from_json(&stdout_of(&json)).unwrap();
    let text = stdout_of(&human);
    for f in &report.fiberings {
        assert!(text.contains(&f.id), "table lists fibering {}", f.id);
    }
    assert!(text.contains("euler characteristic = 40"));
}

#[test]
fn broken_covering_exits_2() {
    // The permutations violate the surface relation.
    let relation = write_temp(
        "bad-relation.toml",
        r#"
[surface]
genus = 4

[graph]
colors = ["+"]

[[coverings]]
vertex = 0
base_genus = 2
degree = 3
perms = [[1, 2, 0], [1, 0, 2], [0, 1, 2], [0, 1, 2]]
group = { kind = "trivial" }
"#,
    );
    let out = bin().arg("validate").arg(&relation).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("relation"), "{}", stderr_of(&out));

    // Total genus inconsistent with the covering degree.
    let genus = write_temp(
        "bad-genus.toml",
        r#"
[surface]
genus = 4

[graph]
colors = ["+"]

[[coverings]]
vertex = 0
base_genus = 2
degree = 2
perms = [[1, 0], [0, 1], [0, 1], [0, 1]]
group = { kind = "trivial" }
"#,
    );
    let out = bin().arg("validate").arg(&genus).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("genus"), "{}", stderr_of(&out));

    // A free action that fails the quotient arithmetic: Z/3 cannot act
    // freely on a genus-2 surface.
    let action = write_temp(
        "bad-action.toml",
        r#"
[surface]
genus = 3

[graph]
colors = ["+"]

[[coverings]]
vertex = 0
base_genus = 2
degree = 2
perms = [[1, 0], [0, 1], [0, 1], [0, 1]]
group = { kind = "cyclic", order = 3 }
"#,
    );
    let out = bin().arg("validate").arg(&action).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("divide"), "{}", stderr_of(&out));
}

#[test]
fn report_stable_under_vertex_relabeling() {
    // The same double-edge construction with the vertex ids swapped: the
    // canonical report content (counts, genera, chi) must not change.
    let original = write_temp(
        "relabel-a.toml",
        r#"
[group]
kind = "cyclic"
order = 2

[surface]
genus = 3
action = "cyclic-cover"

[graph]
colors = ["+", "-"]

[[graph.edges]]
plus = 0
minus = 1
label_plus = 0
label_minus = 0

[[graph.edges]]
plus = 0
minus = 1
label_plus = 1
label_minus = 1
"#,
    );
    let relabeled = write_temp(
        "relabel-b.toml",
        r#"
[group]
kind = "cyclic"
order = 2

[surface]
genus = 3
action = "cyclic-cover"

[graph]
colors = ["-", "+"]

[[graph.edges]]
plus = 1
minus = 0
label_plus = 0
label_minus = 0

[[graph.edges]]
plus = 1
minus = 0
label_plus = 1
label_minus = 1
"#,
    );
    let report_for = |path: &std::path::Path| {
        let out = bin()
            .args(["fiberings"])
            .arg(path)
            .args(["--certify", "--json"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", stderr_of(&out));
        Report::from_json(&stdout_of(&out)).unwrap()
    };
    let a = report_for(&original);
    let b = report_for(&relabeled);
    assert_eq!(a.construction, b.construction);
    assert_eq!(a.fiberings, b.fiberings);
    assert_eq!(a.certificates.len(), b.certificates.len());
}
