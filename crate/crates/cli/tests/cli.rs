use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use hopfdiff::catalog;
use hopfdiff_cli::formats::{AlgebraFile, ExpectedFile, OperatorFile};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfdiff"))
}

/// Exit code, stdout, stderr of the real binary.
fn exec(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopfdiff-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn export(name: &str) -> PathBuf {
    let dir = scratch(name);
    let (code, _, _) = exec(&["catalog", "export", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    dir
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
    }
    let want =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {name}"));
    assert_eq!(actual, want, "golden {name}");
}

#[test]
fn golden_reports() {
    let dir = export("golden");
    let h4_expected = dir.join("H4.expected");
    let cases: [(&str, Vec<&str>, i32); 6] = [
        ("validate-H8.json", vec!["validate", "--algebra", "H8"], 0),
        (
            "classify-H4.json",
            vec![
                "classify-diffops",
                "--algebra",
                "H4",
                "--expected",
                p(&h4_expected),
            ],
            0,
        ),
        (
            "check-diffop-id-H4.json",
            vec!["check-diffop", "--algebra", "H4", "--operator", "id"],
            1,
        ),
        (
            "lyndon-dims-2-4.json",
            vec![
                "free-lie",
                "lyndon-dims",
                "--generators",
                "2",
                "--budget",
                "4",
            ],
            0,
        ),
        (
            "extend-incompatible.json",
            vec![
                "extend-smash-diff",
                "--action",
                "inversion",
                "--operator",
                "unit-counit",
                "--operator",
                "id",
            ],
            1,
        ),
        ("catalog-list.json", vec!["catalog", "list"], 0),
    ];
    for (name, args, code) in cases {
        let (got, out, err) = exec(&args);
        assert_eq!(got, code, "{name}: {err}");
        assert!(!err.is_empty(), "{name}: summary on stderr");
        golden(name, &out);
    }
    golden(
        "H4.json",
        &std::fs::read_to_string(dir.join("H4.json")).unwrap(),
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["classify-diffops", "--algebra", "H8", "--bijective-only"];
    let (a, first, _) = exec(&args);
    let (b, second, _) = exec(&args);
    assert_eq!((a, b), (0, 0));
    assert_eq!(first, second);
    let r = json(&first);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["operators"].as_array().unwrap().len(), 4);
    let dir1 = export("det1");
    let dir2 = export("det2");
    for f in hopfdiff_cli::commands::export_files() {
        assert_eq!(
            std::fs::read(dir1.join(&f)).unwrap(),
            std::fs::read(dir2.join(&f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn exit_codes() {
    let (code, out, _) = exec(&["check-diffop", "--algebra", "H4", "--operator", "id"]);
    assert_eq!(code, 1);
    let r = json(&out);
    assert_eq!(r["failure"]["kind"], "difference-identity");
    assert_eq!(r["failure"]["witness"].as_array().unwrap().len(), 2);
    assert_eq!(
        exec(&[
            "check-diffop",
            "--algebra",
            "H4",
            "--operator",
            "unit-counit"
        ])
        .0,
        0
    );
    // unknown flags, unknown verbs, missing files and unknown algebras are input errors
    assert_eq!(exec(&["validate", "--algebra", "H4", "--verbose"]).0, 2);
    assert_eq!(exec(&["frobnicate"]).0, 2);
    assert_eq!(
        exec(&["validate", "--algebra", "/nonexistent/H4.json"]).0,
        2
    );
    let (code, out, _) = exec(&["validate", "--algebra", "H5"]);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["schema_version"], 1);
    assert_eq!(exec(&["--help"]).0, 0);
}

#[test]
fn exported_files_round_trip() {
    let dir = export("roundtrip");
    for name in catalog::HOPF_NAMES {
        let text = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        let file: AlgebraFile = serde_json::from_str(&text).unwrap();
        let h = file.to_hopf().unwrap();
        assert_eq!(h, catalog::hopf(name).unwrap(), "{name}");
        assert_eq!(
            exec(&[
                "validate",
                "--algebra",
                p(&dir.join(format!("{name}.json")))
            ])
            .0,
            0,
            "{name}"
        );
        let plan = dir.join(format!("{name}.plan.json"));
        let (code, _, err) = exec(&[
            "classify-diffops",
            "--algebra",
            p(&dir.join(format!("{name}.json"))),
            "--plan",
            p(&plan),
        ]);
        assert_eq!(code, 0, "{name}: {err}");
    }
    for f in ["group-S3.json", "lie-sl2.json", "action-inversion.json"] {
        assert!(dir.join(f).is_file());
    }
    assert_eq!(
        exec(&[
            "validate",
            "--action",
            p(&dir.join("action-inversion.json"))
        ])
        .0,
        0
    );
    let g: hopfdiff_cli::formats::GroupFile =
        serde_json::from_str(&std::fs::read_to_string(dir.join("group-S3.json")).unwrap()).unwrap();
    assert_eq!(g.to_group().unwrap().order(), 6);
    let l: hopfdiff_cli::formats::LieFile =
        serde_json::from_str(&std::fs::read_to_string(dir.join("lie-sl2.json")).unwrap()).unwrap();
    assert_eq!(l.to_lie().unwrap(), catalog::lie("sl2").unwrap());
}

#[test]
fn unknown_keys_and_stale_hashes_are_rejected() {
    let dir = export("reject");
    let mut v: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("H4.json")).unwrap()).unwrap();
    v["comment"] = "extra".into();
    let bad = dir.join("H4-extra.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let (code, out, _) = exec(&["validate", "--algebra", p(&bad)]);
    assert_eq!(code, 2);
    assert!(json(&out)["error"]
        .as_str()
        .unwrap()
        .contains("unknown field"));

    // an operator on H4 whose hash refers to a different H4
    let h = std::sync::Arc::new(catalog::h4());
    let mut op = OperatorFile::from_map(&hopfdiff::hopf::LinMap::identity(&h));
    op.domain.sha256 = "0".repeat(64);
    let path = dir.join("op.json");
    std::fs::write(&path, serde_json::to_string(&op).unwrap()).unwrap();
    assert_eq!(
        exec(&["check-diffop", "--algebra", "H4", "--operator", p(&path)]).0,
        2
    );
}

#[test]
fn expected_mismatch_drives_the_exit_code() {
    let dir = export("expected");
    let full = dir.join("H8.expected");
    let (code, out, _) = exec(&[
        "classify-diffops",
        "--algebra",
        "H8",
        "--bijective-only",
        "--expected",
        p(&full),
    ]);
    assert_eq!(code, 1);
    let r = json(&out);
    assert_eq!(
        r["expected"]["missing"],
        serde_json::json!(["D5", "D6", "D7", "D8"])
    );
    // the same tables without the four that fail the identity
    let mut file: ExpectedFile =
        serde_json::from_str(&std::fs::read_to_string(&full).unwrap()).unwrap();
    file.tables.truncate(4);
    let four = dir.join("H8-four.expected");
    std::fs::write(&four, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, out, _) = exec(&[
        "classify-diffops",
        "--algebra",
        "H8",
        "--bijective-only",
        "--expected",
        p(&four),
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["expected"]["equal"], true);
}

#[test]
fn classified_operators_are_written_and_recheck() {
    let dir = scratch("ops");
    let (code, _, _) = exec(&["classify-diffops", "--algebra", "kC2xC2", "--out", p(&dir)]);
    assert_eq!(code, 0);
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), 16);
    for f in &files {
        assert_eq!(
            exec(&["check-diffop", "--algebra", "kC2xC2", "--operator", p(f)]).0,
            0,
            "{f:?}"
        );
    }
    let (code, out, _) = exec(&["rota-baxter", "--algebra", "kS3", "--operator", "antipode"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["round_trip"], true);
}

#[test]
fn action_verbs() {
    let dir = scratch("smash");
    let sm = dir.join("smash.json");
    assert_eq!(
        exec(&["smash", "--action", "inversion", "--out", p(&sm)]).0,
        0
    );
    assert_eq!(exec(&["validate", "--algebra", p(&sm)]).0, 0);
    let (code, out, _) = exec(&[
        "check-crossed-hom",
        "--action",
        "inversion",
        "--operator",
        "unit-counit",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["derived_action"]["verified"], true);
    let (code, out, _) = exec(&[
        "graph",
        "--action",
        "inversion",
        "--operator",
        "unit-counit",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["hopf_iso"]["verified"], true);
    let (code, out, _) = exec(&["check-crossed-hom", "--action", "inversion", "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["maps"], 60);
    let ext = dir.join("ext.json");
    assert_eq!(
        exec(&[
            "extend-smash-diff",
            "--action",
            "inversion",
            "--operator",
            "id",
            "--operator",
            "id",
            "--out",
            p(&ext)
        ])
        .0,
        0
    );
    assert_eq!(
        exec(&["check-diffop", "--algebra", p(&sm), "--operator", p(&ext)]).0,
        0
    );
    let (code, out, _) = exec(&["monoid-table", "--algebra", "kS3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["table"].as_array().unwrap().len(), 10);
    assert_eq!(exec(&["ckmm-check", "--algebra", "kS3"]).0, 0);
    assert_eq!(exec(&["ckmm-check", "--budget", "4"]).0, 0);
    // ⋆ needs cocommutativity
    assert_eq!(exec(&["monoid-table", "--algebra", "H4"]).0, 2);
}

#[test]
fn free_lie_verbs() {
    let dir = scratch("free");
    let doubling = dir.join("double.json");
    std::fs::write(&doubling, r#"{"images": [[["a", "1"]], [["b", "1"]]]}"#).unwrap();
    let (code, out, _) = exec(&[
        "free-lie",
        "diffop-from-hom",
        "--generators",
        "2",
        "--budget",
        "3",
        "--operator",
        p(&doubling),
    ]);
    assert_eq!(code, 0);
    let images = json(&out)["images"].as_array().unwrap().clone();
    assert!(images.iter().any(|i| i == "ab ↦ 2*ab - ba"), "{images:?}");

    let minus_id = dir.join("minus.json");
    let lyndon = ["a", "b", "ab", "aab", "abb"];
    let images: Vec<String> = lyndon
        .iter()
        .map(|w| format!(r#"[["{w}", "-1"]]"#))
        .collect();
    std::fs::write(
        &minus_id,
        format!(
            r#"{{"images": [{}], "action": "adjoint"}}"#,
            images.join(", ")
        ),
    )
    .unwrap();
    let (code, out, err) = exec(&[
        "free-lie",
        "mm-check",
        "--generators",
        "2",
        "--budget",
        "3",
        "--operator",
        p(&minus_id),
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json(&out)["passes"], true);

    let non_lie = dir.join("nonlie.json");
    std::fs::write(&non_lie, r#"{"images": [[["ab", "1"]], []]}"#).unwrap();
    assert_eq!(
        exec(&[
            "free-lie",
            "diffop-from-hom",
            "--generators",
            "2",
            "--budget",
            "3",
            "--operator",
            p(&non_lie)
        ])
        .0,
        2
    );
    assert_eq!(
        exec(&[
            "free-lie",
            "lyndon-dims",
            "--generators",
            "2",
            "--budget",
            "7"
        ])
        .0,
        2
    );
}
