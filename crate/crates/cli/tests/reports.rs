//! Bundled examples reproduce their recorded reports byte for byte.
//! Run with `ALGMAX_BLESS=1` to rewrite the recordings.

use std::path::Path;
use std::process::{Command, Output};

const CASES: &[(&str, &[&str])] = &[
    ("maxdim_m2", &["maxdim", "data/m2_q.alg"]),
    ("maxdim_m3", &["maxdim", "data/m3_q.alg"]),
    ("maxdim_dual_numbers", &["maxdim", "data/dual_numbers.alg"]),
    ("structure_a3", &["structure", "data/a3.quiver"]),
    ("structure_a3_ba", &["structure", "data/a3_ba.quiver"]),
    ("structure_m2_f2", &["structure", "data/m2_f2.alg"]),
    ("structure_diamond_f3", &["structure", "data/diamond.poset", "--field", "F3"]),
    ("enumerate_m2_f2", &["maximal", "enumerate", "data/m2_f2.alg"]),
    ("enumerate_kronecker", &["maximal", "enumerate", "data/kronecker.quiver"]),
    ("enumerate_d4", &["maximal", "enumerate", "data/d4.quiver"]),
    ("enumerate_m3_json", &["maximal", "enumerate", "data/m3_q.alg", "--json"]),
    ("instantiate_m2_triangular", &["maximal", "instantiate", "data/m2_q.alg", "data/m2_triangular.sub"]),
    ("certify_m2_triangular", &["maximal", "certify", "data/m2_q.alg", "data/m2_triangular.sub"]),
    ("certify_m2_scalars", &["maximal", "certify", "data/m2_q.alg", "data/m2_scalars.sub"]),
    ("certify_m2_f4", &["maximal", "certify", "data/m2_f2.alg", "family kind=subfield-centralizer block=1 degree=2"]),
    ("classify_kronecker_x", &["maximal", "classify", "data/kronecker.quiver", "data/kronecker_x.sub"]),
    ("brute_m2_f2", &["maximal", "brute", "data/m2_f2.alg"]),
    ("brute_kronecker_f2", &["maximal", "brute", "data/kronecker.quiver", "--field", "F2"]),
    ("brute_kronecker_f2_json", &["maximal", "brute", "data/kronecker.quiver", "--field", "F2", "--json"]),
    ("ext_kronecker_x", &["ext", "check", "data/kronecker_x.sub", "data/kronecker.quiver"]),
    ("ext_m2_scalars", &["ext", "check", "data/m2_scalars.sub", "data/m2_q.alg"]),
    ("mod_restrict_zigzag", &["mod", "restrict", "data/zigzag5_defining.mod", "data/zigzag5_d4.sub"]),
    ("mod_decompose_zigzag", &["mod", "decompose", "data/zigzag5_defining.mod"]),
    ("mod_dimvec_a3_simple", &["mod", "dimvec", "data/a3_simple2.mod"]),
    ("mod_induce_a3_simple", &["mod", "induce", "data/a3_simple1.mod", "data/a3_leaf.sub", "data/a3.quiver"]),
    ("quiver_build_a3_ba", &["quiver", "build", "data/a3_ba.quiver"]),
    ("quiver_merge_a3", &["quiver", "maximal", "data/a3.quiver", "merge", "1", "2"]),
    ("quiver_hyperplane_kronecker", &["quiver", "maximal", "data/kronecker.quiver", "hyperplane", "1", "2", "1,1"]),
    ("quiver_collapse_a3", &["quiver", "collapse", "data/a3.quiver", "a"]),
    ("quiver_delete_d4_leaf", &["quiver", "delete", "data/d4.quiver", "1"]),
    ("quiver_delete_a3_middle", &["quiver", "delete", "data/a3.quiver", "2"]),
    ("poset_build_zigzag", &["poset", "build", "data/zigzag5.poset"]),
    ("poset_remove_diamond", &["poset", "maximal", "data/diamond.poset", "remove", "1", "2"]),
    ("poset_merge_diamond", &["poset", "maximal", "data/diamond.poset", "merge", "2", "3"]),
    ("poset_clamped_diamond", &["poset", "clamped", "data/diamond.poset", "1", "2"]),
];

fn algmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algmax"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

#[test]
fn recorded_reports() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reports");
    let bless = std::env::var_os("ALGMAX_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in CASES {
        let out = algmax(args);
        assert!(
            out.status.success(),
            "{name}: exit {:?}\n{}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        let ext = if args.contains(&"--json") { "json" } else { "txt" };
        let path = dir.join(format!("{name}.{ext}"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|_| panic!("missing recording {}", path.display()));
        if want != out.stdout {
            failures.push(format!("{name}:\n{}", String::from_utf8_lossy(&out.stdout)));
        }
    }
    assert!(failures.is_empty(), "reports differ:\n{}", failures.join("\n"));
}

#[test]
fn every_recording_has_a_case() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/reports");
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let stem = p.file_stem().unwrap().to_str().unwrap().to_string();
        assert!(CASES.iter().any(|(n, _)| *n == stem), "stale recording {}", p.display());
    }
}

#[test]
fn json_reports_parse() {
    let out = algmax(&["maxdim", "data/m3_q.alg", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["maxdim"], 7);
    assert_eq!(v["field"], "Q");
    assert_eq!(v["inputs"][0]["path"], "data/m3_q.alg");
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join(format!("algmax-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "field Q\ndim 2\nbasis a b\nunit 1 0\nmul a c -> a:1\n").unwrap();
    let out = algmax(&["maxdim", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.alg:5:7:"), "{err}");

    // The whole algebra is not a proper subalgebra.
    let out = algmax(&["maximal", "certify", "data/m2_q.alg", "span e11;span e12;span e21;span e22"]);
    assert_eq!(out.status.code(), Some(1));

    let out = algmax(&["maxdim", "data/does-not-exist.alg"]);
    assert_eq!(out.status.code(), Some(2));
    let out = algmax(&["maxdim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_files_parse_and_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let p = entry.unwrap().path();
        let ext = p.extension().and_then(|e| e.to_str()).unwrap_or("");
        let rel = format!("data/{}", p.file_name().unwrap().to_str().unwrap());
        let out = match ext {
            "alg" | "quiver" | "poset" => algmax(&["structure", &rel]),
            // Modules over a subalgebra are exercised through `mod induce`.
            "mod" if std::fs::read_to_string(&p).unwrap().contains(".sub dim") => continue,
            "mod" => algmax(&["mod", "decompose", &rel]),
            _ => continue,
        };
        assert!(out.status.success(), "{rel}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
