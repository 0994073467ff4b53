use std::path::{Path, PathBuf};
use std::process::Command;

use spark_cli::format::{parse_grundle, GrundleFile};
use spark_core::arith::rat;
use spark_core::holonomy::{apply_gauge, Grundle};
use spark_core::models::ModelFamily;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sparks(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_sparks")).args(args.iter().map(|a| a.as_ref())).output().unwrap();
    Run { code: out.status.code().unwrap(), stdout: String::from_utf8(out.stdout).unwrap(), stderr: String::from_utf8(out.stderr).unwrap() }
}

#[test]
fn cohomology_reports() {
    let r = sparks(&[&"cohomology", &data("rp2.complex"), &"--degree", &"2"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("free rank 0, torsion [2]"), "{}", r.stdout);
    let r = sparks(&[&"cohomology", &data("point.complex"), &"--degree", &"0"]);
    assert!(r.stdout.contains("free rank 1\n"), "{}", r.stdout);
    let r = sparks(&[&"cohomology", &data("torus.complex"), &"--degree", &"1", &"--format", &"json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["free_rank"], 2);
    let r = sparks(&[&"cohomology", &"fixture:rp2", &"--degree", &"1", &"--ring", &"z/2"]);
    assert!(r.stdout.contains("Z/2): free rank 0, torsion [2]"), "{}", r.stdout);
}

#[test]
fn characters_render_the_grid() {
    let r = sparks(&[&"characters", &data("torus.complex")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("middle-left   H(F/I)       T^2"), "{}", r.stdout);
    assert_eq!(r.stdout.matches(": EXACT").count(), 6);
    let r = sparks(&[&"characters", &data("rp2.complex")]);
    assert!(r.stdout.contains("bottom-middle H(I)         Z/2"), "{}", r.stdout);
    assert!(r.stdout.contains("generator holonomy [1/2]"));
    let r = sparks(&[&"characters", &data("s2.complex")]);
    assert!(r.stdout.contains("middle-left   H(F/I)       0"));
    assert!(r.stdout.contains("bottom-middle H(I)         Z^1"));
}

#[test]
fn holonomy_of_shipped_grundles() {
    for (cycle, value) in [("torus-a.cycle", "1/3"), ("torus-b.cycle", "1/4")] {
        let r = sparks(&[&"holonomy", &data("torus-flat.grundle"), &data(cycle)]);
        assert_eq!(r.code, 0, "{}", r.stdout);
        assert!(r.stdout.contains(&format!("holonomy {}\n", value)), "{}", r.stdout);
        assert!(r.stdout.contains("degree-1 formula       ") && r.stdout.contains("cross-check: PASS"));
    }
    let r = sparks(&[&"holonomy", &data("torus-trivial.grundle"), &data("torus-a.cycle")]);
    assert!(r.stdout.contains("holonomy 0/1"));
    let r = sparks(&[&"holonomy", &data("circle-constant.grundle"), &data("circle-vertex.cycle")]);
    assert!(r.stdout.contains("holonomy 1/3"), "{}", r.stdout);
}

#[test]
fn bad_labels_name_the_cell() {
    let dir = tempfile::tempdir().unwrap();
    let cycle = sparks(&[&"cycles", &data("torus.complex"), &"--index", &"0"]).stdout;
    assert!(cycle.contains("term 1 0,9\n"), "{}", cycle);
    let bad = dir.path().join("bad.cycle");
    std::fs::write(&bad, format!("{}label 0,9 5\n", cycle)).unwrap();
    let r = sparks(&[&"holonomy", &data("torus-flat.grundle"), &bad]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("label 5 on simplex 0,9 is not admissible"), "{}", r.stderr);
    let good = dir.path().join("good.cycle");
    std::fs::write(&good, format!("{}label 0,9 0\n", cycle)).unwrap();
    let r = sparks(&[&"holonomy", &data("torus-flat.grundle"), &good]);
    assert!(r.stdout.contains("holonomy 1/3\n"), "{}{}", r.stdout, r.stderr);
}

#[test]
fn equivalence_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.txt");
    let g = data("torus-flat.grundle");
    let r = sparks(&[&"equiv", &g, &g, &"--witness", &w]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "EQUIVALENT\n"));
    assert_eq!(sparks(&[&"verify", &w, &g, &g]).code, 0);

    let r = sparks(&[&"equiv", &g, &data("torus-flat-other.grundle")]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "NOT EQUIVALENT\n"));
    assert_eq!(sparks(&[&"verify", &w, &g, &data("torus-flat-other.grundle")]).code, 1);

    // a gauge transform of the shipped grundle
    let file = parse_grundle(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let fam = ModelFamily::build(&file.complex.build().unwrap(), 1).unwrap();
    let tot = fam.smooth.cech.as_ref().unwrap();
    let g1 = Grundle { degree: 1, values: file.values(tot).unwrap() };
    let b: Vec<_> = (0..tot.dim(0)).map(|i| rat((i % 5) as i64 - 2, 19)).collect();
    let mut s = tot.zero(1);
    for i in tot.block_range(1, 0) {
        s[i] = rat((i % 3) as i64 - 1, 1);
    }
    let g2 = apply_gauge(&fam.smooth, &g1, &b, &s).unwrap();
    let moved = dir.path().join("moved.grundle");
    std::fs::write(&moved, GrundleFile::from_values(tot, file.complex.clone(), 1, &g2.values).to_text()).unwrap();
    let r = sparks(&[&"equiv", &moved, &g, &"--witness", &w]);
    assert_eq!(r.stdout, "EQUIVALENT\n");
    let r = sparks(&[&"verify", &w, &moved, &g]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    let spark = data("circle-flat.spark");
    let r = sparks(&[&"equiv", &spark, &spark, &"--witness", &w]);
    assert_eq!(r.stdout, "EQUIVALENT\n");
    assert_eq!(sparks(&[&"verify", &w, &spark, &spark]).code, 0);
}

#[test]
fn verify_models_and_depth_zero() {
    let r = sparks(&[&"verify", &data("s2.complex")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(!r.stdout.contains("FAIL"));
    assert!(r.stdout.contains("[cochain-hyperspark depth 2] axiom (B) all degrees: PASS"));
    assert!(r.stdout.contains("H(I) ≅ H(Ī): PASS"));
    let r = sparks(&[&"verify", &data("s2.complex"), &"--depth", &"0"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("axiom (B) witness in degree 1: [1/1"), "{}", r.stdout);
}

#[test]
fn hodge_and_abel_jacobi() {
    let r = sparks(&[&"hodge-spark", &data("circle.complex"), &data("circle-edge.cochain")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("H(R) = [1/3, -1/3, 1/3]") && r.stdout.contains("EXACT"), "{}", r.stdout);
    let r = sparks(&[&"abel-jacobi", &data("circle.complex"), &data("circle-third.cochain")]);
    assert!(r.stdout.contains("periods [1/3]") && r.stdout.contains("NOT LINEARLY EQUIVALENT"), "{}", r.stdout);
    let r = sparks(&[&"abel-jacobi", &data("circle.complex"), &data("circle-edge.cochain")]);
    assert!(r.stdout.contains("periods [0/1]") && r.stdout.contains("\nLINEARLY EQUIVALENT TO ZERO"), "{}", r.stdout);
    // dΓ not integral on the torus
    let r = sparks(&[&"abel-jacobi", &data("torus.complex"), &data("circle-third.cochain")]);
    assert_eq!(r.code, 2);
}

#[test]
fn pullback_along_a_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let c = data("circle.complex");
    let r = sparks(&[&"pullback", &c, &c, &data("circle-flat.spark"), &"--map", &"1,2,0"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let spark: String = r.stdout.lines().skip_while(|l| *l != "spark").map(|l| format!("{}\n", l)).collect();
    let pulled = dir.path().join("p.spark");
    std::fs::write(&pulled, spark).unwrap();
    // the rotation is homotopic to the identity
    let r = sparks(&[&"equiv", &data("circle-flat.spark"), &pulled]);
    assert!(r.stdout.starts_with("EQUIVALENT\nwitness\n"), "{}", r.stdout);
    let r = sparks(&[&"pullback", &c, &data("torus.complex"), &data("circle-flat.spark"), &"--map", &"0,1,2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.complex");
    std::fs::write(&bad, "complex\nvertices 2\nfacet 0 5\nend\n").unwrap();
    let r = sparks(&[&"cohomology", &bad]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
    assert_eq!(sparks(&[&"cohomology", &"fixture:nope"]).code, 2);
    assert_eq!(sparks(&[&"cohomology", &dir.path().join("missing")]).code, 2);
    assert_eq!(sparks(&[&"characters", &data("circle.complex"), &"--model", &"nope"]).code, 2);
}

#[test]
fn output_is_deterministic() {
    let a = sparks(&[&"flat-grundle", &data("torus.complex"), &"--coords", &"1/3,1/4"]);
    let b = sparks(&[&"flat-grundle", &data("torus.complex"), &"--coords", &"1/3,1/4"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, std::fs::read_to_string(data("torus-flat.grundle")).unwrap());
}
