use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};
use std::sync::Arc;

use tempfile::TempDir;
use zgroupoid::action::left_multiplication;
use zgroupoid::builders::{group_bundle, pair_groupoid, product_form};
use zgroupoid::search::{enum_actions, enum_morphisms, find_isomorphism};
use zgroupoid::{catalog, GroupTable, Groupoid, Morphism, Universe};
use zgroupoid_cli::doc::{groupoid_value, parse, render, Document};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn zg(dir: &Path, args: &[&str]) -> Run {
    zg_stdin(dir, args, None)
}

fn zg_stdin(dir: &Path, args: &[&str], input: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zgroupoid"))
        .args(args)
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut stdin = child.stdin.take().unwrap();
    stdin.write_all(input.unwrap_or("").as_bytes()).unwrap();
    drop(stdin);
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn put(dir: &Path, name: &str, doc: &Document) {
    std::fs::write(dir.join(name), render(doc)).unwrap();
}

fn put_groupoid(dir: &Path, name: &str, g: Groupoid) {
    put(dir, name, &Document::Groupoid(Arc::new(g)));
}

fn read_groupoid(text: &str) -> Arc<Groupoid> {
    match parse(text, "out", Path::new(".")).unwrap() {
        Document::Groupoid(g) => g,
        other => panic!("expected a groupoid, got {}", other.kind()),
    }
}

fn fixtures() -> TempDir {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    for (name, g) in catalog::catalog() {
        put_groupoid(d, &format!("{name}.gpd"), g);
    }
    put_groupoid(d, "trivial.gpd", catalog::trivial_group());
    std::fs::write(
        d.join("h.mor"),
        r#"{"kind":"morphism","source":"z2.gpd","target":"trivial.gpd","graph":[["e","0"],["e","1"]]}"#,
    )
    .unwrap();
    std::fs::write(
        d.join("id.mor"),
        r#"{"kind":"morphism","source":"p2.gpd","target":"p2.gpd","graph":[["(1|1)","(1|1)"],["(1|2)","(1|2)"],["(2|1)","(2|1)"],["(2|2)","(2|2)"]]}"#,
    )
    .unwrap();
    let z2 = Arc::new(catalog::z2());
    put(d, "lz2.act", &Document::action(left_multiplication(&z2).unwrap()));
    dir
}

#[test]
fn validate_reports_counts() {
    let dir = fixtures();
    let r = zg(dir.path(), &["validate", "z2.gpd"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "valid: 2 elements, 1 unit, 1 orbit\n"));
    let r = zg(dir.path(), &["validate", "bundle.gpd"]);
    assert_eq!(r.stdout, "valid: 3 elements, 2 units, 2 orbits\n");
    let r = zg(dir.path(), &["validate", "h.mor"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "valid: morphism Z2 ⊸ 1, 2 pairs\n"));
}

#[test]
fn mono_on_non_mono_prints_kernel() {
    let dir = fixtures();
    let r = zg(dir.path(), &["morphism", "mono", "h.mor"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("kernel: {0 1}"), "{}", r.stdout);
    let r = zg(dir.path(), &["morphism", "mono", "id.mor"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "mono\n"));
}

#[test]
fn enum_morphisms_matches_library_count() {
    let dir = fixtures();
    let r = zg(dir.path(), &["enum", "morphisms", "z2.gpd", "z2.gpd"]);
    assert_eq!(r.code, 0);
    let z2 = Arc::new(catalog::z2());
    let expected = enum_morphisms(&z2, &z2).unwrap().len();
    let graphs = r.stdout.lines().filter(|l| l.starts_with('[')).count();
    assert_eq!(graphs, expected);
    assert_eq!(graphs, 2);
    assert!(r.stdout.ends_with("2 morphisms\n"));
}

#[test]
fn catalog_documents_round_trip_byte_for_byte() {
    let dir = fixtures();
    for (name, _) in catalog::catalog() {
        let file = format!("{name}.gpd");
        let out = format!("{name}.out");
        let r = zg(dir.path(), &["validate", &file, "--output", &out]);
        assert_eq!(r.code, 0, "{name}: {}", r.stderr);
        let before = std::fs::read(dir.path().join(&file)).unwrap();
        let after = std::fs::read(dir.path().join(&out)).unwrap();
        assert_eq!(before, after, "{name}");
    }
}

#[test]
fn non_canonical_input_is_rewritten_canonically() {
    let dir = fixtures();
    let compact = groupoid_value(&catalog::p3()).to_string();
    let r = zg_stdin(dir.path(), &["validate", "-", "--output", "p3.out"], Some(&compact));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let canonical = std::fs::read_to_string(dir.path().join("p3.gpd")).unwrap();
    assert_eq!(std::fs::read_to_string(dir.path().join("p3.out")).unwrap(), canonical);
}

#[test]
fn output_is_deterministic() {
    let dir = fixtures();
    for args in [
        vec!["enum", "actions", "p2.gpd", "a", "b"],
        vec!["bisections", "group", "p3.gpd"],
        vec!["action", "coset", "z4.gpd", "0", "2"],
    ] {
        let first = zg(dir.path(), &args).stdout;
        assert!(!first.is_empty());
        assert_eq!(zg(dir.path(), &args).stdout, first);
    }
}

#[test]
fn paths_resolve_against_the_referring_document() {
    let dir = fixtures();
    let elsewhere = TempDir::new().unwrap();
    let path = dir.path().join("h.mor");
    let r = zg(elsewhere.path(), &["morphism", "kernel", path.to_str().unwrap()]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "kernel: {0 1}\n"), "{}", r.stderr);
}

#[test]
fn builders_match_the_library() {
    let dir = fixtures();
    let d = dir.path();
    let ab = Universe::new("X", ["a", "b"]).unwrap();
    let cases: Vec<(Vec<&str>, Groupoid)> = vec![
        (vec!["build", "pair", "a", "b"], pair_groupoid(&ab).unwrap()),
        (vec!["build", "set", "p", "q"], catalog::s2()),
        (vec!["build", "group", "z4"], catalog::z4()),
        (vec!["build", "group", "klein"], catalog::klein()),
        (vec!["build", "bundle", "z2", "trivial"], group_bundle(&[GroupTable::cyclic(2), GroupTable::trivial()]).unwrap()),
        (vec!["build", "equiv", "1,2", "3"], catalog::equivalence_12_3()),
        (
            vec!["build", "product-form", "z2", "x", "y"],
            product_form(&Universe::new("E", ["x", "y"]).unwrap(), &GroupTable::cyclic(2)).unwrap(),
        ),
        (vec!["build", "transformation", "z2", "p", "q"], catalog::z2_swap()),
    ];
    for (args, expected) in cases {
        let r = zg(d, &args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        let built = read_groupoid(&r.stdout);
        assert!(find_isomorphism(&built, &expected).is_some(), "{args:?}");
    }
    let r = zg(d, &["build", "group", "s3", "--name", "S3"]);
    let s3 = read_groupoid(&r.stdout);
    assert_eq!((s3.len(), s3.name()), (6, "S3"));
    assert!(s3.elem("231").is_ok());
    assert_eq!(zg(d, &["build", "group", "q8"]).code, 2);
}

#[test]
fn groupoid_operations() {
    let dir = fixtures();
    let d = dir.path();
    let r = zg(d, &["info", "bundle.gpd"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("transitive: no"));
    let r = zg(d, &["restrict", "p3.gpd", "(1|1)", "(2|2)"]);
    assert!(find_isomorphism(&read_groupoid(&r.stdout), &catalog::p2()).is_some());
    assert_eq!(zg(d, &["restrict", "p3.gpd", "(1|2)"]).code, 1);
    let r = zg(d, &["union", "z2.gpd", "s2.gpd"]);
    assert_eq!(read_groupoid(&r.stdout).len(), 4);
    let r = zg(d, &["product", "z2.gpd", "p2.gpd"]);
    assert_eq!(read_groupoid(&r.stdout).len(), 8);
    let r = zg(d, &["decompose", "equiv.gpd"]);
    assert_eq!(r.stdout.matches("component").count(), 2, "{}", r.stdout);
}

#[test]
fn morphism_commands() {
    let dir = fixtures();
    let d = dir.path();
    let r = zg(d, &["morphism", "compose", "h.mor", "id.mor"]);
    assert_eq!(r.code, 2, "source/target mismatch is a usage error");
    let r = zg(d, &["morphism", "surjective", "h.mor"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "surjective\n"));
    let r = zg(d, &["morphism", "epi-witness", "id.mor"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no witness\n"));
    let r = zg(d, &["morphism", "factor", "h.mor", "--epi", "e.mor", "--mono", "m.mor"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(zg(d, &["morphism", "surjective", "e.mor"]).code, 0);
    assert_eq!(zg(d, &["morphism", "mono", "m.mor"]).code, 0);
    let r = zg(d, &["morphism", "compose", "m.mor", "e.mor", "--output", "c.mor"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(zg(d, &["morphism", "kernel", "c.mor"]).stdout, "kernel: {0 1}\n");
    let r = zg(d, &["morphism", "classify-into-group", "h.mor"]);
    assert_eq!(r.stdout, "base unit: 0\n0 ↦ e\n1 ↦ e\n");
}

#[test]
fn bisection_commands() {
    let dir = fixtures();
    let d = dir.path();
    let r = zg(d, &["bisections", "list", "p3.gpd"]);
    assert_eq!(r.stdout.lines().count(), 6);
    let r = zg(d, &["enum", "bisections", "z2.gpd"]);
    assert_eq!(r.stdout, "{0}\n{1}\n2 bisections\n");
    let r = zg(d, &["bisections", "group", "p3.gpd"]);
    assert!(r.stdout.starts_with("order: 6\n"));
    let r = zg(d, &["bisections", "ad", "p2.gpd", "(1|2)", "(2|1)", "--output", "ad.mor"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(zg(d, &["morphism", "mono", "ad.mor"]).code, 0);
}

#[test]
fn action_commands() {
    let dir = fixtures();
    let d = dir.path();
    let r = zg(d, &["action", "validate", "lz2.act"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "valid: action of Z2 on 2 points, 1 orbit\n"));
    assert_eq!(zg(d, &["action", "to-morphism", "lz2.act", "--output", "lz2.mor"]).code, 0);
    let r = zg(d, &["action", "from-morphism", "lz2.mor", "--output", "back.act"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(zg(d, &["action", "validate", "back.act"]).code, 0);
    assert_eq!(zg(d, &["action", "from-morphism", "h.mor"]).code, 1);
    let r = zg(d, &["action", "groupoid", "lz2.act"]);
    assert!(find_isomorphism(&read_groupoid(&r.stdout), &catalog::p2()).is_some());
    let r = zg(d, &["action", "quotient", "z4.gpd", "0", "2"]);
    assert!(find_isomorphism(&read_groupoid(&r.stdout), &catalog::z2()).is_some());
    assert_eq!(zg(d, &["action", "quotient", "p2.gpd", "(1|1)"]).code, 1);
    let r = zg(d, &["action", "coset", "p2.gpd", "(1|1)", "(2|2)", "--output", "c.act"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(zg(d, &["action", "classify", "c.act"]).code, 1, "two orbits");
    std::fs::write(
        d.join("cols.act"),
        r#"{"kind":"action","groupoid":"p2.gpd","carrier":["x1","x2"],
            "graph":[["x1","(1|1)","x1"],["x1","(1|2)","x2"],["x2","(2|1)","x1"],["x2","(2|2)","x2"]]}"#,
    )
    .unwrap();
    let r = zg(d, &["action", "classify", "cols.act"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("fiber: {x1}\n"), "{}", r.stdout);
    assert!(r.stdout.contains("identification:"));
    let r = zg(d, &["action", "homogeneous", "cols.act", "(1|1)=x1", "(2|2)=x2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("subgroupoid: {(1|1) (1|2) (2|1) (2|2)}\nclasses: 2\n"), "{}", r.stdout);
    let r = zg(d, &["action", "homogeneous", "lz2.act", "0=0"]);
    assert!(r.stdout.starts_with("subgroupoid: {0}\nclasses: 2\n"), "{}", r.stdout);
    assert_eq!(zg(d, &["action", "homogeneous", "cols.act", "(1|1)=x2", "(2|2)=x2"]).code, 1);
    let r = zg(d, &["action", "induce", "z4.gpd", "lz2.act"]);
    assert_eq!(r.code, 1, "Z2 is not a subgroupoid of Z4 by label: {}", r.stderr);
    let r = zg(d, &["action", "coset", "z4.gpd", "0", "--output", "z4.act"]);
    assert_eq!(r.code, 0);
    assert_eq!(zg(d, &["action", "classify", "z4.act", "--point", "[1]"]).code, 0);
}

#[test]
fn enum_actions_matches_library() {
    let dir = fixtures();
    let r = zg(dir.path(), &["enum", "actions", "p2.gpd", "a", "b"]);
    let g = Arc::new(catalog::p2());
    let x = Arc::new(Universe::new("X", ["a", "b"]).unwrap());
    let n = enum_actions(&g, &x).unwrap().len();
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with('[')).count(), n);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = fixtures();
    let d = dir.path();
    std::fs::write(d.join("bad.gpd"), "{\"kind\": \"groupoid\",\n  \"name\": }").unwrap();
    for args in [
        vec!["validate", "bad.gpd"],
        vec!["info", "missing.gpd"],
        vec!["morphism", "mono", "bad.gpd"],
        vec!["bisections", "list", "bad.gpd"],
        vec!["action", "validate", "bad.gpd"],
        vec!["enum", "morphisms", "bad.gpd", "z2.gpd"],
        vec!["frobnicate"],
        vec!["morphism", "mono", "z2.gpd"],
    ] {
        let r = zg(d, &args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    let r = zg(d, &["validate", "bad.gpd"]);
    assert!(r.stderr.contains("bad.gpd:2:"), "{}", r.stderr);
}

#[test]
fn invalid_documents_exit_one() {
    let dir = fixtures();
    let d = dir.path();
    let mut value = groupoid_value(&catalog::z2());
    value["compose"].as_array_mut().unwrap().pop();
    std::fs::write(d.join("broken.gpd"), value.to_string()).unwrap();
    let r = zg(d, &["validate", "broken.gpd"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("invalid: "), "{}", r.stdout);
    std::fs::write(
        d.join("partial.mor"),
        r#"{"kind":"morphism","source":"z2.gpd","target":"z2.gpd","graph":[["1","1"]]}"#,
    )
    .unwrap();
    assert_eq!(zg(d, &["morphism", "validate", "partial.mor"]).code, 1);
    std::fs::write(
        d.join("bad.act"),
        r#"{"kind":"action","groupoid":"z2.gpd","carrier":["x"],"graph":[["x","0","x"]]}"#,
    )
    .unwrap();
    assert_eq!(zg(d, &["action", "validate", "bad.act"]).code, 1);
}

#[test]
fn identity_document_matches_library_identity() {
    let dir = fixtures();
    let r = zg(dir.path(), &["morphism", "compose", "id.mor", "id.mor"]);
    let p2 = Arc::new(catalog::p2());
    assert_eq!(r.stdout, render(&Document::morphism(Morphism::identity(&p2))));
}
