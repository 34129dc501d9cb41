//! End-to-end command tests driven through the library entry point.

fn run(args: &[&str]) -> (i32, String) {
    let full: Vec<String> =
        std::iter::once("alcove".to_string()).chain(args.iter().map(|s| s.to_string())).collect();
    let mut out = Vec::new();
    let code = alcove_cli::run(&full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn report_b2_passes_and_is_deterministic() {
    let (code, first) = run(&["report", "b2"]);
    assert_eq!(code, 0, "{first}");
    assert!(first.contains("ALL GOLDEN CHECKS PASS"));
    assert!(first.contains("\"e_W0\",\"eps0\",\"eps1\",\"eps2\",\"eps3\",\"E\""));
    assert!(first.contains("\"(1/2,0)\",\"t_(1,0) rho_pi\",\"1/4\""));
    let (code2, second) = run(&["report", "b2"]);
    assert_eq!(code2, 0);
    assert_eq!(first, second, "output must be byte-identical across runs");
}

#[test]
fn unknown_flags_are_usage_errors() {
    let (code, _) = run(&["weyl", "classes", "--datum", "B2", "--bogus"]);
    assert_eq!(code, 2);
    let (code, out) = run(&["report", "b3"]);
    assert_eq!(code, 2);
    assert!(out.contains("unknown report"));
}

#[test]
fn datum_validate_exit_codes() {
    let (code, out) = run(&["datum", "validate", "--datum", "B2"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"valid\":true"));
    // a broken datum file trips the failure exit code
    let dir = std::env::temp_dir().join("alcove-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(
        &path,
        r#"{"rank":1,"roots":[[1],[-1]],"coroots":[[3],[-3]],"simple":[0],"name":"bad"}"#,
    )
    .unwrap();
    let spec = format!("@{}", path.display());
    let (code, out) = run(&["datum", "validate", "--datum", &spec]);
    assert_eq!(code, 1);
    assert!(out.contains("pairing-not-2"));
}

#[test]
fn datum_preset_roundtrip_through_file() {
    let dir = std::env::temp_dir().join("alcove-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.json");
    let (code, _) = run(&[
        "datum",
        "preset",
        "--name",
        "B2",
        "--lattice",
        "standard",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let spec = format!("@{}", path.display());
    let (code, out) = run(&["ell", "finite", "--datum", &spec]);
    assert_eq!(code, 0);
    assert!(out.contains("\"elliptic_classes\":2"));
}

#[test]
fn ep_pair_both_routes() {
    let (code, out) = run(&[
        "ep",
        "pair",
        "--datum",
        "B2",
        "--u",
        "t=0,0;chi=eps0",
        "--v",
        "t=0,0;chi=E",
        "--method",
        "both",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"measure\":\"-1\""));
    assert!(out.contains("\"facets\":\"-1\""));
    assert!(out.contains("\"agree\":true"));
    // V4 stabilizer characters resolve as irrK/triv
    let (code, out) = run(&[
        "ep",
        "pair",
        "--datum",
        "B2",
        "--u",
        "t=1/2,0;chi=triv",
        "--v",
        "t=1/2,0;chi=triv",
        "--method",
        "measure",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"measure\":\"1\""));
}

#[test]
fn affine_verifiers_report_clean() {
    let (code, out) = run(&["affine", "verify-lemma21", "--datum", "B2", "--maxlen", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"failures\":[]"));
    let (code, out) = run(&["affine", "verify-lemma22", "--datum", "A2:root", "--maxlen", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"failures\":[]"));
}

#[test]
fn viz_writes_svg_with_overlay() {
    let dir = std::env::temp_dir().join("alcove-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sigma.svg");
    let (code, _) = run(&[
        "viz",
        "sigma",
        "--datum",
        "B2",
        "--window",
        "-2:3",
        "--overlay",
        "gamma-edge:3/2,0;3/2,1/2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("polygon"), "staircase overlay should shade 2-cells");
    assert!(svg.contains("</svg>"));
    // rank guard
    let (code, out) = run(&[
        "viz", "sigma", "--datum", "A1", "--window", "-2:2", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("rank 2"));
}

#[test]
fn contract_build_writes_table() {
    let dir = std::env::temp_dir().join("alcove-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    let (code, _) = run(&[
        "contract",
        "build",
        "--datum",
        "B2",
        "--pins",
        "paper",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["datum"], "B2");
    assert!(v["base_cells"].as_u64().unwrap() > 20);
}
