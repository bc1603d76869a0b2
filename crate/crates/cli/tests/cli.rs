use proptest::prelude::*;

use qgroth_cli::output::Output;
use qgroth_cli::run;

fn ok(args: &[&str]) -> String {
    let mut argv = vec!["qgroth"];
    argv.extend_from_slice(args);
    let exit = run(argv);
    assert_eq!(exit.code, 0, "{args:?}: {}", exit.stderr);
    exit.stdout
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["qgroth"];
    argv.extend_from_slice(args);
    run(argv).code
}

fn round_trip(args: &[&str]) -> Output {
    let mut with_json = vec!["--format", "json"];
    with_json.extend_from_slice(args);
    let text = ok(&with_json);
    let parsed: Output = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text, "{args:?}");
    parsed
}

#[test]
fn a4_series_golden() {
    let expected = "\
C~_11(z) = z - z^9 + z^11 - z^19
C~_12(z) = z^2 - z^8 + z^12 - z^18
C~_13(z) = z^3 - z^7 + z^13 - z^17
C~_14(z) = z^4 - z^6 + z^14 - z^16
";
    assert_eq!(ok(&["qcartan", "--type", "A4", "--mmax", "20", "--i", "1"]), expected);
    let all = ok(&["qcartan", "--type", "A4", "--mmax", "20"]);
    assert_eq!(all.lines().count(), 16);
    assert!(all.contains("C~_22(z) = z + z^3 - z^7 - z^9 + z^11 + z^13 - z^17 - z^19\n"));
}

#[test]
fn d4_dominant_pairs_golden() {
    let expected = "\
(α1)+(α2)+(α3)+(α4)  <->  Y[1,0]Y[2,0]Y[4,0]Y[3,5]  <->  1
(α1+α3)+(α2)+(α4)  <->  Y[2,0]Y[4,0]Y[1,4]  <->  A[1,1]A[3,2]A[2,3]A[4,3]A[3,4]
(α2+α3)+(α1)+(α4)  <->  Y[1,0]Y[4,0]Y[2,4]  <->  A[2,1]A[3,2]A[1,3]A[4,3]A[3,4]
(α3+α4)+(α1)+(α2)  <->  Y[1,0]Y[2,0]Y[4,4]  <->  A[4,1]A[3,2]A[1,3]A[2,3]A[3,4]
(α1+α2+α3)+(α4)  <->  Y[4,0]Y[4,2]  <->  A[1,1]A[2,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]
(α1+α3+α4)+(α2)  <->  Y[2,0]Y[2,2]  <->  A[1,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]
(α2+α3+α4)+(α1)  <->  Y[1,0]Y[1,2]  <->  A[2,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]
(α1+α2+α3+α4)  <->  Y[3,1]  <->  A[1,1]A[2,1]A[4,1]A[3,2]^2A[1,3]A[2,3]A[4,3]A[3,4]
";
    assert_eq!(ok(&["dominant-pairs", "--type", "D4", "--xi", "4,4,5,4", "--d", "1,1,1,1"]), expected);
    assert_eq!(ok(&["dominant-pairs", "--type", "D4", "--d", "1,1,1,1"]).lines().count(), 8);
}

#[test]
fn d4_labelling_golden() {
    let out = ok(&["phi", "--type", "D4", "--xi", "0,0,1,2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[1], "(3,3)\tα1+α2+α3\t1");
    assert_eq!(lines[9], "(3,-1)\tα1+α2+2α3+α4\t0");
    assert_eq!(lines[17], "(3,-5)\tα3+α4\t-1");
    assert_eq!(ok(&["phi", "--type", "D4", "--arrows", "3-1,3-2,4-3", "--xi", "0,0,1,2"]), out);
}

#[test]
fn characters_and_exponents() {
    assert_eq!(
        ok(&["qchar", "fundamental", "--type", "A3", "--xi", "2,3,2", "--vertex", "1", "--p", "0", "--truncated"]),
        "chi~(L(Y[1,0])) = Y[1,0] + Y[2,1]Y[1,2]^-1 + Y[3,2]Y[2,3]^-1\n"
    );
    assert_eq!(ok(&["qchar", "kr", "--type", "A3", "--xi", "2,3,2", "--vertex", "1", "--length", "2", "--p", "0"]), "chi~(W(Y[1,0]Y[1,2])) = Y[1,0]Y[1,2]\n");
    assert_eq!(ok(&["tsystem", "--type", "A3", "--xi", "2,3,2", "--vertex", "1"]), "alpha = -1/2, gamma = 1/2\nT-system at (1, 1, 2): beyond the truncation\n");
    assert_eq!(ok(&["tsystem", "--type", "A3", "--xi", "2,3,2", "--vertex", "1", "--p", "0"]), "alpha = -1/2, gamma = 1/2\nT-system at (1, 1, 0): holds\n");
    assert_eq!(ok(&["tsystem", "--type", "A1", "--vertex", "1", "--length", "3"]).lines().next(), Some("alpha = -1, gamma = 0"));
    let std = ok(&["qchar", "standard", "--type", "A1", "--xi", "2", "--monomial", "Y[1,0]Y[1,2]"]);
    let simple = ok(&["qchar", "simple", "--type", "A1", "--xi", "2", "--monomial", "Y[1,0]Y[1,2]"]);
    assert!(std.starts_with("chi(M(Y[1,0]Y[1,2])) = "));
    assert!(simple.starts_with("chi(L(Y[1,0]Y[1,2])) = "));
}

#[test]
fn canonical_basis() {
    let out = ok(&["canonical", "--type", "A2", "--xi", "2,1", "--weight", "1,1"]);
    assert_eq!(out.lines().count(), 2);
    assert_eq!(ok(&["canonical", "--type", "A2", "--xi", "2,1", "--a", "0,1,0"]), "B~*(0,1,0) = Phi(chi~(L(Y[2,1]))) = X2\n");
    assert_eq!(code(&["canonical", "--type", "A2", "--a", "1,0"]), 1);
}

#[test]
fn hall_commands() {
    assert_eq!(ok(&["hall", "number", "--type", "A2", "--arrows", "1-2", "--q", "3", "--x", "S1", "--y", "S1", "--w", "S1^2"]), "g^{(α1)^2}_{(α1),(α1)} = 4\n");
    assert_eq!(ok(&["hall", "gamma", "--type", "A2", "--q", "3", "--x", "S1", "--y", "S1", "--t", "0", "--w", "0"]), "gamma^{0,0}_{(α1),(α1)} = 1/2\n");
    assert_eq!(ok(&["hall", "gamma", "--type", "A3", "--q", "2", "--x", "S1", "--y", "S3", "--t", "S3", "--w", "S1"]), "gamma^{(α3),(α1)}_{(α1),(α3)} = 1\n");
    assert!(ok(&["hall", "relations", "--type", "A2", "--q", "2"]).ends_with("0 failures\n"));
    assert!(ok(&["hall", "iota", "--type", "A2", "--q", "2"]).contains("constant identity holds"));
    assert_eq!(code(&["hall", "relations", "--type", "A2"]), 1);
    assert_eq!(code(&["hall", "relations", "--type", "A2", "--q", "5"]), 1);
    assert_eq!(code(&["hall", "relations", "--type", "D4", "--q", "2"]), 1);
}

#[test]
fn verification_commands() {
    assert!(ok(&["verify", "presentation", "--type", "A2", "--levels", "0..2"]).ends_with("0 failures\n"));
    assert!(ok(&["verify", "mainth", "--type", "A3", "--xi", "2,3,2", "--bound", "3"]).ends_with("0 mismatches\n"));
    let one = ok(&["verify", "criterion", "8"]);
    assert!(one.starts_with("[PASS] criterion  8"), "{one}");
    assert_eq!(code(&["verify", "criterion", "12"]), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["bogus"]), 1);
    assert_eq!(code(&["qcartan"]), 1);
    assert_eq!(code(&["qcartan", "--type", "F4"]), 1);
    assert_eq!(code(&["phi", "--type", "A3", "--arrows", "1-2,3-2", "--xi", "0,0,0"]), 1);
    assert_eq!(code(&["--help"]), 0);
    // five-dimensional submodule enumeration exceeds the cap
    assert_eq!(code(&["hall", "number", "--type", "A2", "--q", "2", "--x", "S1^2", "--y", "S1^3", "--w", "S1^5"]), 3);
    assert_eq!(code(&["qchar", "standard", "--type", "D4", "--xi", "4,4,5,4", "--monomial", "Y[3,5]"]), 1);
}

#[test]
fn failed_verification_exits_with_two() {
    let failing: Output = serde_json::from_str(
        r#"{"command":"presentation","result":{"type_name":"A1","xi":[0],"levels":[0,0],"checked":1,"failures":[{"relation":"R1","i":1,"j":1,"m":0,"p":1,"residual":"1"}]}}"#,
    )
    .unwrap();
    assert!(!failing.passed());
    assert_eq!(qgroth_cli::CliError::Core(qgroth::Error::Verification("x".into())).exit_code(), 2);
    assert_eq!(qgroth_cli::CliError::Core(qgroth::Error::ResourceCap("x".into())).exit_code(), 3);
}

#[test]
fn json_round_trips() {
    round_trip(&["qcartan", "--type", "D4", "--mmax", "12"]);
    round_trip(&["phi", "--type", "A3", "--xi", "2,3,2"]);
    round_trip(&["qchar", "simple", "--type", "A2", "--xi", "2,1", "--monomial", "Y[1,0]Y[1,2]"]);
    round_trip(&["tsystem", "--type", "A3", "--xi", "2,3,2", "--vertex", "2", "--p", "1"]);
    round_trip(&["dominant-pairs", "--type", "A3", "--d", "1,2,1"]);
    round_trip(&["canonical", "--type", "A3", "--xi", "2,3,2", "--weight", "1,1,1"]);
    round_trip(&["hall", "number", "--type", "A2", "--q", "2", "--x", "S2", "--y", "S1", "--w", "[1,1]"]);
    round_trip(&["hall", "gamma", "--type", "A2", "--q", "3", "--x", "S1", "--y", "S2", "--t", "S2", "--w", "S1"]);
    round_trip(&["hall", "relations", "--type", "A2", "--q", "2", "--levels", "0..1"]);
    round_trip(&["hall", "iota", "--type", "A2", "--q", "3"]);
    round_trip(&["verify", "presentation", "--type", "A2"]);
    round_trip(&["verify", "mainth", "--type", "A2", "--bound", "2"]);
    round_trip(&["verify", "criterion", "1"]);
}

#[test]
fn text_output_is_stable() {
    for args in [
        &["dominant-pairs", "--type", "A4", "--d", "1,1,1,1"][..],
        &["canonical", "--type", "A3", "--weight", "1,2,1"][..],
        &["hall", "iota", "--type", "A3", "--q", "2"][..],
        &["qchar", "fundamental", "--type", "D4", "--vertex", "1", "--p", "0"][..],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn config_file_and_flags() {
    let dir = std::env::temp_dir().join(format!("qgroth-cli-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.toml");
    std::fs::write(&path, "type = \"D4\"\nxi = [4, 4, 5, 4]\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["--config", p, "dominant-pairs", "--d", "1,1,1,1"]), ok(&["dominant-pairs", "--type", "D4", "--xi", "4,4,5,4", "--d", "1,1,1,1"]));
    // flags win over the file
    assert_eq!(ok(&["--config", p, "dominant-pairs", "--type", "A2", "--xi", "2,1", "--d", "1,1"]).lines().count(), 2);
    std::fs::write(&path, "colour = \"red\"\n").unwrap();
    assert_eq!(code(&["--config", p, "phi", "--type", "A2"]), 1);
    assert_eq!(code(&["--config", dir.join("missing.toml").to_str().unwrap(), "phi", "--type", "A2"]), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cache_directory_holds_versioned_tables() {
    let dir = std::env::temp_dir().join(format!("qgroth-cli-cache-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let args = ["--cache-dir", d, "hall", "number", "--type", "A2", "--q", "2", "--x", "S1", "--y", "S1", "--w", "S1^2"];
    let first = ok(&args);
    assert_eq!(ok(&args), first);
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    assert_eq!(files, vec!["hall-A2-12-q2.v1.json".to_string()]);
    let table: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join(&files[0])).unwrap()).unwrap();
    assert_eq!(table["version"], 1);
    assert_eq!(table["entries"]["g:(α1)|(α1)|(α1)^2"], 3);
    ok(&["--cache-dir", d, "qcartan", "--type", "A2"]);
    assert_eq!(ok(&["--cache-dir", d, "qcartan", "--type", "A2"]), ok(&["qcartan", "--type", "A2"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_entry_point() {
    let bin = env!("CARGO_BIN_EXE_qgroth");
    let out = std::process::Command::new(bin).args(["qcartan", "--type", "A1", "--mmax", "4"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "C~_11(z) = z - z^3\n");
    let bad = std::process::Command::new(bin).args(["phi"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("--type is required"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dominant_pairs_json_round_trips(d in prop::collection::vec(0i64..3, 3)) {
        let list = d.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        round_trip(&["dominant-pairs", "--type", "A3", "--d", &list]);
    }

    #[test]
    fn fundamentals_json_round_trip(vertex in 1usize..4, shift in 0i64..3, truncated in any::<bool>()) {
        let p = (2 - vertex as i64 % 2 + 1) % 2 - 2 * shift;
        let p = p.to_string();
        let mut args = vec!["qchar", "fundamental", "--type", "A3", "--xi", "2,3,2", "--vertex"];
        let v = vertex.to_string();
        args.push(&v);
        args.extend(["--p", &p]);
        if truncated {
            args.push("--truncated");
        }
        round_trip(&args);
    }
}
