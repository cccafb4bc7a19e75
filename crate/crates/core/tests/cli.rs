mod common;

use smcmod::cli::run;

use common::fixture;

fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["smcmod".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn every_fixture_structure_checks() {
    for name in ["h0.smc", "h1.smc", "tensor-f2x2.smc", "sign-kminus.smc", "m2f2-transport.smc"] {
        let (code, out, err) = run_str(&["check", "--structure", &path(name)], "");
        assert_eq!(code, 0, "{name}: {out}{err}");
    }
}

#[test]
fn a_tampered_structure_exits_with_verification_failure() {
    let text = std::fs::read_to_string(fixture("h0.smc")).unwrap();
    // flip one entry of the symmetry matrix
    let at = text.find("\nc: ").expect("symmetry entry") + 1;
    let line_end = at + text[at..].find('\n').unwrap();
    let next = line_end + 1;
    let row_end = next + text[next..].find('\n').unwrap();
    let row: Vec<&str> = text[next..row_end].split_whitespace().collect();
    let flipped: Vec<String> =
        row.iter().enumerate().map(|(i, v)| if i == 0 { if *v == "0" { "1".into() } else { "0".into() } } else { v.to_string() }).collect();
    let tampered = format!("{}  {}{}", &text[..next], flipped.join(" "), &text[row_end..]);
    let (code, out, err) = run_str(&["check"], &tampered);
    assert_eq!(code, 1, "{out}{err}");
}

#[test]
fn constructed_structures_pipe_into_check() {
    let (code, built, err) = run_str(&["construct", "--family", "h0", "--field", "2"], "");
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = run_str(&["check", "--structure", "-"], &built);
    assert_eq!(code, 0, "{out}{err}");
}

#[test]
fn picard_of_the_dual_numbers_over_f4() {
    let (code, out, err) = run_str(&["picard", "--ring", &path("f4x2.alg")], "");
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("picard elements: 3"), "{out}");
}

#[test]
fn classification_output_is_stable_across_shards() {
    let ring = path("f2x2.alg");
    let (c1, one, _) = run_str(&["classify", "--ring", &ring, "--shards", "1"], "");
    let (c4, four, _) = run_str(&["classify", "--ring", &ring, "--shards", "4"], "");
    assert_eq!((c1, c4), (0, 0));
    assert_eq!(one, four);
}

#[test]
fn bad_input_exits_with_parse_failure() {
    let (code, _, err) = run_str(&["check"], "field: 2\ndim: two\n");
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run_str(&["classify"], "");
    assert_eq!(code, 2);
}

#[test]
fn over_budget_runs_exit_with_budget_failure() {
    let (code, _, err) = run_str(&["classify", "--ring", &path("f3z2.alg")], "");
    assert_eq!(code, 3, "{err}");
}
