use std::process::{Command, Output};

const CRAZY: &str = "rec: u0 = 1; A = (14n+1)(14n+3)(14n+11)(n^2+2n+4); B = 56(7n+1)(7n+3)(n+3)(n^2+3)";

fn hypalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn verdict_comes_first() {
    let cases = [
        ("2F1([-1/2, -1/6], [2/3]; x)", "ALGEBRAIC"),
        ("3F2([1/2, 1 + sqrt(2), 1 - sqrt(2)], [sqrt(2), -sqrt(2)]; 4x)", "ALGEBRAIC"),
        ("2F1([1/2, 1/2], [1]; x)", "TRANSCENDENTAL"),
        ("2F1([-3, 1/2], [1/3]; x)", "POLYNOMIAL(deg<4)"),
        (CRAZY, "ALGEBRAIC"),
    ];
    for (input, verdict) in cases {
        let o = hypalg(&["classify", input]);
        assert!(o.status.success(), "{input}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(first_line(&o), verdict, "{input}");
    }
}

#[test]
fn classify_subcommand_is_optional() {
    let a = hypalg(&["2F1([1,1],[2]; x)"]);
    let b = hypalg(&["classify", "2F1([1,1],[2]; x)"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(first_line(&a), "TRANSCENDENTAL");
}

#[test]
fn recurrence_flag_adds_prefix() {
    let o = hypalg(&["--recurrence", "A = (2n+1)(2n+1); B = (n+1)(n+1)"]);
    assert_eq!(first_line(&o), "TRANSCENDENTAL");
}

#[test]
fn exit_codes() {
    let bad = hypalg(&["2F1([pi, 1], [2]; x)"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("1:6"));
    assert_eq!(hypalg(&["2F1([1, 1]; x)"]).status.code(), Some(2));
    assert_eq!(hypalg(&["2F1([1, 1], [0.5]; x)"]).status.code(), Some(2));
    let ill = hypalg(&["2F1([1, 1], [-2]; x)"]);
    assert_eq!(ill.status.code(), Some(3));
    assert_eq!(hypalg(&["--no-such-flag", "x"]).status.code(), Some(2));
}

#[test]
fn oracle_flags() {
    let o = hypalg(&["2F1([-1/2, -1/6], [2/3]; x)", "--terms", "4", "--globally-bounded", "--guess", "4,8"]);
    let out = stdout(&o);
    assert!(out.contains("terms: 1, 1/8, 1/64, 11/2048"), "{out}");
    assert!(out.contains("christol: globally bounded (N = 6)"), "{out}");
    assert!(out.contains("guess: bidegree (4, 8)"), "{out}");

    let o = hypalg(&["2F1([1/2, 1/2], [1]; x)", "--guess", "2,2"]);
    assert!(stdout(&o).contains("guess: no relation of bidegree up to (2, 2)"));

    let o = hypalg(&["1F1([1/2], [1/3]; x)", "--globally-bounded"]);
    assert!(stdout(&o).contains("christol: not applicable"));
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("hypalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let expr = dir.join("crazy.txt");
    std::fs::write(&expr, format!("{CRAZY}\n")).unwrap();
    assert_eq!(first_line(&hypalg(&[expr.to_str().unwrap()])), "ALGEBRAIC");

    let json = dir.join("input.json");
    std::fs::write(&json, r#"{"schema": "hypalg-input/1", "kind": "pFq", "top": ["1/2", "1/2"], "bottom": ["1"]}"#)
        .unwrap();
    assert_eq!(first_line(&hypalg(&[json.to_str().unwrap()])), "TRANSCENDENTAL");

    let trace = dir.join("trace.json");
    let svg = dir.join("ic.svg");
    let o = hypalg(&[CRAZY, "--trace", trace.to_str().unwrap(), "--diagram", svg.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&trace).unwrap().starts_with("{\n  \"schema\": \"hypalg-trace/1\""));
    assert_eq!(std::fs::read_to_string(&svg).unwrap().matches("<g id=").count(), 6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn parallel_flag_gives_identical_output() {
    let a = hypalg(&[CRAZY, "--trace", "-", "--globally-bounded"]);
    let b = hypalg(&[CRAZY, "--trace", "-", "--globally-bounded", "--parallel"]);
    assert_eq!(stdout(&a), stdout(&b));
}
