//! The command-line contract: output formats and exit codes.

use std::process::{Command, Output};

use prob_stirling::cli::TableDocument;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prob-stirling"))
        .args(args)
        .env_remove("PROB_STIRLING_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn table(args: &[&str]) -> TableDocument {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    TableDocument::from_json(&stdout(&out)).unwrap()
}

#[test]
fn documented_tables() {
    let doc = table(&["table", "--rv", "constant:c=1", "--kind", "S2Y", "--order", "4"]);
    assert_eq!(doc.value(4, Some(2)), Some("7"));
    assert_eq!(doc.entries.len(), 15);
    let doc = table(&["table", "--rv", "bernoulli:p=1/2", "--kind", "S2Y", "--order", "3"]);
    assert_eq!(doc.value(3, Some(2)), Some("3/4"));
    let doc = table(&["table", "--rv", "exponential:alpha=1", "--kind", "S1Y", "--order", "3"]);
    assert_eq!(doc.value(3, Some(2)), Some("-6"));
    assert_eq!(doc.rv, "exponential:alpha=1");
    assert_eq!(doc.kind, "S1Y");
    assert_eq!(doc.lambda, None);
}

#[test]
fn json_and_csv_agree() {
    let args = ["table", "--rv", "binomial:m=3,p=1/3", "--kind", "S2YL", "--lambda", "1/2", "--order", "5"];
    let doc = table(&args);
    assert_eq!(doc.lambda.as_deref(), Some("1/2"));
    assert_eq!(TableDocument::from_json(&doc.to_json()).unwrap(), doc);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = stdout(&run(&csv_args));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,k,value"));
    for (line, e) in lines.zip(&doc.entries) {
        assert_eq!(line, format!("{},{},{}", e.n, e.k.unwrap(), e.value));
    }
}

#[test]
fn sequences_and_other_kinds() {
    let doc = table(&["table", "--rv", "poisson:alpha=3", "--kind", "CUMULANTS", "--order", "5"]);
    assert_eq!(doc.entries.len(), 5);
    assert!(doc.entries.iter().all(|e| e.k.is_none() && e.value == "3"));
    let csv = stdout(&run(&["table", "--rv", "poisson:alpha=3", "--kind", "CUMULANTS", "--order", "2", "--format", "csv"]));
    assert_eq!(csv, "n,value\n1,3\n2,3\n");
    let doc = table(&["table", "--rv", "constant:c=1", "--kind", "EULER", "--order", "2"]);
    assert_eq!(doc.value(1, Some(0)), Some("-1/2"));
    let doc = table(&["table", "--rv", "poisson:alpha=1", "--kind", "ADELL_BENYI", "--order", "2"]);
    assert_eq!(doc.value(2, Some(1)), Some("-1"));
}

#[test]
fn float_column_keeps_exact_values() {
    let doc = table(&["table", "--rv", "bernoulli:p=1/2", "--kind", "S2Y", "--order", "3", "--float"]);
    let e = doc.entries.iter().find(|e| e.n == 3 && e.k == Some(2)).unwrap();
    assert_eq!(e.value, "3/4");
    assert_eq!(e.float, Some(0.75));
}

#[test]
fn order_from_environment_and_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_prob-stirling"))
        .args(["table", "--rv", "poisson:alpha=1", "--kind", "S2Y"])
        .env("PROB_STIRLING_ORDER", "3")
        .output()
        .unwrap();
    assert_eq!(TableDocument::from_json(&stdout(&out)).unwrap().order, 3);
    let doc = table(&["table", "--rv", "poisson:alpha=1", "--kind", "S2Y"]);
    assert_eq!(doc.order, 12);
    assert_eq!(run(&["table", "--rv", "poisson:alpha=1", "--kind", "S2Y", "--order", "25"]).status.code(), Some(2));
    let out = run(&["table", "--rv", "constant:c=1", "--kind", "S2Y", "--order", "25", "--unsafe-order"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["table", "--rv", "poisson:alpha=-1", "--kind", "S2Y"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--rv", "poisson:lambda=1", "--kind", "S2Y"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--rv", "poisson:alpha=1", "--kind", "S9Y"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--rv", "poisson:alpha=1", "--kind", "S2Y", "--lambda", "1/2"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--rv", "poisson:alpha=1", "--kind", "S2YL"]).status.code(), Some(2));
    let out = run(&["table", "--rv", "normal:mu=0,sigma2=1", "--kind", "S1Y"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonzero mean"));
    assert_eq!(run(&["expand", "--rv", "uniform:a=-1,b=1", "--poly", "0,1"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "orthogonality", "--rv", "uniform:a=-2,b=2"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["expand", "--rv", "poisson:alpha=1", "--poly", "1,x"]).status.code(), Some(2));
}

#[test]
fn expand_examples() {
    let out = run(&["expand", "--rv", "constant:c=1", "--poly", "0,0,1"]);
    assert_eq!(stdout(&out), "1/2, 1, 1\nreconstruction: exact\n");
    let out = run(&["expand", "--rv", "poisson:alpha=1", "--poly", "1"]);
    assert_eq!(stdout(&out), "1\nreconstruction: exact\n");
    let out = run(&["expand", "--rv", "geometric:p=1/2", "--poly", "0,1", "--lambda", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap().split(", ").count(), 2);
    assert_eq!(lines.next(), Some("reconstruction: exact"));
}

#[test]
fn verify_single_suites() {
    let out = run(&["verify", "orthogonality", "--rv", "geometric:p=1/3", "--order", "10"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "closed-forms", "--rv", "gamma:alpha=2,beta=1", "--order", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = run(&["verify", "vanishing", "--rv", "poisson:alpha=1", "--order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SKIP"));
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "euler-roundtrip", "--order", "5"];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines.len(), 9 * 2 + 1);
    assert!(lines.last().unwrap().starts_with("summary: 18 passed"));
}
