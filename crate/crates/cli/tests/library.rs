use sfob::check::run_suite;
use sfob::{emit, execute, run, Cli, Command, Document, Format};

use clap::Parser;

fn parse(args: &[&str]) -> Command {
    let mut full = vec!["sfob"];
    full.extend_from_slice(args);
    Cli::try_parse_from(full).unwrap().command
}

#[test]
fn suite_is_independent_of_thread_count() {
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = serial.install(|| run_suite(11, 40, None));
    let b = run_suite(11, 40, None);
    assert_eq!(a, b);
    assert!(a.passed);
}

#[test]
fn unsupported_pairs() {
    let cmd = parse(&["classify", "--json", r#"{"genus":0,"exponents":[1]}"#]);
    let doc = run(&cmd).unwrap();
    assert!(matches!(doc, Document::Classification(_)));
    let err = emit(&doc, Format::Dot).unwrap_err();
    assert_eq!(err.exit_code(), 1);
    assert!(emit(&doc, Format::Text).unwrap().contains("stein_fillable        yes"));
}

#[test]
fn execute_reports_codes() {
    let (text, code) = execute(&parse(&["check", "--cases", "5"])).unwrap();
    assert_eq!(code, 0);
    assert!(text.contains("\"seed\": 0"));
    let err = execute(&parse(&["openbook", "--json", r#"{"genus":0,"euler":0,"coefficients":[]}"#])).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert_eq!(err.to_string(), "trivial bundle: no binding");
}
