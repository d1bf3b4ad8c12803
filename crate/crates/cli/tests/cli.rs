use std::process::Command;

use polybern::expr::parse_expr;
use polybern::run;
use polybern::table::{build_table, SequenceKind, TableDocument, TableRequest};
use polybern_core::bernoulli::{bernoulli2nd_numbers, gregory_coefficients};
use polybern_core::rational::{factorial, rat};
use polybern_core::Rational;
use proptest::prelude::*;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn polybern(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("polybern").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn csv_values(stdout: &str) -> Vec<(usize, Rational)> {
    csv::Reader::from_reader(stdout.as_bytes())
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect()
}

#[test]
fn table_examples() {
    let cases: [(&[&str], &str); 3] = [
        (&["table", "--kind", "poly2nd", "-k", "2", "-n", "2"], "n,value\n0,1\n1,1/4\n2,-13/36\n"),
        (&["table", "--kind", "bernoulli", "-n", "2"], "n,value\n0,1\n1,-1/2\n2,1/6\n"),
        (&["table", "--kind", "bernoulli2nd", "-n", "1"], "n,value\n0,1\n1,1/2\n"),
    ];
    for (args, expected) in cases {
        let outcome = polybern(args);
        assert_eq!(outcome.code, 0, "{args:?}: {}", outcome.stderr);
        assert_eq!(outcome.stdout, expected, "{args:?}");
    }
}

#[test]
fn ordinary_convention_reproduces_listed_values() {
    let ogf = polybern(&["table", "--kind", "bernoulli2nd", "-n", "5", "--convention", "ogf"]);
    let listed = [rat(1, 1), rat(1, 2), rat(-1, 12), rat(1, 24), rat(-19, 720), rat(3, 160)];
    let values: Vec<_> = csv_values(&ogf.stdout).into_iter().map(|(_, v)| v).collect();
    assert_eq!(values, listed);
    let egf = polybern(&["table", "--kind", "bernoulli2nd", "-n", "5", "--convention", "egf"]);
    for (n, v) in csv_values(&egf.stdout) {
        assert_eq!(v, &listed[n] * factorial(n));
    }
}

#[test]
fn exit_codes() {
    let pass = polybern(&["verify", "--identity", "thm2", "--n-max", "15", "--k", "-3..3"]);
    assert_eq!(pass.code, 0);
    assert!(pass.stdout.starts_with("identity thm2: PASS"));

    let fail = polybern(&["verify", "--identity", "thm2-ogf", "--n-max", "4"]);
    assert_eq!(fail.code, 1);
    assert!(fail.stdout.contains("FAIL"));
    assert!(fail.stdout.contains("first counterexample at n=2"));

    for args in [
        &["table", "--kind", "poly2nd", "-n", "3"][..],
        &["table", "--kind", "bernoulli", "-n", "3", "-k", "1"],
        &["table", "--kind", "stirling2", "-n", "3"],
        &["table", "--kind", "bernoulli", "-n", "-3"],
        &["table", "--kind", "bernoulli", "-n", "3", "--x", "1/0"],
        &["verify", "--identity", "thm9", "--n-max", "3"],
        &["verify", "--identity", "eq9", "--n-max", "3", "--k", "2"],
        &["verify", "--identity", "thm2", "--n-max", "3", "--k", "3..1"],
        &["eval", "--expr", "t"],
        &["frobnicate"],
    ] {
        let outcome = polybern(args);
        assert_eq!(outcome.code, 2, "{args:?}");
        assert!(outcome.stdout.is_empty(), "{args:?}");
        assert!(!outcome.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_polybern");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "--identity", "thm1", "--n-max", "0"]), Some(0));
    assert_eq!(status(&["verify", "--identity", "thm2-ogf", "--n-max", "3"]), Some(1));
    assert_eq!(status(&["table", "--kind", "nonsense", "-n", "1"]), Some(2));
}

#[test]
fn verify_examples() {
    assert_eq!(polybern(&["verify", "--identity", "eq9", "--n-max", "20"]).code, 0);
    let thm1 = polybern(&["verify", "--identity", "thm1", "--n-max", "0"]);
    assert_eq!(thm1.code, 0);
    assert_eq!(thm1.stdout, "identity thm1: PASS (points: 4)\n");
    let symbolic = polybern(&["verify", "--identity", "thm3", "--n-max", "6", "--x", "x,-1/3"]);
    assert_eq!(symbolic.code, 0, "{}", symbolic.stdout);
}

#[test]
fn verify_json_report() {
    let outcome = polybern(&[
        "verify", "--identity", "thm2-ogf", "--n-max", "3", "--format", "json",
    ]);
    assert_eq!(outcome.code, 1);
    let report: serde_json::Value = serde_json::from_str(&outcome.stdout).unwrap();
    assert_eq!(report["identity"], "thm2-ogf");
    assert_eq!(report["status"], "fail");
    assert_eq!(report["total_points"], 4);
    assert_eq!(report["failures"][0]["point"]["n"], 2);
    assert_eq!(report["failures"][0]["rhs"], "-13/36");
}

#[test]
fn eval_examples() {
    let egf = polybern(&["eval", "--expr", "t/log1p(t)", "--order", "3", "--egf"]);
    assert_eq!(egf.code, 0);
    assert_eq!(egf.stdout, "0: 1\n1: 1/2\n2: -1/6\n3: 1/4\n");

    let raw = polybern(&["eval", "--expr", "t/log1p(t)", "--order", "2"]);
    assert_eq!(raw.stdout, "0: 1\n1: 1/2\n2: -1/12\n");

    let inverse = polybern(&["eval", "--expr", "log1p(exp(t)-1)", "--order", "4"]);
    assert_eq!(inverse.stdout, "0: 0\n1: 1\n2: 0\n3: 0\n4: 0\n");

    let gf = polybern(&["eval", "--expr", "Li(2, 1-exp(-t))/log1p(t)", "--order", "2"]);
    assert_eq!(gf.stdout, "0: 1\n1: 1/4\n2: -13/72\n");

    let bad = polybern(&["eval", "--expr", "1/(t-t)", "--order", "2"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("series quotient not a power series"));

    let syntax = polybern(&["eval", "--expr", "Li(t, t)", "--order", "2"]);
    assert_eq!(syntax.code, 1);
    assert!(syntax.stderr.contains("Li order must be an integer literal"));
}

fn every_table(n_max: usize) -> Vec<(SequenceKind, TableRequest)> {
    let base = TableRequest { n_max, ..Default::default() };
    vec![
        (SequenceKind::Bernoulli, base.clone()),
        (SequenceKind::Bernoulli, TableRequest { x: Some(rat(1, 3)), ..base.clone() }),
        (SequenceKind::Bernoulli2nd, base.clone()),
        (SequenceKind::Bernoulli2nd, TableRequest { x: Some(rat(-5, 2)), ..base.clone() }),
        (SequenceKind::Poly2nd, TableRequest { k: Some(-3), ..base.clone() }),
        (SequenceKind::Poly2nd, TableRequest { k: Some(4), x: Some(rat(7, 4)), ..base.clone() }),
        (SequenceKind::Stirling1, TableRequest { l: Some(3), ..base.clone() }),
        (SequenceKind::Stirling2, TableRequest { l: Some(3), ..base.clone() }),
        (SequenceKind::HigherOrder, TableRequest { x: Some(rat(1, 2)), ..base.clone() }),
        (SequenceKind::HigherOrder, TableRequest { alpha: Some(3), ..base }),
    ]
}

#[test]
fn csv_and_json_round_trip_to_library_values() {
    for (kind, req) in every_table(12) {
        let table = build_table(kind, &req).unwrap();

        let mut csv_out = Vec::new();
        table.write_csv(&mut csv_out).unwrap();
        let from_csv = csv_values(std::str::from_utf8(&csv_out).unwrap());
        assert_eq!(from_csv, table.entries, "{kind:?}");

        let mut json_out = Vec::new();
        table.write_json(&mut json_out).unwrap();
        let doc: TableDocument = serde_json::from_slice(&json_out).unwrap();
        let from_json: Vec<(usize, Rational)> = doc
            .entries
            .iter()
            .map(|row| (row.n, row.value.parse().unwrap()))
            .collect();
        assert_eq!(from_json, table.entries, "{kind:?}");
        assert_eq!(doc.params, table.params);
        for row in &doc.entries {
            assert!(!row.value.starts_with('+') && !row.value.ends_with("/1"));
        }
    }
    let b2 = build_table(SequenceKind::Bernoulli2nd, &TableRequest { n_max: 30, ..Default::default() })
        .unwrap();
    let values: Vec<_> = b2.entries.into_iter().map(|(_, v)| v).collect();
    assert_eq!(values, bernoulli2nd_numbers(30));
    let req = TableRequest {
        n_max: 30,
        convention: Some(polybern::table::Convention::Ogf),
        ..Default::default()
    };
    let g: Vec<_> = build_table(SequenceKind::Bernoulli2nd, &req)
        .unwrap()
        .entries
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    assert_eq!(g, gregory_coefficients(30));
}

#[test]
fn json_output_shape() {
    let outcome = polybern(&["table", "--kind", "poly2nd", "-k", "2", "-n", "1", "--format", "json"]);
    assert_eq!(
        outcome.stdout,
        "{\"sequence\":\"poly2nd\",\"params\":{\"k\":\"2\"},\"entries\":[{\"n\":0,\"value\":\"1\"},{\"n\":1,\"value\":\"1/4\"}]}\n"
    );
}

const MALFORMED: &[&str] = &[
    "", "(", ")", "t +", "* t", "exp(", "exp)", "Li(2)", "Li(, t)", "Li(2, )", "Li(1/2, t)",
    "Li(t, t)", "t^", "t^-1", "t^t", "1/0", "sin(t)", "x", "t t", "3 4", "pow1p(t)",
    "log1p()", "exp(t,t)", "((t)", "t)", "#", "t $ t", "Li(99999999999999999999, t)", "t^99999",
];

#[test]
fn malformed_corpus_reports_columns() {
    for text in MALFORMED {
        let err = parse_expr(text).expect_err(text);
        assert!(err.column >= 1, "{text:?}");
        assert!(err.column <= text.chars().count() + 1, "{text:?}: {err}");
    }
}

proptest! {
    #[test]
    fn parser_never_panics(text in "[-+*/^(),0-9t LiexplogpwA-Z1.]{0,24}") {
        if let Err(e) = parse_expr(&text) {
            prop_assert!(e.column >= 1);
            prop_assert!(e.column <= text.chars().count() + 1);
        }
    }

    #[test]
    fn parser_round_trips_display(text in "(t|[0-9]|exp\\(t\\)|log1p\\(t\\))([-+*/](t|[0-9]|exp\\(t\\)|log1p\\(t\\))){0,5}") {
        if let Ok(expr) = parse_expr(&text) {
            let again = parse_expr(&expr.to_string()).unwrap();
            prop_assert_eq!(again, expr);
        }
    }
}
