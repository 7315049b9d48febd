//! End-to-end tests of the command-line binary: exit codes, the stable
//! JSON schema, file output, and the parse/print round trip.

use std::process::{Command, Output};

use qkloc::algebra::context::Context;
use qkloc::cli_io::parse_and_lower;

fn qkloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qkloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit_code(args: &[&str]) -> i32 {
    qkloc(args).status.code().expect("exit code")
}

#[test]
fn exit_codes_are_zero_one_two() {
    // success
    assert_eq!(exit_code(&["verify-degree2"]), 0);
    assert_eq!(
        exit_code(&["verify-recursion", "--n", "1", "--i", "0", "--j", "1", "--m", "2", "--max-degree", "3"]),
        0
    );
    assert_eq!(exit_code(&["lefschetz", "--n", "1", "--k", "2"]), 0);
    assert_eq!(
        exit_code(&["c-coeff", "--n", "2", "--i", "0", "--j", "1", "--m", "2", "--method", "both"]),
        0
    );
    assert_eq!(exit_code(&["j-pform", "--n", "1", "--max-degree", "1"]), 0);
    assert_eq!(exit_code(&["reconstruct", "--n", "1", "--max-degree", "2"]), 0);
    assert_eq!(
        exit_code(&["tangent-eigenvalues", "--n", "1", "--i", "0", "--j", "1", "--m", "2"]),
        0
    );
    assert_eq!(
        exit_code(&["split-kpm", "--n", "1", "q^2/(1 - q*L0/L1)"]),
        0
    );
    assert_eq!(
        exit_code(&["residue", "--n", "1", "--i", "0", "--j", "1", "--m", "1", "1/(1 - q*L0/L1)"]),
        0
    );
    assert_eq!(
        exit_code(&["partial-fractions", "--n", "1", "1/((1-q)*(1-q*L0/L1))"]),
        0
    );
    // usage errors
    assert_eq!(exit_code(&[]), 2);
    assert_eq!(exit_code(&["no-such-command"]), 2);
    assert_eq!(exit_code(&["j", "--n"]), 2);
    assert_eq!(exit_code(&["j", "--n", "1"]), 2); // missing --max-degree
    assert_eq!(exit_code(&["parse", "(1 - q"]), 2);
    assert_eq!(exit_code(&["parse", "--n", "1", "L7"]), 2);
    assert_eq!(exit_code(&["partial-fractions", "--n", "1", "1/(1+q+q^2)"]), 2);
}

#[test]
fn json_envelope_is_schema_stable() {
    let out = qkloc(&["j", "--n", "1", "--max-degree", "0", "--fixed-point", "0", "--format", "json"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let expected = r#"{
  "checks": [],
  "result": {
    "coefficients": [
      {
        "den": [],
        "den_scalar": [],
        "den_unit": [
          "0",
          "0"
        ],
        "num": [
          [
            0,
            [
              [
                [
                  "0",
                  "0"
                ],
                {
                  "coeffs": [
                    "1"
                  ],
                  "order": 1
                }
              ]
            ]
          ],
          [
            1,
            [
              [
                [
                  "0",
                  "0"
                ],
                {
                  "coeffs": [
                    "-1"
                  ],
                  "order": 1
                }
              ]
            ]
          ]
        ]
      }
    ],
    "fixed_point": 0
  },
  "session": {
    "d": 0,
    "m": 1,
    "n": 1
  }
}
"#;
    assert_eq!(text, expected);
}

#[test]
fn json_output_parses_and_carries_the_envelope() {
    let out = qkloc(&[
        "j", "--n", "1", "--max-degree", "2", "--fixed-point", "0", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["session"]["n"], 1);
    assert_eq!(value["session"]["d"], 2);
    assert_eq!(value["session"]["m"], 2);
    let coeffs = value["result"]["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 3);
    // degree-1 coefficient: denominator (1 - q L0 L1^{-1})
    assert_eq!(coeffs[1]["den"][0]["a"], 1);
    assert_eq!(coeffs[1]["den"][0]["mu"], serde_json::json!(["1", "-1"]));

    let check = qkloc(&[
        "verify-recursion", "--n", "1", "--i", "0", "--j", "1", "--m", "1",
        "--max-degree", "2", "--format", "json",
    ]);
    assert!(check.status.success());
    let value: serde_json::Value = serde_json::from_slice(&check.stdout).unwrap();
    let checks = value["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("qkloc-out-{}.json", std::process::id()));
    let path_str = path.to_str().unwrap();
    let out = qkloc(&["verify-degree2", "--format", "json", "--out", path_str]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(value["result"]["pass"], true);
    std::fs::remove_file(&path).ok();
}

#[test]
fn latex_format_renders_fractions() {
    let out = qkloc(&[
        "j", "--n", "1", "--max-degree", "1", "--fixed-point", "0", "--format", "latex",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\\frac{1}{(1 - q\\,\\Lambda_{0}\\Lambda_{1}^{-1})}"));
}

#[test]
fn parse_print_round_trip() {
    // printing a parsed-and-lowered value and reparsing it yields an
    // equal value under cross-multiplication
    let ctx = Context::new(2, 2);
    let samples = [
        "L0^2 * L1^-1",
        "1/(1 - q*L0/L1)",
        "(1 - q) + 1/(1 - q*L0*L1^-1)",
        "q^2/(1 - q^2*L0/L1)",
        "(1 + q) / ((1 - q) * (1 - q*L1/L0))",
        "3/2 - q",
        "-q + 1",
    ];
    for text in samples {
        let first = parse_and_lower(&ctx, text)
            .unwrap()
            .into_qfunction()
            .unwrap();
        let printed = format!("{}", first);
        let second = parse_and_lower(&ctx, &printed)
            .unwrap_or_else(|e| panic!("reparse of `{}` failed: {}", printed, e))
            .into_qfunction()
            .unwrap();
        assert!(
            first.eq_q(&second),
            "round trip changed the value of `{}` (printed `{}`)",
            text,
            printed
        );
    }
}
