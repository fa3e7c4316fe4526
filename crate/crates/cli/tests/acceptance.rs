//! The acceptance suite: one line per criterion. Criteria 1–10 run the same
//! code as `rth check`; criterion 11 replays the golden-file comparisons
//! against the built binary.

use rth_cli::suite;
use std::path::Path;
use std::process::Command;

const TRIALS: usize = 200;
const SEED: u64 = 0;

fn report(id: usize, name: &str, passed: bool, detail: &str) -> bool {
    println!(
        "criterion {id}: {} — {name} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    passed
}

#[test]
fn acceptance() {
    let mut all = true;
    for r in suite::run_all(TRIALS, SEED) {
        all &= report(r.id, r.name, r.passed, &r.detail);
    }

    // Criterion 11: byte-exact CLI output on every golden fixture.
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let fixtures = manifest.join("tests/fixtures");
    let golden = manifest.join("tests/golden");
    let cases: &[(&[&str], &str)] = &[
        (&["validate", "--theory", "tri.json"], "validate_tri.golden"),
        (
            &["validate", "--theory", "cvx1.json", "--convex"],
            "validate_cvx1.golden",
        ),
        (
            &["order", "--theory", "tri.json", "--format", "json"],
            "order_tri.golden",
        ),
        (
            &["order", "--theory", "tri.json", "--format", "dot"],
            "order_tri_dot.golden",
        ),
        (
            &["monotone", "yield", "--theory", "tri.json", "--valuation", "f.json"],
            "yield_tri.golden",
        ),
        (
            &["monotone", "cost", "--theory", "tri.json", "--valuation", "f.json"],
            "cost_tri.golden",
        ),
        (
            &[
                "monotone", "yield", "--theory", "tri.json", "--valuation", "f.json", "--d",
                "d.json",
            ],
            "yield_tri_d.golden",
        ),
        (
            &[
                "monotone", "pullback", "--map", "aug.json", "--valuation", "root.json",
                "--mode", "max",
            ],
            "pullback_aug.golden",
        ),
        (
            &["monotone", "contraction", "--theory", "tri.json"],
            "contraction_tri.golden",
        ),
        (
            &["monotone", "convex", "--theory", "cvx1.json", "--kind", "weight"],
            "convex_weight.golden",
        ),
        (
            &["monotone", "convex", "--theory", "cvx1.json", "--kind", "robustness"],
            "convex_robustness.golden",
        ),
        (
            &[
                "compare", "--theory", "tri.json", "--valuation", "f.json", "--valuation2",
                "g.json", "--mode", "partial",
            ],
            "compare_fg.golden",
        ),
        (&["dist", "--theory", "um1.json", "--k", "2"], "dist_um1.golden"),
        (
            &["gen", "--family", "truncated-addition", "--size", "3", "--seed", "1"],
            "gen_trunc.golden",
        ),
        (
            &[
                "gen", "--family", "truncated-addition", "--size", "3", "--seed", "1",
                "--format", "dot",
            ],
            "gen_trunc_dot.golden",
        ),
        (
            &["check", "--suite", "5", "--trials", "10", "--seed", "0"],
            "check_5.golden",
        ),
    ];
    let mut cli_ok = true;
    let mut detail = format!("{} subcommand invocations byte-exact", cases.len());
    for (args, file) in cases {
        let expected = std::fs::read(golden.join(file)).expect("golden file present");
        let out = Command::new(env!("CARGO_BIN_EXE_rth"))
            .args(*args)
            .current_dir(&fixtures)
            .output()
            .expect("binary runs");
        if !out.status.success() || out.stdout != expected {
            cli_ok = false;
            detail = format!("{args:?} diverged from {file}");
            break;
        }
    }
    all &= report(11, "CLI determinism", cli_ok, &detail);

    assert!(all, "one or more acceptance criteria failed");
}
