//! Golden-file tests for every command. Set `UPDATE_GOLDEN=1` to rewrite the
//! expected outputs after an intended change.

mod support;

use support::{check_goldens, invoke, CASES};

#[test]
fn golden_outputs() {
    let mismatches = check_goldens(std::env::var_os("UPDATE_GOLDEN").is_some());
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn every_command_has_a_golden_case() {
    for command in [
        "check",
        "dsem",
        "equiv",
        "sim",
        "step-repl",
        "realisable",
        "distinguish",
        "axioms",
        "laurent",
        "export-graph",
    ] {
        assert!(
            CASES
                .iter()
                .any(|c| c.args.iter().find(|a| !a.starts_with("--")) == Some(&command)),
            "{command} has no golden case"
        );
    }
}

#[test]
fn output_is_deterministic() {
    for c in CASES
        .iter()
        .filter(|c| ["axioms", "distinguish_scalars", "export_graph_loop"].contains(&c.name))
    {
        assert_eq!(invoke(c.args, c.stdin), invoke(c.args, c.stdin));
    }
}

#[test]
fn input_errors_exit_with_two() {
    let (code, stdout, stderr) = invoke(&["check", "bad-sort.sfc"], None);
    assert_eq!((code, stdout.as_str()), (2, ""));
    assert!(
        stderr.contains("sort error") && stderr.contains("right arity 2"),
        "{stderr}"
    );

    let (code, _, stderr) = invoke(&["check", "no-such-file.sfc"], None);
    assert_eq!(code, 2);
    assert!(stderr.contains("no-such-file.sfc"), "{stderr}");

    let (code, _, stderr) = invoke(&["check", "syntax-error.sfc"], None);
    assert_eq!(code, 2);
    assert!(stderr.contains("syntax-error.sfc"), "{stderr}");

    for args in [
        &["laurent", "1/0", "--from", "0", "--to", "2"][..],
        &["laurent", "1/x", "--from", "3", "--to", "2"],
        &["sim", "loop.sfc", "--steps", "2", "--inputs", "1;2"],
        &["sim", "loop.sfc", "--steps", "1", "--inputs", "1,2"],
        &["sim", "loop.sfc", "--steps", "1", "--start", "1"],
        &["axioms", "--samples", "1,two"],
        &["frobnicate"],
        &["sim", "loop.sfc"],
    ] {
        let (code, _, _) = invoke(args, None);
        assert_eq!(code, 2, "{args:?}");
    }
}
