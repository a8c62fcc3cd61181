//! Golden cases for the `sfc` binary, shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub stdin: Option<&'static str>,
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case {
        name,
        args,
        stdin: None,
        exit,
    }
}

pub const CASES: &[Case] = &[
    case("check_loop", &["check", "loop.sfc"], 0),
    case("check_json", &["--json", "check", "one-coreg.sfc"], 0),
    case("dsem_loop", &["dsem", "loop.sfc"], 0),
    case("dsem_empty", &["dsem", "one-cozero.sfc"], 0),
    case("dsem_json", &["dsem", "plus-one.sfc", "--json"], 0),
    case("equiv_reg_coreg", &["equiv", "id.sfc", "reg-coreg.sfc"], 0),
    case("equiv_coreg_reg", &["equiv", "id.sfc", "coreg-reg.sfc"], 0),
    case("equiv_differs", &["equiv", "id.sfc", "two.sfc"], 1),
    case("equiv_json", &["--json", "equiv", "two.sfc", "id.sfc"], 1),
    case(
        "sim_loop",
        &[
            "sim", "loop.sfc", "--start", "0", "--steps", "4", "--inputs", "1,0,0,0",
        ],
        0,
    ),
    case(
        "sim_loop_checked",
        &[
            "sim",
            "loop.sfc",
            "--steps",
            "3",
            "--inputs",
            "1",
            "--outputs",
            "1,1,1",
        ],
        0,
    ),
    case(
        "sim_loop_wrong",
        &[
            "sim",
            "loop.sfc",
            "--steps",
            "3",
            "--inputs",
            "1",
            "--outputs",
            "1,2,1",
        ],
        1,
    ),
    case(
        "sim_one_coreg_stuck",
        &["sim", "one-coreg.sfc", "--steps", "3"],
        1,
    ),
    case(
        "sim_one_coreg_early",
        &["sim", "one-coreg.sfc", "--start", "-1", "--steps", "4"],
        1,
    ),
    case(
        "sim_one_coreg_checked",
        &[
            "sim",
            "one-coreg.sfc",
            "--start",
            "-1",
            "--steps",
            "4",
            "--outputs",
            "1,0,0,0",
        ],
        0,
    ),
    case(
        "sim_existential",
        &[
            "sim",
            "codiscard.sfc",
            "--steps",
            "3",
            "--outputs",
            "5,-1,1/2",
            "--existential",
        ],
        0,
    ),
    case(
        "sim_trajectory",
        &["sim", "loop.sfc", "--trajectory", "loop.traj"],
        0,
    ),
    case(
        "sim_trajectory_bad",
        &["sim", "loop.sfc", "--trajectory", "loop-bad.traj"],
        1,
    ),
    case(
        "sim_json",
        &[
            "--json",
            "sim",
            "plus-one.sfc",
            "--start",
            "-1",
            "--steps",
            "3",
            "--inputs",
            "1,2,3",
        ],
        0,
    ),
    Case {
        name: "step_repl_loop",
        args: &["step-repl", "loop.sfc"],
        stdin: Some("1 | 1\n# comment\n0 | 1\n0 | 5\n0 | 1\nquit\n"),
        exit: 0,
    },
    Case {
        name: "step_repl_ambiguous",
        args: &["step-repl", "coreg-discard.sfc", "--start", "-1"],
        stdin: Some("0\n1;2\n0\n"),
        exit: 0,
    },
    case("realisable_one_coreg", &["realisable", "one-coreg.sfc"], 1),
    case("realisable_plus_one", &["realisable", "plus-one.sfc"], 0),
    case("realisable_reg", &["realisable", "reg.sfc"], 0),
    case("realisable_json", &["realisable", "--json", "one.sfc"], 0),
    case(
        "distinguish_scalars",
        &["distinguish", "id.sfc", "two.sfc"],
        0,
    ),
    case(
        "distinguish_equivalent",
        &["distinguish", "id.sfc", "reg-coreg.sfc"],
        1,
    ),
    case("axioms", &["axioms"], 0),
    case("axioms_samples", &["axioms", "--samples", "0,-2"], 0),
    case(
        "laurent_geometric",
        &["laurent", "1/(1-x)", "--from", "-2", "--to", "5"],
        0,
    ),
    case(
        "laurent_delay",
        &["laurent", "1/x", "--from", "-3", "--to", "2"],
        0,
    ),
    case(
        "laurent_json",
        &[
            "--json",
            "laurent",
            "(1 + 2*x) / (1 - x)",
            "--from",
            "0",
            "--to",
            "4",
        ],
        0,
    ),
    case("export_graph_loop", &["export-graph", "loop.sfc"], 0),
    case(
        "export_graph_json",
        &["export-graph", "--json", "plus-one.sfc"],
        0,
    ),
];

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

pub fn invoke(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sfc"))
        .args(args)
        .current_dir(data_dir())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("piped");
        pipe.write_all(stdin.unwrap_or("").as_bytes())
            .expect("stdin");
    }
    let out = child.wait_with_output().expect("binary finishes");
    (
        out.status.code().expect("exited"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

/// Run every case, comparing exit codes and stdout with the stored files.
/// With `update`, the files are rewritten first.
pub fn check_goldens(update: bool) -> Vec<String> {
    let mut mismatches = Vec::new();
    for c in CASES {
        let (code, stdout, stderr) = invoke(c.args, c.stdin);
        let path = golden_path(c.name);
        if update {
            fs::write(&path, &stdout).expect("write golden");
        }
        let Ok(expected) = fs::read_to_string(&path) else {
            mismatches.push(format!("{}: missing {}", c.name, path.display()));
            continue;
        };
        if code != c.exit {
            mismatches.push(format!(
                "{}: exit {code}, expected {}\n{stderr}",
                c.name, c.exit
            ));
        }
        if stdout != expected {
            mismatches.push(format!(
                "{}: stdout differs\n--- got\n{stdout}--- expected\n{expected}",
                c.name
            ));
        }
    }
    mismatches
}
