use std::fs;
use std::io::{self, BufRead, IsTerminal, Write};
use std::path::Path;

use anyhow::{bail, Context as _, Result};
use serde_json::{json, Value};
use sfc_core::algebra::{laurent_expand, RatFunc, Rational};
use sfc_core::analysis::{axiom_suite, distinguishing_context, realisable};
use sfc_core::denotational::{dsem, equiv, witness, AffineMap};
use sfc_core::operational::{
    compile, run, run_existential, solve_run, step, NetState, RunError, StepResult, Trajectory,
};
use sfc_core::syntax::{parse, Circuit};

use crate::ticks::{parse_line, parse_stream, parse_trajectory};
use crate::Command;

fn load(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
fn say(line: &str) {
    if writeln!(io::stdout().lock(), "{line}").is_err() {
        std::process::exit(0);
    }
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        say(&serde_json::to_string_pretty(&value).expect("serialisable"));
    } else {
        say(&text());
    }
}

fn strings<K: ToString>(v: &[K]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn bracket<K: ToString>(v: &[K]) -> String {
    format!("[{}]", strings(v).join(", "))
}

fn map_json(m: &AffineMap<RatFunc>) -> Value {
    json!({
        "a": m.a.iter().map(|r| strings(r)).collect::<Vec<_>>(),
        "b": strings(&m.b),
    })
}

fn trajectory_json(t: &Trajectory<Rational>) -> Value {
    json!({
        "start": t.start,
        "steps": t.steps.iter().enumerate().map(|(i, (l, r))| json!({
            "t": t.start + i as i64,
            "left": strings(l),
            "right": strings(r),
        })).collect::<Vec<_>>(),
    })
}

pub(crate) fn dispatch(cmd: Command, json: bool) -> Result<bool> {
    match cmd {
        Command::Check { file } => {
            let c = load(&file)?;
            let s = c.sort()?;
            emit(
                json,
                json!({"sort": s, "size": c.size(), "registers": c.registers()}),
                || format!("sort {s}"),
            );
            Ok(true)
        }
        Command::Dsem { file } => {
            let rel = dsem(&load(&file)?)?;
            emit(json, serde_json::to_value(rel.to_record())?, || {
                rel.to_string()
            });
            Ok(true)
        }
        Command::Equiv { a, b } => {
            let (c, d) = (load(&a)?, load(&b)?);
            let same = equiv(&c, &d)?;
            let w = witness(&c, &d)?;
            let value = match &w {
                None => json!({"equivalent": true}),
                Some((u, v)) => json!({
                    "equivalent": false,
                    "witness": {"left": strings(u), "right": strings(v)},
                    "in_first": dsem(&c)?.contains(u, v)?,
                }),
            };
            emit(json, value, || match &w {
                None => "equivalent".into(),
                Some((u, v)) => {
                    let first = dsem(&c)
                        .and_then(|r| Ok(r.contains(u, v)?))
                        .unwrap_or(false);
                    format!(
                        "not equivalent\nwitness: ({}, {}) is in the denotation of {} only",
                        bracket(u),
                        bracket(v),
                        if first { a.display() } else { b.display() }
                    )
                }
            });
            Ok(same)
        }
        Command::Sim {
            file,
            start,
            steps,
            inputs,
            outputs,
            existential,
            trajectory,
        } => {
            let c = load(&file)?;
            let sort = c.sort()?;
            if let Some(path) = trajectory {
                let text = fs::read_to_string(&path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let (start, lefts, rights) = parse_trajectory(&text, sort.left, sort.right)
                    .with_context(|| format!("in {}", path.display()))?;
                return simulate(&c, start, lefts, Some(rights), existential, json);
            }
            let steps = steps.expect("required without a trajectory");
            let lefts = parse_stream(&inputs, sort.left, steps)?;
            let rights = outputs
                .map(|o| parse_stream(&o, sort.right, steps))
                .transpose()?;
            simulate(&c, start, lefts, rights, existential, json)
        }
        Command::StepRepl { file, start } => step_repl(&load(&file)?, start, json),
        Command::Realisable { file, cap } => {
            let r = realisable(&load(&file)?, cap)?;
            let value = json!({
                "realisable": r.realisable,
                "partition_mask": r.partition.map(|p| p.mask),
                "inputs": r.partition.map(|p| p.inputs()),
                "outputs": r.partition.map(|p| p.outputs()),
                "map": r.map.as_ref().map(map_json),
                "hat_realisable": r.hat_realisable,
                "hat_agrees": r.hat_agrees,
            });
            emit(json, value, || {
                let mut out = String::new();
                match (&r.partition, &r.map) {
                    (Some(p), Some(m)) => {
                        out.push_str(&format!("realisable\npartition: {p}\nmap:\n{m}\n"));
                    }
                    _ => out.push_str("not realisable\n"),
                }
                out.push_str(&format!(
                    "hat criterion: {} ({})",
                    if r.hat_realisable {
                        "realisable"
                    } else {
                        "not realisable"
                    },
                    if r.hat_agrees { "agrees" } else { "DISAGREES" }
                ));
                out
            });
            Ok(r.realisable)
        }
        Command::Distinguish { a, b } => {
            let (c, d) = (load(&a)?, load(&b)?);
            let Some(ctx) = distinguishing_context(&c, &d)? else {
                emit(json, json!({"equivalent": true}), || {
                    "# equivalent: no context distinguishes them".into()
                });
                return Ok(false);
            };
            let (oc, od) = (ctx.observe(&c)?, ctx.observe(&d)?);
            let value = json!({
                "equivalent": false,
                "c_u": ctx.c_u.to_string(),
                "c_v": ctx.c_v.to_string(),
                "observes_infinite": [oc, od],
            });
            emit(json, value, || {
                format!(
                    "# context c_u ; - ; c_v\n# {}: infinite computation {}\n# {}: infinite computation {}\n# c_u\n{}\n# c_v\n{}",
                    a.display(),
                    if oc { "exists" } else { "does not exist" },
                    b.display(),
                    if od { "exists" } else { "does not exist" },
                    ctx.c_u,
                    ctx.c_v
                )
            });
            Ok(oc != od)
        }
        Command::Axioms { samples } => {
            let samples: Vec<Rational> = samples
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .with_context(|| format!("bad sample `{s}`"))
                })
                .collect::<Result<_>>()?;
            let report = axiom_suite(&samples);
            emit(json, serde_json::to_value(&report)?, || report.to_string());
            Ok(report.all_hold())
        }
        Command::Laurent { fraction, from, to } => {
            if from > to {
                bail!("empty window: --from {from} is after --to {to}");
            }
            let p: RatFunc = fraction
                .parse()
                .with_context(|| format!("bad fraction `{fraction}`"))?;
            let w = laurent_expand(&p, from, to);
            emit(
                json,
                json!({"fraction": p.to_string(), "start": w.start, "coeffs": strings(&w.coeffs), "rational": p.is_rational()}),
                || w.to_string(),
            );
            Ok(true)
        }
        Command::ExportGraph { file } => {
            let net = compile(&load(&file)?)?;
            emit(
                json,
                json!({
                    "wires": net.wires,
                    "inputs": net.inputs,
                    "outputs": net.outputs,
                    "registers": net.registers,
                    "gates": net.gates.iter().map(|g| json!({
                        "kind": g.kind.to_string(),
                        "left": g.left,
                        "right": g.right,
                        "slot": g.slot,
                    })).collect::<Vec<_>>(),
                }),
                || net.to_dot().trim_end().to_string(),
            );
            Ok(true)
        }
    }
}

fn simulate(
    c: &Circuit,
    start: i64,
    lefts: Vec<Vec<Rational>>,
    rights: Option<Vec<Vec<Rational>>>,
    existential: bool,
    json: bool,
) -> Result<bool> {
    if start > 0 {
        bail!("--start must be at most 0");
    }
    let failure = |e: RunError, done: Trajectory<Rational>| -> Result<bool> {
        let (kind, clock) = match e {
            RunError::Stuck(t) => ("stuck", t),
            RunError::AmbiguousAt(t) => ("ambiguous", t),
            other => return Err(other.into()),
        };
        emit(
            json,
            json!({"ok": false, "failure": kind, "clock": clock, "trajectory": trajectory_json(&done)}),
            || {
                let mut s = done.to_string();
                if !s.is_empty() {
                    s.push('\n');
                }
                s + &format!("{kind} at clock {clock}")
            },
        );
        Ok(false)
    };
    let trajectory = if let Some(rights) = rights {
        let ticks: Vec<_> = lefts.into_iter().zip(rights).collect();
        let result = if existential {
            run_existential(c, start, &ticks).map(|_| Trajectory {
                start,
                steps: ticks.clone(),
            })
        } else {
            run(c, start, &ticks)
        };
        match result {
            Ok(t) => t,
            Err(e) => {
                let done = match e {
                    RunError::Stuck(t) | RunError::AmbiguousAt(t) => (t - start) as usize,
                    _ => 0,
                };
                let partial = Trajectory {
                    start,
                    steps: ticks[..done].to_vec(),
                };
                return failure(e, partial);
            }
        }
    } else {
        let solved = solve_run(c, start, &lefts)?;
        match solved.failure {
            None => solved.trajectory,
            Some(e) => return failure(e, solved.trajectory),
        }
    };
    emit(
        json,
        json!({"ok": true, "trajectory": trajectory_json(&trajectory)}),
        || trajectory.to_string(),
    );
    Ok(true)
}

fn step_repl(c: &Circuit, start: i64, json: bool) -> Result<bool> {
    let sort = c.sort()?;
    let mut s = NetState::<Rational>::compile(c, start)?;
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let mut stdout = io::stdout();
    let report = |value: Value, text: String| {
        if json {
            say(&serde_json::to_string(&value).expect("serialisable"));
        } else {
            say(&text);
        }
    };
    report(
        json!({"clock": s.clock, "registers": strings(&s.registers)}),
        format!("t = {}, registers {}", s.clock, bracket(&s.registers)),
    );
    loop {
        if interactive {
            print!("{} left | right> ", s.clock);
            stdout.flush()?;
        }
        let mut line = String::new();
        if stdin.lock().read_line(&mut line)? == 0 {
            break;
        }
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "quit" {
            break;
        }
        let (l, r) = match parse_line(line, sort.left, sort.right) {
            Ok(v) => v,
            Err(e) => {
                report(json!({"error": e.to_string()}), format!("error: {e}"));
                continue;
            }
        };
        let clock = s.clock;
        match step(&s, &l, &r)? {
            StepResult::Infeasible => report(
                json!({"clock": clock, "feasible": false}),
                format!("t = {clock}: infeasible, state unchanged"),
            ),
            StepResult::Unique(next) => {
                report(
                    json!({"clock": clock, "feasible": true, "registers": strings(&next)}),
                    format!("t = {clock}: ok, registers {}", bracket(&next)),
                );
                s = s.advance(next);
            }
            StepResult::Ambiguous(space) => {
                let next = space.particular_solution().expect("nonempty");
                report(
                    json!({
                        "clock": clock,
                        "feasible": true,
                        "ambiguous": true,
                        "dimension": space.dimension(),
                        "registers": strings(&next),
                    }),
                    format!(
                        "t = {clock}: ok, successor not determined ({}-dimensional), choosing registers {}",
                        space.dimension().unwrap_or(0),
                        bracket(&next)
                    ),
                );
                s = s.advance(next);
            }
        }
    }
    Ok(true)
}
