//! Boundary value streams: `1;2,0;0,3` is three ticks of two ports.

use anyhow::{bail, Context, Result};
use sfc_core::algebra::Rational;

fn values(tick: &str, ports: usize) -> Result<Vec<Rational>> {
    let tick = tick.trim();
    if ports == 0 {
        if !tick.is_empty() {
            bail!("`{tick}` gives values to a side without ports");
        }
        return Ok(Vec::new());
    }
    let vals: Vec<Rational> = tick
        .split(';')
        .map(|v| {
            v.trim()
                .parse::<Rational>()
                .with_context(|| format!("bad value `{}`", v.trim()))
        })
        .collect::<Result<_>>()?;
    if vals.len() != ports {
        bail!("tick `{tick}` has {} values, expected {ports}", vals.len());
    }
    Ok(vals)
}

/// Parse `steps` ticks; missing trailing ticks are zero.
pub fn parse_stream(stream: &str, ports: usize, steps: usize) -> Result<Vec<Vec<Rational>>> {
    let stream = stream.trim();
    let mut out: Vec<Vec<Rational>> = if stream.is_empty() {
        Vec::new()
    } else {
        stream
            .split(',')
            .map(|t| values(t, ports))
            .collect::<Result<_>>()?
    };
    if out.len() > steps {
        bail!("{} ticks given for a run of {steps} steps", out.len());
    }
    out.resize(steps, vec![Rational::from(0); ports]);
    Ok(out)
}

/// One `lefts | rights` line of the stepper.
pub fn parse_line(line: &str, left: usize, right: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let (l, r) = match line.split_once('|') {
        Some((l, r)) => (l, r),
        None if left == 0 => ("", line),
        None if right == 0 => (line, ""),
        None => bail!("expected `lefts | rights`"),
    };
    Ok((values(l, left)?, values(r, right)?))
}

type Ticks = Vec<Vec<Rational>>;

/// Parse `t: [lefts] | [rights]` lines with consecutive clocks into the
/// first clock and the two boundary streams.
pub fn parse_trajectory(text: &str, left: usize, right: usize) -> Result<(i64, Ticks, Ticks)> {
    let mut start = None;
    let (mut lefts, mut rights) = (Vec::new(), Vec::new());
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parsed = (|| {
            let (clock, rest) = line.split_once(':').context("expected `t: [..] | [..]`")?;
            let clock: i64 = clock.trim().parse().context("bad clock")?;
            let expected = start.unwrap_or(clock) + lefts.len() as i64;
            if clock != expected {
                bail!("clock {clock} where {expected} was expected");
            }
            let (l, r) = rest.split_once('|').context("missing `|`")?;
            let list = |s: &str, ports| -> Result<Vec<Rational>> {
                let inner = s
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .context("values must be bracketed")?;
                values(&inner.replace(',', ";"), ports)
            };
            Ok((clock, list(l, left)?, list(r, right)?))
        })();
        let (clock, l, r) = parsed.with_context(|| format!("line {}", no + 1))?;
        start.get_or_insert(clock);
        lefts.push(l);
        rights.push(r);
    }
    Ok((start.unwrap_or(0), lefts, rights))
}
