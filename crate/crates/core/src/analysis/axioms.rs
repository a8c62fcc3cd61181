//! The equations of affine interacting Hopf algebras, checked on denotations.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Field, Rational};
use crate::denotational::dsem;
use crate::syntax::{parse, Circuit};

/// One instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomInstance {
    pub name: &'static str,
    /// Scalar parameters, printed; empty for unparameterised axioms.
    pub parameters: String,
    pub lhs: Circuit,
    pub rhs: Circuit,
}

fn inst(name: &'static str, parameters: String, lhs: &str, rhs: &str) -> AxiomInstance {
    let p = |s: &str| parse(s).unwrap_or_else(|e| panic!("axiom {name} side `{s}`: {e}"));
    AxiomInstance {
        name,
        parameters,
        lhs: p(lhs),
        rhs: p(rhs),
    }
}

const FIXED: &[(&str, &str, &str)] = &[
    ("∘-as", "add + id ; add", "id + add ; add"),
    ("∘-co", "sym ; add", "add"),
    ("∘-unl", "zero + id ; add", "id"),
    ("∘-coas", "coadd ; coadd + id", "coadd ; id + coadd"),
    ("∘-coco", "coadd ; sym", "coadd"),
    ("∘-counl", "coadd ; cozero + id", "id"),
    ("•-coas", "copy ; copy + id", "copy ; id + copy"),
    ("•-coco", "copy ; sym", "copy"),
    ("•-counl", "copy ; discard + id", "id"),
    ("•-as", "cocopy + id ; cocopy", "id + cocopy ; cocopy"),
    ("•-co", "sym ; cocopy", "cocopy"),
    ("•-unl", "codiscard + id ; cocopy", "id"),
    (
        "∘•-bi",
        "add ; copy",
        "copy + copy ; id + sym + id ; add + add",
    ),
    ("∘•-biun", "zero ; copy", "zero + zero"),
    ("•∘-biun", "add ; discard", "discard + discard"),
    ("∘•-bo", "zero ; discard", "empty"),
    ("•-fr1", "copy + id ; id + cocopy", "cocopy ; copy"),
    ("•-fr2", "cocopy ; copy", "id + copy ; cocopy + id"),
    ("•-sp", "copy ; cocopy", "id"),
    ("•-bo", "codiscard ; discard", "empty"),
    ("∘-fr1", "coadd + id ; id + add", "add ; coadd"),
    ("∘-fr2", "add ; coadd", "id + coadd ; add + id"),
    ("∘-sp", "coadd ; add", "id"),
    ("∘-bo", "zero ; cozero", "empty"),
    ("0", "scalar(0)", "discard ; zero"),
    ("1-dup", "one ; copy", "one + one"),
    ("1-del", "one ; discard", "empty"),
    (
        "∅",
        "(one ; cozero) + id",
        "(one ; cozero) + (discard ; codiscard)",
    ),
    ("co1", "coone", "one + id ; (cocopy ; discard)"),
];

/// Axioms with one scalar parameter; `{r}` and `{cor}` stand for the scalar
/// and its mirror. `true` marks the axioms requiring `r ≠ 0`.
const UNARY: &[(&str, &str, &str, bool)] = &[
    ("add", "add ; {r}", "{r} + {r} ; add", false),
    ("zer", "zero ; {r}", "zero", false),
    ("dup", "{r} ; copy", "copy ; {r} + {r}", false),
    ("del", "{r} ; discard", "discard", false),
    ("r-inv", "{r} ; {cor}", "id", true),
    ("r-coinv", "id", "{cor} ; {r}", true),
    (
        "coreg",
        "{cor}",
        "(codiscard ; copy) + id ; id + {r} + id ; id + (cocopy ; discard)",
        false,
    ),
];

fn fill(template: &str, r: &str, cor: &str) -> String {
    template.replace("{r}", r).replace("{cor}", cor)
}

/// Every axiom instance for the given scalar samples. The parameterised
/// axioms are also instantiated with the register in place of the scalar
/// wherever the equation still holds for it.
pub fn axiom_instances(samples: &[Rational]) -> Vec<AxiomInstance> {
    let mut out: Vec<AxiomInstance> = FIXED
        .iter()
        .map(|&(name, l, r)| inst(name, String::new(), l, r))
        .collect();
    for &(name, l, r, nonzero) in UNARY {
        for s in samples {
            if nonzero && s.is_zero() {
                continue;
            }
            let (sc, co) = (format!("scalar({s})"), format!("coscalar({s})"));
            out.push(inst(
                name,
                format!("r = {s}"),
                &fill(l, &sc, &co),
                &fill(r, &sc, &co),
            ));
        }
        out.push(inst(
            name,
            "r = x".into(),
            &fill(l, "reg", "coreg"),
            &fill(r, "reg", "coreg"),
        ));
    }
    for r in samples {
        for s in samples {
            out.push(inst(
                "×",
                format!("r = {r}, s = {s}"),
                &format!("scalar({r}) ; scalar({s})"),
                &format!("scalar({})", r.clone() * s.clone()),
            ));
            out.push(inst(
                "+",
                format!("r = {r}, s = {s}"),
                &format!("copy ; scalar({r}) + scalar({s}) ; add"),
                &format!("scalar({})", r.clone() + s.clone()),
            ));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub name: String,
    pub parameters: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.holds)
    }

    /// Distinct axiom names in first-seen order.
    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = Vec::new();
        for o in &self.outcomes {
            if !names.contains(&o.name.as_str()) {
                names.push(&o.name);
            }
        }
        names
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name_w = self
            .outcomes
            .iter()
            .map(|o| o.name.chars().count())
            .max()
            .unwrap_or(0);
        let par_w = self
            .outcomes
            .iter()
            .map(|o| o.parameters.chars().count())
            .max()
            .unwrap_or(0);
        for o in &self.outcomes {
            let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
            writeln!(
                f,
                "{}  {}  {}  {} = {}",
                if o.holds { "pass" } else { "FAIL" },
                pad(&o.name, name_w),
                pad(&o.parameters, par_w),
                o.lhs,
                o.rhs
            )?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} instances of {} axioms, {} failed",
            self.outcomes.len(),
            self.names().len(),
            failed
        )
    }
}

/// Check every axiom instance by comparing the two denotations.
pub fn axiom_suite(samples: &[Rational]) -> AxiomReport {
    let outcomes = axiom_instances(samples)
        .into_iter()
        .map(|a| {
            let holds = dsem(&a.lhs).expect("axiom sides are sorted")
                == dsem(&a.rhs).expect("axiom sides are sorted");
            AxiomOutcome {
                name: a.name.to_string(),
                parameters: a.parameters,
                lhs: a.lhs.to_string(),
                rhs: a.rhs.to_string(),
                holds,
            }
        })
        .collect();
    AxiomReport { outcomes }
}

/// The scalar samples used by default.
pub fn default_samples() -> Vec<Rational> {
    vec![
        Rational::from(1),
        Rational::from(-1),
        Rational::from(2),
        Rational::new(1, 2),
        Rational::from(3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_axioms_hold() {
        let report = axiom_suite(&default_samples());
        let failed: Vec<_> = report
            .failures()
            .map(|o| format!("{} {}", o.name, o.parameters))
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(report.names().len(), FIXED.len() + UNARY.len() + 2);
    }

    #[test]
    fn zero_is_skipped_where_excluded() {
        let instances = axiom_instances(&[Rational::from(0)]);
        assert!(!instances
            .iter()
            .any(|a| a.name == "r-inv" && a.parameters == "r = 0"));
        assert!(instances
            .iter()
            .any(|a| a.name == "dup" && a.parameters == "r = 0"));
    }

    #[test]
    fn a_wrong_equation_is_caught() {
        // dividing by zero is not the identity
        let lhs = parse("scalar(0) ; coscalar(0)").unwrap();
        assert_ne!(dsem(&lhs).unwrap(), dsem(&Circuit::Id).unwrap());
    }
}
