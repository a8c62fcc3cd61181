use std::fmt;

use serde::Serialize;

use crate::algebra::{Field, RatFunc};
use crate::denotational::{
    dsem, extract_affine_map, map_is_rational, AffineMap, AffineRelation, DenotationError,
};
use crate::syntax::{hat, Circuit};

/// Split of the ports of an `(n, m)` relation into inputs and outputs.
/// Ports are numbered left to right: left ports `0..n`, then right ports
/// `n..n+m`. Bit `i` of `mask` is set when port `i` is an input.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PortPartition {
    pub left: usize,
    pub right: usize,
    pub mask: u64,
}

impl PortPartition {
    /// Left ports as inputs, right ports as outputs.
    pub fn standard(left: usize, right: usize) -> Self {
        PortPartition {
            left,
            right,
            mask: (1u64 << left) - 1,
        }
    }

    pub fn ports(&self) -> usize {
        self.left + self.right
    }

    pub fn is_input(&self, port: usize) -> bool {
        self.mask >> port & 1 == 1
    }

    pub fn inputs(&self) -> Vec<usize> {
        (0..self.ports()).filter(|&p| self.is_input(p)).collect()
    }

    pub fn outputs(&self) -> Vec<usize> {
        (0..self.ports()).filter(|&p| !self.is_input(p)).collect()
    }

    /// All partitions: the standard one first, then the rest by increasing mask.
    pub fn all(left: usize, right: usize) -> impl Iterator<Item = PortPartition> {
        let first = Self::standard(left, right);
        let total = 1u64 << (left + right);
        std::iter::once(first).chain(
            (0..total)
                .filter(move |&m| m != first.mask)
                .map(move |mask| PortPartition { left, right, mask }),
        )
    }
}

fn port_name(left: usize, p: usize) -> String {
    if p < left {
        format!("l{}", p + 1)
    } else {
        format!("r{}", p - left + 1)
    }
}

impl fmt::Display for PortPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |ps: Vec<usize>| {
            ps.into_iter()
                .map(|p| port_name(self.left, p))
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "inputs {{{}}}, outputs {{{}}}",
            names(self.inputs()),
            names(self.outputs())
        )
    }
}

/// The same subspace read with `left_ports` on the left and `right_ports`
/// on the right, each in the order given.
pub fn rewire_ordered<F: Field>(
    g: &AffineRelation<F>,
    left_ports: &[usize],
    right_ports: &[usize],
) -> AffineRelation<F> {
    let order: Vec<usize> = left_ports.iter().chain(right_ports).copied().collect();
    g.reindex(left_ports.len(), right_ports.len(), &order)
}

/// Bend ports so the inputs of `p` become the left ports and the outputs the
/// right ports, both in increasing port order.
pub fn rewire<F: Field>(g: &AffineRelation<F>, p: &PortPartition) -> AffineRelation<F> {
    assert_eq!(
        (g.left(), g.right()),
        (p.left, p.right),
        "partition sort mismatch"
    );
    rewire_ordered(g, &p.inputs(), &p.outputs())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("{ports} ports exceed the partition search cap of {cap}")]
    TooManyPorts { ports: usize, cap: usize },
    #[error(transparent)]
    Denotation(#[from] DenotationError),
}

pub const DEFAULT_PORT_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealisabilityReport {
    pub realisable: bool,
    pub partition: Option<PortPartition>,
    pub map: Option<AffineMap<RatFunc>>,
    /// Verdict of the search on the hat circuit with the constant port as an input.
    pub hat_realisable: bool,
    pub hat_agrees: bool,
}

fn rational_map(g: &AffineRelation<RatFunc>, p: &PortPartition) -> Option<AffineMap<RatFunc>> {
    extract_affine_map(&rewire(g, p)).filter(map_is_rational)
}

/// Search for a partition turning `⟦c⟧` into a rational affine map, and
/// compare with the same search on `hat(c)` with its constant port fixed as
/// an input.
pub fn realisable(c: &Circuit, cap: usize) -> Result<RealisabilityReport, AnalysisError> {
    let sort = c.sort().map_err(DenotationError::from)?;
    let ports = sort.left + sort.right;
    if ports > cap {
        return Err(AnalysisError::TooManyPorts { ports, cap });
    }
    let g = dsem(c)?;
    let found = PortPartition::all(sort.left, sort.right)
        .find_map(|p| rational_map(&g, &p).map(|m| (p, m)));

    let h = dsem(&hat(c).map_err(DenotationError::from)?)?;
    let hat_realisable = PortPartition::all(sort.left, sort.right).any(|p| {
        let lifted = PortPartition {
            left: sort.left + 1,
            right: sort.right,
            mask: p.mask << 1 | 1,
        };
        rational_map(&h, &lifted).is_some()
    });

    let realisable = found.is_some();
    let (partition, map) = found.unzip();
    Ok(RealisabilityReport {
        realisable,
        partition,
        map,
        hat_realisable,
        hat_agrees: realisable == hat_realisable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{cup, parse};

    fn report(s: &str) -> RealisabilityReport {
        realisable(&parse(s).unwrap(), DEFAULT_PORT_CAP).unwrap()
    }

    #[test]
    fn examples() {
        let one = report("one");
        assert!(one.realisable && one.hat_agrees);
        assert_eq!(one.map.unwrap().b, vec!["1".parse::<RatFunc>().unwrap()]);
        let r = report("one ; coreg");
        assert!(!r.realisable && r.hat_agrees);
        let r = report("reg");
        assert!(r.realisable);
        assert_eq!(r.partition, Some(PortPartition::standard(1, 1)));
        assert!(report("one + id ; add").realisable);
        // the mirrored register is realisable by reading it right to left
        let r = report("coreg");
        assert!(r.realisable);
        assert_eq!(r.partition.unwrap().inputs(), vec![1]);
    }

    #[test]
    fn cup_bends_into_identity() {
        let g = dsem(&cup()).unwrap();
        let p = PortPartition {
            left: 0,
            right: 2,
            mask: 0b01,
        };
        assert_eq!(rewire(&g, &p), AffineRelation::identity(1));
        let id = AffineRelation::<RatFunc>::identity(2);
        assert_eq!(rewire(&id, &PortPartition::standard(2, 2)), id);
    }

    #[test]
    fn partition_order() {
        let all: Vec<u64> = PortPartition::all(1, 1).map(|p| p.mask).collect();
        assert_eq!(all, vec![1, 0, 2, 3]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(realisable(&parse("id + id").unwrap(), 3).is_err());
    }
}
