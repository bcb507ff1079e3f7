//! Splitting a dense 3-graph without a giant tight component into two
//! unions of tight components, neither too large.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combin::binom;
use crate::error::{Error, Result};
use crate::hypergraph::{distinguishable, Edge, Hypergraph};

/// Outcome of the prefix rule on a list of component sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCheck {
    /// 1-based smallest `i` whose prefix reaches `(1/2+ε) binom(n,3)`;
    /// `None` if no prefix does.
    pub split_index: Option<usize>,
    pub red_size: usize,
    pub blue_size: usize,
    /// `e(G) >= (5/8+ε) binom(n,3)`.
    pub dense: bool,
    /// Largest component `< (1/2+ε) binom(n,3)`.
    pub no_giant: bool,
    /// `e(G) <= (5/8+2ε) binom(n,3)`.
    pub not_too_dense: bool,
    /// `ε < 1/16`, assumed without loss of generality in the argument.
    pub small_epsilon: bool,
    /// `max(|R|, |B|) < (1/2+ε) binom(n,3)`.
    pub max_side_ok: bool,
    /// `min(|R|, |B|) >= binom(n,3)/8`.
    pub min_side_ok: bool,
}

impl PartitionCheck {
    pub fn hypotheses_hold(&self) -> bool {
        self.dense && self.no_giant && self.not_too_dense
    }

    pub fn conclusions_hold(&self) -> bool {
        self.max_side_ok && self.min_side_ok
    }
}

#[derive(Clone, Debug)]
pub struct ConnectionPartition {
    /// Components before the split index.
    pub red: Hypergraph,
    /// Components from the split index on.
    pub blue: Hypergraph,
    /// Tight component sizes, descending.
    pub component_sizes: Vec<usize>,
    pub check: PartitionCheck,
    pub distinguishable: bool,
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// The prefix rule on component sizes (sorted descending) of a 3-graph on
/// `n` vertices. All thresholds are exact rationals.
pub fn partition_profile(n: usize, sizes: &[usize], eps: &BigRational) -> Result<PartitionCheck> {
    if *eps <= BigRational::zero() {
        return Err(Error::invalid("ε must be positive"));
    }
    if sizes.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid("component sizes must be sorted descending"));
    }
    let total = int(binom(n as u64, 3) as usize);
    let half = (q(1, 2) + eps) * &total;
    let mut prefix = 0usize;
    let mut split_index = None;
    for (i, &s) in sizes.iter().enumerate() {
        prefix += s;
        if int(prefix) >= half {
            split_index = Some(i + 1);
            break;
        }
    }
    let cut = split_index.map_or(sizes.len(), |i| i - 1);
    let red: usize = sizes[..cut].iter().sum();
    let blue: usize = sizes[cut..].iter().sum();
    let e = int(red + blue);
    let largest = int(sizes.first().copied().unwrap_or(0));
    Ok(PartitionCheck {
        split_index,
        red_size: red,
        blue_size: blue,
        dense: e >= (q(5, 8) + eps) * &total,
        no_giant: largest < half,
        not_too_dense: e <= (q(5, 8) + eps * BigInt::from(2)) * &total,
        small_epsilon: *eps < q(1, 16),
        max_side_ok: int(red.max(blue)) < half,
        min_side_ok: int(red.min(blue)) >= &total / BigInt::from(8),
    })
}

/// Sorts tight components by size and cuts at the first prefix reaching
/// `(1/2+ε) binom(n,3)` edges: `R` is everything before the cut.
pub fn connection_partition(g: &Hypergraph, eps: &BigRational) -> Result<ConnectionPartition> {
    if g.k() != 3 {
        return Err(Error::invalid("connection partition is defined for 3-graphs"));
    }
    let comps = g.tight_component_indices();
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    let check = partition_profile(g.n(), &sizes, eps)?;
    let cut = check.split_index.map_or(comps.len(), |i| i - 1);
    let pick = |range: &[Vec<usize>]| -> Vec<Edge> {
        range.iter().flatten().map(|&i| g.edges()[i].clone()).collect()
    };
    let red = g.with_edges(pick(&comps[..cut]));
    let blue = g.with_edges(pick(&comps[cut..]));
    Ok(ConnectionPartition {
        distinguishable: distinguishable(&red, &blue)?,
        red,
        blue,
        component_sizes: sizes,
        check,
    })
}

/// Interval of `ε` for which the three hypotheses hold for a 3-graph with
/// `e` edges and largest tight component `c1` on `n` vertices, intersected
/// with `0 < ε < 1/16`: `max(d - 5/8)/2, c1/C - 1/2) <= ε <= d - 5/8`
/// (the lower end is strict for the component condition). `None` if empty.
pub fn feasible_epsilon(n: usize, e: usize, c1: usize) -> Option<(BigRational, BigRational)> {
    let total = BigRational::from_integer(BigInt::from(binom(n as u64, 3)));
    if total.is_zero() {
        return None;
    }
    let d = BigRational::from_integer(BigInt::from(e)) / &total;
    let d1 = BigRational::from_integer(BigInt::from(c1)) / &total;
    let hi = (&d - q(5, 8)).min(q(1, 16));
    let lo = ((&d - q(5, 8)) / BigInt::from(2)).max(d1 - q(1, 2)).max(BigRational::zero());
    (lo < hi).then_some((lo, hi))
}

/// A point strictly inside `(lo, hi]`: the midpoint.
pub fn pick_epsilon(lo: &BigRational, hi: &BigRational) -> BigRational {
    (lo + hi) / BigInt::from(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::gen_split_kgraph;

    #[test]
    fn giant_component_fails_hypothesis() {
        let g = Hypergraph::complete(3, 7).unwrap();
        let p = connection_partition(&g, &q(1, 20)).unwrap();
        assert_eq!(p.check.split_index, Some(1));
        assert!(p.red.is_empty());
        assert_eq!(p.blue.edge_count(), 35);
        assert!(!p.check.no_giant && !p.check.hypotheses_hold());
        assert!(p.distinguishable);
    }

    #[test]
    fn split_graph_is_too_sparse() {
        let g = gen_split_kgraph(3, 6, 6, 1).unwrap();
        let p = connection_partition(&g, &q(1, 100)).unwrap();
        assert!(!p.check.dense);
        assert_eq!(p.component_sizes, vec![110, 20]);
        assert_eq!(p.red.edge_count() + p.blue.edge_count(), 130);
        assert!(p.distinguishable);
    }

    #[test]
    fn prefix_never_reached() {
        let g = Hypergraph::new(3, 6, [[1, 2, 3], [4, 5, 6]]).unwrap();
        let p = connection_partition(&g, &q(1, 20)).unwrap();
        assert_eq!(p.check.split_index, None);
        assert!(p.blue.is_empty());
        assert_eq!(p.red.edge_count(), 2);
        assert!(!p.check.hypotheses_hold());
    }

    #[test]
    fn rejects_bad_input() {
        let g = Hypergraph::complete(4, 6).unwrap();
        assert!(connection_partition(&g, &q(1, 20)).is_err());
        let g = Hypergraph::complete(3, 6).unwrap();
        assert!(connection_partition(&g, &q(0, 1)).is_err());
    }

    #[test]
    fn epsilon_interval() {
        // density 3/4 and largest component 3/8: ε ∈ [1/16, 1/8] ∩ (0, 1/16)
        assert!(feasible_epsilon(6, 15, 7).is_none());
        // density 39/56, largest 25/56
        let (lo, hi) = feasible_epsilon(8, 56 * 11 / 16 + 1, 25).unwrap();
        assert!(lo < hi && hi <= q(1, 16));
    }

    #[test]
    fn profile_rule_examples() {
        // C = 56, ε = 1/20: half-threshold 30.8, dense needs 37.8
        let eps = q(1, 20);
        let c = partition_profile(8, &[28, 10, 2], &eps).unwrap();
        assert!(c.dense && c.no_giant && c.not_too_dense);
        assert_eq!(c.split_index, Some(2));
        assert_eq!((c.red_size, c.blue_size), (28, 12));
        assert!(c.conclusions_hold());
        assert!(partition_profile(8, &[2, 10], &eps).is_err());
    }
}
