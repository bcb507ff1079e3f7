//! Generators for split constructions and the two extremal families for
//! matchings, plus exact density witnesses.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::combin::{binom, for_each_subset};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};
use crate::matchcycle::{longest_tight_cycle, CycleOptions, SearchLimits};

/// All `k`-subsets of `X ∪ Y` except those with exactly `a` vertices in `X`,
/// where `X = {1..nx}` and `Y = {nx+1..nx+ny}`.
pub fn gen_split_kgraph(k: usize, nx: usize, ny: usize, a: usize) -> Result<Hypergraph> {
    if k < 2 {
        return Err(Error::invalid("k must be at least 2"));
    }
    if a > k {
        return Err(Error::invalid(format!("forbidden class a = {a} exceeds k = {k}")));
    }
    let n = nx + ny;
    if n < k {
        return Err(Error::invalid(format!("nx + ny = {n} is smaller than k = {k}")));
    }
    let verts: Vec<Vertex> = (1..=n as Vertex).collect();
    let mut edges = Vec::new();
    for_each_subset(&verts, k, |s| {
        let in_x = s.iter().filter(|&&v| v as usize <= nx).count();
        if in_x != a {
            edges.push(Edge::from_sorted(s));
        }
    });
    Ok(Hypergraph::from_sorted_unique(k, n, edges))
}

/// Component structure of a split construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitProfile {
    pub component_sizes: Vec<usize>,
    /// Per component, histogram of `(|e ∩ X|, |e ∩ Y|)` over its edges.
    pub side_profiles: Vec<BTreeMap<(usize, usize), usize>>,
    /// Two components, one above and one below the forbidden class.
    pub as_expected: bool,
    pub note: Option<String>,
}

/// Tight components of a split graph together with their side profiles.
pub fn split_component_profile(g: &Hypergraph, nx: usize, a: usize) -> SplitProfile {
    let comps = g.tight_components();
    let side = |e: &Edge| {
        let x = e.vertices().iter().filter(|&&v| v as usize <= nx).count();
        (x, e.len() - x)
    };
    let side_profiles: Vec<BTreeMap<(usize, usize), usize>> = comps
        .iter()
        .map(|c| {
            let mut h = BTreeMap::new();
            for e in c.edges() {
                *h.entry(side(e)).or_insert(0) += 1;
            }
            h
        })
        .collect();
    let classes: Vec<Option<bool>> = side_profiles
        .iter()
        .map(|h| {
            let above = h.keys().all(|&(x, _)| x > a);
            let below = h.keys().all(|&(x, _)| x < a);
            match (above, below) {
                (true, false) => Some(true),
                (false, true) => Some(false),
                _ => None,
            }
        })
        .collect();
    let as_expected = comps.len() == 2
        && classes.iter().all(Option::is_some)
        && classes[0] != classes[1];
    let note = (!as_expected).then(|| {
        format!(
            "expected two components split by the forbidden class, found {} component(s)",
            comps.len()
        )
    });
    SplitProfile {
        component_sizes: comps.iter().map(Hypergraph::edge_count).collect(),
        side_profiles,
        as_expected,
        note,
    }
}

/// Complete `k`-graph on `{1..(s+1)k-1}` inside `n` vertices.
pub fn gen_emc_clique(n: usize, s: usize, k: usize) -> Result<Hypergraph> {
    let size = (s + 1) * k - 1;
    if size > n {
        return Err(Error::invalid(format!("clique order {size} exceeds n = {n}")));
    }
    let verts: Vec<Vertex> = (1..=size as Vertex).collect();
    let mut edges = Vec::new();
    for_each_subset(&verts, k, |e| edges.push(Edge::from_sorted(e)));
    let g = Hypergraph::empty(k, n)?;
    Ok(g.with_edges(edges))
}

/// All `k`-sets meeting `{1..s}`.
pub fn gen_emc_cover(n: usize, s: usize, k: usize) -> Result<Hypergraph> {
    if s > n {
        return Err(Error::invalid(format!("s = {s} exceeds n = {n}")));
    }
    let verts: Vec<Vertex> = (1..=n as Vertex).collect();
    let mut edges = Vec::new();
    for_each_subset(&verts, k, |e| {
        if (e[0] as usize) <= s {
            edges.push(Edge::from_sorted(e));
        }
    });
    Ok(Hypergraph::empty(k, n)?.with_edges(edges))
}

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Closed-form edge count of `gen_split_kgraph(k, nx, ny, a)`.
pub fn split_edge_count(k: usize, nx: usize, ny: usize, a: usize) -> u128 {
    (0..=k)
        .filter(|&c| c != a)
        .map(|c| binom(nx as u64, c as u64) * binom(ny as u64, (k - c) as u64))
        .sum()
}

/// Closed-form sizes of the classes above and below `a`.
pub fn split_class_sizes(k: usize, nx: usize, ny: usize, a: usize) -> (u128, u128) {
    let cls = |c: usize| binom(nx as u64, c as u64) * binom(ny as u64, (k - c) as u64);
    ((a + 1..=k).map(cls).sum(), (0..a).map(cls).sum())
}

/// Densities of a split construction, exact over `binom(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub edge_density: BigRational,
    pub max_component_density: BigRational,
}

/// Density witness for the split construction with `a = floor(k/2)`,
/// measured on the generated graph.
pub fn ck_witness(k: usize, nx: usize, ny: usize) -> Result<DensityWitness> {
    if nx < k || ny < k {
        return Err(Error::invalid("both parts must have at least k vertices"));
    }
    let g = gen_split_kgraph(k, nx, ny, k / 2)?;
    let total = binom((nx + ny) as u64, k as u64);
    let comps = g.tight_component_indices();
    let largest = comps.first().map_or(0, Vec::len) as u128;
    Ok(DensityWitness {
        edge_density: ratio(g.edge_count() as u128, total),
        max_component_density: ratio(largest, total),
    })
}

/// Same quantities from the closed-form class counts (no graph is built).
pub fn ck_closed_form(k: usize, nx: usize, ny: usize) -> DensityWitness {
    let a = k / 2;
    let total = binom((nx + ny) as u64, k as u64);
    let (hi, lo) = split_class_sizes(k, nx, ny, a);
    DensityWitness {
        edge_density: ratio(split_edge_count(k, nx, ny, a), total),
        max_component_density: ratio(hi.max(lo), total),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleWitness {
    pub edge_density: BigRational,
    pub longest_cycle: Option<usize>,
    pub ratio: f64,
    pub optimal: bool,
}

/// Edge density and longest tight cycle of the split 3-graph.
pub fn eg3_witness(nx: usize, ny: usize, limits: &SearchLimits) -> Result<CycleWitness> {
    let g = gen_split_kgraph(3, nx, ny, 1)?;
    let n = nx + ny;
    let res = longest_tight_cycle(&g, &CycleOptions::default(), limits)?;
    let len = res.cycle.as_ref().map(Vec::len);
    Ok(CycleWitness {
        edge_density: ratio(g.edge_count() as u128, binom(n as u64, 3)),
        longest_cycle: len,
        ratio: len.unwrap_or(0) as f64 / n as f64,
        optimal: res.optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchcycle::max_matching;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn split_edge_counts() {
        assert_eq!(gen_split_kgraph(3, 3, 3, 1).unwrap().edge_count(), 11);
        assert_eq!(gen_split_kgraph(3, 2, 2, 3).unwrap().edge_count(), 4);
        assert_eq!(gen_split_kgraph(4, 4, 4, 2).unwrap().edge_count(), 34);
        assert!(gen_split_kgraph(3, 3, 3, 4).is_err());
        for (k, nx, ny, a) in [(3, 3, 3, 1), (4, 4, 4, 2), (5, 4, 6, 2), (3, 7, 2, 0)] {
            assert_eq!(
                gen_split_kgraph(k, nx, ny, a).unwrap().edge_count() as u128,
                split_edge_count(k, nx, ny, a)
            );
        }
    }

    #[test]
    fn split_profiles() {
        let p = split_component_profile(&gen_split_kgraph(3, 3, 3, 1).unwrap(), 3, 1);
        assert!(p.as_expected);
        assert_eq!(p.component_sizes, vec![10, 1]);
        assert_eq!(p.side_profiles[1].get(&(0, 3)), Some(&1));
        let p = split_component_profile(&gen_split_kgraph(4, 4, 4, 2).unwrap(), 4, 2);
        assert_eq!(p.component_sizes, vec![17, 17]);
        let p = split_component_profile(&gen_split_kgraph(3, 6, 6, 1).unwrap(), 6, 1);
        assert_eq!(p.component_sizes, vec![110, 20]);
        // forbidding nothing leaves a single component
        let p = split_component_profile(&Hypergraph::complete(3, 6).unwrap(), 3, 1);
        assert!(!p.as_expected);
        assert!(p.note.is_some());
    }

    #[test]
    fn emc_families() {
        let c = gen_emc_clique(7, 1, 3).unwrap();
        assert_eq!(c.edge_count(), 10);
        assert_eq!(max_matching(&c, &SearchLimits::none()).matching.len(), 1);
        let c = gen_emc_clique(9, 2, 3).unwrap();
        assert_eq!(c.edge_count(), 56);
        assert_eq!(max_matching(&c, &SearchLimits::none()).matching.len(), 2);
        assert!(gen_emc_clique(3, 0, 3).unwrap().is_empty());
        assert!(gen_emc_clique(4, 1, 3).is_err());

        let c = gen_emc_cover(7, 1, 3).unwrap();
        assert_eq!(c.edge_count(), 15);
        assert_eq!(max_matching(&c, &SearchLimits::none()).matching.len(), 1);
        assert!(gen_emc_cover(7, 0, 3).unwrap().is_empty());
        let c = gen_emc_cover(6, 2, 3).unwrap();
        assert_eq!(c.edge_count(), 16);
        assert_eq!(max_matching(&c, &SearchLimits::none()).matching.len(), 2);
    }

    #[test]
    fn ck_densities() {
        let w = ck_witness(3, 6, 6).unwrap();
        assert_eq!(w.edge_density, q(13, 22));
        assert_eq!(w.max_component_density, q(1, 2));
        assert_eq!(w, ck_closed_form(3, 6, 6));
        assert!(ck_witness(3, 2, 6).is_err());
    }

    #[test]
    fn eg3_small_parts() {
        let w = eg3_witness(3, 3, &SearchLimits::none()).unwrap();
        assert!(w.optimal);
        assert!(w.longest_cycle.unwrap() < 6);
    }
}
