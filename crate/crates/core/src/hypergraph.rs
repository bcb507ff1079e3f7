//! Uniform hypergraphs on the vertex set `{1..n}` and the basic quantities
//! built on them: degrees, shadows, tight adjacency and tight components,
//! distinguishability and crossing sets of a matching.

use std::collections::{HashMap, HashSet};
use std::fmt;

use smallvec::SmallVec;

use crate::combin::{binom, for_each_subset};
use crate::dsu::DisjointSet;
use crate::error::{Error, Result};

pub type Vertex = u32;

/// Largest vertex count for which edges also carry a bitmask.
pub const MASK_LIMIT: usize = 128;

/// A set of vertices stored in strictly increasing order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Edge(SmallVec<[Vertex; 4]>);

impl Edge {
    /// Builds an edge from vertices in any order; duplicates are rejected.
    pub fn new(vertices: &[Vertex]) -> Result<Self> {
        let mut v: SmallVec<[Vertex; 4]> = vertices.iter().copied().collect();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Edge(v))
    }

    pub(crate) fn from_sorted(v: &[Vertex]) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Edge(v.iter().copied().collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection_size(&self, other: &Edge) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    /// Bit `v-1` set for each vertex `v`.
    pub fn mask(&self) -> u128 {
        self.0.iter().fold(0u128, |m, &v| m | 1u128 << (v - 1))
    }

    /// `(self \ {i}) ∪ {j}`, sorted.
    pub(crate) fn replace(&self, i: Vertex, j: Vertex) -> Edge {
        let mut v: SmallVec<[Vertex; 4]> = self.0.iter().copied().filter(|&x| x != i).collect();
        let pos = v.partition_point(|&x| x < j);
        v.insert(pos, j);
        Edge(v)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Vertices of a mask, 1-based and increasing.
pub fn mask_vertices(mut m: u128) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        let b = m.trailing_zeros();
        out.push(b + 1);
        m &= m - 1;
    }
    out
}

/// A `k`-uniform hypergraph on `{1..n}`. Edges are kept sorted and unique.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Edge>,
    masks: Option<Vec<u128>>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("k", &self.k)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    /// Builds a hypergraph, rejecting wrong arity, out-of-range vertices and
    /// duplicate edges.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        Self::check_params(k, n)?;
        let mut list = Vec::new();
        for raw in edges {
            list.push(Self::check_edge(k, n, raw.as_ref())?);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Self::from_sorted_unique(k, n, list))
    }

    /// Like [`Hypergraph::new`] but silently merges duplicate edges.
    pub fn from_edges_dedup<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        Self::check_params(k, n)?;
        let mut list = Vec::new();
        for raw in edges {
            list.push(Self::check_edge(k, n, raw.as_ref())?);
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted_unique(k, n, list))
    }

    fn check_params(k: usize, n: usize) -> Result<()> {
        if k < 1 {
            return Err(Error::invalid("uniformity must be at least 1"));
        }
        if n < k {
            return Err(Error::invalid(format!("vertex count {n} is smaller than uniformity {k}")));
        }
        Ok(())
    }

    fn check_edge(k: usize, n: usize, raw: &[Vertex]) -> Result<Edge> {
        if raw.len() != k {
            return Err(Error::invalid(format!("edge {raw:?} does not have {k} vertices")));
        }
        if let Some(v) = raw.iter().find(|&&v| v == 0 || v as usize > n) {
            return Err(Error::invalid(format!("vertex {v} outside 1..{n}")));
        }
        Edge::new(raw)
    }

    pub(crate) fn from_sorted_unique(k: usize, n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let masks = (n <= MASK_LIMIT).then(|| edges.iter().map(Edge::mask).collect());
        Hypergraph { k, n, edges, masks }
    }

    /// Builds from unsorted, possibly repeated, already validated edges.
    pub(crate) fn from_trusted(k: usize, n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_unique(k, n, edges)
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Self::check_params(k, n)?;
        Ok(Self::from_sorted_unique(k, n, Vec::new()))
    }

    /// The complete `k`-graph on `{1..n}`.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        Self::check_params(k, n)?;
        let verts: Vec<Vertex> = (1..=n as Vertex).collect();
        let mut edges = Vec::new();
        for_each_subset(&verts, k, |s| edges.push(Edge::from_sorted(s)));
        Ok(Self::from_sorted_unique(k, n, edges))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge bitmasks, available when `n <= MASK_LIMIT`.
    pub fn masks(&self) -> Option<&[u128]> {
        self.masks.as_deref()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn contains_vertices(&self, vertices: &[Vertex]) -> bool {
        Edge::new(vertices).map(|e| self.contains(&e)).unwrap_or(false)
    }

    /// Number of vertices of `{1..n}` lying in at least one edge.
    pub fn covered_vertices(&self) -> Vec<Vertex> {
        let mut seen = vec![false; self.n + 1];
        for e in &self.edges {
            for &v in e.vertices() {
                seen[v as usize] = true;
            }
        }
        (1..=self.n as Vertex).filter(|&v| seen[v as usize]).collect()
    }

    /// Sub-hypergraph on the same vertex set with the given edges.
    pub fn with_edges(&self, edges: Vec<Edge>) -> Self {
        Self::from_trusted(self.k, self.n, edges)
    }

    /// `|{Y ⊆ W : S ∪ Y ∈ E(G)}|`; `W` defaults to the complement of `S`.
    pub fn degree(&self, s: &[Vertex], w: Option<&[Vertex]>) -> Result<usize> {
        if s.len() > self.k {
            return Err(Error::invalid(format!("|S| = {} exceeds k = {}", s.len(), self.k)));
        }
        let s = Edge::new(s)?;
        if s.vertices().iter().any(|&v| v == 0 || v as usize > self.n) {
            return Err(Error::invalid("S contains a vertex outside 1..n"));
        }
        let allowed: Option<HashSet<Vertex>> = match w {
            None => None,
            Some(w) => {
                if w.iter().any(|v| s.contains(*v)) {
                    return Err(Error::invalid("W must be disjoint from S"));
                }
                Some(w.iter().copied().collect())
            }
        };
        let count = self
            .edges
            .iter()
            .filter(|e| s.vertices().iter().all(|&v| e.contains(v)))
            .filter(|e| match &allowed {
                None => true,
                Some(a) => e.vertices().iter().all(|v| s.contains(*v) || a.contains(v)),
            })
            .count();
        Ok(count)
    }

    /// Minimum over all `d`-sets `S` of the number of edges containing `S`.
    pub fn min_d_degree(&self, d: usize) -> Result<usize> {
        if d < 1 || d >= self.k {
            return Err(Error::invalid(format!("d = {d} outside 1..=k-1")));
        }
        let total = binom(self.n as u64, d as u64);
        let mut counts: HashMap<Edge, usize> = HashMap::new();
        for e in &self.edges {
            for_each_subset(e.vertices(), d, |s| {
                *counts.entry(Edge::from_sorted(s)).or_insert(0) += 1;
            });
        }
        if (counts.len() as u128) < total {
            return Ok(0);
        }
        Ok(counts.values().copied().min().unwrap_or(0))
    }

    /// The `(k-1)`-graph of all `(k-1)`-sets contained in some edge.
    pub fn shadow(&self) -> Result<Hypergraph> {
        if self.k < 2 {
            return Err(Error::invalid("shadow needs k >= 2"));
        }
        let mut out = Vec::with_capacity(self.edges.len() * self.k);
        for e in &self.edges {
            for_each_subset(e.vertices(), self.k - 1, |s| out.push(Edge::from_sorted(s)));
        }
        Ok(Hypergraph::from_trusted(self.k - 1, self.n, out))
    }

    /// Tight components, largest first (ties broken by smallest edge).
    ///
    /// Edges are bucketed by each of their `(k-1)`-subsets and merged with a
    /// union-find, so the cost is linear in `k * e(G)`.
    pub fn tight_components(&self) -> Vec<Hypergraph> {
        let groups = self.tight_component_indices();
        groups
            .into_iter()
            .map(|g| {
                let edges = g.into_iter().map(|i| self.edges[i].clone()).collect();
                Hypergraph::from_sorted_unique(self.k, self.n, edges)
            })
            .collect()
    }

    /// Tight components as lists of edge indices (each list increasing),
    /// ordered by size descending then by first index.
    pub fn tight_component_indices(&self) -> Vec<Vec<usize>> {
        let m = self.edges.len();
        let mut dsu = DisjointSet::new(m);
        if let Some(masks) = &self.masks {
            let mut first: HashMap<u128, usize> = HashMap::with_capacity(m * self.k);
            for (idx, &mask) in masks.iter().enumerate() {
                let mut rest = mask;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    rest ^= bit;
                    let key = mask ^ bit;
                    match first.get(&key) {
                        Some(&o) => {
                            dsu.union(o, idx);
                        }
                        None => {
                            first.insert(key, idx);
                        }
                    }
                }
            }
        } else {
            let mut first: HashMap<Edge, usize> = HashMap::with_capacity(m * self.k);
            for (idx, e) in self.edges.iter().enumerate() {
                for_each_subset(e.vertices(), self.k - 1, |s| {
                    let key = Edge::from_sorted(s);
                    match first.get(&key) {
                        Some(&o) => {
                            dsu.union(o, idx);
                        }
                        None => {
                            first.insert(key, idx);
                        }
                    }
                });
            }
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..m {
            let r = dsu.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        groups
    }

    /// One tight component covering every vertex of `{1..n}`.
    pub fn is_tightly_connected(&self) -> bool {
        self.tight_component_indices().len() == 1 && self.covered_vertices().len() == self.n
    }

    /// Same as [`is_tightly_connected`](Self::is_tightly_connected) but ignoring
    /// vertices that lie in no edge.
    pub fn is_tightly_connected_on_covered(&self) -> bool {
        self.tight_component_indices().len() == 1
    }
}

/// `|e ∩ f| = k - 1` for two edges of the same uniformity `k`.
pub fn tight_adjacent(e: &Edge, f: &Edge) -> bool {
    e.len() == f.len() && !e.is_empty() && e.intersection_size(f) + 1 == e.len()
}

fn check_compatible(r: &Hypergraph, b: &Hypergraph) -> Result<()> {
    if r.k != b.k || r.n != b.n {
        return Err(Error::invalid(format!(
            "mismatched hypergraphs: (k={}, n={}) vs (k={}, n={})",
            r.k, r.n, b.k, b.n
        )));
    }
    Ok(())
}

/// Every edge of `r` meets every edge of `b` in at most one vertex.
pub fn distinguishable(r: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    check_compatible(r, b)?;
    let mut pairs: HashSet<(Vertex, Vertex)> = HashSet::new();
    for e in r.edges() {
        let v = e.vertices();
        for x in 0..v.len() {
            for y in x + 1..v.len() {
                pairs.insert((v[x], v[y]));
            }
        }
    }
    for f in b.edges() {
        let v = f.vertices();
        for x in 0..v.len() {
            for y in x + 1..v.len() {
                if pairs.contains(&(v[x], v[y])) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A pair of hypergraphs on a shared vertex set, coloured red and blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredPair {
    pub red: Hypergraph,
    pub blue: Hypergraph,
}

impl ColouredPair {
    /// Requires equal `(k, n)` and edge-disjoint sides.
    pub fn new(red: Hypergraph, blue: Hypergraph) -> Result<Self> {
        check_compatible(&red, &blue)?;
        if let Some(e) = red.edges().iter().find(|e| blue.contains(e)) {
            return Err(Error::invalid(format!("edge {e:?} is both red and blue")));
        }
        Ok(ColouredPair { red, blue })
    }

    pub fn is_distinguishable(&self) -> bool {
        distinguishable(&self.red, &self.blue).unwrap_or(false)
    }

    pub fn k(&self) -> usize {
        self.red.k()
    }

    pub fn n(&self) -> usize {
        self.red.n()
    }
}

/// Pairwise disjoint edges of a host hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(host: &Hypergraph, edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            if !host.contains(e) {
                return Err(Error::invalid(format!("{e:?} is not an edge of the host")));
            }
        }
        let m = Matching::unchecked(edges);
        m.check_disjoint()?;
        Ok(m)
    }

    /// A matching of arbitrary disjoint vertex sets (no host).
    pub fn from_sets(edges: Vec<Edge>) -> Result<Self> {
        let m = Matching::unchecked(edges);
        m.check_disjoint()?;
        Ok(m)
    }

    pub(crate) fn unchecked(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        Matching { edges }
    }

    fn check_disjoint(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.edges {
            for &v in e.vertices() {
                if !seen.insert(v) {
                    return Err(Error::invalid(format!("vertex {v} covered twice")));
                }
            }
        }
        Ok(())
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.edges.iter().flat_map(|e| e.vertices().to_vec()).collect();
        v.sort_unstable();
        v
    }

    /// Vertices of `{1..n}` covered by no matching edge.
    pub fn uncovered(&self, n: usize) -> Vec<Vertex> {
        let covered: HashSet<Vertex> = self.vertices().into_iter().collect();
        (1..=n as Vertex).filter(|v| !covered.contains(v)).collect()
    }

    /// The classes `I`, `J`, `K`, ...: the `c`-th smallest vertex of every
    /// matching edge goes to class `c`.
    pub fn coordinate_classes(&self) -> Vec<Vec<Vertex>> {
        let width = self.edges.iter().map(Edge::len).max().unwrap_or(0);
        (0..width)
            .map(|c| {
                let mut cls: Vec<Vertex> = self
                    .edges
                    .iter()
                    .filter_map(|e| e.vertices().get(c).copied())
                    .collect();
                cls.sort_unstable();
                cls
            })
            .collect()
    }

    /// All `r`-subsets of `V(M)` meeting each matching edge at most once.
    pub fn crossing_sets(&self, r: usize) -> Result<Vec<Vec<Vertex>>> {
        if r < 1 || r > self.edges.len() {
            return Err(Error::invalid(format!("r = {r} outside 1..={}", self.edges.len())));
        }
        let idx: Vec<usize> = (0..self.edges.len()).collect();
        let mut out = Vec::new();
        for_each_subset(&idx, r, |chosen| {
            let mut acc: Vec<Vertex> = Vec::with_capacity(r);
            transversals(&self.edges, chosen, 0, &mut acc, &mut out);
        });
        for s in &mut out {
            s.sort_unstable();
        }
        out.sort();
        Ok(out)
    }
}

fn transversals(edges: &[Edge], chosen: &[usize], pos: usize, acc: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    if pos == chosen.len() {
        out.push(acc.clone());
        return;
    }
    for &v in edges[chosen[pos]].vertices() {
        acc.push(v);
        transversals(edges, chosen, pos + 1, acc, out);
        acc.pop();
    }
}
