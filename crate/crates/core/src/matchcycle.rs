//! Exact maximum matching and tight-cycle search for small hypergraphs.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Matching, Vertex, MASK_LIMIT};

pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(60);

/// Wall-clock budget for a search. Searches poll it every few thousand nodes.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    deadline: Option<Instant>,
}

impl SearchLimits {
    pub fn none() -> Self {
        SearchLimits { deadline: None }
    }

    pub fn with_time_limit(limit: Duration) -> Self {
        SearchLimits { deadline: Instant::now().checked_add(limit) }
    }

    fn clock(&self) -> Clock {
        Clock { deadline: self.deadline, ticks: 0, expired: false }
    }
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self::with_time_limit(DEFAULT_TIME_LIMIT)
    }
}

struct Clock {
    deadline: Option<Instant>,
    ticks: u32,
    expired: bool,
}

impl Clock {
    #[inline]
    fn tick(&mut self) -> bool {
        if self.expired {
            return true;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks & 0xfff == 0 {
            if let Some(d) = self.deadline {
                self.expired = Instant::now() >= d;
            }
        }
        self.expired
    }
}

/// Three-valued answer for searches that may run out of time.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchingResult {
    pub matching: Matching,
    /// False when the time limit cut the search short; `matching` is then
    /// only a lower bound.
    pub optimal: bool,
}

struct MatchSearch<'a> {
    k: usize,
    edges: &'a [Edge],
    by_vertex: Vec<Vec<usize>>,
    alive: Vec<bool>,
    stack: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    clock: Clock,
    deg: Vec<usize>,
}

impl MatchSearch<'_> {
    fn available(&self, e: usize) -> bool {
        self.edges[e].vertices().iter().all(|&v| self.alive[v as usize])
    }

    fn run(&mut self) {
        if self.best.len() >= self.target || self.clock.tick() {
            return;
        }
        // degrees in the subgraph of still-available edges
        self.deg.iter_mut().for_each(|d| *d = 0);
        for e in 0..self.edges.len() {
            if self.available(e) {
                for &v in self.edges[e].vertices() {
                    self.deg[v as usize] += 1;
                }
            }
        }
        let mut live = 0;
        let mut pick: Option<usize> = None;
        for v in 1..self.deg.len() {
            let d = self.deg[v];
            if d > 0 {
                live += 1;
                if pick.map_or(true, |p| d < self.deg[p]) {
                    pick = Some(v);
                }
            }
        }
        if self.stack.len() + live / self.k <= self.best.len() {
            return;
        }
        let Some(v) = pick else { return };
        let choices: Vec<usize> =
            self.by_vertex[v].iter().copied().filter(|&e| self.available(e)).collect();
        for e in choices {
            for &u in self.edges[e].vertices() {
                self.alive[u as usize] = false;
            }
            self.stack.push(e);
            if self.stack.len() > self.best.len() {
                self.best = self.stack.clone();
            }
            self.run();
            self.stack.pop();
            for &u in self.edges[e].vertices() {
                self.alive[u as usize] = true;
            }
            if self.best.len() >= self.target || self.clock.expired {
                return;
            }
        }
        // leave v uncovered
        self.alive[v] = false;
        self.run();
        self.alive[v] = true;
    }
}

fn matching_search(g: &Hypergraph, target: usize, limits: &SearchLimits) -> (Vec<usize>, bool) {
    let n = g.n();
    let mut by_vertex = vec![Vec::new(); n + 1];
    for (i, e) in g.edges().iter().enumerate() {
        for &v in e.vertices() {
            by_vertex[v as usize].push(i);
        }
    }
    let mut s = MatchSearch {
        k: g.k(),
        edges: g.edges(),
        by_vertex,
        alive: vec![true; n + 1],
        stack: Vec::new(),
        best: Vec::new(),
        target,
        clock: limits.clock(),
        deg: vec![0; n + 1],
    };
    s.run();
    (s.best, !s.clock.expired)
}

/// Largest set of pairwise disjoint edges, by branch and bound on a vertex of
/// minimum positive degree with the bound `floor(live vertices / k)`.
pub fn max_matching(g: &Hypergraph, limits: &SearchLimits) -> MatchingResult {
    let (best, optimal) = matching_search(g, usize::MAX, limits);
    let edges = best.iter().map(|&i| g.edges()[i].clone()).collect();
    MatchingResult { matching: Matching::unchecked(edges), optimal }
}

/// Whether `g` has `s` disjoint edges; stops as soon as they are found.
pub fn has_matching_of_size(g: &Hypergraph, s: usize, limits: &SearchLimits) -> Verdict {
    if s == 0 {
        return Verdict::Yes;
    }
    let (best, complete) = matching_search(g, s, limits);
    if best.len() >= s {
        Verdict::Yes
    } else if complete {
        Verdict::No
    } else {
        Verdict::Unknown
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CycleOptions {
    /// Only accept cycles on at least `2k` vertices instead of `k + 1`.
    pub min_length_2k: bool,
}

impl CycleOptions {
    pub fn min_length(&self, k: usize) -> usize {
        if self.min_length_2k {
            2 * k
        } else {
            k + 1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleResult {
    /// Cyclic vertex sequence of the longest cycle found.
    pub cycle: Option<Vec<Vertex>>,
    pub optimal: bool,
}

impl CycleResult {
    pub fn length(&self) -> Option<usize> {
        self.cycle.as_ref().map(Vec::len)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonResult {
    pub verdict: Verdict,
    pub certificate: Option<Vec<Vertex>>,
    pub note: Option<String>,
}

/// True iff `seq` has distinct vertices, length at least `k + 1`, and every
/// cyclic window of `k` consecutive vertices is an edge of `g`.
pub fn verify_tight_cycle(g: &Hypergraph, seq: &[Vertex]) -> bool {
    let k = g.k();
    let l = seq.len();
    if l < k + 1 || seq.iter().collect::<HashSet<_>>().len() != l {
        return false;
    }
    (0..l).all(|s| {
        let w: Vec<Vertex> = (0..k).map(|i| seq[(s + i) % l]).collect();
        g.contains_vertices(&w)
    })
}

fn cycle_windows(k: usize, seq: &[Vertex]) -> Vec<Edge> {
    let l = seq.len();
    (0..l)
        .map(|s| {
            let mut w: Vec<Vertex> = (0..k).map(|i| seq[(s + i) % l]).collect();
            w.sort_unstable();
            Edge::from_sorted(&w)
        })
        .collect()
}

/// Edge-level check that all windows of a cycle lie in a single tight
/// component. Holds for every genuine tight cycle.
fn assert_single_component(g: &Hypergraph, seq: &[Vertex]) -> Result<()> {
    let comps = g.tight_component_indices();
    let mut owner = HashMap::new();
    for (c, idx) in comps.iter().enumerate() {
        for &i in idx {
            owner.insert(&g.edges()[i], c);
        }
    }
    let seen: HashSet<usize> =
        cycle_windows(g.k(), seq).iter().filter_map(|e| owner.get(e).copied()).collect();
    if seen.len() != 1 {
        return Err(Error::ContractViolation(format!(
            "tight cycle certificate spans {} tight components",
            seen.len()
        )));
    }
    Ok(())
}

/// Search restricted to the edges of one tight component.
struct CycleSearch {
    k: usize,
    min_len: usize,
    edges: HashSet<u128>,
    /// `(k-1)`-set mask -> vertices completing it to an edge
    succ: HashMap<u128, Vec<Vertex>>,
    covered: u128,
    path: Vec<Vertex>,
    used: u128,
    best: Option<Vec<Vertex>>,
    /// Stop as soon as a cycle of this length is found.
    goal: usize,
    clock: Clock,
}

fn bit(v: Vertex) -> u128 {
    1u128 << (v - 1)
}

impl CycleSearch {
    fn new(g: &Hypergraph, edges: &[usize], min_len: usize, goal: usize, clock: Clock) -> Self {
        let k = g.k();
        let masks = g.masks().expect("cycle search needs edge masks");
        let mut succ: HashMap<u128, Vec<Vertex>> = HashMap::new();
        let mut set = HashSet::new();
        let mut covered = 0;
        for &i in edges {
            let m = masks[i];
            set.insert(m);
            covered |= m;
            for &v in g.edges()[i].vertices() {
                succ.entry(m & !bit(v)).or_default().push(v);
            }
        }
        for l in succ.values_mut() {
            l.sort_unstable();
        }
        CycleSearch {
            k,
            min_len,
            edges: set,
            succ,
            covered,
            path: Vec::new(),
            used: 0,
            best: None,
            goal,
            clock,
        }
    }

    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(0, Vec::len)
    }

    fn done(&self) -> bool {
        self.best_len() >= self.goal || self.clock.expired
    }

    fn closes(&self) -> bool {
        let l = self.path.len();
        let k = self.k;
        (0..k - 1).all(|i| {
            let mut m = 0;
            for &v in &self.path[l - (k - 1) + i..] {
                m |= bit(v);
            }
            for &v in &self.path[..=i] {
                m |= bit(v);
            }
            self.edges.contains(&m)
        })
    }

    /// Cycles whose smallest vertex is `v0`.
    fn from_start(&mut self, v0: Vertex, starts: &[Vec<Vertex>]) {
        for first in starts {
            self.path.clear();
            self.path.extend_from_slice(first);
            self.used = first.iter().map(|&v| bit(v)).sum();
            self.extend(v0);
            if self.done() {
                return;
            }
        }
    }

    fn extend(&mut self, v0: Vertex) {
        if self.clock.tick() {
            return;
        }
        let l = self.path.len();
        if l >= self.min_len && l > self.best_len() && self.closes() {
            self.best = Some(self.path.clone());
            if self.done() {
                return;
            }
        }
        let above = self.covered & !self.used & !(bit(v0) | (bit(v0) - 1));
        if l + above.count_ones() as usize <= self.best_len() {
            return;
        }
        let mut key = 0;
        for &v in &self.path[l - (self.k - 1)..] {
            key |= bit(v);
        }
        let Some(next) = self.succ.get(&key) else { return };
        for w in next.clone() {
            if w <= v0 || self.used & bit(w) != 0 {
                continue;
            }
            self.path.push(w);
            self.used |= bit(w);
            self.extend(v0);
            self.used &= !bit(w);
            self.path.pop();
            if self.done() {
                return;
            }
        }
    }
}

/// Orderings of each edge through `v0` with `v0` first, remaining vertices
/// all above `v0`.
fn start_orders(g: &Hypergraph, edges: &[usize], v0: Vertex) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for &i in edges {
        let e = g.edges()[i].vertices();
        if e[0] != v0 {
            continue;
        }
        let mut rest: Vec<Vertex> = e[1..].to_vec();
        permutations(&mut rest, 0, &mut |p| {
            let mut s = vec![v0];
            s.extend_from_slice(p);
            out.push(s);
        });
    }
    out
}

fn permutations(a: &mut Vec<Vertex>, i: usize, f: &mut impl FnMut(&[Vertex])) {
    if i == a.len() {
        f(a);
        return;
    }
    for j in i..a.len() {
        a.swap(i, j);
        permutations(a, i + 1, f);
        a.swap(i, j);
    }
}

fn require_masks(g: &Hypergraph) -> Result<()> {
    if g.n() > MASK_LIMIT {
        return Err(Error::invalid(format!(
            "cycle search supports at most {MASK_LIMIT} vertices"
        )));
    }
    Ok(())
}

/// Longest tight cycle, searched one tight component at a time (largest
/// vertex cover first) by DFS from the cycle's smallest vertex.
pub fn longest_tight_cycle(
    g: &Hypergraph,
    opts: &CycleOptions,
    limits: &SearchLimits,
) -> Result<CycleResult> {
    require_masks(g)?;
    let k = g.k();
    let min_len = opts.min_length(k);
    let mut comps: Vec<(usize, Vec<usize>)> = g
        .tight_component_indices()
        .into_iter()
        .map(|idx| {
            let cov = idx.iter().fold(0u128, |m, &i| m | g.masks().unwrap()[i]);
            (cov.count_ones() as usize, idx)
        })
        .collect();
    comps.sort_by(|a, b| b.0.cmp(&a.0));
    let mut best: Option<Vec<Vertex>> = None;
    let mut clock = limits.clock();
    for (cover, idx) in comps {
        let best_len = best.as_ref().map_or(0, Vec::len);
        if cover <= best_len || cover < min_len {
            continue;
        }
        let mut s = CycleSearch::new(g, &idx, min_len, usize::MAX, clock);
        s.best = best.take();
        let verts = crate::hypergraph::mask_vertices(s.covered);
        for &v0 in &verts {
            let above = verts.iter().filter(|&&v| v >= v0).count();
            if above <= s.best_len() {
                break;
            }
            let starts = start_orders(g, &idx, v0);
            s.from_start(v0, &starts);
            if s.clock.expired {
                break;
            }
        }
        best = s.best;
        clock = s.clock;
        if clock.expired {
            break;
        }
    }
    if let Some(c) = &best {
        debug_assert!(verify_tight_cycle(g, c));
        assert_single_component(g, c)?;
    }
    Ok(CycleResult { cycle: best, optimal: !clock.expired })
}

/// Tight Hamilton cycle search. Only a component covering every vertex can
/// carry one, so the search runs inside such components from vertex 1.
pub fn has_tight_hamilton(g: &Hypergraph, limits: &SearchLimits) -> Result<HamiltonResult> {
    require_masks(g)?;
    let (k, n) = (g.k(), g.n());
    if n < k + 1 {
        return Err(Error::invalid(format!("need n >= k + 1, got n = {n}, k = {k}")));
    }
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let spanning: Vec<Vec<usize>> = g
        .tight_component_indices()
        .into_iter()
        .filter(|idx| idx.iter().fold(0u128, |m, &i| m | g.masks().unwrap()[i]) == full)
        .collect();
    if spanning.is_empty() {
        return Ok(HamiltonResult {
            verdict: Verdict::No,
            certificate: None,
            note: Some("no tight component covers every vertex".into()),
        });
    }
    let mut clock = limits.clock();
    for idx in &spanning {
        let mut s = CycleSearch::new(g, idx, n, n, clock);
        let starts = start_orders(g, idx, 1);
        s.from_start(1, &starts);
        clock = s.clock;
        if let Some(c) = s.best {
            if !verify_tight_cycle(g, &c) {
                return Err(Error::ContractViolation("Hamilton certificate failed verification".into()));
            }
            assert_single_component(g, &c)?;
            return Ok(HamiltonResult { verdict: Verdict::Yes, certificate: Some(c), note: None });
        }
        if clock.expired {
            return Ok(HamiltonResult {
                verdict: Verdict::Unknown,
                certificate: None,
                note: Some("time limit reached".into()),
            });
        }
    }
    Ok(HamiltonResult {
        verdict: Verdict::No,
        certificate: None,
        note: Some(format!(
            "exhaustive search over {} spanning tight component(s) found no cycle",
            spanning.len()
        )),
    })
}
