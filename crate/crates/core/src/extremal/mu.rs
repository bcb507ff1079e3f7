//! Brute-force extremal numbers over left-shifted 3-graphs: the largest
//! distinguishable red/blue pair with a bounded red matching number, and the
//! largest 3-graph with a bounded matching number.

use crate::combin::binom;
use crate::error::{Error, Result};
use crate::hypergraph::{ColouredPair, Hypergraph};
use crate::par::map_tasks;

use super::downsets::{prefixes, State, TriplePoset};

/// Decision depth used to split the enumeration into independent tasks.
const SPLIT_DEPTH: usize = 12;

#[derive(Clone, Debug)]
pub struct MuResult {
    pub n: usize,
    pub s: usize,
    pub t: u64,
    /// `None` when no pair satisfies `m(R) <= s` and `e(R) > t`.
    pub value: Option<u64>,
    /// Every extremal pair with `R` left-shifted; `B` is then forced to be
    /// the (right-shifted) set of triples sharing no pair with `R`.
    pub witnesses: Vec<ColouredPair>,
    pub nodes: u64,
}

impl MuResult {
    pub fn is_empty_family(&self) -> bool {
        self.value.is_none()
    }
}

struct MuTask {
    best: Option<u64>,
    witnesses: Vec<u128>,
    nodes: u64,
}

fn mu_dfs(st: &mut State, x: usize, t: u64, out: &mut MuTask) {
    out.nodes += 1;
    let p = st.poset;
    let open = st.open(x);
    if (st.size + open) as u64 <= t {
        return;
    }
    let bound = (st.size + open + st.free) as u64;
    if out.best.is_some_and(|b| bound < b) {
        return;
    }
    if x == p.len() {
        let v = (st.size + st.free) as u64;
        match out.best {
            Some(b) if v < b => {}
            Some(b) if v == b => out.witnesses.push(st.included),
            _ => {
                out.best = Some(v);
                out.witnesses = vec![st.included];
            }
        }
        return;
    }
    if st.includable(x) {
        let snap = st.include(x);
        mu_dfs(st, x + 1, t, out);
        st.uninclude(x, &snap);
    }
    let old = st.exclude(x);
    mu_dfs(st, x + 1, t, out);
    st.blocked = old;
}

/// Free triples of `R`: those sharing no pair with an edge of `R`.
fn free_part(p: &TriplePoset, red: u128) -> u128 {
    let mut shadow = vec![false; p.pair_count];
    for x in 0..p.len() {
        if red >> x & 1 == 1 {
            for &q in &p.pairs[x] {
                shadow[q] = true;
            }
        }
    }
    (0..p.len())
        .filter(|&x| p.pairs[x].iter().all(|&q| !shadow[q]))
        .fold(0, |m, x| m | 1 << x)
}

/// `max e(R ∪ B)` over distinguishable pairs of 3-graphs on `{1..n}` with
/// `m(R) <= s` and `e(R) > t`, searched over left-shifted `R`.
pub fn mu_bruteforce(n: usize, s: usize, t: u64, workers: usize) -> Result<MuResult> {
    if n < 3 {
        return Err(Error::invalid("need n >= 3"));
    }
    let empty = MuResult { n, s, t, value: None, witnesses: Vec::new(), nodes: 0 };
    if s == 0 || t >= binom(n as u64, 3) as u64 {
        return Ok(empty);
    }
    let poset = TriplePoset::new(n)?;
    let tasks = prefixes(&poset, s, SPLIT_DEPTH);
    let outs = map_tasks(workers, tasks, |prefix| {
        let mut st = State::new(&poset, s, true);
        let mut out = MuTask { best: None, witnesses: Vec::new(), nodes: 0 };
        if st.replay(&prefix) {
            mu_dfs(&mut st, prefix.len(), t, &mut out);
        }
        out
    });
    let nodes = outs.iter().map(|o| o.nodes).sum();
    let Some(best) = outs.iter().filter_map(|o| o.best).max() else {
        return Ok(MuResult { nodes, ..empty });
    };
    let mut sets: Vec<u128> = outs
        .into_iter()
        .filter(|o| o.best == Some(best))
        .flat_map(|o| o.witnesses)
        .collect();
    sets.sort_unstable();
    let witnesses = sets
        .into_iter()
        .map(|r| ColouredPair { red: poset.graph(r), blue: poset.graph(free_part(&poset, r)) })
        .collect();
    Ok(MuResult { n, s, t, value: Some(best), witnesses, nodes })
}

#[derive(Clone, Debug)]
pub struct EmcResult {
    pub n: usize,
    pub s: usize,
    pub value: usize,
    /// `max{binom(3s+2, 3), binom(n, 3) - binom(n-s, 3)}`.
    pub formula: u128,
    pub witness: Hypergraph,
    pub nodes: u64,
}

struct EmcTask {
    best: usize,
    witness: Option<u128>,
    nodes: u64,
}

fn emc_dfs(st: &mut State, x: usize, out: &mut EmcTask) {
    out.nodes += 1;
    let bound = st.size + st.open(x);
    if bound < out.best || (bound == out.best && out.witness.is_some()) {
        return;
    }
    if x == st.poset.len() {
        out.best = st.size;
        out.witness = Some(st.included);
        return;
    }
    if st.includable(x) {
        let snap = st.include(x);
        emc_dfs(st, x + 1, out);
        st.uninclude(x, &snap);
    }
    let old = st.exclude(x);
    emc_dfs(st, x + 1, out);
    st.blocked = old;
}

/// Closed form for the largest 3-graph on `n` vertices without `s + 1`
/// disjoint edges.
pub fn emc_formula(n: usize, s: usize) -> u128 {
    let clique = if 3 * s + 2 <= n { binom(3 * s as u64 + 2, 3) } else { binom(n as u64, 3) };
    clique.max(binom(n as u64, 3) - binom((n - s.min(n)) as u64, 3))
}

/// Largest 3-graph on `{1..n}` with matching number at most `s`, found by
/// branch and bound over left-shifted 3-graphs.
pub fn emc_max_edges(n: usize, s: usize, workers: usize) -> Result<EmcResult> {
    if n < 3 {
        return Err(Error::invalid("need n >= 3"));
    }
    let poset = TriplePoset::new(n)?;
    let tasks = prefixes(&poset, s, SPLIT_DEPTH);
    let outs = map_tasks(workers, tasks, |prefix| {
        let mut st = State::new(&poset, s, false);
        let mut out = EmcTask { best: 0, witness: None, nodes: 0 };
        if st.replay(&prefix) {
            emc_dfs(&mut st, prefix.len(), &mut out);
        }
        out
    });
    let nodes = outs.iter().map(|o| o.nodes).sum();
    // first task (in DFS order) attaining the maximum supplies the witness
    let best = outs.iter().map(|o| o.best).max().unwrap_or(0);
    let witness = outs
        .iter()
        .find(|o| o.best == best && o.witness.is_some())
        .and_then(|o| o.witness)
        .unwrap_or(0);
    Ok(EmcResult {
        n,
        s,
        value: best,
        formula: emc_formula(n, s),
        witness: poset.graph(witness),
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::distinguishable;
    use crate::matchcycle::{max_matching, SearchLimits};
    use crate::shifting::{is_left_shifted, is_right_shifted};

    #[test]
    fn mu_examples() {
        let r = mu_bruteforce(6, 2, 0, 1).unwrap();
        assert_eq!(r.value, Some(20));
        assert!(r.witnesses.iter().any(|w| w.red.edge_count() == 20 && w.blue.is_empty()));
        assert!(mu_bruteforce(6, 0, 0, 1).unwrap().is_empty_family());
        assert!(mu_bruteforce(5, 1, 10, 1).unwrap().is_empty_family());
        let r = mu_bruteforce(6, 1, 10, 1).unwrap();
        // m(R) <= 1 caps e(R) at 10 on six vertices
        assert!(r.is_empty_family());
        let r = mu_bruteforce(6, 1, 4, 2).unwrap();
        assert!(r.value.is_some());
        for w in &r.witnesses {
            assert!(distinguishable(&w.red, &w.blue).unwrap());
            assert!(is_left_shifted(&w.red) && is_right_shifted(&w.blue));
            assert!(w.red.edge_count() > 4);
            assert!(max_matching(&w.red, &SearchLimits::none()).matching.len() <= 1);
            assert_eq!((w.red.edge_count() + w.blue.edge_count()) as u64, r.value.unwrap());
        }
    }

    #[test]
    fn emc_examples() {
        assert_eq!(emc_formula(6, 1), 10);
        assert_eq!(emc_formula(7, 1), 15);
        assert_eq!(emc_formula(9, 2), 56);
        for (n, s, v) in [(6, 1, 10), (7, 1, 15), (9, 2, 56)] {
            let r = emc_max_edges(n, s, 1).unwrap();
            assert_eq!(r.value, v);
            assert_eq!(r.witness.edge_count(), v);
            assert!(max_matching(&r.witness, &SearchLimits::none()).matching.len() <= s);
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let a = mu_bruteforce(7, 1, 5, 1).unwrap();
        let b = mu_bruteforce(7, 1, 5, 4).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.nodes, b.nodes);
        assert_eq!(a.witnesses.len(), b.witnesses.len());
        let a = emc_max_edges(8, 2, 1).unwrap();
        let b = emc_max_edges(8, 2, 3).unwrap();
        assert_eq!((a.value, a.nodes, &a.witness), (b.value, b.nodes, &b.witness));
    }
}
