//! Down-sets of the componentwise order on 3-subsets of `{1..n}`, i.e. the
//! left-shifted 3-graphs, explored by a DFS that decides elements along a
//! linear extension.

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Vertex};

/// `binom(10, 3) = 120` elements still fit one `u128`.
pub(crate) const MAX_N: usize = 10;

pub(crate) struct TriplePoset {
    pub n: usize,
    /// Sorted by coordinate sum, then lexicographically: a linear extension.
    pub elems: Vec<[Vertex; 3]>,
    pub vmask: Vec<u32>,
    /// Lower covers of each element.
    pub covers: Vec<u128>,
    /// Each element together with everything above it.
    pub up: Vec<u128>,
    /// Indices of the three 2-subsets of each element.
    pub pairs: Vec<[usize; 3]>,
    pub pair_count: usize,
    /// Elements containing each pair.
    pub pair_elems: Vec<Vec<usize>>,
}

pub(crate) fn pair_index(n: usize, a: Vertex, b: Vertex) -> usize {
    // a < b, 1-based; row-major over the strict upper triangle
    let (a, b) = (a as usize - 1, b as usize - 1);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl TriplePoset {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::invalid(format!("left-shifted enumeration supports n <= {MAX_N}")));
        }
        let mut elems = Vec::new();
        for a in 1..=n as Vertex {
            for b in a + 1..=n as Vertex {
                for c in b + 1..=n as Vertex {
                    elems.push([a, b, c]);
                }
            }
        }
        elems.sort_by_key(|e| (e[0] + e[1] + e[2], *e));
        let pos = |e: [Vertex; 3]| elems.iter().position(|&x| x == e).unwrap();
        let m = elems.len();
        let mut covers = vec![0u128; m];
        let mut up = vec![0u128; m];
        for (i, &[a, b, c]) in elems.iter().enumerate() {
            let mut below = Vec::new();
            if a > 1 {
                below.push([a - 1, b, c]);
            }
            if b - 1 > a {
                below.push([a, b - 1, c]);
            }
            if c - 1 > b {
                below.push([a, b, c - 1]);
            }
            for d in below {
                covers[i] |= 1 << pos(d);
            }
            for (j, f) in elems.iter().enumerate() {
                if (0..3).all(|t| elems[i][t] <= f[t]) {
                    up[i] |= 1 << j;
                }
            }
        }
        let pair_count = n * n.saturating_sub(1) / 2;
        let mut pair_elems = vec![Vec::new(); pair_count];
        let pairs: Vec<[usize; 3]> = elems
            .iter()
            .enumerate()
            .map(|(i, &[a, b, c])| {
                let p = [pair_index(n, a, b), pair_index(n, a, c), pair_index(n, b, c)];
                for &q in &p {
                    pair_elems[q].push(i);
                }
                p
            })
            .collect();
        let vmask = elems.iter().map(|e| e.iter().map(|&v| 1u32 << (v - 1)).sum()).collect();
        Ok(TriplePoset { n, elems, vmask, covers, up, pairs, pair_count, pair_elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn graph(&self, set: u128) -> Hypergraph {
        let edges = (0..self.len())
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| Edge::from_sorted(&self.elems[i]))
            .collect();
        Hypergraph::from_trusted(3, self.n, edges)
    }

    /// Mask of element indices `>= from`.
    pub fn tail(&self, from: usize) -> u128 {
        let all = if self.len() == 128 { u128::MAX } else { (1u128 << self.len()) - 1 };
        if from >= 128 {
            0
        } else {
            all & !((1u128 << from) - 1)
        }
    }
}

/// Tracks vertex sets of all `j`-matchings, `j <= s`, so that an edge can be
/// rejected exactly when it would create a matching of size `s + 1`.
pub(crate) struct MatchTracker {
    s: usize,
    present: Vec<Vec<bool>>,
    lists: Vec<Vec<u32>>,
}

impl MatchTracker {
    pub fn new(n: usize, s: usize) -> Self {
        let s = s.min(n / 3 + 1);
        let mut present = vec![vec![false; 1 << n]; s + 1];
        present[0][0] = true;
        let mut lists = vec![Vec::new(); s + 1];
        lists[0].push(0);
        MatchTracker { s, present, lists }
    }

    pub fn can_add(&self, m: u32) -> bool {
        self.lists[self.s].iter().all(|&u| u & m != 0)
    }

    /// Adds an edge; returns the list lengths to restore on undo.
    pub fn add(&mut self, m: u32) -> Vec<usize> {
        let snapshot: Vec<usize> = self.lists.iter().map(Vec::len).collect();
        for j in (1..=self.s).rev() {
            for idx in 0..snapshot[j - 1] {
                let u = self.lists[j - 1][idx];
                if u & m == 0 {
                    let w = u | m;
                    if !self.present[j][w as usize] {
                        self.present[j][w as usize] = true;
                        self.lists[j].push(w);
                    }
                }
            }
        }
        snapshot
    }

    pub fn undo(&mut self, snapshot: &[usize]) {
        for (j, &len) in snapshot.iter().enumerate() {
            while self.lists[j].len() > len {
                let w = self.lists[j].pop().unwrap();
                self.present[j][w as usize] = false;
            }
        }
    }
}

/// DFS state shared by the enumerators.
pub(crate) struct State<'p> {
    pub poset: &'p TriplePoset,
    pub included: u128,
    /// Elements that can no longer join: excluded, or above an excluded one.
    pub blocked: u128,
    pub size: usize,
    pub matching: MatchTracker,
    /// Shadow multiplicities, and number of shadow pairs per element; only
    /// maintained when `track_free` is set.
    track_free: bool,
    pair_cover: Vec<u16>,
    covered_pairs: Vec<u8>,
    /// Elements none of whose pairs lie in the shadow.
    pub free: usize,
}

impl<'p> State<'p> {
    pub fn new(poset: &'p TriplePoset, s: usize, track_free: bool) -> Self {
        State {
            poset,
            included: 0,
            blocked: 0,
            size: 0,
            matching: MatchTracker::new(poset.n, s),
            track_free,
            pair_cover: vec![0; poset.pair_count],
            covered_pairs: vec![0; poset.len()],
            free: poset.len(),
        }
    }

    pub fn includable(&self, x: usize) -> bool {
        self.blocked >> x & 1 == 0
            && self.poset.covers[x] & !self.included == 0
            && self.matching.can_add(self.poset.vmask[x])
    }

    pub fn include(&mut self, x: usize) -> Vec<usize> {
        self.included |= 1 << x;
        self.size += 1;
        if self.track_free {
            for &p in &self.poset.pairs[x] {
                self.pair_cover[p] += 1;
                if self.pair_cover[p] == 1 {
                    for &e in &self.poset.pair_elems[p] {
                        if self.covered_pairs[e] == 0 {
                            self.free -= 1;
                        }
                        self.covered_pairs[e] += 1;
                    }
                }
            }
        }
        self.matching.add(self.poset.vmask[x])
    }

    pub fn uninclude(&mut self, x: usize, snapshot: &[usize]) {
        self.matching.undo(snapshot);
        if self.track_free {
            for &p in &self.poset.pairs[x] {
                if self.pair_cover[p] == 1 {
                    for &e in &self.poset.pair_elems[p] {
                        self.covered_pairs[e] -= 1;
                        if self.covered_pairs[e] == 0 {
                            self.free += 1;
                        }
                    }
                }
                self.pair_cover[p] -= 1;
            }
        }
        self.size -= 1;
        self.included &= !(1 << x);
    }

    /// Blocks `x` and its up-set; returns the previous mask.
    pub fn exclude(&mut self, x: usize) -> u128 {
        let old = self.blocked;
        self.blocked |= self.poset.up[x];
        old
    }

    /// Undecided elements from `idx` on that could still be included.
    pub fn open(&self, idx: usize) -> usize {
        (self.poset.tail(idx) & !self.blocked).count_ones() as usize
    }

    /// Replays a decision prefix. Returns false if it is inconsistent.
    pub fn replay(&mut self, prefix: &[bool]) -> bool {
        for (x, &inc) in prefix.iter().enumerate() {
            if inc {
                if !self.includable(x) {
                    return false;
                }
                self.include(x);
            } else {
                self.exclude(x);
            }
        }
        true
    }
}

/// All consistent decision prefixes of the given depth, in DFS order
/// (include before exclude).
pub(crate) fn prefixes(poset: &TriplePoset, s: usize, depth: usize) -> Vec<Vec<bool>> {
    fn go(st: &mut State, depth: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        let x = cur.len();
        if x == depth {
            out.push(cur.clone());
            return;
        }
        if st.includable(x) {
            let snap = st.include(x);
            cur.push(true);
            go(st, depth, cur, out);
            cur.pop();
            st.uninclude(x, &snap);
        }
        let old = st.exclude(x);
        cur.push(false);
        go(st, depth, cur, out);
        cur.pop();
        st.blocked = old;
    }
    let depth = depth.min(poset.len());
    let mut st = State::new(poset, s, false);
    let mut out = Vec::new();
    go(&mut st, depth, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchcycle::{max_matching, SearchLimits};
    use crate::shifting::is_left_shifted;

    fn count_downsets(p: &TriplePoset, s: usize) -> (usize, bool) {
        fn go(st: &mut State, x: usize, count: &mut usize, ok: &mut bool, s: usize) {
            if x == st.poset.len() {
                *count += 1;
                let g = st.poset.graph(st.included);
                *ok &= is_left_shifted(&g)
                    && max_matching(&g, &SearchLimits::none()).matching.len() <= s;
                return;
            }
            if st.includable(x) {
                let snap = st.include(x);
                go(st, x + 1, count, ok, s);
                st.uninclude(x, &snap);
            }
            let old = st.exclude(x);
            go(st, x + 1, count, ok, s);
            st.blocked = old;
        }
        let mut st = State::new(p, s, true);
        let (mut c, mut ok) = (0, true);
        go(&mut st, 0, &mut c, &mut ok, s);
        (c, ok)
    }

    #[test]
    fn pair_indices_are_a_bijection() {
        let n = 7;
        let mut seen = vec![false; 21];
        for a in 1..=n as Vertex {
            for b in a + 1..=n as Vertex {
                let i = pair_index(n, a, b);
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn downsets_of_small_posets() {
        // On {1..4} the order is a chain 123 < 124 < 134 < 234: 5 down-sets.
        let p = TriplePoset::new(4).unwrap();
        assert_eq!(count_downsets(&p, 9), (5, true));
        // Exhaustive check against all subsets at n = 5.
        let p = TriplePoset::new(5).unwrap();
        let brute = (0u32..1 << 10)
            .filter(|&set| {
                (0..10).all(|x| set >> x & 1 == 0 || p.covers[x] as u32 & !set == 0)
            })
            .count();
        assert_eq!(count_downsets(&p, 9).0, brute);
        let (c6, ok) = count_downsets(&TriplePoset::new(6).unwrap(), 1);
        assert!(ok && c6 > 1);
    }

    #[test]
    fn free_count_tracks_shadow() {
        let p = TriplePoset::new(6).unwrap();
        let mut st = State::new(&p, 9, true);
        assert_eq!(st.free, 20);
        st.include(0); // 123
        // triples sharing no pair with 123: at most one vertex of {1,2,3}
        assert_eq!(st.free, 20 - 1 - 9);
        let old = st.free;
        let snap = st.include(1);
        st.uninclude(1, &snap);
        assert_eq!(st.free, old);
    }

    #[test]
    fn tracker_counts_matchings() {
        let mut t = MatchTracker::new(6, 1);
        assert!(t.can_add(0b000111));
        let s = t.add(0b000111);
        assert!(!t.can_add(0b111000));
        assert!(t.can_add(0b001110));
        t.undo(&s);
        assert!(t.can_add(0b111000));
    }
}
