//! Crossing red/blue configurations over three disjoint triples
//! `M_l = {i_l, j_l, k_l}`, their validity, and the weight LP.
//!
//! Vertex `v = 3l + c` is role `c` (`i`, `j`, `k`) of triple `l`. Crossing
//! pairs live in three slots `(0,1)`, `(0,2)`, `(1,2)`; pair `9s + 3a + b`
//! joins role `a` of the lower triple of slot `s` with role `b` of the upper
//! one. Crossing triple `9a + 3b + c` takes roles `a`, `b`, `c` from triples
//! 0, 1, 2. Sets are bitmasks over these indices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::lp::{Lp, Q};
use super::steady::Steadiness;

pub const ROLES: [char; 3] = ['i', 'j', 'k'];
pub const SLOTS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
pub const I_MASK: u16 = 0b001_001_001;
pub const K_MASK: u16 = 0b100_100_100;
pub const ALL_VERTICES: u16 = 0x1ff;
pub const ALL_CROSSING: u32 = (1 << 27) - 1;

pub fn vertex_name(v: usize) -> String {
    format!("{}{}", ROLES[v % 3], v / 3 + 1)
}

pub fn pair_index(slot: usize, a: usize, b: usize) -> usize {
    9 * slot + 3 * a + b
}

pub fn pair_vertices(p: usize) -> (usize, usize) {
    let (lo, hi) = SLOTS[p / 9];
    (3 * lo + p % 9 / 3, 3 * hi + p % 3)
}

pub fn pair_mask(p: usize) -> u16 {
    let (u, v) = pair_vertices(p);
    1 << u | 1 << v
}

/// Crossing pair on two vertices, if they lie in different triples.
pub fn pair_of(u: usize, v: usize) -> Option<usize> {
    let (u, v) = (u.min(v), u.max(v));
    if v >= 9 || u / 3 == v / 3 {
        return None;
    }
    let slot = SLOTS.iter().position(|&(l, h)| l == u / 3 && h == v / 3)?;
    Some(pair_index(slot, u % 3, v % 3))
}

pub fn triple_vertices(x: usize) -> [usize; 3] {
    [x / 9, 3 + x / 3 % 3, 6 + x % 3]
}

pub fn triple_mask(x: usize) -> u16 {
    triple_vertices(x).iter().fold(0, |m, v| m | 1 << v)
}

/// The three crossing pairs inside crossing triple `x`.
pub fn triple_pairs(x: usize) -> [usize; 3] {
    let [a, b, c] = triple_vertices(x);
    [pair_of(a, b).unwrap(), pair_of(a, c).unwrap(), pair_of(b, c).unwrap()]
}

pub fn triple_of(a: usize, b: usize, c: usize) -> usize {
    9 * a + 3 * b + c
}

/// `T` with a linear order on `{k1, k2, k3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TripleSystem {
    /// Rank of `k_l` in the order (0 = smallest).
    k_rank: [u8; 3],
}

impl Default for TripleSystem {
    fn default() -> Self {
        TripleSystem::standard()
    }
}

impl TripleSystem {
    /// `k1 < k2 < k3`.
    pub fn standard() -> Self {
        TripleSystem { k_rank: [0, 1, 2] }
    }

    /// `order` lists triples by increasing `k`, e.g. `[1, 0, 2]` is `k2 < k1 < k3`.
    pub fn with_k_order(order: [usize; 3]) -> Result<Self> {
        let mut k_rank = [u8::MAX; 3];
        for (r, &l) in order.iter().enumerate() {
            if l > 2 || k_rank[l] != u8::MAX {
                return Err(Error::invalid("k-order must be a permutation of the three triples"));
            }
            k_rank[l] = r as u8;
        }
        Ok(TripleSystem { k_rank })
    }

    pub fn k_order(&self) -> [usize; 3] {
        let mut o = [0; 3];
        for l in 0..3 {
            o[self.k_rank[l] as usize] = l;
        }
        o
    }

    /// The `k` vertex of whichever triple of `slot` has the larger `k`.
    pub fn star_centre(&self, slot: usize) -> usize {
        let (lo, hi) = SLOTS[slot];
        3 * if self.k_rank[hi] > self.k_rank[lo] { hi } else { lo } + 2
    }
}

/// A configuration: singletons as vertex masks, pairs and triples as masks
/// over crossing pairs / crossing triples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct LocalConfig {
    pub system: TripleSystem,
    pub r1: u16,
    pub r2: u32,
    pub r3: u32,
    pub b1: u16,
    pub b2: u32,
    pub b3: u32,
}

impl LocalConfig {
    pub fn new(system: TripleSystem) -> Self {
        LocalConfig { system, ..Default::default() }
    }

    /// `t = |R3| + |B3|`.
    pub fn t(&self) -> u32 {
        self.r3.count_ones() + self.b3.count_ones()
    }

    pub fn slot_r2(&self, slot: usize) -> u32 {
        self.r2 >> (9 * slot) & 0x1ff
    }

    pub fn slot_b2(&self, slot: usize) -> u32 {
        self.b2 >> (9 * slot) & 0x1ff
    }
}

/// Triples all of whose pairs lie in `b2`.
pub fn triples_spanned(b2: u32) -> u32 {
    (0..27).filter(|&x| triple_pairs(x).iter().all(|&p| b2 >> p & 1 == 1)).fold(0, |m, x| m | 1 << x)
}

/// Triples containing at least one pair of `b2`.
pub fn triples_touching(b2: u32) -> u32 {
    (0..27).filter(|&x| triple_pairs(x).iter().any(|&p| b2 >> p & 1 == 1)).fold(0, |m, x| m | 1 << x)
}

/// Down-closed in the product order on `[3] x [3]` (bit `3a + b`).
pub fn is_slot_down_set(m: u32) -> bool {
    (0..9).all(|c| {
        m >> c & 1 == 0 || {
            let (a, b) = (c / 3, c % 3);
            (a == 0 || m >> (c - 3) & 1 == 1) && (b == 0 || m >> (c - 1) & 1 == 1)
        }
    })
}

pub fn is_slot_up_set(m: u32) -> bool {
    is_slot_down_set(!m & 0x1ff)
}

/// `{ii, ij, ik, ji, ki}` in slot coordinates.
pub const HOOK: u32 = 0b001_001_111;

/// Slot pattern allowed by the per-slot red pair cap: at most five pairs,
/// and five only for the hook.
pub fn slot_r2_capped(m: u32) -> bool {
    let c = m.count_ones();
    c < 5 || (c == 5 && m == HOOK)
}

/// Whether a slot pattern touches the `k` vertex of either triple.
pub fn slot_touches_k(m: u32) -> bool {
    (0..9).any(|c| m >> c & 1 == 1 && (c / 3 == 2 || c % 3 == 2))
}

/// Largest `|R3|` allowed by the size-dependent caps on `R2`.
pub fn r3_cap(r2: u32) -> u32 {
    let slots: Vec<u32> = (0..3).map(|s| r2 >> (9 * s) & 0x1ff).collect();
    if slots.iter().any(|m| m.count_ones() >= 5) {
        19
    } else if slots.iter().all(|m| m.count_ones() == 4) && slots.iter().any(|&m| slot_touches_k(m)) {
        21
    } else {
        27
    }
}

/// A violated assumption, labelled `a`–`i` as in the hypothesis list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub label: char,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn labels(&self) -> Vec<char> {
        let mut l: Vec<char> = self.violations.iter().map(|v| v.label).collect();
        l.dedup();
        l
    }

    fn push(&mut self, label: char, message: impl Into<String>) {
        self.violations.push(Violation { label, message: message.into() });
    }
}

fn pair_name(p: usize) -> String {
    let (u, v) = pair_vertices(p);
    vertex_name(u) + &vertex_name(v)
}

fn triple_name(x: usize) -> String {
    triple_vertices(x).iter().map(|&v| vertex_name(v)).collect()
}

/// Checks every assumption on a configuration.
pub fn validate_config(cfg: &LocalConfig) -> Validation {
    let mut val = Validation::default();
    // (a) B down-closed
    for x in (0..27).filter(|x| cfg.b3 >> x & 1 == 1) {
        if triple_pairs(x).iter().any(|&p| cfg.b2 >> p & 1 == 0) {
            val.push('a', format!("blue triple {} has a pair outside B2", triple_name(x)));
        }
    }
    for p in (0..27).filter(|p| cfg.b2 >> p & 1 == 1) {
        if pair_mask(p) & !cfg.b1 != 0 {
            val.push('a', format!("blue pair {} has a vertex outside B1", pair_name(p)));
        }
    }
    // (b) distinguishable
    if cfg.r2 & cfg.b2 != 0 {
        val.push('b', "R2 and B2 share a pair");
    }
    let touching = triples_touching(cfg.b2);
    if cfg.r3 & touching != 0 {
        let x = (cfg.r3 & touching).trailing_zeros() as usize;
        val.push('b', format!("red triple {} contains a blue pair", triple_name(x)));
    }
    for x in (0..27).filter(|x| cfg.r3 >> x & 1 == 1) {
        for y in (0..27).filter(|y| cfg.b3 >> y & 1 == 1) {
            if (triple_mask(x) & triple_mask(y)).count_ones() >= 2 {
                val.push('b', format!("triples {} and {} share a pair", triple_name(x), triple_name(y)));
            }
        }
    }
    // (c) steady
    if !Steadiness::get().is_steady(cfg.r1, cfg.r2, cfg.r3) {
        val.push('c', "three disjoint red or T edges meet I in at most two vertices");
    }
    // (d) crossing: anything outside the crossing index ranges
    if cfg.r1 & !ALL_VERTICES != 0 || cfg.b1 & !ALL_VERTICES != 0 {
        val.push('d', "singleton outside the nine vertices");
    }
    if (cfg.r2 | cfg.r3 | cfg.b2 | cfg.b3) & !ALL_CROSSING != 0 {
        val.push('d', "edge index outside the crossing range");
    }
    // (e) R2 left-shifted, B2 right-shifted
    for s in 0..3 {
        if !is_slot_down_set(cfg.slot_r2(s)) {
            val.push('e', format!("R2 is not left-shifted between M{} and M{}", SLOTS[s].0 + 1, SLOTS[s].1 + 1));
        }
        if !is_slot_up_set(cfg.slot_b2(s)) {
            val.push('e', format!("B2 is not right-shifted between M{} and M{}", SLOTS[s].0 + 1, SLOTS[s].1 + 1));
        }
    }
    // (g) blue pairs per slot form a star at the larger k
    for s in 0..3 {
        let centre = cfg.system.star_centre(s);
        for c in (0..9).filter(|c| cfg.slot_b2(s) >> c & 1 == 1) {
            if pair_mask(9 * s + c) >> centre & 1 == 0 {
                val.push('g', format!("blue pair {} misses {}", pair_name(9 * s + c), vertex_name(centre)));
            }
        }
    }
    // (h) R1 ⊆ I and the per-slot red pair cap
    if cfg.r1 & !I_MASK != 0 {
        val.push('h', "R1 is not contained in I");
    }
    for s in 0..3 {
        if !slot_r2_capped(cfg.slot_r2(s)) {
            val.push('h', format!("too many red pairs between M{} and M{}", SLOTS[s].0 + 1, SLOTS[s].1 + 1));
        }
    }
    // (i) caps depending on |R3|
    let r3 = cfg.r3.count_ones();
    let slots: Vec<u32> = (0..3).map(|s| cfg.slot_r2(s)).collect();
    if r3 >= 20 && slots.iter().any(|m| m.count_ones() > 4) {
        val.push('i', "|R3| >= 20 but a slot has more than four red pairs");
    }
    if r3 >= 22 && slots.iter().all(|m| m.count_ones() == 4) && slots.iter().any(|&m| slot_touches_k(m)) {
        val.push('i', "|R3| >= 22 with four red pairs per slot, one touching K");
    }
    val
}

/// Items of the weight LP with the constraints between them.
#[derive(Clone, Debug)]
pub(crate) struct WeightModel {
    /// Red items then blue items: `(is_single, element index)`.
    pub red: Vec<(bool, usize)>,
    pub blue: Vec<(bool, usize)>,
    /// `(red item, blue item)` pairs with `r + b <= 1`.
    pub conflicts: Vec<(usize, usize)>,
    /// `(lower, upper)` blue items with `b(lower) <= b(upper)`.
    pub chain: Vec<(usize, usize)>,
    /// Blue items forced to zero (chain to a vertex outside `B1`).
    pub zero: Vec<usize>,
}

fn shares(a: (bool, usize), b: (bool, usize)) -> bool {
    let m = |(single, x): (bool, usize)| if single { 1u16 << x } else { pair_mask(x) };
    m(a) & m(b) != 0
}

impl WeightModel {
    pub(crate) fn new(r1: u16, r2: u32, b1: u16, b2: u32) -> Self {
        let singles = |m: u16| (0..9).filter(move |v| m >> v & 1 == 1).map(|v| (true, v));
        let pairs = |m: u32| (0..27).filter(move |p| m >> p & 1 == 1).map(|p| (false, p));
        let red: Vec<_> = singles(r1).chain(pairs(r2)).collect();
        let blue: Vec<_> = singles(b1).chain(pairs(b2)).collect();
        let mut conflicts = Vec::new();
        for (x, &r) in red.iter().enumerate() {
            for (y, &b) in blue.iter().enumerate() {
                // single–single: every pair; otherwise a shared vertex
                if (r.0 && b.0) || shares(r, b) {
                    conflicts.push((x, y));
                }
            }
        }
        let pos = |v: usize| blue.iter().position(|&b| b == (true, v));
        let (mut chain, mut zero) = (Vec::new(), Vec::new());
        for l in 0..3 {
            let [i, j, k] = [pos(3 * l), pos(3 * l + 1), pos(3 * l + 2)];
            match (i, j, k) {
                (_, Some(j), Some(k)) => {
                    chain.push((j, k));
                    if let Some(i) = i {
                        chain.push((i, j));
                    }
                }
                (Some(i), Some(j), None) => {
                    zero.extend([i, j]);
                }
                (Some(i), None, _) => zero.push(i),
                (None, Some(j), None) => zero.push(j),
                _ => {}
            }
        }
        WeightModel { red, blue, conflicts, chain, zero }
    }

    pub(crate) fn of(cfg: &LocalConfig) -> Self {
        WeightModel::new(cfg.r1, cfg.r2, cfg.b1, cfg.b2)
    }

    fn vars(&self) -> usize {
        self.red.len() + self.blue.len()
    }

    /// The LP `max Σ w·x` with the given per-item weights.
    pub(crate) fn lp(&self, red_w: &[Q], blue_w: &[Q]) -> Lp {
        let nr = self.red.len();
        let mut lp = Lp::new(self.vars());
        lp.objective = red_w.iter().chain(blue_w).copied().collect();
        for &(x, y) in &self.conflicts {
            lp.unit_row(&[x, nr + y], 1);
        }
        for &(lo, hi) in &self.chain {
            lp.row(vec![(nr + lo, Q::one()), (nr + hi, -Q::one())], Q::zero());
        }
        for &z in &self.zero {
            lp.unit_row(&[nr + z], 0);
        }
        for v in 0..self.vars() {
            lp.unit_row(&[v], 1);
        }
        lp
    }

    /// Integer optimum of the same problem as a maximum-weight closure,
    /// returning `(value, red selected, blue selected)`. The constraint
    /// matrix is totally unimodular (negating red variables turns every row
    /// into a difference of two variables), so this equals the LP optimum.
    pub(crate) fn closure(&self, red_w: &[i64], blue_w: &[i64]) -> (i64, Vec<bool>, Vec<bool>) {
        // nodes: 0 source, 1 sink, red z_x, blue c_y (c_y = 1 - b_y)
        let (nr, nb) = (self.red.len(), self.blue.len());
        let n = 2 + nr + nb;
        let total: i64 = red_w.iter().chain(blue_w).sum();
        let inf = total + 1;
        let mut cap = vec![0i64; n * n];
        for x in 0..nr {
            cap[2 + x] = red_w[x];
        }
        for y in 0..nb {
            cap[(2 + nr + y) * n + 1] = blue_w[y];
        }
        for &(x, y) in &self.conflicts {
            cap[(2 + x) * n + 2 + nr + y] = inf;
        }
        for &(lo, hi) in &self.chain {
            // b(lo) <= b(hi): c(hi) = 1 forces c(lo) = 1
            cap[(2 + nr + hi) * n + 2 + nr + lo] = inf;
        }
        for &z in &self.zero {
            cap[2 + nr + z] = inf;
        }
        let cut = max_flow(&mut cap, n);
        let side = reachable(&cap, n);
        let red = (0..nr).map(|x| side[2 + x]).collect();
        let blue = (0..nb).map(|y| !side[2 + nr + y]).collect();
        (total - cut, red, blue)
    }
}

/// Edmonds–Karp on a dense residual matrix; leaves the residual in `cap`.
fn max_flow(cap: &mut [i64], n: usize) -> i64 {
    let mut flow = 0;
    let mut prev = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    loop {
        prev.iter_mut().for_each(|p| *p = usize::MAX);
        prev[0] = 0;
        queue.clear();
        queue.push(0);
        let mut head = 0;
        while head < queue.len() && prev[1] == usize::MAX {
            let u = queue[head];
            head += 1;
            for v in 0..n {
                if prev[v] == usize::MAX && cap[u * n + v] > 0 {
                    prev[v] = u;
                    queue.push(v);
                }
            }
        }
        if prev[1] == usize::MAX {
            return flow;
        }
        let mut push = i64::MAX;
        let mut v = 1;
        while v != 0 {
            push = push.min(cap[prev[v] * n + v]);
            v = prev[v];
        }
        let mut v = 1;
        while v != 0 {
            cap[prev[v] * n + v] -= push;
            cap[v * n + prev[v]] += push;
            v = prev[v];
        }
        flow += push;
    }
}

fn reachable(cap: &[i64], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if !seen[v] && cap[u * n + v] > 0 {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Weights on `R1 ∪ R2 ∪ B1 ∪ B2`, keyed by element index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightAssignment {
    pub r1: Vec<(usize, Q)>,
    pub r2: Vec<(usize, Q)>,
    pub b1: Vec<(usize, Q)>,
    pub b2: Vec<(usize, Q)>,
}

impl WeightAssignment {
    /// `(q1, q2)`: total singleton and pair weight.
    pub fn totals(&self) -> (Q, Q) {
        let sum = |v: &[(usize, Q)]| v.iter().fold(Q::zero(), |a, (_, w)| a + w);
        (sum(&self.r1) + sum(&self.b1), sum(&self.r2) + sum(&self.b2))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpOptimum {
    /// `β² q1 + β q2`.
    pub objective: Q,
    pub q1: Q,
    pub q2: Q,
    pub weights: WeightAssignment,
}

/// Maximises `β² q1 + β q2` over weights satisfying the pointwise
/// constraints, exactly, by the rational simplex.
pub fn max_weight_lp(cfg: &LocalConfig, beta: Q) -> Result<LpOptimum> {
    if beta < Q::one() {
        return Err(Error::invalid("β must be at least 1"));
    }
    let m = WeightModel::of(cfg);
    let w = |single: bool| if single { beta * beta } else { beta };
    let rw: Vec<Q> = m.red.iter().map(|&(s, _)| w(s)).collect();
    let bw: Vec<Q> = m.blue.iter().map(|&(s, _)| w(s)).collect();
    let sol = m.lp(&rw, &bw).solve()?;
    let mut weights = WeightAssignment::default();
    for (x, &(single, e)) in m.red.iter().enumerate() {
        let dst = if single { &mut weights.r1 } else { &mut weights.r2 };
        dst.push((e, sol.x[x]));
    }
    for (y, &(single, e)) in m.blue.iter().enumerate() {
        let dst = if single { &mut weights.b1 } else { &mut weights.b2 };
        dst.push((e, sol.x[m.red.len() + y]));
    }
    let (q1, q2) = weights.totals();
    Ok(LpOptimum { objective: sol.value, q1, q2, weights })
}

/// Largest `β` of interest: a rational above `1/σ - 3` at `σ = 1 - 2^{-1/3}`.
pub const BETA_HI: (i64, i64) = (1_847_323, 1_000_000);

/// `(q1, q2)` of an optimum of `β q1 + q2` with `β = num/den`.
fn closure_point(m: &WeightModel, num: i64, den: i64) -> (i64, i64) {
    let w = |&(s, _): &(bool, usize)| if s { num } else { den };
    let rw: Vec<i64> = m.red.iter().map(w).collect();
    let bw: Vec<i64> = m.blue.iter().map(w).collect();
    let (_, rs, bs) = m.closure(&rw, &bw);
    let mut q = (0, 0);
    for (items, sel) in [(&m.red, &rs), (&m.blue, &bs)] {
        for (&(single, _), &on) in items.iter().zip(sel.iter()) {
            if on {
                if single {
                    q.0 += 1;
                } else {
                    q.1 += 1;
                }
            }
        }
    }
    q
}

/// The points `(q1, q2)` that are optimal for some `β ∈ [1, BETA_HI]`, by
/// dichotomic search on exact integer objectives. The maximum over σ of the
/// configuration value is the maximum over these points.
pub(crate) fn frontier(m: &WeightModel) -> Vec<(i64, i64)> {
    fn between(m: &WeightModel, a: (i64, i64), b: (i64, i64), out: &mut Vec<(i64, i64)>) {
        // a optimal at smaller β (so a.0 < b.0); lines meet at β* = num/den
        let (num, den) = (a.1 - b.1, b.0 - a.0);
        let c = closure_point(m, num, den);
        if c == a || c == b || num * c.0 + den * c.1 <= num * a.0 + den * a.1 {
            return;
        }
        between(m, a, c, out);
        out.push(c);
        between(m, c, b, out);
    }
    let a = closure_point(m, 1, 1);
    let b = closure_point(m, BETA_HI.0, BETA_HI.1);
    if a == b || a.0 >= b.0 {
        return vec![b];
    }
    let mut out = vec![a];
    between(m, a, b, &mut out);
    out.push(b);
    out
}

pub fn config_frontier(cfg: &LocalConfig) -> Vec<(i64, i64)> {
    frontier(&WeightModel::of(cfg))
}

/// Exact `σ³(β³ + LP(β) + t)` at `σ = 1/(β+3)`.
pub fn config_value_exact(cfg: &LocalConfig, beta: Q) -> Result<Q> {
    let opt = max_weight_lp(cfg, beta)?;
    let sigma = Q::one() / (beta + Q::from_integer(3));
    Ok(sigma * sigma * sigma * (beta * beta * beta + opt.objective + Q::from_integer(cfg.t() as i128)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigValue {
    pub value: f64,
    pub argmax: f64,
    pub q1: i64,
    pub q2: i64,
    pub t: u32,
    pub frontier: Vec<(i64, i64)>,
    pub refinement_error: f64,
}

/// `max_σ σ³(β³ + max_w(β² q1 + β q2) + t)` over the σ-range.
pub fn config_value(cfg: &LocalConfig, step: f64) -> Result<ConfigValue> {
    let frontier = config_frontier(cfg);
    let t = cfg.t();
    let mut best: Option<ConfigValue> = None;
    for &(q1, q2) in &frontier {
        let m = super::fact::max_over_sigma(q1 as f64, q2 as f64, t as f64, step)?;
        if best.as_ref().is_none_or(|b| m.value > b.value) {
            best = Some(ConfigValue {
                value: m.value,
                argmax: m.argmax,
                q1,
                q2,
                t,
                frontier: Vec::new(),
                refinement_error: m.refinement_error,
            });
        }
    }
    let mut best = best.expect("frontier is never empty");
    best.refinement_error = frontier
        .iter()
        .map(|&(a, b)| super::fact::max_over_sigma(a as f64, b as f64, t as f64, step).map(|m| m.refinement_error))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    best.frontier = frontier;
    Ok(best)
}
