//! Exhaustive check that every admissible configuration has value at most
//! `5/8`, plus the intermediate counting and LP bounds used along the way.
//!
//! The search runs over `R1 ⊆ I`, `R2` per slot among the eleven left-shifted
//! patterns allowed by the red pair cap, and `B2` per slot among the four
//! right-shifted stars at the larger `k`. `B1` is all nine vertices (more blue
//! singletons only enlarge the LP), `B3` is every triple spanned by `B2`, and
//! `R3` is the largest admissible set: a left-shifted one in primary mode, an
//! arbitrary one in exhaustive mode. The value is increasing in `t` and
//! independent of `R3` otherwise, so the largest `R3` suffices.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::par::map_tasks;

use super::config::*;
use super::fact::{max_over_sigma, SigmaMax};
use super::lp::Q;
use super::steady::{min_hitting_set, Steadiness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// `R3` ranges over left-shifted (down-closed) sets of crossing triples.
    Primary,
    /// `R3` ranges over all sets of crossing triples.
    Exhaustive,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub mode: SearchMode,
    pub sigma_step: f64,
    pub tol: f64,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { mode: SearchMode::Primary, sigma_step: 1e-3, tol: 1e-9, workers: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub mode: SearchMode,
    pub sigma_step: f64,
    pub tol: f64,
    /// `(R1, R2)` combinations enumerated.
    pub red_choices: u64,
    /// Combinations already unsteady with `R3 = ∅`.
    pub unsteady_red_choices: u64,
    /// Admissible `(R1, R2, B2)` configurations evaluated.
    pub configurations: u64,
    pub frontier_points: u64,
    pub max_value: f64,
    pub argmax_sigma: f64,
    pub witness: LocalConfig,
    pub witness_point: (i64, i64, u32),
    /// Exact value of the witness at `σ = 1/4`.
    pub witness_at_quarter: Q,
    pub exceeding: u64,
    pub max_refinement_error: f64,
    pub lp_crosschecks: u64,
    pub lp_mismatches: u64,
    /// Largest value among configurations with `|B2| >= 4`.
    pub max_value_many_blue_pairs: f64,
    /// Largest value attained at a frontier point with `q1 > 6`.
    pub max_value_heavy_singletons: f64,
    pub claims: Vec<ClaimReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.exceeding == 0
            && self.max_refinement_error < self.tol
            && self.lp_mismatches == 0
            && self.claims.iter().all(|c| c.passed)
    }
}

/// Left-shifted slot patterns within the red pair cap.
pub fn red_slot_patterns() -> Vec<u32> {
    (0..512u32).filter(|&m| is_slot_down_set(m) && slot_r2_capped(m)).collect()
}

/// Right-shifted stars at the `k` of the upper triple (`k1 < k2 < k3`):
/// `∅`, `{kk}`, `{jk, kk}`, `{ik, jk, kk}` in slot coordinates.
pub fn blue_slot_stars() -> [u32; 4] {
    [0, 1 << 8, 1 << 5 | 1 << 8, 1 << 2 | 1 << 5 | 1 << 8]
}

fn spread(slots: [u32; 3]) -> u32 {
    slots[0] | slots[1] << 9 | slots[2] << 18
}

/// Every `B2` of the search, in a fixed order.
fn blue_choices() -> Vec<u32> {
    let st = blue_slot_stars();
    let mut out = Vec::with_capacity(64);
    for a in st {
        for b in st {
            for c in st {
                out.push(spread([a, b, c]));
            }
        }
    }
    out
}

/// Down-closed sets of crossing triples in the product order on `[3]^3`,
/// largest first.
pub fn triple_down_sets() -> Vec<u32> {
    fn below(x: usize) -> [Option<usize>; 3] {
        let (a, b, c) = (x / 9, x / 3 % 3, x % 3);
        [
            (a > 0).then(|| x - 9),
            (b > 0).then(|| x - 3),
            (c > 0).then(|| x - 1),
        ]
    }
    // x is in a down-set of [3]^3 iff the down-set "height" h(a, b) > c,
    // with h antitone in both arguments: enumerate such height functions
    let mut out = Vec::new();
    let mut h = [0usize; 9];
    fn rec(cell: usize, h: &mut [usize; 9], out: &mut Vec<u32>) {
        if cell == 9 {
            let mut m = 0u32;
            for ab in 0..9 {
                for c in 0..h[ab] {
                    m |= 1 << (3 * ab + c);
                }
            }
            out.push(m);
            return;
        }
        let (a, b) = (cell / 3, cell % 3);
        let mut cap = 3;
        if a > 0 {
            cap = cap.min(h[cell - 3]);
        }
        if b > 0 {
            cap = cap.min(h[cell - 1]);
        }
        for v in 0..=cap {
            h[cell] = v;
            rec(cell + 1, h, out);
        }
    }
    rec(0, &mut h, &mut out);
    debug_assert!(out.iter().all(|&m| (0..27).all(|x| m >> x & 1 == 0
        || below(x).iter().flatten().all(|&y| m >> y & 1 == 1))));
    out.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    out
}

/// σ-maxima of `f_{q1,q2,t}` for every integer point that can occur.
struct SigmaTable {
    cells: Vec<SigmaMax>,
}

const Q1_MAX: usize = 12;
const Q2_MAX: usize = 54;
const T_MAX: usize = 54;

impl SigmaTable {
    fn new(step: f64) -> Result<Self> {
        let mut cells = Vec::with_capacity((Q1_MAX + 1) * (Q2_MAX + 1) * (T_MAX + 1));
        for q1 in 0..=Q1_MAX {
            for q2 in 0..=Q2_MAX {
                for t in 0..=T_MAX {
                    cells.push(max_over_sigma(q1 as f64, q2 as f64, t as f64, step)?);
                }
            }
        }
        Ok(SigmaTable { cells })
    }

    fn get(&self, q1: i64, q2: i64, t: u32) -> &SigmaMax {
        &self.cells[(q1 as usize * (Q2_MAX + 1) + q2 as usize) * (T_MAX + 1) + t as usize]
    }
}

struct TaskOut {
    red_choices: u64,
    unsteady: u64,
    configurations: u64,
    frontier_points: u64,
    best: Option<(f64, f64, LocalConfig, (i64, i64, u32))>,
    exceeding: u64,
    max_err: f64,
    crosschecks: u64,
    mismatches: u64,
    many_blue: f64,
    heavy: f64,
}

/// Sample rate of the simplex cross-check of the closure optimum.
const CROSSCHECK_EVERY: u64 = 397;

fn simplex_matches(m: &WeightModel, num: i64, den: i64) -> Result<bool> {
    let w = |s: bool| if s { num } else { den };
    let rw: Vec<i64> = m.red.iter().map(|x| w(x.0)).collect();
    let bw: Vec<i64> = m.blue.iter().map(|x| w(x.0)).collect();
    let q = |v: &[i64]| v.iter().map(|&x| Q::from_integer(x as i128)).collect::<Vec<_>>();
    let lp = m.lp(&q(&rw), &q(&bw)).solve()?;
    Ok(lp.value == Q::from_integer(m.closure(&rw, &bw).0 as i128))
}

/// Largest admissible `R3` avoiding `excl`, within `cap`.
fn best_r3(mode: SearchMode, cands: &[u32], forb: &[u32], excl: u32, cap: u32) -> u32 {
    match mode {
        SearchMode::Primary => cands.iter().copied().find(|d| d & excl == 0).unwrap_or(0),
        SearchMode::Exhaustive => {
            let live: Vec<u32> = forb.iter().copied().filter(|f| f & excl == 0).collect();
            let (_, hit) = min_hitting_set(&live, 27).expect("27 elements hit everything");
            let mut r3 = ALL_CROSSING & !excl & !hit;
            while r3.count_ones() > cap {
                r3 &= !(1 << (31 - r3.leading_zeros()));
            }
            r3
        }
    }
}

pub fn verify_local_structure(opts: &VerifyOptions) -> Result<VerificationReport> {
    let table = SigmaTable::new(opts.sigma_step)?;
    let steady = Steadiness::get();
    let reds = red_slot_patterns();
    let blues = blue_choices();
    let touching: Vec<u32> = blues.iter().map(|&b| triples_touching(b)).collect();
    let spanned: Vec<u32> = blues.iter().map(|&b| triples_spanned(b)).collect();
    let downs = triple_down_sets();
    let limit = 0.625 + opts.tol;

    let mut tasks = Vec::new();
    for r1 in 0..8u16 {
        let r1 = (0..3).filter(|l| r1 >> l & 1 == 1).fold(0u16, |m, l| m | 1 << (3 * l));
        for &a in &reds {
            for &b in &reds {
                for &c in &reds {
                    tasks.push((tasks.len() as u64, r1, spread([a, b, c])));
                }
            }
        }
    }
    let outs = map_tasks(opts.workers, tasks, |(idx, r1, r2)| -> Result<TaskOut> {
        let mut out = TaskOut {
            red_choices: 1,
            unsteady: 0,
            configurations: 0,
            frontier_points: 0,
            best: None,
            exceeding: 0,
            max_err: 0.0,
            crosschecks: 0,
            mismatches: 0,
            many_blue: f64::NEG_INFINITY,
            heavy: f64::NEG_INFINITY,
        };
        let Some(forb) = steady.forbidden(r1, r2) else {
            out.unsteady = 1;
            return Ok(out);
        };
        let cap = r3_cap(r2);
        let cands: Vec<u32> = match opts.mode {
            SearchMode::Primary => downs
                .iter()
                .copied()
                .filter(|&d| d.count_ones() <= cap && forb.iter().all(|&f| f & !d != 0))
                .collect(),
            SearchMode::Exhaustive => Vec::new(),
        };
        for (bi, &b2) in blues.iter().enumerate() {
            if r2 & b2 != 0 {
                continue;
            }
            let r3 = best_r3(opts.mode, &cands, &forb, touching[bi], cap);
            let cfg = LocalConfig {
                system: TripleSystem::standard(),
                r1,
                r2,
                r3,
                b1: ALL_VERTICES,
                b2,
                b3: spanned[bi],
            };
            let t = cfg.t();
            let model = WeightModel::of(&cfg);
            let front = frontier(&model);
            out.configurations += 1;
            out.frontier_points += front.len() as u64;
            let mut best: Option<(&SigmaMax, (i64, i64, u32))> = None;
            for &(q1, q2) in &front {
                let m = table.get(q1, q2, t);
                out.max_err = out.max_err.max(m.refinement_error);
                if q1 > 6 {
                    out.heavy = out.heavy.max(m.value);
                }
                if best.is_none_or(|b| m.value > b.0.value) {
                    best = Some((m, (q1, q2, t)));
                }
            }
            let (m, point) = best.expect("frontier is never empty");
            if m.value > limit {
                out.exceeding += 1;
            }
            if b2.count_ones() >= 4 {
                out.many_blue = out.many_blue.max(m.value);
            }
            if out.best.as_ref().is_none_or(|b| m.value > b.0) {
                out.best = Some((m.value, m.argmax, cfg, point));
            }
            if (idx * 64 + bi as u64) % CROSSCHECK_EVERY == 0 {
                for (num, den) in [(1, 1), BETA_HI] {
                    out.crosschecks += 1;
                    if !simplex_matches(&model, num, den)? {
                        out.mismatches += 1;
                    }
                }
            }
        }
        Ok(out)
    });

    let mut rep = VerificationReport {
        mode: opts.mode,
        sigma_step: opts.sigma_step,
        tol: opts.tol,
        red_choices: 0,
        unsteady_red_choices: 0,
        configurations: 0,
        frontier_points: 0,
        max_value: f64::NEG_INFINITY,
        argmax_sigma: 0.0,
        witness: LocalConfig::default(),
        witness_point: (0, 0, 0),
        witness_at_quarter: Q::zero(),
        exceeding: 0,
        max_refinement_error: 0.0,
        lp_crosschecks: 0,
        lp_mismatches: 0,
        max_value_many_blue_pairs: f64::NEG_INFINITY,
        max_value_heavy_singletons: f64::NEG_INFINITY,
        claims: Vec::new(),
    };
    for o in outs {
        let o = o?;
        rep.red_choices += o.red_choices;
        rep.unsteady_red_choices += o.unsteady;
        rep.configurations += o.configurations;
        rep.frontier_points += o.frontier_points;
        rep.exceeding += o.exceeding;
        rep.max_refinement_error = rep.max_refinement_error.max(o.max_err);
        rep.lp_crosschecks += o.crosschecks;
        rep.lp_mismatches += o.mismatches;
        rep.max_value_many_blue_pairs = rep.max_value_many_blue_pairs.max(o.many_blue);
        rep.max_value_heavy_singletons = rep.max_value_heavy_singletons.max(o.heavy);
        if let Some((v, s, cfg, point)) = o.best {
            if v > rep.max_value {
                rep.max_value = v;
                rep.argmax_sigma = s;
                rep.witness = cfg;
                rep.witness_point = point;
            }
        }
    }
    rep.witness_at_quarter = config_value_exact(&rep.witness, Q::one())?;
    let witness_valid = validate_config(&rep.witness).is_valid();
    rep.claims.push(ClaimReport {
        name: "witness configuration is admissible",
        passed: witness_valid,
        detail: format!("validated={witness_valid}"),
    });
    rep.claims.push(ClaimReport {
        name: "configurations with at least four blue pairs stay below 5/8",
        passed: rep.max_value_many_blue_pairs <= limit,
        detail: format!("max={:.12}", rep.max_value_many_blue_pairs),
    });
    rep.claims.push(ClaimReport {
        name: "frontier points with singleton weight above 6 stay below 5/8",
        passed: rep.max_value_heavy_singletons <= limit,
        detail: format!("max={:.12}", rep.max_value_heavy_singletons),
    });
    rep.claims.extend(verify_claims()?);
    Ok(rep)
}

/// Bounds established along the way, each checked exhaustively on its own.
pub fn verify_claims() -> Result<Vec<ClaimReport>> {
    Ok(vec![pair_weight_bound()?, blue_triples_contain_top_ks()?, blue_pair_counting(), red_triple_bound()])
}

/// Pair models `q(M_F, M_S)`: singleton weights of the first triple only, the
/// crossing pairs between the two, and the constraints among them.
fn pair_models() -> Vec<(bool, u32, u32, WeightModel)> {
    let mut out = Vec::new();
    // slot 0 joins triples 0 and 1; the star centre is k of triple 1
    for first_upper in [false, true] {
        let first = usize::from(first_upper);
        for with_r1 in [false, true] {
            for r2 in red_slot_patterns() {
                for b2 in blue_slot_stars() {
                    let r1 = if with_r1 { 1 << (3 * first) } else { 0 };
                    let b1 = 0b111 << (3 * first);
                    out.push((first_upper, r2, b2, WeightModel::new(r1, r2, b1, b2)));
                }
            }
        }
    }
    out
}

fn lp_max(m: &WeightModel, single: i128, pair: i128, kk_weight: i128) -> Result<Q> {
    let kk = pair_index(0, 2, 2);
    let w = |&(s, e): &(bool, usize)| {
        Q::from_integer(if s { single } else if e == kk { kk_weight } else { pair })
    };
    let rw: Vec<Q> = m.red.iter().map(w).collect();
    let bw: Vec<Q> = m.blue.iter().map(w).collect();
    Ok(m.lp(&rw, &bw).solve()?.value)
}

fn pair_weight_bound() -> Result<ClaimReport> {
    let models = pair_models();
    let (mut max, mut max1, mut max2) = (Q::zero(), Q::zero(), Q::zero());
    for (_, r2, b2, m) in &models {
        max = max.max(lp_max(m, 1, 1, 1)?);
        if !slot_touches_k(*r2) {
            // q - b(k k') with no red pair at either k
            max1 = max1.max(lp_max(m, 1, 1, 0)?);
        }
        if b2.count_ones() <= 1 {
            // q + q1 with at most one blue pair
            max2 = max2.max(lp_max(m, 2, 1, 1)?);
        }
    }
    let six = Q::from_integer(6);
    Ok(ClaimReport {
        name: "pair weight between two triples is at most 6",
        passed: max == six && max1 <= Q::from_integer(5) && max2 <= Q::from_integer(7),
        detail: format!(
            "pair_configs={} max={} max_without_red_at_k_minus_kk={} max_with_one_blue_plus_q1={}",
            models.len(),
            max,
            max1,
            max2
        ),
    })
}

fn blue_triples_contain_top_ks() -> Result<ClaimReport> {
    let mut checked = 0;
    let mut ok = true;
    let mut max_b3 = 0;
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for order in perms {
        let sys = TripleSystem::with_k_order(order)?;
        let top = 1u16 << (3 * order[1] + 2) | 1 << (3 * order[2] + 2);
        // every B2 whose slots are stars at the larger k
        let stars: Vec<Vec<u32>> = (0..3)
            .map(|s| {
                (0..512u32)
                    .filter(|&m| {
                        is_slot_up_set(m)
                            && (0..9).all(|c| m >> c & 1 == 0 || pair_mask(9 * s + c) >> sys.star_centre(s) & 1 == 1)
                    })
                    .collect()
            })
            .collect();
        for &a in &stars[0] {
            for &b in &stars[1] {
                for &c in &stars[2] {
                    checked += 1;
                    let b3 = triples_spanned(spread([a, b, c]));
                    max_b3 = max_b3.max(b3.count_ones());
                    ok &= (0..27).all(|x| b3 >> x & 1 == 0 || triple_mask(x) & top == top);
                }
            }
        }
    }
    Ok(ClaimReport {
        name: "every blue triple contains the two largest k vertices",
        passed: ok && max_b3 <= 3,
        detail: format!("blue_pair_sets={checked} max_blue_triples={max_b3}"),
    })
}

fn blue_pair_counting() -> ClaimReport {
    let kk: u32 = (0..3).fold(0, |m, s| m | 1 << pair_index(s, 2, 2));
    let mut ok = true;
    let mut worst = [0u32; 4];
    for b2 in blue_choices() {
        let r3 = 27 - triples_touching(b2).count_ones();
        let t = r3 + triples_spanned(b2).count_ones();
        match b2.count_ones() {
            2 => {
                worst[0] = worst[0].max(r3);
                ok &= r3 <= 22 && (r3 < 22 || b2 & !kk == 0);
            }
            3 => {
                worst[1] = worst[1].max(t);
                ok &= t <= 21;
            }
            c if c >= 4 => {
                worst[2] = worst[2].max(t);
                ok &= t <= 19;
                if c >= 6 && b2 & kk == kk {
                    worst[3] = worst[3].max(t);
                    ok &= t <= 17;
                }
            }
            _ => {}
        }
    }
    ClaimReport {
        name: "blue pairs cap the number of red and blue triples",
        passed: ok,
        detail: format!(
            "two_pairs_max_red={} three_pairs_max={} four_plus_max={} six_plus_with_all_kk_max={}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    }
}

fn red_triple_bound() -> ClaimReport {
    let steady = Steadiness::get();
    let downs: Vec<u32> = (0..512u32).filter(|&m| is_slot_down_set(m)).collect();
    let mut checked = 0u64;
    let mut worst = 0u32;
    for r1 in 0..8u16 {
        let r1 = (0..3).filter(|l| r1 >> l & 1 == 1).fold(0u16, |m, l| m | 1 << (3 * l));
        for &a in &downs {
            for &b in &downs {
                for &c in &downs {
                    let r2 = spread([a, b, c]);
                    if r1 == 0 && r2 == 0 {
                        continue;
                    }
                    checked += 1;
                    if let Some(forb) = steady.forbidden(r1, r2) {
                        let (h, _) = min_hitting_set(&forb, 27).expect("27 elements hit everything");
                        worst = worst.max(27 - h);
                    }
                }
            }
        }
    }
    ClaimReport {
        name: "a red singleton or pair leaves at most 23 red triples",
        passed: worst <= 23,
        detail: format!("red_choices={checked} max_red_triples={worst}"),
    }
}
