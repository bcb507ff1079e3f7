//! Steadiness: no three pairwise disjoint edges of `T ∪ R` whose union meets
//! `I = {i1, i2, i3}` in at most two vertices.

use std::sync::OnceLock;

use super::config::{pair_mask, triple_mask, I_MASK};

/// Universe of candidate edges: the three triples of `T`, the nine
/// singletons, the 27 crossing pairs and the 27 crossing triples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Item {
    T(usize),
    Single(usize),
    Pair(usize),
    Triple(usize),
}

impl Item {
    fn mask(self) -> u16 {
        match self {
            Item::T(l) => 0b111 << (3 * l),
            Item::Single(v) => 1 << v,
            Item::Pair(p) => pair_mask(p),
            Item::Triple(x) => triple_mask(x),
        }
    }
}

fn universe() -> Vec<Item> {
    (0..3)
        .map(Item::T)
        .chain((0..9).map(Item::Single))
        .chain((0..27).map(Item::Pair))
        .chain((0..27).map(Item::Triple))
        .collect()
}

/// Bad triples split into the part outside `R3` (singletons, pairs) and the
/// `R3` part, grouped by the former.
pub(crate) struct Steadiness {
    pub(crate) bad: Vec<[Item; 3]>,
    groups: Vec<(u16, u32, Vec<u32>)>,
}

impl Steadiness {
    fn build() -> Self {
        let items = universe();
        let mut bad = Vec::new();
        for a in 0..items.len() {
            for b in a + 1..items.len() {
                let (ma, mb) = (items[a].mask(), items[b].mask());
                if ma & mb != 0 {
                    continue;
                }
                for c in b + 1..items.len() {
                    let mc = items[c].mask();
                    if (ma | mb) & mc == 0 && ((ma | mb | mc) & I_MASK).count_ones() <= 2 {
                        bad.push([items[a], items[b], items[c]]);
                    }
                }
            }
        }
        let mut groups: Vec<(u16, u32, Vec<u32>)> = Vec::new();
        for t in &bad {
            let (mut s, mut p, mut r3) = (0u16, 0u32, 0u32);
            for it in t {
                match *it {
                    Item::T(_) => {}
                    Item::Single(v) => s |= 1 << v,
                    Item::Pair(x) => p |= 1 << x,
                    Item::Triple(x) => r3 |= 1 << x,
                }
            }
            match groups.iter_mut().find(|g| g.0 == s && g.1 == p) {
                Some(g) => g.2.push(r3),
                None => groups.push((s, p, vec![r3])),
            }
        }
        Steadiness { bad, groups }
    }

    pub(crate) fn get() -> &'static Steadiness {
        static S: OnceLock<Steadiness> = OnceLock::new();
        S.get_or_init(Steadiness::build)
    }

    /// Minimal sets of red triples that, together with `r1` and `r2`, would
    /// complete a bad triple. `None` if `r1`, `r2` and `T` already do.
    pub(crate) fn forbidden(&self, r1: u16, r2: u32) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        for (s, p, masks) in &self.groups {
            if s & !r1 == 0 && p & !r2 == 0 {
                for &m in masks {
                    if m == 0 {
                        return None;
                    }
                    out.push(m);
                }
            }
        }
        Some(minimal(out))
    }

    pub(crate) fn is_steady(&self, r1: u16, r2: u32, r3: u32) -> bool {
        self.bad.iter().all(|t| {
            !t.iter().all(|it| match *it {
                Item::T(_) => true,
                Item::Single(v) => r1 >> v & 1 == 1,
                Item::Pair(x) => r2 >> x & 1 == 1,
                Item::Triple(x) => r3 >> x & 1 == 1,
            })
        })
    }
}

/// Removes duplicates and supersets.
pub(crate) fn minimal(mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut keep: Vec<u32> = Vec::new();
    for m in masks {
        if !keep.iter().any(|&k| k & m == k) {
            keep.push(m);
        }
    }
    keep
}

/// A smallest set of elements hitting every mask, as `(size, set)`, or
/// `None` if every hitting set is larger than `limit`.
pub(crate) fn min_hitting_set(masks: &[u32], limit: u32) -> Option<(u32, u32)> {
    fn go(masks: &[u32], chosen: u32, used: u32, best: &mut (u32, u32)) {
        if used >= best.0 {
            return;
        }
        let unhit = masks.iter().filter(|&&m| m & chosen == 0);
        let Some(&pick) = unhit.clone().min_by_key(|m| m.count_ones()) else {
            *best = (used, chosen);
            return;
        };
        // greedy disjoint packing of unhit masks is a lower bound
        let mut covered = 0u32;
        let mut lb = 0;
        for &m in unhit {
            if m & covered == 0 {
                covered |= m;
                lb += 1;
            }
        }
        if used + lb >= best.0 {
            return;
        }
        let mut bits = pick;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            bits &= bits - 1;
            go(masks, chosen | b, used + 1, best);
        }
    }
    let mut best = (limit + 1, 0);
    go(masks, 0, 0, &mut best);
    (best.0 <= limit).then_some(best)
}
