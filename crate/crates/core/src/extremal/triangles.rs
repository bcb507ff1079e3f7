//! Monochromatic triangles in red/blue colourings of subgraphs of `K_n`.

use std::collections::BTreeSet;

use crate::combin::binom;
use crate::error::{Error, Result};
use crate::extremal::downsets::pair_index;
use crate::hypergraph::Vertex;
use crate::par::map_tasks;

/// Exhaustive search is certified up to this order.
pub const CERTIFIED_MAX_N: usize = 8;
/// Hard cap: `binom(n, 2)` colour bits must fit one word.
const ABSOLUTE_MAX_N: usize = 11;

/// Red and blue edge sets on `{1..n}`; pairs are stored as `(a, b)`, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColouring2 {
    n: usize,
    red: BTreeSet<(Vertex, Vertex)>,
    blue: BTreeSet<(Vertex, Vertex)>,
}

impl EdgeColouring2 {
    pub fn new<I, J>(n: usize, red: I, blue: J) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
        J: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let norm = |(a, b): (Vertex, Vertex)| -> Result<(Vertex, Vertex)> {
            if a == b || a == 0 || b == 0 || a.max(b) as usize > n {
                return Err(Error::invalid(format!("bad pair ({a}, {b}) for n = {n}")));
            }
            Ok((a.min(b), a.max(b)))
        };
        let red = red.into_iter().map(norm).collect::<Result<BTreeSet<_>>>()?;
        let blue = blue.into_iter().map(norm).collect::<Result<BTreeSet<_>>>()?;
        if let Some(p) = red.intersection(&blue).next() {
            return Err(Error::invalid(format!("pair {p:?} is both red and blue")));
        }
        Ok(EdgeColouring2 { n, red, blue })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn red(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.red
    }

    pub fn blue(&self) -> &BTreeSet<(Vertex, Vertex)> {
        &self.blue
    }
}

fn adjacency(n: usize, pairs: &BTreeSet<(Vertex, Vertex)>) -> Vec<u32> {
    let mut adj = vec![0u32; n + 1];
    for &(a, b) in pairs {
        adj[a as usize] |= 1 << b;
        adj[b as usize] |= 1 << a;
    }
    adj
}

fn count_in(adj: &[u32]) -> u64 {
    // each triangle a < b < c counted once at its smallest pair
    let mut t = 0;
    for a in 1..adj.len() {
        for b in a + 1..adj.len() {
            if adj[a] >> b & 1 == 1 {
                t += (adj[a] & adj[b] & !((2u32 << b) - 1)).count_ones() as u64;
            }
        }
    }
    t
}

/// `(red, blue)` numbers of monochromatic triangles.
pub fn count_mono_triangles(c: &EdgeColouring2) -> (u64, u64) {
    if c.n > 30 {
        let tri = |s: &BTreeSet<(Vertex, Vertex)>| {
            let mut t = 0;
            for &(a, b) in s {
                for x in b + 1..=c.n as Vertex {
                    if s.contains(&(a, x)) && s.contains(&(b, x)) {
                        t += 1;
                    }
                }
            }
            t
        };
        return (tri(&c.red), tri(&c.blue));
    }
    (count_in(&adjacency(c.n, &c.red)), count_in(&adjacency(c.n, &c.blue)))
}

#[derive(Clone, Debug)]
pub struct MonoResult {
    pub n: usize,
    pub tmin: u64,
    /// Maximum of red + blue monochromatic triangles subject to both counts
    /// being at least `tmin`; `None` if no colouring qualifies.
    pub value: Option<u64>,
    pub witness: Option<EdgeColouring2>,
    pub witness_counts: Option<(u64, u64)>,
    pub colourings_checked: u64,
}

struct Best {
    value: Option<u64>,
    mask: u64,
    counts: (u64, u64),
    checked: u64,
}

impl Best {
    fn offer(&mut self, mask: u64, r: u64, b: u64, tmin: u64) {
        if r < tmin || b < tmin {
            return;
        }
        let v = r + b;
        let better = match self.value {
            None => true,
            Some(cur) => v > cur || (v == cur && mask < self.mask),
        };
        if better {
            self.value = Some(v);
            self.mask = mask;
            self.counts = (r, b);
        }
    }
}

/// Bits (above the Gray-code range) fixed per task.
const TASK_BITS: u32 = 6;

/// Exhaustive maximum of monochromatic triangles. Uncoloured pairs are
/// never needed: colouring them red keeps every monochromatic triangle and
/// can only add red ones, so only full 2-colourings are enumerated, with the
/// last pair fixed red to quotient out the colour swap.
pub fn mono_triangle_extremum(
    n: usize,
    tmin: u64,
    uncertified: bool,
    workers: usize,
) -> Result<MonoResult> {
    let cap = if uncertified { ABSOLUTE_MAX_N } else { CERTIFIED_MAX_N };
    if n > cap {
        return Err(Error::invalid(format!("n = {n} exceeds the supported limit {cap}")));
    }
    let p = n * n.saturating_sub(1) / 2;
    let pairs: Vec<(usize, usize)> =
        (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    debug_assert!(pairs
        .iter()
        .enumerate()
        .all(|(i, &(a, b))| pair_index(n, a as Vertex, b as Vertex) == i));
    if p == 0 {
        let value = (tmin == 0).then_some(0);
        let witness = value.map(|_| EdgeColouring2::new(n, [], []).unwrap());
        return Ok(MonoResult {
            n,
            tmin,
            value,
            witness,
            witness_counts: value.map(|_| (0, 0)),
            colourings_checked: 1,
        });
    }
    // bit i set = pair i blue; bit p-1 stays clear
    let free = (p - 1) as u32;
    let task_bits = TASK_BITS.min(free);
    let gray_bits = free - task_bits;
    let tasks: Vec<u64> = (0..1u64 << task_bits).collect();
    let outs = map_tasks(workers, tasks, |t| {
        let base = t << gray_bits;
        let mut red = vec![0u32; n + 1];
        let mut blue = vec![0u32; n + 1];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let adj = if base >> i & 1 == 1 { &mut blue } else { &mut red };
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let mut r = count_in(&red);
        let mut bl = count_in(&blue);
        let mut best = Best { value: None, mask: 0, counts: (0, 0), checked: 1 };
        let mut mask = base;
        best.offer(mask, r, bl, tmin);
        for step in 1..1u64 << gray_bits {
            let i = step.trailing_zeros() as usize;
            let (a, b) = pairs[i];
            let (ab, bb) = (1u32 << a, 1u32 << b);
            if mask >> i & 1 == 0 {
                // red -> blue
                r -= (red[a] & red[b]).count_ones() as u64;
                red[a] &= !bb;
                red[b] &= !ab;
                bl += (blue[a] & blue[b]).count_ones() as u64;
                blue[a] |= bb;
                blue[b] |= ab;
            } else {
                bl -= (blue[a] & blue[b]).count_ones() as u64;
                blue[a] &= !bb;
                blue[b] &= !ab;
                r += (red[a] & red[b]).count_ones() as u64;
                red[a] |= bb;
                red[b] |= ab;
            }
            mask ^= 1 << i;
            best.checked += 1;
            best.offer(mask, r, bl, tmin);
        }
        best
    });
    let mut total = Best { value: None, mask: 0, counts: (0, 0), checked: 0 };
    for o in &outs {
        total.checked += o.checked;
        if let Some(v) = o.value {
            let better = match total.value {
                None => true,
                Some(cur) => v > cur || (v == cur && o.mask < total.mask),
            };
            if better {
                total.value = Some(v);
                total.mask = o.mask;
                total.counts = o.counts;
            }
        }
    }
    let witness = total.value.map(|_| {
        let (mut rs, mut bs) = (Vec::new(), Vec::new());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let e = (a as Vertex, b as Vertex);
            if total.mask >> i & 1 == 1 {
                bs.push(e);
            } else {
                rs.push(e);
            }
        }
        EdgeColouring2::new(n, rs, bs).unwrap()
    });
    Ok(MonoResult {
        n,
        tmin,
        value: total.value,
        witness,
        witness_counts: total.value.map(|_| total.counts),
        colourings_checked: total.checked,
    })
}

/// `binom(n, 3) / 8` rounded up: the per-colour threshold.
pub fn eighth_threshold(n: usize) -> u64 {
    (binom(n as u64, 3) as u64).div_ceil(8)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: Vertex) -> Vec<(Vertex, Vertex)> {
        (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
    }

    #[test]
    fn counting_examples() {
        let all = EdgeColouring2::new(4, complete(4), []).unwrap();
        assert_eq!(count_mono_triangles(&all), (4, 0));
        let blue: Vec<_> = complete(3).into_iter().map(|(a, b)| (a + 3, b + 3)).collect();
        let two = EdgeColouring2::new(6, complete(3), blue).unwrap();
        assert_eq!(count_mono_triangles(&two), (1, 1));
        assert_eq!(count_mono_triangles(&EdgeColouring2::new(5, [], []).unwrap()), (0, 0));
        assert!(EdgeColouring2::new(4, [(1, 2)], [(2, 1)]).is_err());
    }

    /// Goodman: a 2-colouring of `K_n` has
    /// `binom(n,3) - 1/2 * sum_v r_v (n-1-r_v)` monochromatic triangles.
    #[test]
    fn goodman_identity_on_witnesses() {
        for n in 3..=7usize {
            for tmin in [0, 1, eighth_threshold(n)] {
                let r = mono_triangle_extremum(n, tmin, false, 2).unwrap();
                let Some(w) = &r.witness else { continue };
                let mut deg = vec![0i64; n + 1];
                for &(a, b) in w.red() {
                    deg[a as usize] += 1;
                    deg[b as usize] += 1;
                }
                let s: i64 = (1..=n).map(|v| deg[v] * (n as i64 - 1 - deg[v])).sum();
                let goodman = binom(n as u64, 3) as i64 - s / 2;
                let (x, y) = count_mono_triangles(w);
                assert_eq!((x + y) as i64, goodman);
                assert_eq!(Some(x + y), r.value);
                assert_eq!(r.witness_counts, Some((x, y)));
            }
        }
    }

    #[test]
    fn extremum_examples() {
        assert_eq!(mono_triangle_extremum(6, 0, false, 1).unwrap().value, Some(20));
        let r = mono_triangle_extremum(6, 1, false, 1).unwrap();
        assert!(r.value.unwrap() < 20);
        assert!(mono_triangle_extremum(9, 0, false, 1).is_err());
        // no colouring of K_4 has 3 monochromatic triangles of each colour
        assert_eq!(mono_triangle_extremum(4, 3, false, 1).unwrap().value, None);
    }

    /// Independent oracle over all red/blue/absent colourings at n <= 5.
    #[test]
    fn three_colour_oracle() {
        for n in 3..=5usize {
            let pairs = complete(n as Vertex);
            let p = pairs.len() as u32;
            for tmin in 0..=3 {
                let mut best: Option<u64> = None;
                for code in 0..3u64.pow(p) {
                    let (mut rs, mut bs, mut c) = (Vec::new(), Vec::new(), code);
                    for &e in &pairs {
                        match c % 3 {
                            1 => rs.push(e),
                            2 => bs.push(e),
                            _ => {}
                        }
                        c /= 3;
                    }
                    let (r, b) = count_mono_triangles(&EdgeColouring2::new(n, rs, bs).unwrap());
                    if r >= tmin && b >= tmin {
                        best = best.max(Some(r + b));
                    }
                }
                let got = mono_triangle_extremum(n, tmin, false, 1).unwrap().value;
                assert_eq!(got, best, "n = {n}, tmin = {tmin}");
            }
        }
    }

    #[test]
    fn deterministic_across_workers() {
        let a = mono_triangle_extremum(7, 5, false, 1).unwrap();
        let b = mono_triangle_extremum(7, 5, false, 8).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.colourings_checked, b.colourings_checked);
    }
}
