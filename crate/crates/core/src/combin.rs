//! Small combinatorial helpers shared across modules.

/// Binomial coefficient; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Calls `f` on every `k`-subset of `items`, in lexicographic order of positions.
pub fn for_each_subset<T: Copy>(items: &[T], k: usize, mut f: impl FnMut(&[T])) {
    if k > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = Vec::with_capacity(k);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        f(&buf);
        // advance
        let mut pos = k;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] != pos + items.len() - k {
                break;
            }
            if pos == 0 {
                return;
            }
        }
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// All `k`-subsets of `items` as owned vectors.
pub fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    for_each_subset(items, k, |s| out.push(s.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(80, 3), 82160);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(0, 0), 1);
    }

    #[test]
    fn subset_enumeration_counts_and_order() {
        let s = subsets(&[1, 2, 3, 4], 2);
        assert_eq!(s, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(subsets(&[1, 2, 3], 0), vec![Vec::<i32>::new()]);
        assert!(subsets(&[1, 2], 3).is_empty());
        assert_eq!(subsets(&(0..9).collect::<Vec<_>>(), 3).len(), 84);
    }
}
