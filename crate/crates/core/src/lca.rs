//! Constant-time lowest common ancestor via an Euler tour and a sparse table
//! of range minima over tour depths, plus a plain range-maximum table.

#[derive(Clone, Debug)]
pub(crate) struct Lca {
    depth: Vec<u32>,
    first: Vec<u32>,
    /// `levels[k][i]` is the shallowest node among tour positions `i..i + 2^k`.
    levels: Vec<Vec<u32>>,
}

impl Lca {
    /// `parent[root] == root`; every other node must reach the root.
    pub(crate) fn from_parents(parent: &[usize], root: usize) -> Self {
        let n = parent.len();
        let mut child_count = vec![0u32; n + 1];
        for (v, &p) in parent.iter().enumerate() {
            if v != root {
                child_count[p + 1] += 1;
            }
        }
        for i in 0..n {
            child_count[i + 1] += child_count[i];
        }
        let offsets = child_count;
        let mut fill = offsets.clone();
        let mut children = vec![0u32; n.saturating_sub(1)];
        for (v, &p) in parent.iter().enumerate() {
            if v != root {
                children[fill[p] as usize] = v as u32;
                fill[p] += 1;
            }
        }

        let mut depth = vec![0u32; n];
        let mut first = vec![0u32; n];
        let mut tour: Vec<u32> = Vec::with_capacity(2 * n);
        // (node, next child cursor)
        let mut stack: Vec<(u32, u32)> = vec![(root as u32, offsets[root])];
        first[root] = 0;
        tour.push(root as u32);
        while let Some(&mut (node, ref mut cursor)) = stack.last_mut() {
            let end = offsets[node as usize + 1];
            if *cursor < end {
                let c = children[*cursor as usize];
                *cursor += 1;
                depth[c as usize] = depth[node as usize] + 1;
                first[c as usize] = tour.len() as u32;
                tour.push(c);
                stack.push((c, offsets[c as usize]));
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    tour.push(p);
                }
            }
        }

        let m = tour.len();
        let mut levels = vec![tour];
        let mut span = 1;
        while 2 * span <= m {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=m - 2 * span)
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + span]);
                    if depth[b as usize] < depth[a as usize] {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            levels.push(next);
            span *= 2;
        }
        Lca {
            depth,
            first,
            levels,
        }
    }

    pub(crate) fn lca(&self, u: usize, v: usize) -> usize {
        let (mut l, mut r) = (self.first[u] as usize, self.first[v] as usize);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
        let level = &self.levels[k];
        let (a, b) = (level[l], level[r + 1 - (1 << k)]);
        if self.depth[b as usize] < self.depth[a as usize] {
            b as usize
        } else {
            a as usize
        }
    }

    #[cfg(test)]
    pub(crate) fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    #[cfg(test)]
    pub(crate) fn len(&self) -> usize {
        self.depth.len()
    }
}

/// Constant-time maximum over any range of a fixed array.
#[derive(Clone, Debug)]
pub(crate) struct RangeMax {
    /// `levels[k][i]` is the maximum of positions `i..i + 2^k`.
    levels: Vec<Vec<u32>>,
}

impl RangeMax {
    pub(crate) fn new(values: Vec<u32>) -> Self {
        let m = values.len();
        let mut levels = vec![values];
        let mut span = 1;
        while 2 * span <= m {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=m - 2 * span)
                .map(|i| prev[i].max(prev[i + span]))
                .collect();
            levels.push(next);
            span *= 2;
        }
        RangeMax { levels }
    }

    /// Maximum over positions `l..=r`.
    pub(crate) fn max(&self, l: usize, r: usize) -> u32 {
        debug_assert!(l <= r);
        let k = (usize::BITS - 1 - (r - l + 1).leading_zeros()) as usize;
        let level = &self.levels[k];
        level[l].max(level[r + 1 - (1 << k)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_lca(parent: &[usize], root: usize, mut u: usize, mut v: usize) -> usize {
        let mut anc = vec![false; parent.len()];
        loop {
            anc[u] = true;
            if u == root {
                break;
            }
            u = parent[u];
        }
        while !anc[v] {
            v = parent[v];
        }
        v
    }

    #[test]
    fn matches_naive_on_random_trees() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in [1usize, 2, 3, 10, 77, 300] {
            // Random recursive tree over a shuffled labelling, root 0.
            let mut parent = vec![0usize; n];
            for (v, p) in parent.iter_mut().enumerate().skip(1) {
                *p = rng.gen_range(0..v);
            }
            let lca = Lca::from_parents(&parent, 0);
            assert_eq!(lca.len(), n);
            for _ in 0..500 {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                assert_eq!(lca.lca(u, v), naive_lca(&parent, 0, u, v));
            }
        }
    }

    #[test]
    fn deep_path_does_not_recurse() {
        let n: usize = 200_000;
        let parent: Vec<usize> = (0..n).map(|v| v.saturating_sub(1)).collect();
        let lca = Lca::from_parents(&parent, 0);
        assert_eq!(lca.lca(n - 1, 5), 5);
        assert_eq!(lca.depth(n - 1), n - 1);
    }

    #[test]
    fn range_max_matches_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for m in [1usize, 2, 3, 7, 64, 65, 500] {
            let values: Vec<u32> = (0..m).map(|_| rng.gen_range(0..1000)).collect();
            let rmq = RangeMax::new(values.clone());
            for _ in 0..300 {
                let a = rng.gen_range(0..m);
                let b = rng.gen_range(a..m);
                assert_eq!(rmq.max(a, b), *values[a..=b].iter().max().unwrap());
            }
        }
    }
}
