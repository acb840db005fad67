//! Deterministic parallel reduction.
//!
//! Sums are evaluated on a fixed binary tree over the index range: split at
//! the midpoint, compensated (Neumaier) summation at the leaves. The tree
//! shape depends only on the range length, and the two halves are always
//! combined as `left + right`, so the result is bit-identical whether the
//! halves run on one thread or many.

const LEAF: usize = 256;
const PAR_THRESHOLD: usize = 16_384;

/// Sum `f(i)` for `i` in `0..n` on the fixed reduction tree.
pub fn pairwise_sum<F>(n: usize, f: &F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    sum_range(f, 0, n)
}

fn sum_range<F>(f: &F, lo: usize, hi: usize) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let len = hi - lo;
    if len <= LEAF {
        return leaf_sum(f, lo, hi);
    }
    let mid = lo + len / 2;
    if len >= PAR_THRESHOLD {
        let (left, right) = rayon::join(|| sum_range(f, lo, mid), || sum_range(f, mid, hi));
        left + right
    } else {
        sum_range(f, lo, mid) + sum_range(f, mid, hi)
    }
}

fn leaf_sum<F>(f: &F, lo: usize, hi: usize) -> f64
where
    F: Fn(usize) -> f64,
{
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for i in lo..hi {
        let v = f(i);
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_exact_sum_of_integers() {
        let n = 100_001;
        let s = pairwise_sum(n, &|i| i as f64);
        assert_eq!(s, (n as f64 - 1.0) * n as f64 / 2.0);
    }

    #[test]
    fn compensation_beats_naive_accumulation() {
        // Quadruples [1e16, 1, -1e16, 1]: a plain running sum absorbs the
        // first +1 into the large term and loses it; compensation keeps it.
        let f = |i: usize| match i % 4 {
            0 => 1.0e16,
            2 => -1.0e16,
            _ => 1.0,
        };
        let n = 100; // single leaf
        assert_eq!(pairwise_sum(n, &f), 50.0);
        let naive: f64 = (0..n).map(f).sum();
        assert!(naive < 2.0, "plain summation should have lost the +1s, got {naive}");
    }

    #[test]
    fn identical_across_pool_sizes() {
        let f = |i: usize| ((i as f64) * 0.7).sin() / (i as f64 + 1.0);
        let reference = pairwise_sum(300_000, &f);
        for threads in [1usize, 2, 4] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let s = pool.install(|| pairwise_sum(300_000, &f));
            assert_eq!(s.to_bits(), reference.to_bits(), "threads = {threads}");
        }
    }
}
