//! Partitions into a fixed number of parts and the class count of `K_n`.

use serde::{Deserialize, Serialize};

/// `p(j, i)`: partitions of `j` into exactly `i` positive parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionQuery {
    pub j: usize,
    pub i: usize,
}

impl PartitionQuery {
    pub fn count(self) -> u64 {
        p_exact(self.j, self.i)
    }
}

/// `p(j, i)` via `p(j, i) = p(j-1, i-1) + p(j-i, i)`, with `p(0, 0) = 1`.
pub fn p_exact(j: usize, i: usize) -> u64 {
    if i > j {
        return 0;
    }
    // row[b] holds p(a, b) for the current a.
    let mut table = vec![vec![0u64; i + 1]; j + 1];
    table[0][0] = 1;
    for a in 1..=j {
        for b in 1..=i.min(a) {
            table[a][b] = table[a - 1][b - 1] + table[a - b][b];
        }
    }
    table[j][i]
}

/// The weakly increasing partitions of `j` into exactly `i` parts, in
/// lexicographic order.
pub fn partitions_exact(j: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // Remaining parts are all >= d, so d * parts <= left.
        let mut d = min;
        while d * parts <= left {
            cur.push(d);
            rec(left - d, parts - 1, d, cur, out);
            cur.pop();
            d += 1;
        }
    }
    let mut out = Vec::new();
    if i == 0 {
        if j == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(j, i, 1, &mut Vec::new(), &mut out);
    out
}

/// `s(n) = sum_{k=1..n} sum_{t=0..n-k} p(n-t, k) + 1`.
pub fn s_of_n(n: usize) -> u64 {
    let mut total = 1;
    for k in 1..=n {
        for t in 0..=n - k {
            total += p_exact(n - t, k);
        }
    }
    total
}
