use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pencil::HomogeneousValue;

/// Maximum chordal distance of the bottleneck-optimal perfect matching.
///
/// A greedy matching bounds the answer from above; bisection over the sorted
/// distances with augmenting paths then finds the smallest feasible threshold.
pub fn match_eigensets(x: &[HomogeneousValue], y: &[HomogeneousValue]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let n = x.len();
    if n == 0 {
        return Ok(0.0);
    }
    let d: Vec<Vec<f64>> = x
        .iter()
        .map(|a| y.iter().map(|b| a.chordal_distance(b)).collect())
        .collect();
    let greedy = greedy_bound(&d);
    let mut cand: Vec<f64> = d
        .iter()
        .flatten()
        .copied()
        .filter(|&v| v <= greedy)
        .collect();
    cand.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cand.dedup();
    let (mut lo, mut hi) = (0usize, cand.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect(&d, cand[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cand[lo])
}

fn greedy_bound(d: &[Vec<f64>]) -> f64 {
    let n = d.len();
    let mut edges: Vec<(f64, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (d[i][j], i, j))
        .collect();
    edges.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let (mut ui, mut uj) = (vec![false; n], vec![false; n]);
    let mut worst: f64 = 0.0;
    for (w, i, j) in edges {
        if !ui[i] && !uj[j] {
            ui[i] = true;
            uj[j] = true;
            worst = worst.max(w);
        }
    }
    worst
}

fn perfect(d: &[Vec<f64>], thr: f64) -> bool {
    let n = d.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(d, thr, i, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

fn augment(
    d: &[Vec<f64>],
    thr: f64,
    i: usize,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for j in 0..d.len() {
        if d[i][j] <= thr && !seen[j] {
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(d, thr, k, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
    }
    false
}
