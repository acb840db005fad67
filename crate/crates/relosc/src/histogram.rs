//! Binned distribution snapshots W(p), W(x), W(v) and the multimodality
//! detector for the protuberance phenomenology.
//!
//! Counts are raw trajectory numbers, deliberately not normalized. Bins are
//! left-closed right-open with the last bin closed, so binning is an exact
//! partition of the covered range.

use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::model::velocity;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HistogramKind {
    #[serde(rename = "p")]
    Momentum,
    #[serde(rename = "x")]
    Coordinate,
    #[serde(rename = "v")]
    Velocity,
}

impl HistogramKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            HistogramKind::Momentum => "p",
            HistogramKind::Coordinate => "x",
            HistogramKind::Velocity => "v",
        }
    }
}

/// Binned counts of one projection at a fixed time. Momentum and coordinate
/// are in dimensionless solver units, velocity in units of c.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramSnapshot {
    pub t: f64,
    pub kind: HistogramKind,
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
}

fn validate_edges(kind: HistogramKind, edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::Domain("need at least two bin edges".into()));
    }
    if edges.iter().any(|e| !e.is_finite()) {
        return Err(Error::Domain("bin edges must be finite".into()));
    }
    if edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("bin edges must be strictly increasing".into()));
    }
    if kind == HistogramKind::Velocity && (edges[0] < -1.0 || edges[edges.len() - 1] > 1.0) {
        return Err(Error::Domain(
            "velocity bin edges must lie within [-1, 1] (units of c)".into(),
        ));
    }
    Ok(())
}

/// Index of the bin containing `v`, or None for under/overflow.
#[inline]
fn bin_index(edges: &[f64], v: f64) -> Option<usize> {
    let last = edges.len() - 1;
    if v < edges[0] {
        return None;
    }
    if v >= edges[last] {
        // The top edge itself belongs to the last bin.
        return if v == edges[last] { Some(last - 1) } else { None };
    }
    Some(edges.partition_point(|e| *e <= v) - 1)
}

/// Count trajectories per bin of the selected projection.
pub fn bin(
    ensemble: &Ensemble,
    kind: HistogramKind,
    edges: &[f64],
    z: f64,
) -> Result<HistogramSnapshot> {
    validate_edges(kind, edges)?;
    if ensemble.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let nbins = edges.len() - 1;
    let project = |i: usize| -> f64 {
        let s = &ensemble.states()[i];
        match kind {
            HistogramKind::Momentum => s.point.p,
            HistogramKind::Coordinate => s.point.x,
            HistogramKind::Velocity => velocity(s.point.p, z),
        }
    };

    // Integer counts merge associatively, so per-chunk tallies can be
    // combined in any order without affecting the result.
    let (counts, underflow, overflow) = (0..ensemble.len())
        .into_par_iter()
        .fold(
            || (vec![0u64; nbins], 0u64, 0u64),
            |(mut counts, mut under, mut over), i| {
                match bin_index(edges, project(i)) {
                    Some(b) => counts[b] += 1,
                    None => {
                        if project(i) < edges[0] {
                            under += 1;
                        } else {
                            over += 1;
                        }
                    }
                }
                (counts, under, over)
            },
        )
        .reduce(
            || (vec![0u64; nbins], 0u64, 0u64),
            |(mut ca, ua, oa), (cb, ub, ob)| {
                for (a, b) in ca.iter_mut().zip(cb) {
                    *a += b;
                }
                (ca, ua + ub, oa + ob)
            },
        );

    Ok(HistogramSnapshot {
        t: ensemble.time(),
        kind,
        edges: edges.to_vec(),
        counts,
        underflow,
        overflow,
    })
}

/// Uniform edges spanning [lo, hi].
pub fn linear_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    assert!(bins >= 1 && hi > lo, "invalid edge request");
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
    edges.push(hi);
    edges
}

/// Count the distinct local maxima ("modes") of the smoothed counts whose
/// topographic prominence exceeds `min_prominence` times the largest
/// smoothed count. A moving average of odd width `smoothing_window`
/// suppresses single-bin sampling noise first.
pub fn detect_modes(
    snapshot: &HistogramSnapshot,
    smoothing_window: usize,
    min_prominence: f64,
) -> usize {
    assert!(
        smoothing_window >= 1 && smoothing_window % 2 == 1,
        "smoothing window must be odd, got {smoothing_window}"
    );
    assert!(
        min_prominence > 0.0 && min_prominence < 1.0,
        "prominence fraction must be in (0, 1), got {min_prominence}"
    );
    let smoothed = moving_average(&snapshot.counts, smoothing_window);
    let max = smoothed.iter().fold(0.0f64, |a, &b| a.max(b));
    if max <= 0.0 {
        return 0;
    }
    let threshold = min_prominence * max;

    let n = smoothed.len();
    let mut modes = 0;
    for i in 1..n.saturating_sub(1) {
        if smoothed[i] > smoothed[i - 1] && smoothed[i] > smoothed[i + 1] {
            if prominence(&smoothed, i) >= threshold {
                modes += 1;
            }
        }
    }
    modes
}

fn moving_average(counts: &[u64], window: usize) -> Vec<f64> {
    let half = window / 2;
    let n = counts.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(n);
            counts[lo..hi].iter().sum::<u64>() as f64 / (hi - lo) as f64
        })
        .collect()
}

/// Topographic prominence of the peak at `i`: height above the higher of the
/// two valley floors separating it from taller terrain (or from the ends).
fn prominence(values: &[f64], i: usize) -> f64 {
    let h = values[i];
    let mut left_floor = h;
    for j in (0..i).rev() {
        if values[j] > h {
            break;
        }
        left_floor = left_floor.min(values[j]);
    }
    let mut right_floor = h;
    for &v in &values[i + 1..] {
        if v > h {
            break;
        }
        right_floor = right_floor.min(v);
    }
    h - left_floor.max(right_floor)
}
