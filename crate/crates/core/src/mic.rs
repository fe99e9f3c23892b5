//! The exact maximal information coefficient.
//!
//! For each admissible grid shape one axis is equipartitioned and the other
//! is optimized by a dynamic program whose cut candidates are clump
//! boundaries: a clump is a maximal run of consecutive-in-x points sharing a
//! row of the Y partition. The score is the maximum normalized mutual
//! information over every shape `lx * ly < n^0.6` (no search heuristic).

use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::histogram::entropy_of_counts;
use crate::partition::{equipartition_axis, Axis, AxisPartition};
use crate::Scalar;

/// Clump boundaries as cumulative point counts `c_0 = 0 < ... < c_k = n`
/// into the x-sorted dataset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClumpSequence {
    endpoints: Vec<usize>,
}

impl ClumpSequence {
    /// Endpoints including both `0` and `n`.
    pub fn endpoints(&self) -> &[usize] {
        &self.endpoints
    }

    /// Number of clumps `k`.
    pub fn len(&self) -> usize {
        self.endpoints.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Maximal runs of consecutive points (in x order) mapping to the same row.
/// Groups of identical x values are never split: a tie group spanning several
/// rows becomes a clump of its own.
pub fn get_clumps_partition<F: Scalar>(d: &Dataset<F>, rows: &AxisPartition<F>) -> ClumpSequence {
    let canon;
    let d = if d.is_canonical() {
        d
    } else {
        canon = d.canonicalize();
        &canon
    };
    let row_of: Vec<usize> = d.ys().map(|y| rows.bin_index(y)).collect();
    clumps_from_rows(d, &row_of)
}

fn clumps_from_rows<F: Scalar>(d: &Dataset<F>, row_of: &[usize]) -> ClumpSequence {
    let n = d.len();
    let points = d.points();
    let mut endpoints = vec![0usize];
    // Row shared by every point of the clump in progress, None if mixed.
    let mut open_row: Option<usize> = None;
    let mut open = false;
    let mut i = 0usize;
    while i < n {
        let mut j = i + 1;
        while j < n && points[j].0 == points[i].0 {
            j += 1;
        }
        let pure = row_of[i..j].iter().all(|&r| r == row_of[i]);
        let group_row = if pure { Some(row_of[i]) } else { None };
        let extends = open && open_row.is_some() && group_row == open_row;
        if open && !extends {
            endpoints.push(i);
        }
        if !extends {
            open_row = group_row;
        }
        // A mixed tie group closes immediately so its boundary is mandatory.
        if group_row.is_none() {
            endpoints.push(j);
            open = false;
            open_row = None;
        } else {
            open = true;
        }
        i = j;
    }
    if *endpoints.last().unwrap() != n {
        endpoints.push(n);
    }
    ClumpSequence { endpoints }
}

/// Per-shape outcome of a grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridScore<F> {
    pub score: F,
    /// True when ties made both equipartition orientations unusable.
    pub degenerate: bool,
}

/// Scores `(I_2, ..., I_lx)`: for each column count `l`, the maximum of
/// `H(Q) + H(P) - H(P,Q)` over column partitions of size up to `l` whose
/// cuts lie on clump boundaries. Fewer than two clumps means no informative
/// cut exists and every score is zero.
pub fn optimize_x_axis<F: Scalar>(d: &Dataset<F>, rows: &AxisPartition<F>, lx: usize) -> Vec<F> {
    assert!(lx >= 2, "need at least two columns");
    let canon;
    let d = if d.is_canonical() {
        d
    } else {
        canon = d.canonicalize();
        &canon
    };
    let ly = rows.bin_count();
    let row_of: Vec<usize> = d.ys().map(|y| rows.bin_index(y)).collect();
    let clumps = clumps_from_rows(d, &row_of);
    let k = clumps.len();
    if k < 2 {
        return vec![F::zero(); lx - 1];
    }
    let n = d.len();
    let endpoints = clumps.endpoints();

    // Sparse per-clump row counts and cumulative row counts at endpoints.
    let mut clump_rows: Vec<Vec<(usize, u64)>> = Vec::with_capacity(k + 1);
    clump_rows.push(Vec::new()); // clumps are 1-indexed
    let mut prefix = vec![0u64; (k + 1) * ly];
    for t in 1..=k {
        let mut counts = vec![0u64; ly];
        for &r in &row_of[endpoints[t - 1]..endpoints[t]] {
            counts[r] += 1;
        }
        for r in 0..ly {
            prefix[t * ly + r] = prefix[(t - 1) * ly + r] + counts[r];
        }
        clump_rows.push(
            counts
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(r, &c)| (r, c))
                .collect(),
        );
    }

    let hq = entropy_of_counts::<F>(prefix[k * ly..].iter().copied(), n as u64);

    // flog[c] = c * log2(c); log2t[c] = log2(c).
    let mut flog = vec![F::zero(); n + 1];
    let mut log2t = vec![F::zero(); n + 1];
    for c in 1..=n {
        let l = F::from_index(c).log2();
        log2t[c] = l;
        flog[c] = F::from_index(c) * l;
    }

    // ft[t][l-1] = max over clump-boundary partitions of the first t clumps
    // into at most l columns of H(P) - H(P,Q).
    let mut ft = vec![F::zero(); (k + 1) * lx];
    for t in 1..=k {
        let ct = endpoints[t];
        let mut s_sum = F::zero();
        for r in 0..ly {
            s_sum = s_sum + flog[prefix[t * ly + r] as usize];
        }
        // Single column: H(P) = 0, H(P,Q) = row entropy of the first c_t points.
        let neg_h = s_sum / F::from_index(ct) - log2t[ct];
        ft[t * lx] = neg_h;
    }
    for l in 1..lx {
        ft[lx + l] = ft[lx]; // one clump supports only one column
    }

    let mut hcol = vec![F::zero(); k]; // hcol[s] for the current t
    let mut win = vec![0u64; ly];
    for t in 2..=k {
        let ct = endpoints[t];
        let ctf = F::from_index(ct);
        // Row entropy of the window (c_s, c_t], filled by extending left.
        for w in win.iter_mut() {
            *w = 0;
        }
        let mut s_sum = F::zero();
        for s in (1..t).rev() {
            for &(r, c) in &clump_rows[s + 1] {
                let old = win[r];
                let new = old + c;
                s_sum = s_sum + flog[new as usize] - flog[old as usize];
                win[r] = new;
            }
            let w = ct - endpoints[s];
            hcol[s] = log2t[w] - s_sum / F::from_index(w);
        }
        for l in 2..=lx {
            let mut best = ft[t * lx + l - 2]; // fewer columns stay admissible
            for s in 1..t {
                let cs = endpoints[s];
                let cand = F::from_index(cs) / ctf * ft[s * lx + l - 2]
                    - F::from_index(ct - cs) / ctf * hcol[s];
                if cand > best {
                    best = cand;
                }
            }
            ft[t * lx + l - 1] = best;
        }
    }

    (2..=lx)
        .map(|l| {
            let score = hq + ft[k * lx + l - 1];
            if score < F::zero() {
                F::zero()
            } else {
                score
            }
        })
        .collect()
}

fn clamp01<F: Scalar>(v: F) -> F {
    if v < F::zero() {
        F::zero()
    } else if v > F::one() {
        F::one()
    } else {
        v
    }
}

fn oriented_score<F: Scalar>(canon: &Dataset<F>, lx: usize, ly: usize) -> Option<F> {
    let rows = equipartition_axis(canon, Axis::Y, ly);
    if rows.bin_count() < 2 || get_clumps_partition(canon, &rows).len() < 2 {
        return None;
    }
    let scores = optimize_x_axis(canon, &rows, lx);
    let raw = scores[lx - 2];
    let norm = F::from_index(lx.min(ly)).log2();
    Some(clamp01(raw / norm))
}

/// Best normalized mutual information for one `lx`-by-`ly` shape: the better
/// of equipartitioning Y then optimizing X, and the axis-swapped run.
pub fn best_grid_score<F: Scalar>(d: &Dataset<F>, lx: usize, ly: usize) -> Result<GridScore<F>> {
    if lx < 2 || ly < 2 {
        return Err(Error::DegenerateGrid { lx, ly });
    }
    let canon = d.canonicalize();
    let swapped = d.swapped().canonicalize();
    Ok(best_grid_score_prepared(&canon, &swapped, lx, ly))
}

pub(crate) fn best_grid_score_prepared<F: Scalar>(
    canon: &Dataset<F>,
    swapped: &Dataset<F>,
    lx: usize,
    ly: usize,
) -> GridScore<F> {
    let a = oriented_score(canon, lx, ly);
    let b = oriented_score(swapped, ly, lx);
    match (a, b) {
        (None, None) => GridScore {
            score: F::zero(),
            degenerate: true,
        },
        (a, b) => GridScore {
            score: a
                .into_iter()
                .chain(b)
                .fold(F::zero(), |m, v| if v > m { v } else { m }),
            degenerate: false,
        },
    }
}

/// All `(lx, ly)` with both dimensions at least 2 and `lx * ly < n^exponent`,
/// sorted by area then by `lx` so argmax tie-breaking is deterministic.
pub(crate) fn admissible_shapes(n: usize, exponent: f64) -> Result<Vec<(usize, usize)>> {
    let bound = (n as f64).powf(exponent);
    let mut shapes = Vec::new();
    let mut lx = 2usize;
    while ((lx * 2) as f64) < bound {
        let mut ly = 2usize;
        while ((lx * ly) as f64) < bound {
            shapes.push((lx, ly));
            ly += 1;
        }
        lx += 1;
    }
    if shapes.is_empty() {
        return Err(Error::NoAdmissibleGrid { exponent, bound });
    }
    shapes.sort_by_key(|&(lx, ly)| (lx * ly, lx));
    Ok(shapes)
}

/// Best normalized MI per admissible grid shape.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicMatrix<F> {
    pub bound: f64,
    /// `((lx, ly), score)` sorted by area then `lx`.
    pub entries: Vec<((usize, usize), F)>,
}

pub fn characteristic_matrix<F: Scalar>(
    d: &Dataset<F>,
    exponent: f64,
    parallel: bool,
) -> Result<CharacteristicMatrix<F>> {
    let n = d.len();
    if n < 4 {
        return Err(Error::TooFewPoints { min: 4, actual: n });
    }
    let shapes = admissible_shapes(n, exponent)?;
    let canon = d.canonicalize();
    let swapped = d.swapped().canonicalize();
    let eval = |&(lx, ly): &(usize, usize)| {
        (
            (lx, ly),
            best_grid_score_prepared(&canon, &swapped, lx, ly).score,
        )
    };
    let entries: Vec<((usize, usize), F)> = if parallel {
        shapes.par_iter().map(eval).collect()
    } else {
        shapes.iter().map(eval).collect()
    };
    Ok(CharacteristicMatrix {
        bound: (n as f64).powf(exponent),
        entries,
    })
}

/// MIC score with the grid shape that realized it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicResult<F> {
    pub score: F,
    pub best_shape: (usize, usize),
    pub shapes_evaluated: usize,
}

/// Exhaustive MIC: maximum of [`best_grid_score`] over every shape with
/// `lx * ly < n^exponent`. Strictly sequential; for the parallel shape sweep
/// use [`mic_with`].
pub fn mic<F: Scalar>(d: &Dataset<F>, exponent: f64) -> Result<MicResult<F>> {
    mic_with(d, exponent, false)
}

pub fn mic_with<F: Scalar>(d: &Dataset<F>, exponent: f64, parallel: bool) -> Result<MicResult<F>> {
    let cm = characteristic_matrix(d, exponent, parallel)?;
    let mut best = cm.entries[0];
    for &entry in &cm.entries[1..] {
        if entry.1 > best.1 {
            best = entry;
        }
    }
    Ok(MicResult {
        score: best.1,
        best_shape: best.0,
        shapes_evaluated: cm.entries.len(),
    })
}
