//! Planar geometry on sampled subsets of the complex plane.
//!
//! Berezin ranges, numerical ranges and orbit sets all end up as finite
//! clouds of complex numbers. This module holds the cloud type and the
//! geometric tools used to reason about such clouds: monotone-chain convex
//! hulls, a sampling-based convexity detector, a collinearity predicate and
//! the discrete Hausdorff distance.
//!
//! The convexity detector is a heuristic. It draws pairs `(p, q)` from the
//! cloud, forms `t p + (1 - t) q` for a few `t`, and measures how far each
//! such point is from the cloud. A convex set sampled densely has every
//! chord point close to a sample; a visibly non-convex set does not.

use std::collections::BTreeMap;

use num_complex::Complex64;
use kiddo::{ImmutableKdTree, SquaredEuclidean};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the complex plane, identified with `(re, im)` in the real plane.
pub type CPoint = Complex64;

/// Relative detector tolerance: `tol = DEFAULT_RELATIVE_TOL * diameter`.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-3;
/// Chord parameters used by the detector unless overridden.
pub const DEFAULT_T_GRID: [f64; 3] = [0.25, 0.5, 0.75];
/// Cap on the number of sampled pairs.
pub const DEFAULT_MAX_PAIRS: usize = 200_000;

/// An ordered, finite sample of a planar set.
///
/// `domain`, when present, holds the preimage point for each entry of
/// `points` (for Berezin clouds, the `z` at which the transform was taken).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<CPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<CPoint>>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

impl PointCloud {
    pub fn new(points: Vec<CPoint>) -> Self {
        PointCloud {
            points,
            domain: None,
            meta: BTreeMap::new(),
        }
    }

    pub fn with_domain(points: Vec<CPoint>, domain: Vec<CPoint>) -> Self {
        assert_eq!(points.len(), domain.len(), "domain/point length mismatch");
        PointCloud {
            points,
            domain: Some(domain),
            meta: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.meta.insert(key.into(), value.to_string());
        self
    }

    pub fn set_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.meta.insert(key.into(), value.to_string());
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fails on the first NaN or infinite coordinate.
    pub fn check_finite(&self) -> Result<()> {
        match self.points.iter().position(|p| !is_finite(*p)) {
            Some(index) => Err(Error::NonFinitePoint { index }),
            None => Ok(()),
        }
    }

    /// Largest distance between two points of the cloud.
    pub fn diameter(&self) -> Result<f64> {
        let hull = convex_hull(self)?;
        Ok(polygon_diameter(&hull).0)
    }
}

fn is_finite(p: CPoint) -> bool {
    p.re.is_finite() && p.im.is_finite()
}

#[inline]
fn cross(o: CPoint, a: CPoint, b: CPoint) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn lex_cmp(a: &CPoint, b: &CPoint) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Sorted copy of the cloud with exact duplicates removed.
fn sorted_unique(points: &[CPoint]) -> Vec<CPoint> {
    let mut pts = points.to_vec();
    pts.sort_by(lex_cmp);
    pts.dedup();
    pts
}

/// Convex hull by Andrew's monotone chain.
///
/// Vertices come back counterclockwise starting at the lexicographically
/// smallest point. Points lying on a hull edge are dropped. A cloud whose
/// points coincide gives a one-point hull; a collinear cloud gives its two
/// extreme points.
pub fn convex_hull(cloud: &PointCloud) -> Result<Vec<CPoint>> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    cloud.check_finite()?;
    Ok(hull_of_points(&cloud.points))
}

pub(crate) fn hull_of_points(points: &[CPoint]) -> Vec<CPoint> {
    let pts = sorted_unique(points);
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<CPoint> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Diameter of a vertex set and the realizing pair, by pairwise scan.
fn polygon_diameter(vertices: &[CPoint]) -> (f64, CPoint, CPoint) {
    let mut best = (0.0, vertices[0], vertices[0]);
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            let d = (a - b).norm();
            if d > best.0 {
                best = (d, a, b);
            }
        }
    }
    best
}

/// Densify a closed polygon so that consecutive samples are at most `step`
/// apart. Used to compare hull boundaries as curves rather than vertex sets.
pub fn densify_polygon(vertices: &[CPoint], step: f64) -> Vec<CPoint> {
    assert!(step > 0.0);
    if vertices.len() < 2 {
        return vertices.to_vec();
    }
    let mut out = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        let b = vertices[(i + 1) % vertices.len()];
        let pieces = ((b - a).norm() / step).ceil().max(1.0) as usize;
        for k in 0..pieces {
            out.push(a + (b - a) * (k as f64 / pieces as f64));
        }
    }
    out
}

/// True when `p`, `q`, `r` lie on one line, up to `tol` relative to the
/// squared spread of the three points.
pub fn collinear(p: CPoint, q: CPoint, r: CPoint, tol: f64) -> bool {
    let det = cross(p, q, r).abs();
    let scale = (p - q)
        .norm_sqr()
        .max((q - r).norm_sqr())
        .max((p - r).norm_sqr());
    det <= tol * scale
}

/// k-d tree answering nearest-point distance queries.
pub struct NearestIndex<'a> {
    points: &'a [CPoint],
    tree: ImmutableKdTree<f64, 2>,
}

impl<'a> NearestIndex<'a> {
    /// `points` must be nonempty and finite.
    pub fn new(points: &'a [CPoint]) -> Self {
        assert!(!points.is_empty());
        let coords: Vec<[f64; 2]> = points.iter().map(|p| [p.re, p.im]).collect();
        let tree = ImmutableKdTree::new_from_slice(&coords).expect("finite points");
        NearestIndex { points, tree }
    }

    /// Distance from `q` to the closest indexed point, and that point's index.
    pub fn nearest(&self, q: CPoint) -> (f64, usize) {
        let hit = self
            .tree
            .query(&[q.re, q.im])
            .nearest_one::<SquaredEuclidean<f64>>()
            .execute();
        let i = hit.item as usize;
        ((self.points[i] - q).norm(), i)
    }
}

/// Symmetric Hausdorff distance between two finite clouds.
pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    a.check_finite()?;
    b.check_finite()?;
    Ok(hausdorff_points(&a.points, &b.points))
}

pub(crate) fn hausdorff_points(a: &[CPoint], b: &[CPoint]) -> f64 {
    let directed = |from: &[CPoint], to: &[CPoint]| -> f64 {
        let index = NearestIndex::new(to);
        from.par_iter()
            .map(|&p| index.nearest(p).0)
            .reduce(|| 0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Convex,
    NonConvex,
}

/// A chord point that is far from the cloud: `t p + (1 - t) q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub p: CPoint,
    pub q: CPoint,
    pub t: f64,
}

impl Witness {
    pub fn chord_point(&self) -> CPoint {
        self.p * self.t + self.q * (1.0 - self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub verdict: Verdict,
    pub max_violation: f64,
    pub witness: Option<Witness>,
    pub tolerance: f64,
    /// Number of chord points tested.
    pub n_samples: usize,
}

impl ConvexityReport {
    fn degenerate(deviation: f64, tol: f64) -> Self {
        ConvexityReport {
            verdict: Verdict::Convex,
            max_violation: deviation,
            witness: None,
            tolerance: tol,
            n_samples: 0,
        }
    }
}

/// Seed for pair sampling, read from the cloud's `seed` meta key (default 0).
fn cloud_seed(cloud: &PointCloud) -> u64 {
    cloud
        .meta
        .get("seed")
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

/// Sampling-based convexity test.
///
/// Chord points `t p + (1 - t) q` for pairs `(p, q)` of distinct cloud points
/// and `t` in `t_grid` are compared against the cloud; the largest distance
/// to the nearest sample is the violation. When the cloud has more than
/// `n_pairs` distinct pairs, `n_pairs` of them are drawn with a ChaCha stream
/// seeded from `meta["seed"]`.
///
/// Clouds that collapse to a point or a segment (within `tol`) are reported
/// convex without sampling.
pub fn convexity_report(
    cloud: &PointCloud,
    tol: f64,
    n_pairs: usize,
    t_grid: &[f64],
) -> Result<ConvexityReport> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    cloud.check_finite()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {tol}")));
    }
    if let Some(t) = t_grid.iter().find(|t| !(**t > 0.0 && **t < 1.0)) {
        return Err(Error::InvalidParameter(format!("chord parameter {t} outside (0, 1)")));
    }

    let pts = sorted_unique(&cloud.points);
    let hull = hull_of_points(&pts);
    if hull.len() <= 2 {
        return Ok(ConvexityReport::degenerate(0.0, tol));
    }
    let (_, a, b) = polygon_diameter(&hull);
    let axis = b - a;
    let deviation = hull
        .iter()
        .map(|&p| cross(a, b, p).abs() / axis.norm())
        .fold(0.0, f64::max);
    if deviation <= tol {
        return Ok(ConvexityReport::degenerate(deviation, tol));
    }

    let m = pts.len();
    let total = m * (m - 1) / 2;
    let pairs: Vec<(u32, u32)> = if total <= n_pairs {
        (0..m)
            .flat_map(|i| ((i + 1)..m).map(move |j| (i as u32, j as u32)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cloud_seed(cloud));
        (0..n_pairs)
            .map(|_| {
                let i = rng.random_range(0..m);
                let mut j = rng.random_range(0..m - 1);
                if j >= i {
                    j += 1;
                }
                (i as u32, j as u32)
            })
            .collect()
    };

    let index = NearestIndex::new(&pts);
    let worst: Vec<(f64, f64)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (p, q) = (pts[i as usize], pts[j as usize]);
            t_grid
                .iter()
                .map(|&t| (index.nearest(p * t + q * (1.0 - t)).0, t))
                .fold((f64::NEG_INFINITY, 0.0), |acc, x| if x.0 > acc.0 { x } else { acc })
        })
        .collect();

    // Sequential reduction: ties go to the smallest pair index.
    let mut best = (0.0, usize::MAX, 0.0);
    for (k, &(d, t)) in worst.iter().enumerate() {
        if d > best.0 {
            best = (d, k, t);
        }
    }
    let max_violation = best.0;
    let nonconvex = max_violation > tol;
    let witness = nonconvex.then(|| {
        let (i, j) = pairs[best.1];
        Witness {
            p: pts[i as usize],
            q: pts[j as usize],
            t: best.2,
        }
    });
    Ok(ConvexityReport {
        verdict: if nonconvex {
            Verdict::NonConvex
        } else {
            Verdict::Convex
        },
        max_violation,
        witness,
        tolerance: tol,
        n_samples: pairs.len() * t_grid.len(),
    })
}

/// [`convexity_report`] with the default tolerance (relative to the cloud
/// diameter), pair cap and chord grid.
pub fn convexity_report_default(cloud: &PointCloud) -> Result<ConvexityReport> {
    let diameter = cloud.diameter()?;
    let tol = if diameter > 0.0 {
        DEFAULT_RELATIVE_TOL * diameter
    } else {
        f64::MIN_POSITIVE
    };
    convexity_report(cloud, tol, DEFAULT_MAX_PAIRS, &DEFAULT_T_GRID)
}

/// Signed-area containment test for a counterclockwise convex polygon.
pub fn polygon_contains(hull: &[CPoint], p: CPoint, slack: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => (hull[0] - p).norm() <= slack.sqrt(),
        _ => (0..hull.len()).all(|i| cross(hull[i], hull[(i + 1) % hull.len()], p) >= -slack),
    }
}
