//! Direction sweeps of `|vol(P ∩ ·) − vol(Q ∩ ·)|`.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{GeomError, Result};
use crate::polygon::ConvexPolygon;
use crate::sections::{chord_length, hedgehog_inside, slab_area, SectionConfig};
use crate::support_fn::{Direction, SupportFunction};

type Pair = (f64, f64);

/// Number of grid maxima refined by golden-section search.
pub const REFINED_MAXIMA: usize = 8;
const GOLDEN_ITERATIONS: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Section,
    Slab,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileSample {
    pub theta: f64,
    pub value_p: f64,
    pub value_q: f64,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyProfile {
    pub kind: ProfileKind,
    /// Sorted by angle; includes grid points and refined maxima.
    pub samples: Vec<ProfileSample>,
    pub sup: f64,
    pub arg_sup: f64,
    /// Angles that were excluded or whose evaluation was degenerate.
    pub skipped: Vec<f64>,
}

impl DiscrepancyProfile {
    pub fn thetas(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.theta).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.abs_diff).collect()
    }

    /// `theta,value_P,value_Q,abs_diff` rows, then skipped angles as `#` comments.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,value_P,value_Q,abs_diff\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{}", s.theta, s.value_p, s.value_q, s.abs_diff);
        }
        if !self.skipped.is_empty() {
            let _ = writeln!(out, "# skipped directions: {}", self.skipped.len());
            for t in &self.skipped {
                let _ = writeln!(out, "# {t}");
            }
        }
        out
    }
}

/// An arc of directions `[theta_lo, theta_hi)` minus a finite excluded set.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionWindow {
    theta_lo: f64,
    theta_hi: f64,
    excluded: Vec<Direction>,
    exclusion_radius: f64,
}

impl DirectionWindow {
    pub fn new(theta_lo: f64, theta_hi: f64) -> Result<Self> {
        if theta_lo.partial_cmp(&theta_hi) != Some(std::cmp::Ordering::Less) || theta_hi - theta_lo > TAU + 1e-12 {
            return Err(GeomError::InvalidArgument(format!(
                "window [{theta_lo}, {theta_hi}) is empty or wider than the circle"
            )));
        }
        Ok(Self {
            theta_lo,
            theta_hi,
            excluded: Vec::new(),
            exclusion_radius: 1e-9,
        })
    }

    pub fn full() -> Self {
        Self::new(0.0, TAU).expect("full circle is a valid window")
    }

    pub fn with_excluded(mut self, excluded: impl IntoIterator<Item = Direction>, radius: f64) -> Self {
        self.excluded.extend(excluded);
        self.exclusion_radius = radius;
        self
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.theta_lo, self.theta_hi)
    }

    pub fn excluded(&self) -> &[Direction] {
        &self.excluded
    }

    fn is_full(&self) -> bool {
        self.theta_hi - self.theta_lo >= TAU - 1e-12
    }

    pub fn is_excluded(&self, theta: f64) -> bool {
        let d = Direction::new(theta);
        self.excluded
            .iter()
            .any(|e| e.angular_distance(d) <= self.exclusion_radius)
    }

    /// `n` uniform angles: `lo + k·Δ` on the full circle, cell midpoints on an
    /// open arc.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        let step = (self.theta_hi - self.theta_lo) / n as f64;
        let shift = if self.is_full() { 0.0 } else { 0.5 };
        (0..n)
            .map(|k| self.theta_lo + (k as f64 + shift) * step)
            .collect()
    }

    fn clamp(&self, theta: f64) -> f64 {
        if self.is_full() {
            theta
        } else {
            theta.clamp(self.theta_lo, self.theta_hi)
        }
    }
}

fn is_skippable(e: &GeomError) -> bool {
    matches!(
        e,
        GeomError::DegenerateDirection { .. } | GeomError::InvertedSlab { .. }
    )
}

/// Sweeps `eval` over the window, then refines the largest grid values.
///
/// Grid evaluation runs in parallel; ordering and the reduction are
/// deterministic (largest value, smallest angle on ties).
pub fn sweep<F>(kind: ProfileKind, window: &DirectionWindow, n: usize, eval: F) -> Result<DiscrepancyProfile>
where
    F: Fn(Direction) -> Result<(f64, f64)> + Sync,
{
    if n == 0 {
        return Err(GeomError::InvalidArgument("sample count must be positive".into()));
    }
    let grid = window.grid(n);
    // `None` marks an excluded angle
    let evaluated: Vec<(f64, Option<Result<Pair>>)> = grid
        .par_iter()
        .map(|&t| {
            if window.is_excluded(t) {
                (t, None)
            } else {
                (t, Some(eval(Direction::new(t))))
            }
        })
        .collect();

    let mut samples = Vec::with_capacity(n + REFINED_MAXIMA);
    let mut skipped = Vec::new();
    for (theta, r) in evaluated {
        match r {
            None => skipped.push(theta),
            Some(Ok((value_p, value_q))) => samples.push(ProfileSample {
                theta,
                value_p,
                value_q,
                abs_diff: (value_p - value_q).abs(),
            }),
            Some(Err(e)) if is_skippable(&e) => skipped.push(theta),
            Some(Err(e)) => return Err(e),
        }
    }

    let step = (window.theta_hi - window.theta_lo) / n as f64;
    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| {
        samples[b]
            .abs_diff
            .total_cmp(&samples[a].abs_diff)
            .then(samples[a].theta.total_cmp(&samples[b].theta))
    });
    let seeds: Vec<ProfileSample> = order
        .iter()
        .take(REFINED_MAXIMA)
        .map(|&i| samples[i])
        .filter(|s| s.abs_diff > 0.0)
        .collect();
    let refined: Vec<Option<ProfileSample>> = seeds
        .par_iter()
        .map(|s| refine(window, s, step, &eval))
        .collect();
    samples.extend(refined.into_iter().flatten());

    samples.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    let (sup, arg_sup) = samples
        .iter()
        .fold((0.0_f64, f64::NAN), |(best, arg), s| {
            if s.abs_diff > best || (arg.is_nan() && s.abs_diff >= best) {
                (s.abs_diff, s.theta)
            } else {
                (best, arg)
            }
        });
    let arg_sup = if arg_sup.is_nan() { window.theta_lo } else { arg_sup };

    Ok(DiscrepancyProfile {
        kind,
        samples,
        sup,
        arg_sup,
        skipped,
    })
}

/// Golden-section maximisation on `[θ − step, θ + step]`; returns the best
/// evaluated point if it beats the seed.
fn refine<F>(window: &DirectionWindow, seed: &ProfileSample, step: f64, eval: &F) -> Option<ProfileSample>
where
    F: Fn(Direction) -> Result<(f64, f64)>,
{
    let probe = |t: f64| -> Option<ProfileSample> {
        if window.is_excluded(t) {
            return None;
        }
        let (value_p, value_q) = eval(Direction::new(t)).ok()?;
        Some(ProfileSample {
            theta: t,
            value_p,
            value_q,
            abs_diff: (value_p - value_q).abs(),
        })
    };
    let score = |s: &Option<ProfileSample>| s.map_or(f64::NEG_INFINITY, |s| s.abs_diff);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = window.clamp(seed.theta - step);
    let mut b = window.clamp(seed.theta + step);
    let mut best = *seed;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = probe(c);
    let mut fd = probe(d);
    for _ in 0..GOLDEN_ITERATIONS {
        for s in [fc, fd].into_iter().flatten() {
            if s.abs_diff > best.abs_diff {
                best = s;
            }
        }
        if score(&fc) >= score(&fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = probe(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = probe(d);
        }
    }
    for s in [fc, fd].into_iter().flatten() {
        if s.abs_diff > best.abs_diff {
            best = s;
        }
    }
    (best.abs_diff > seed.abs_diff).then(|| ProfileSample {
        theta: if window.is_full() {
            crate::support_fn::normalize_angle(best.theta)
        } else {
            best.theta
        },
        ..best
    })
}

fn check_containment(p: &ConvexPolygon, q: &ConvexPolygon, h: &SupportFunction, n: usize, cfg: &SectionConfig) -> Result<()> {
    let samples = n.max(3);
    if !hedgehog_inside(p, h, samples, &cfg.tol) {
        return Err(GeomError::ContainmentViolated("P".into()));
    }
    if !hedgehog_inside(q, h, samples, &cfg.tol) {
        return Err(GeomError::ContainmentViolated("Q".into()));
    }
    Ok(())
}

/// `|vol₁(P ∩ H(ξ)) − vol₁(Q ∩ H(ξ))|` over `n` directions.
pub fn section_profile(
    p: &ConvexPolygon,
    q: &ConvexPolygon,
    h: &SupportFunction,
    n: usize,
    cfg: &SectionConfig,
) -> Result<DiscrepancyProfile> {
    section_profile_in(p, q, h, &DirectionWindow::full(), n, cfg)
}

pub fn section_profile_in(
    p: &ConvexPolygon,
    q: &ConvexPolygon,
    h: &SupportFunction,
    window: &DirectionWindow,
    n: usize,
    cfg: &SectionConfig,
) -> Result<DiscrepancyProfile> {
    check_containment(p, q, h, n, cfg)?;
    sweep(ProfileKind::Section, window, n, |d| {
        Ok((chord_length(p, h, d, cfg)?, chord_length(q, h, d, cfg)?))
    })
}

/// `|vol₂(P ∩ S(ξ)) − vol₂(Q ∩ S(ξ))|` over `n` directions.
///
/// With `strict`, both polygons must be origin-symmetric and `h` centrally
/// symmetric before anything is swept.
pub fn slab_profile(
    p: &ConvexPolygon,
    q: &ConvexPolygon,
    h: &SupportFunction,
    n: usize,
    cfg: &SectionConfig,
    strict: bool,
) -> Result<DiscrepancyProfile> {
    slab_profile_in(p, q, h, &DirectionWindow::full(), n, cfg, strict)
}

pub fn slab_profile_in(
    p: &ConvexPolygon,
    q: &ConvexPolygon,
    h: &SupportFunction,
    window: &DirectionWindow,
    n: usize,
    cfg: &SectionConfig,
    strict: bool,
) -> Result<DiscrepancyProfile> {
    check_containment(p, q, h, n, cfg)?;
    if strict {
        if !h.is_centrally_symmetric() {
            return Err(GeomError::NotCentrallySymmetric);
        }
        if !p.is_origin_symmetric() {
            return Err(GeomError::NotOriginSymmetric("P".into()));
        }
        if !q.is_origin_symmetric() {
            return Err(GeomError::NotOriginSymmetric("Q".into()));
        }
    }
    sweep(ProfileKind::Slab, window, n, |d| {
        Ok((slab_area(p, h, d, cfg)?, slab_area(q, h, d, cfg)?))
    })
}
