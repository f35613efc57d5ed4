//! Subcommand bodies. Each returns text for stdout and an exit status;
//! nothing here touches the process or the file system.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt::Write as _;

use hedgehog_core::harness::{section_profile, slab_profile, taylor_checks, DiscrepancyProfile, TaylorRegime};
use hedgehog_core::{Direction, SectionConfig, SupportFunction, ToleranceConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Status};
use crate::scene::Scene;
use crate::svg::render_envelope;

/// `|∂F/∂θ|` is allowed this multiple of the `F` tolerance.
pub const SLOPE_RESIDUAL_FACTOR: f64 = 100.0;
pub const CHECK_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Sections,
    Slabs,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Sections => "sections",
            Kind::Slabs => "slabs",
        }
    }
}

pub fn envelope(scene: &Scene, h: &str, samples: Option<usize>, lines: &[f64]) -> Result<String, CliError> {
    let h = scene.hedgehog(h)?;
    let n = samples.unwrap_or(scene.defaults.samples);
    if n == 0 {
        return Err(CliError::InvalidArgument("--samples must be positive".into()));
    }
    Ok(render_envelope(h, n, lines))
}

#[derive(Clone, Debug)]
pub struct VerifyArgs {
    pub p: String,
    pub q: String,
    pub h: String,
    pub kind: Kind,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
    pub strict: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyOutcome {
    pub kind: Kind,
    pub profile: DiscrepancyProfile,
    pub samples: usize,
    pub pass_tol: f64,
}

impl VerifyOutcome {
    pub fn status(&self) -> Status {
        if self.profile.sup <= self.pass_tol {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind: {}", self.kind.name());
        let _ = writeln!(out, "samples: {}", self.samples);
        let _ = writeln!(out, "sup: {:e}", self.profile.sup);
        let _ = writeln!(out, "arg_sup: {}", self.profile.arg_sup);
        let _ = writeln!(out, "skipped: {}", self.profile.skipped.len());
        let verdict = if self.status() == Status::Pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result: {verdict} (pass_tol = {:e})", self.pass_tol);
        out
    }
}

pub fn verify(scene: &Scene, args: &VerifyArgs) -> Result<VerifyOutcome, CliError> {
    let p = scene.polygon(&args.p)?;
    let q = scene.polygon(&args.q)?;
    let h = scene.hedgehog(&args.h)?;
    let samples = args.samples.unwrap_or(scene.defaults.samples);
    if samples == 0 {
        return Err(CliError::InvalidArgument("--samples must be positive".into()));
    }
    let pass_tol = args.tol.unwrap_or(scene.defaults.pass_tol);
    if !(pass_tol >= 0.0 && pass_tol.is_finite()) {
        return Err(CliError::InvalidArgument("--tol must be a non-negative number".into()));
    }
    let cfg = SectionConfig {
        tol: scene.defaults.tolerances,
        ..SectionConfig::default()
    };
    let profile = match args.kind {
        Kind::Sections => {
            if args.strict {
                return Err(CliError::InvalidArgument("--strict applies to slabs only".into()));
            }
            section_profile(p, q, h, samples, &cfg)?
        }
        Kind::Slabs => slab_profile(p, q, h, samples, &cfg, args.strict)?,
    };
    Ok(VerifyOutcome {
        kind: args.kind,
        profile,
        samples,
        pass_tol,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChecksReport {
    pub text: String,
    pub passed: bool,
}

impl ChecksReport {
    pub fn status(&self) -> Status {
        if self.passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Frames for the Taylor checks: the two axes and eight generic angles.
pub fn taylor_frames() -> Vec<Direction> {
    let mut frames = vec![Direction::e2(), Direction::e1()];
    frames.extend((0..8).map(|k| Direction::new(0.3 + k as f64 * FRAC_PI_4)));
    frames
}

fn near_kink(h: &SupportFunction, d: Direction, radius: f64) -> bool {
    h.kinks().any(|k| k.angular_distance(d) <= radius)
}

/// Envelope residuals and finite-difference derivatives at `n` seeded random
/// directions, then Taylor checks at [`taylor_frames`].
pub fn checks(scene: &Scene, name: &str, seed: u64, n: Option<usize>) -> Result<ChecksReport, CliError> {
    let h = scene.hedgehog(name)?;
    let tol: ToleranceConfig = scene.defaults.tolerances;
    let n = n.unwrap_or(CHECK_SAMPLES);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let thetas: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
    let mut out = String::new();
    let mut passed = true;
    let _ = writeln!(out, "hedgehog: {name}");

    let (mut max_f, mut max_df, mut skipped) = (0.0_f64, 0.0_f64, 0);
    for &t in &thetas {
        let d = Direction::new(t);
        if near_kink(h, d, tol.geometric) {
            skipped += 1;
            continue;
        }
        let x = h.support_point(d)?;
        let (f, df) = h.envelope_residual(d, x)?;
        max_f = max_f.max(f.abs());
        max_df = max_df.max(df.abs());
    }
    let ok = max_f <= tol.residual && max_df <= SLOPE_RESIDUAL_FACTOR * tol.residual;
    passed &= ok;
    let _ = writeln!(
        out,
        "residuals: {} directions, {skipped} skipped, max |F| = {max_f:e}, max |dF| = {max_df:e}: {}",
        n,
        verdict(ok)
    );

    let (mut max_err, mut skipped) = (0.0_f64, 0);
    let step = tol.fd_step;
    for &t in &thetas {
        let d = Direction::new(t);
        // the stencil must not straddle a kink
        if near_kink(h, d, step + tol.geometric) {
            skipped += 1;
            continue;
        }
        let fd = (h.evaluate(d.rotated(step)) - h.evaluate(d.rotated(-step))) / (2.0 * step);
        max_err = max_err.max((h.derivative(d)? - fd).abs());
    }
    let ok = max_err <= tol.finite_difference;
    passed &= ok;
    let _ = writeln!(
        out,
        "derivative: {} directions, {skipped} skipped, max |h' - fd| = {max_err:e}: {}",
        n,
        verdict(ok)
    );

    for frame in taylor_frames() {
        let r = taylor_checks(h, frame, &tol);
        let _ = write!(out, "taylor at {:.6}: ", frame.theta());
        if !r.applicable() {
            let _ = writeln!(out, "skipped (breakpoint within reach)");
            continue;
        }
        passed &= r.passed();
        let regime = match r.regime {
            TaylorRegime::Exact => "exact",
            TaylorRegime::Quadratic => "quadratic",
            TaylorRegime::HigherOrder => "higher-order",
            TaylorRegime::NotAnalytic => unreachable!(),
        };
        let _ = write!(out, "{regime}, ");
        if r.regime != TaylorRegime::Exact {
            let _ = write!(out, "ratios {:.3} {:.3}, ", r.ratios[0], r.ratios[1]);
        }
        let _ = writeln!(out, "slope error {:e}: {}", r.derivative_error, verdict(r.passed()));
    }
    let mut kinks: Vec<f64> = h.kinks().map(|d| d.theta()).collect();
    kinks.sort_by(f64::total_cmp);
    for t in kinks {
        let _ = writeln!(out, "skipped breakpoint: {t}");
    }
    let _ = writeln!(out, "result: {}", verdict(passed));
    Ok(ChecksReport { text: out, passed })
}
