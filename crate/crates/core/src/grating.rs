//! Varied-line-spacing holographic grating design objective.
//!
//! The design problem minimizes the squared error between the expected and
//! the recorded groove density over the grating width. In closed form
//!
//! ```text
//! J = r1^2 + w0^2 (2 r1 r3 + r2^2) / 3 + w0^4 (r3^2 + 2 r2 r4) / 5 + w0^6 r4^2 / 7
//! r1 = j10 / l0 - n0          r2 = j20 / l0 - n0 b2
//! r3 = 3 j30 / (2 l0) - n0 b3 r4 = j40 / (2 l0) - n0 b4
//! ```
//!
//! where `l0` is the recording wavelength and `j10..j40` are the groove
//! coefficients produced by the recording optics for a given design. The
//! optics live behind [`RecordingModel`]; [`SyntheticRecordingModel`] is a
//! non-physical stand-in with a known family of zero-residual designs.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ea::Bounds;
use crate::ea::Direction;
use crate::error::{Error, Result};
use crate::problems::BoundedProblem;

pub const DEFAULT_PROFILE: &str = include_str!("../profiles/vls_default.toml");

pub fn nm_to_mm(nm: f64) -> f64 {
    nm / 1e6
}

/// Recording constants. All lengths in millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GratingParams {
    /// Central groove density, lines/mm.
    pub n0: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
    /// Half-width of the grating.
    pub w0: f64,
    /// Recording wavelength.
    pub lambda0: f64,
    pub mirror_radii: (f64, f64),
}

impl GratingParams {
    pub fn validate(&self) -> Result<()> {
        let pos = |v: f64| v > 0.0 && v.is_finite();
        if !(pos(self.n0) && pos(self.w0) && pos(self.lambda0) && pos(self.mirror_radii.0) && pos(self.mirror_radii.1))
        {
            return Err(Error::config("n0, w0, lambda0 and mirror radii must be positive"));
        }
        if !(self.b2.is_finite() && self.b3.is_finite() && self.b4.is_finite()) {
            return Err(Error::config("b2, b3, b4 must be finite"));
        }
        Ok(())
    }
}

/// The eight recording parameters. Angles in radians, distances in mm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GratingDesign {
    pub gamma: f64,
    pub eta_c: f64,
    pub delta: f64,
    pub eta_d: f64,
    pub p_c: f64,
    pub q_c: f64,
    pub p_d: f64,
    pub q_d: f64,
}

impl GratingDesign {
    pub const DIM: usize = 8;

    /// Genome order: the four angles, then the four distances.
    pub fn to_genome(&self) -> Vec<f64> {
        vec![self.gamma, self.eta_c, self.delta, self.eta_d, self.p_c, self.q_c, self.p_d, self.q_d]
    }

    pub fn from_genome(g: &[f64]) -> Result<Self> {
        let &[gamma, eta_c, delta, eta_d, p_c, q_c, p_d, q_d] = g else {
            return Err(Error::DimensionMismatch { expected: Self::DIM, found: g.len() });
        };
        Ok(Self { gamma, eta_c, delta, eta_d, p_c, q_c, p_d, q_d })
    }
}

/// Groove coefficients `j10, j20, j30, j40`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GrooveCoefficients {
    pub j10: f64,
    pub j20: f64,
    pub j30: f64,
    pub j40: f64,
}

impl GrooveCoefficients {
    /// Coefficients that make every residual vanish.
    pub fn perfect(p: &GratingParams) -> Self {
        Self {
            j10: p.n0 * p.lambda0,
            j20: p.n0 * p.b2 * p.lambda0,
            j30: 2.0 * p.n0 * p.b3 * p.lambda0 / 3.0,
            j40: 2.0 * p.n0 * p.b4 * p.lambda0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Residuals {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
}

/// Maps a design to its groove coefficients. Must be deterministic.
pub trait RecordingModel: Send + Sync {
    fn coefficients(&self, design: &GratingDesign, params: &GratingParams) -> GrooveCoefficients;
}

pub fn residuals(j: &GrooveCoefficients, p: &GratingParams) -> Residuals {
    let l0 = p.lambda0;
    Residuals {
        r1: j.j10 / l0 - p.n0,
        r2: j.j20 / l0 - p.n0 * p.b2,
        r3: 3.0 * j.j30 / (2.0 * l0) - p.n0 * p.b3,
        r4: j.j40 / (2.0 * l0) - p.n0 * p.b4,
    }
}

pub fn objective_j(r: &Residuals, w0: f64) -> f64 {
    let w2 = w0 * w0;
    let w4 = w2 * w2;
    let w6 = w4 * w2;
    r.r1 * r.r1
        + w2 * (2.0 * r.r1 * r.r3 + r.r2 * r.r2) / 3.0
        + w4 * (r.r3 * r.r3 + 2.0 * r.r2 * r.r4) / 5.0
        + w6 * r.r4 * r.r4 / 7.0
}

/// Box for the design variables: one interval shared by the angles, one by
/// the distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignBounds {
    #[serde(rename = "angle_rad")]
    pub angle: (f64, f64),
    #[serde(rename = "distance_mm")]
    pub distance: (f64, f64),
}

impl Default for DesignBounds {
    fn default() -> Self {
        Self { angle: (-PI / 2.0, PI / 2.0), distance: (100.0, 2000.0) }
    }
}

impl DesignBounds {
    pub fn to_bounds(&self) -> Result<Bounds> {
        if self.distance.0 <= 0.0 {
            return Err(Error::config("design distances must be positive"));
        }
        let mut v = vec![self.angle; 4];
        v.extend([self.distance; 4]);
        Bounds::new(v)
    }
}

/// Builds the 8-dimensional minimization problem `J(residuals(model(x)))`.
///
/// Optima are unknown, so the problem carries no peak list. Distinct-peak
/// distances are measured in normalized coordinates because the genome mixes
/// radians and millimetres.
pub fn grating_problem(
    model: Arc<dyn RecordingModel>,
    params: GratingParams,
    bounds: Bounds,
) -> Result<BoundedProblem> {
    params.validate()?;
    if bounds.dim() != GratingDesign::DIM {
        return Err(Error::DimensionMismatch { expected: GratingDesign::DIM, found: bounds.dim() });
    }
    let objective = move |x: &[f64]| {
        let design = GratingDesign::from_genome(x).expect("genome length checked by evaluate");
        let j = objective_j(&residuals(&model.coefficients(&design, &params), &params), params.w0);
        if j < 0.0 {
            log::warn!("negative J = {j:e} at {design:?}: recording model inconsistent with a squared-error integral");
        }
        j
    };
    Ok(BoundedProblem::new("grating", bounds, Direction::Minimize, objective)
        .with_optimum_value(0.0)
        .with_normalized_peak_distance())
}

/// Ripple period along each projection, in normalized design units.
pub const SYNTHETIC_PERIOD: f64 = 1.0;

/// Residual scale per coefficient: `r_i = SYNTHETIC_AMPLITUDES[i] * s_i(x)`.
pub const SYNTHETIC_AMPLITUDES: [f64; 4] = [5e-2, 5e-4, 5e-6, 5e-8];

/// Projection directions, one row per residual.
pub const SYNTHETIC_WEIGHTS: [[f64; 8]; 4] = [
    [1.00, -0.80, 1.20, 0.90, -1.10, 0.70, 1.30, -1.00],
    [0.90, 1.10, -0.80, 1.20, 1.00, -1.30, 0.70, 1.00],
    [-1.20, 1.00, 0.90, -0.80, 1.30, 1.10, -1.00, 0.70],
    [0.80, 1.30, 1.00, -1.10, -0.70, 0.90, 1.20, -1.00],
];

/// Non-physical recording model for exercising the objective.
///
/// With `u` the min-max normalized design and `a` the normalized anchor,
///
/// ```text
/// s_i(x) = sin(pi * W[i] . (u - a) / PERIOD)
/// j_i(x) = perfect j_i + (residual scale_i) * A[i] * s_i(x)
/// ```
///
/// so the residuals are `r_i = A[i] * s_i(x)`. Like the real design problem
/// (eight variables, four residual equations), the zero set is not a point:
/// it is a family of parallel 4-dimensional sheets `W (u - a) in PERIOD * Z^4`
/// cutting through the box, the anchor among them. Any point on a sheet has
/// `J = 0`, so there are many well-separated optimal designs.
#[derive(Debug, Clone)]
pub struct SyntheticRecordingModel {
    anchor: Vec<f64>,
    bounds: Bounds,
}

impl SyntheticRecordingModel {
    pub fn anchor(&self) -> GratingDesign {
        GratingDesign::from_genome(&self.bounds.denormalize(&self.anchor)).expect("8 coordinates")
    }

    /// The unscaled residual shapes `s_i`, each in `[-1, 1]`.
    pub fn ripples(&self, design: &GratingDesign) -> [f64; 4] {
        let u = self.bounds.normalize(&design.to_genome());
        SYNTHETIC_WEIGHTS.map(|w| {
            let projection: f64 = w.iter().zip(&u).zip(&self.anchor).map(|((w, x), a)| w * (x - a)).sum();
            (PI * projection / SYNTHETIC_PERIOD).sin()
        })
    }
}

impl RecordingModel for SyntheticRecordingModel {
    fn coefficients(&self, design: &GratingDesign, p: &GratingParams) -> GrooveCoefficients {
        let [s1, s2, s3, s4] = self.ripples(design);
        let [a1, a2, a3, a4] = SYNTHETIC_AMPLITUDES;
        let perfect = GrooveCoefficients::perfect(p);
        let l0 = p.lambda0;
        GrooveCoefficients {
            j10: perfect.j10 + l0 * a1 * s1,
            j20: perfect.j20 + l0 * a2 * s2,
            j30: perfect.j30 + 2.0 * l0 * a3 * s3 / 3.0,
            j40: perfect.j40 + 2.0 * l0 * a4 * s4,
        }
    }
}

pub fn synthetic_recording_model(anchor: &GratingDesign, bounds: &Bounds) -> Result<SyntheticRecordingModel> {
    let g = anchor.to_genome();
    bounds.check_dim(&g)?;
    if !bounds.contains(&g) {
        return Err(Error::config(format!("synthetic anchor {anchor:?} lies outside the design bounds")));
    }
    Ok(SyntheticRecordingModel { anchor: bounds.normalize(&g), bounds: bounds.clone() })
}

/// Parameters, bounds and synthetic anchor as loaded from a profile file.
#[derive(Debug, Clone, PartialEq)]
pub struct GratingProfile {
    pub params: GratingParams,
    pub bounds: DesignBounds,
    pub synthetic_anchor: GratingDesign,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    params: ParamsFile,
    #[serde(default)]
    bounds: DesignBounds,
    synthetic_anchor: GratingDesign,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsFile {
    n0: f64,
    b2: f64,
    b3: f64,
    b4: f64,
    w0_mm: f64,
    lambda0_nm: f64,
    mirror_radii_mm: (f64, f64),
}

impl GratingProfile {
    pub fn from_toml_str(s: &str, origin: &Path) -> Result<Self> {
        let f: ProfileFile =
            toml::from_str(s).map_err(|e| Error::Parse { path: origin.to_path_buf(), message: e.to_string() })?;
        let params = GratingParams {
            n0: f.params.n0,
            b2: f.params.b2,
            b3: f.params.b3,
            b4: f.params.b4,
            w0: f.params.w0_mm,
            lambda0: nm_to_mm(f.params.lambda0_nm),
            mirror_radii: f.params.mirror_radii_mm,
        };
        params.validate()?;
        f.bounds.to_bounds()?;
        Ok(Self { params, bounds: f.bounds, synthetic_anchor: f.synthetic_anchor })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&s, path)
    }

    /// The shipped VLS profile.
    pub fn vls_default() -> Self {
        Self::from_toml_str(DEFAULT_PROFILE, Path::new("<builtin vls_default.toml>")).expect("builtin profile is valid")
    }

    /// The grating problem backed by this profile's synthetic model.
    pub fn synthetic_problem(&self) -> Result<BoundedProblem> {
        let bounds = self.bounds.to_bounds()?;
        let model = synthetic_recording_model(&self.synthetic_anchor, &bounds)?;
        grating_problem(Arc::new(model), self.params, bounds)
    }
}
