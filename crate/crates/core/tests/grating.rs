mod common;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{cluster, compass_search};
use niching::ea::{Bounds, Direction};
use niching::grating::{
    grating_problem, objective_j, residuals, synthetic_recording_model, DesignBounds, GratingDesign, GratingProfile,
    GrooveCoefficients, RecordingModel, Residuals, DEFAULT_PROFILE,
};
use niching::Error;

/// Mean squared groove-density error over the aperture, by composite
/// Simpson integration of `(r1 + r2 y + r3 y^2 + r4 y^3)^2` on `[-w0, w0]`.
fn j_by_quadrature(r: &Residuals, w0: f64) -> f64 {
    let n = 2000;
    let h = 2.0 * w0 / n as f64;
    let g = |y: f64| {
        let e = r.r1 + y * (r.r2 + y * (r.r3 + y * r.r4));
        e * e
    };
    let mut s = g(-w0) + g(w0);
    for k in 1..n {
        let y = -w0 + k as f64 * h;
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * g(y);
    }
    s * h / 3.0 / (2.0 * w0)
}

fn random_residuals(rng: &mut ChaCha8Rng) -> Residuals {
    let mut draw = |scale: f64| scale * rng.random_range(-1.0..1.0) * 10f64.powf(rng.random_range(-6.0..0.0));
    Residuals { r1: draw(1e3), r2: draw(10.0), r3: draw(1e-1), r4: draw(1e-3) }
}

#[test]
fn objective_matches_aperture_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let r = random_residuals(&mut rng);
        let w0 = rng.random_range(1.0..120.0);
        let (j, q) = (objective_j(&r, w0), j_by_quadrature(&r, w0));
        assert!((j - q).abs() <= 1e-9 * q.abs().max(1e-300), "{r:?} w0={w0}: {j} vs {q}");
    }
}

#[test]
fn objective_is_nonnegative_on_random_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1_000_000 {
        let r = random_residuals(&mut rng);
        let j = objective_j(&r, 90.0);
        // rounding in the cross terms is the only source of a negative value
        let w2 = 8100.0;
        let scale = r.r1 * r.r1 + w2 * r.r2 * r.r2 + w2 * w2 * r.r3 * r.r3 + w2 * w2 * w2 * r.r4 * r.r4;
        assert!(j >= -1e-13 * scale, "{r:?}: {j}");
    }
}

#[test]
fn default_profile_file_loads_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.toml");
    std::fs::write(&path, DEFAULT_PROFILE).unwrap();
    let profile = GratingProfile::load(&path).unwrap();
    assert_eq!(profile, GratingProfile::vls_default());
    let p = profile.params;
    assert_eq!(
        [p.n0, p.b2, p.b3, p.b4, p.w0, p.lambda0].map(f64::to_bits),
        [1400.0, 8.2453e-4, 3.0015e-7, 0.0, 90.0, 4.131e-4].map(f64::to_bits)
    );
    assert_eq!(p.mirror_radii, (1000.0, 1000.0));
    assert_eq!(profile.bounds, DesignBounds::default());
}

#[test]
fn missing_profile_is_an_io_error() {
    let err = GratingProfile::load(std::path::Path::new("/nonexistent/profile.toml")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
}

#[test]
fn synthetic_model_is_deterministic_and_exact_at_anchor() {
    let profile = GratingProfile::vls_default();
    let bounds = profile.bounds.to_bounds().unwrap();
    let model = synthetic_recording_model(&profile.synthetic_anchor, &bounds).unwrap();
    let p = profile.params;
    let c = model.coefficients(&profile.synthetic_anchor, &p);
    assert_eq!(c, GrooveCoefficients::perfect(&p));
    let r = residuals(&c, &p);
    assert!(objective_j(&r, p.w0) < 1e-20);

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let d = GratingDesign::from_genome(&bounds.sample(&mut rng)).unwrap();
        assert_eq!(model.coefficients(&d, &p), model.coefficients(&d, &p));
    }
}

#[test]
fn synthetic_problem_has_several_separated_minima() {
    let problem = GratingProfile::vls_default().synthetic_problem().unwrap();
    assert_eq!(problem.dimension(), 8);
    assert_eq!(problem.direction(), Direction::Minimize);
    assert!(problem.known_peaks().is_empty());

    let b = problem.bounds().clone();
    let unit = Bounds::uniform(0.0, 1.0, 8).unwrap();
    let f = |u: &[f64]| problem.objective(&b.denormalize(u));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sample: Vec<(f64, Vec<f64>)> = (0..10_000)
        .map(|_| {
            let u = unit.sample(&mut rng);
            (f(&u), u)
        })
        .collect();
    assert!(sample.iter().all(|(j, _)| *j >= 0.0));
    sample.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (lo, hi) = (vec![0.0; 8], vec![1.0; 8]);
    let minima: Vec<Vec<f64>> = sample[..40]
        .iter()
        .map(|(_, u)| compass_search(&f, u, &lo, &hi, Direction::Minimize, 1e-9))
        .filter(|u| f(u) < 1e-4)
        .collect();
    let separated = cluster(&minima, 0.1);
    assert!(separated.len() >= 2, "{} separated minima below 1e-4", separated.len());
}

struct Constant(GrooveCoefficients);

impl RecordingModel for Constant {
    fn coefficients(&self, _: &GratingDesign, _: &niching::grating::GratingParams) -> GrooveCoefficients {
        self.0
    }
}

#[test]
fn pluggable_models_drive_the_objective() {
    let profile = GratingProfile::vls_default();
    let p = profile.params;
    let bounds = profile.bounds.to_bounds().unwrap();
    let perfect = grating_problem(Arc::new(Constant(GrooveCoefficients::perfect(&p))), p, bounds.clone()).unwrap();
    let x = bounds.sample(&mut ChaCha8Rng::seed_from_u64(6));
    assert!(perfect.objective(&x) < 1e-20);

    let off = GrooveCoefficients { j10: p.lambda0 * (p.n0 + 1.0), ..GrooveCoefficients::perfect(&p) };
    let shifted = grating_problem(Arc::new(Constant(off)), p, bounds).unwrap();
    assert!((shifted.objective(&x) - 1.0).abs() < 1e-9);

    let wrong = Bounds::uniform(0.0, 1.0, 3).unwrap();
    assert!(grating_problem(Arc::new(Constant(off)), p, wrong).is_err());
}
