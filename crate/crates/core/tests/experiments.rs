//! Experiment runner: determinism, output formats and the validation suite.

use ellipvol::geometry::{log_factorial, BodyShape, ConvexBodyKind};
use ellipvol::runner::experiment::samples_csv_string;
use ellipvol::runner::validate::{run_with_beta, sphere_moment_checks};
use ellipvol::runner::{
    derive_replicate_seed, read_samples_csv, run_experiment, validate, write_samples_csv,
    ExperimentConfig, SpectrumSpec, Threads,
};
use ellipvol::theory::beta_moment;
use ellipvol::{Error, RadialLaw};
use rand::RngCore;

fn small(replicates: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(40, 20, replicates, 17);
    cfg.spectrum_spec = SpectrumSpec::NearIdentity { c: 1.0 };
    cfg.mc_draws = 40;
    cfg
}

#[test]
fn replicate_streams() {
    let a: Vec<u64> = (0..64)
        .map({
            let mut s = derive_replicate_seed(5, 3);
            move |_| s.next_u64()
        })
        .collect();
    let b: Vec<u64> = (0..64)
        .map({
            let mut s = derive_replicate_seed(5, 3);
            move |_| s.next_u64()
        })
        .collect();
    assert_eq!(a, b);
    let mut s0 = derive_replicate_seed(5, 0);
    let mut s1 = derive_replicate_seed(5, 1);
    assert!((0..64).any(|_| s0.next_u64() != s1.next_u64()));
    let mut t = derive_replicate_seed(6, 3);
    assert_ne!(
        a[0..4],
        (0..4).map(|_| t.next_u64()).collect::<Vec<_>>()[..]
    );
}

#[test]
fn thread_count_does_not_change_results() {
    let mut cfg = small(30);
    cfg.threads = Threads::Count(1);
    let one = run_experiment(&cfg).unwrap();
    cfg.threads = Threads::Count(4);
    let four = run_experiment(&cfg).unwrap();
    assert_eq!(
        samples_csv_string(&one.samples),
        samples_csv_string(&four.samples)
    );
    assert_eq!(one.norming, four.norming);
    assert_eq!(one.t_summary, four.t_summary);
    assert_eq!(one.gof, four.gof);
}

#[test]
fn single_replicate_report_is_reproducible() {
    let cfg = small(1);
    let mut a = run_experiment(&cfg).unwrap();
    let mut b = run_experiment(&cfg).unwrap();
    a.diagnostics.timings = b.diagnostics.timings.clone();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.gof.is_none());
    b.config.master_seed += 1;
    assert_ne!(
        run_experiment(&b.config).unwrap().samples[0].log_det,
        a.samples[0].log_det
    );
}

#[test]
fn unit_cube_shifts_log_volume_by_log_factorial() {
    let simplex = run_experiment(&ExperimentConfig::new(30, 10, 5, 3)).unwrap();
    let mut cfg = ExperimentConfig::new(30, 10, 5, 3);
    cfg.body = Some(ConvexBodyKind::new(BodyShape::UnitCube, 10).unwrap());
    let cube = run_experiment(&cfg).unwrap();
    for (s, c) in simplex.samples.iter().zip(&cube.samples) {
        assert_eq!(s.log_det, c.log_det);
        assert!((c.log_volume - s.log_volume - log_factorial(10)).abs() < 1e-10);
        assert_eq!(s.standardized, c.standardized);
    }
}

#[test]
fn constant_radii_reduce_to_log_det_standardisation() {
    let r = run_experiment(&ExperimentConfig::new(30, 15, 25, 8)).unwrap();
    let c = &r.norming;
    for s in &r.samples {
        assert_eq!(s.sum_log_radii, 0.0);
        let direct = (s.log_det - c.mu) / c.sigma();
        assert!((s.standardized - direct).abs() < 1e-12);
    }
}

#[test]
fn csv_round_trip_is_exact() {
    let mut cfg = small(25);
    cfg.radial_spec = RadialLaw::LogCauchy {
        location: 0.3,
        scale: 2.0,
    };
    let report = run_experiment(&cfg).unwrap();
    let text = samples_csv_string(&report.samples);
    assert!(text.starts_with("replicate,seed,log_det,sum_log_radii,log_volume,standardized\n"));
    assert_eq!(read_samples_csv(text.as_bytes()).unwrap(), report.samples);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    write_samples_csv(&report.samples, std::fs::File::create(&path).unwrap()).unwrap();
    let back = read_samples_csv(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(back, report.samples);
    assert!(read_samples_csv("a,b\n1,2\n".as_bytes()).is_err());
}

#[test]
fn variance_error_propagates() {
    let cfg = ExperimentConfig::new(4, 2, 5, 1);
    assert!(matches!(
        run_experiment(&cfg),
        Err(Error::NonPositiveVariance(_))
    ));
}

#[test]
fn validate_passes_and_names_grid() {
    let report = validate().unwrap();
    let text = report.to_text();
    assert!(report.passed(), "{text}");
    for n in [8, 16, 32] {
        assert!(text.contains(&format!("n={n},")), "n={n} missing");
    }
}

#[test]
fn validate_catches_corrupted_fourth_moment() {
    let corrupted = |n: usize, m: &[u32]| -> ellipvol::Result<f64> {
        let v = beta_moment(n, m)?;
        Ok(if m == [2] { v * 1.01 } else { v })
    };
    let report = run_with_beta(&corrupted).unwrap();
    assert!(!report.passed());
    assert!(report.failures().iter().any(|c| c.group == "sphere"));
}

#[test]
fn sphere_checks_flag_wrong_pair_moment() {
    let corrupted = |n: usize, m: &[u32]| -> ellipvol::Result<f64> {
        let v = beta_moment(n, m)?;
        Ok(if m == [1, 1] { v * 1.05 } else { v })
    };
    let checks = sphere_moment_checks(&corrupted, 100_000).unwrap();
    assert!(checks.iter().any(|c| !c.passed));
}
