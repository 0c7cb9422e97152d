use dgspan::experiment::{run, ExperimentConfig, ExperimentError, ShapeSource};
use dgspan::generators::Generator;

fn config(shape: &str, generator: Generator, n: usize, seeds: std::ops::Range<u64>) -> ExperimentConfig {
    ExperimentConfig {
        shape: ShapeSource::Preset(shape.into()),
        generator,
        n,
        seeds: seeds.collect(),
        ..ExperimentConfig::default()
    }
}

#[test]
fn square_twenty_sites() {
    let r = run(&config("square", Generator::Uniform, 20, 0..10)).unwrap();
    assert!(r.passed, "{:?}", r.aggregate.failed);
    assert_eq!(r.instances.len(), 10);
    assert!(r.aggregate.max_stretch <= 10f64.sqrt() * (1.0 + 1e-9));
    assert_eq!(r.aggregate.diamond_violations + r.aggregate.one_sided_violations + r.aggregate.visible_violations, 0);
}

#[test]
fn triangle_twenty_sites() {
    let r = run(&config("equilateral-triangle", Generator::Uniform, 20, 0..10)).unwrap();
    assert!(r.passed, "{:?}", r.aggregate.failed);
    assert!(r.aggregate.max_stretch <= 2.0 * (1.0 + 1e-9));
}

#[test]
fn cocircular_sites_under_the_64_gon() {
    let mut c = config("regular-64", Generator::Cocircular, 8, 0..2);
    c.oracle = Some(1024);
    let r = run(&c).unwrap();
    assert!(r.passed, "{}", r.to_json());
    assert_eq!(r.aggregate.oracle_mismatches, 0);
}

#[test]
fn reports_do_not_depend_on_the_thread_count() {
    let mut c = config("random-convex-7", Generator::Clustered, 12, 0..4);
    c.oracle = Some(256);
    let texts: Vec<String> = [1, 2]
        .into_iter()
        .map(|t| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
            pool.install(|| run(&c).unwrap().to_json())
        })
        .collect();
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn outputs_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let mut c = config("regular-5", Generator::Grid, 9, 0..2);
    c.out_json = Some(dir.path().join("run.json"));
    c.out_svg = Some(dir.path().join("run.svg"));
    let r = run(&c).unwrap();
    assert_eq!(std::fs::read_to_string(dir.path().join("run.json")).unwrap(), r.to_json());
    assert!(std::fs::read_to_string(dir.path().join("run.svg")).unwrap().starts_with("<svg"));
}

#[test]
fn bad_configs_are_rejected() {
    assert!(matches!(run(&config("heptagon", Generator::Uniform, 5, 0..1)), Err(ExperimentError::Shape(_))));
    assert!(run(&config("square", Generator::Uniform, 5, 0..0)).is_err());
    let mut c = config("square", Generator::File, 5, 0..1);
    c.points_file = None;
    assert!(run(&c).is_err());
}
