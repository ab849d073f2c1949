#[allow(dead_code)]
mod splitting {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/splitting.rs"
    ));
}

#[test]
fn splitting_example_runs() {
    splitting::run_example().expect("splitting example should run");
}

#[allow(dead_code)]
mod truncation_ranks {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/truncation_ranks.rs"
    ));
}

#[test]
fn truncation_ranks_example_runs() {
    truncation_ranks::run_example().expect("truncation_ranks example should run");
}

#[allow(dead_code)]
mod bott_cohomology {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/bott_cohomology.rs"
    ));
}

#[test]
fn bott_cohomology_example_runs() {
    bott_cohomology::run_example().expect("bott_cohomology example should run");
}

#[allow(dead_code)]
mod quiver_stability {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/quiver_stability.rs"
    ));
}

#[test]
fn quiver_stability_example_runs() {
    quiver_stability::run_example().expect("quiver_stability example should run");
}

#[allow(dead_code)]
mod euler_lemma {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/euler_lemma.rs"
    ));
}

#[test]
fn euler_lemma_example_runs() {
    euler_lemma::run_example().expect("euler_lemma example should run");
}

#[allow(dead_code)]
mod fiber_exactness {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/fiber_exactness.rs"
    ));
}

#[test]
fn fiber_exactness_example_runs() {
    fiber_exactness::run_example().expect("fiber_exactness example should run");
}

#[allow(dead_code)]
mod schur_restriction {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/schur_restriction.rs"
    ));
}

#[test]
fn schur_restriction_example_runs() {
    schur_restriction::run_example().expect("schur_restriction example should run");
}

#[allow(dead_code)]
mod cli_report {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/cli_report.rs"
    ));
}

#[test]
fn cli_report_example_runs() {
    cli_report::run_example().expect("cli_report example should run");
}
