// Driving the command line in-process and reading its JSON report.

use jetquiver::cli::run;

pub fn run_example() -> jetquiver::Result<()> {
    let out = run([
        "jetquiver",
        "cross-check",
        "--n",
        "2",
        "--d",
        "6",
        "--k",
        "3",
        "--h",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).expect("valid json");
    println!(
        "kernel {} vs bott {}",
        report["result"]["kernel_dim"], report["result"]["bott_dim"]
    );
    print!(
        "{}",
        run(["jetquiver", "stability", "--n", "3", "--k", "3", "--d", "1"]).stdout
    );
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
