// Quiver of `P^kO(d)` and King stability of its summand `Q_{k,d}`.

use jetquiver::quiver::{q_slope_chain, quiver_pp, stability_q};

pub fn run_example() -> jetquiver::Result<()> {
    let (n, k, d) = (3, 4, 1);
    println!("P^{k}O({d}): {}", quiver_pp(n, k, d)?);
    let v = stability_q(n, k, d)?;
    for row in &v.table {
        println!("  suffix from S^{}Ω({d}): μ_F = {}", row.i, row.mu_f);
    }
    let slopes: Vec<String> = q_slope_chain(n, k, d)?
        .iter()
        .map(|(_, s)| s.to_string())
        .collect();
    println!("  slopes {}", slopes.join(" > "));
    println!("  stable: {}", v.stable);
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
