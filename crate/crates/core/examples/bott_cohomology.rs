// Cohomology of `S^iΩ(l)` and the sections of `Q_{k,h}(d−h)`.

use jetquiver::bott::{cohomology_sym_omega, h0_q_twist};

pub fn run_example() -> jetquiver::Result<()> {
    let n = 2;
    for i in 0..=3 {
        for l in [0, 2, 4] {
            let c = cohomology_sym_omega(n, i, l)?;
            println!(
                "S^{i}Ω({l}):  H^0 = {:<12} H^1 = {}",
                c.h0.to_string(),
                c.h1
            );
        }
    }
    let q = h0_q_twist(2, 3, 1, 6)?;
    println!("H^0 Q_(3,1)(5) on P^2 = {q}, dim {}", q.dimension());
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
