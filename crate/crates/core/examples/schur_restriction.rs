// Restricting `S_μ(C^{n+1})` to `GL(n)` along horizontal strips.

use jetquiver::partitions::{horizontal_strips, Partition};
use jetquiver::schur::{res_to_levi, schur_dim};

pub fn run_example() -> jetquiver::Result<()> {
    let n = 2;
    for parts in [vec![2], vec![2, 1], vec![3, 1], vec![2, 2, 1]] {
        let mu = Partition::new(parts)?;
        let strips = horizontal_strips(&mu, n);
        let restricted = res_to_levi(&mu, n)?;
        println!(
            "S_{mu}(C^{}) [{}] → {} [{}], {} strips",
            n + 1,
            schur_dim(&mu, n + 1)?,
            restricted,
            restricted.dimension(),
            strips.len()
        );
    }
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
