// Fiberwise surjectivity of `η^{k−d}: S^kV → S^dV` at random points.

use jetquiver::jetbundles::fiber_ranks;

pub fn run_example() -> jetquiver::Result<()> {
    for (n, k, d) in [(1, 3, 1), (2, 4, 2), (3, 5, 0)] {
        let r = fiber_ranks(n, k, d, 8, 42)?;
        println!(
            "n={n} k={k} d={d}: ranks {:?}, expected {}",
            r.ranks, r.expected_rank
        );
        assert!(r.surjective_everywhere);
    }
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
