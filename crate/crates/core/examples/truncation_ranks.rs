// Ranks of the Taylor truncation maps `H^0 P^kO(d) → H^0 P^hO(d)`.

use jetquiver::jetbundles::truncation_rank;
use jetquiver::linalg::RankPolicy;

pub fn run_example() -> jetquiver::Result<()> {
    let policy = RankPolicy::default();
    println!(
        "{:>3} {:>3} {:>3} {:>3} {:>7} {:>7} {:>7} {:>7}",
        "n", "d", "k", "h", "domain", "target", "rank", "kernel"
    );
    for (n, d, k, h) in [
        (1, 4, 2, 1),
        (2, 6, 3, 1),
        (2, 4, 3, 1),
        (3, 7, 4, 2),
        (3, 8, 4, 3),
    ] {
        let r = truncation_rank(n, d, k, h, &policy)?;
        assert!(r.maximal);
        println!(
            "{n:>3} {d:>3} {k:>3} {h:>3} {:>7} {:>7} {:>7} {:>7}  {:?}",
            r.dim_domain, r.dim_codomain, r.rank, r.kernel_dim, r.certificate
        );
    }
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
