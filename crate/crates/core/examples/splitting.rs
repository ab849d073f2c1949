// Splitting type of `P^kO(d)` across a range of twists.

use jetquiver::jetbundles::{splitting_type, SplittingCase};

pub fn run_example() -> jetquiver::Result<()> {
    let (n, k) = (2, 3);
    for d in -1..=4 {
        let r = splitting_type(n, k, d)?;
        match r.case {
            SplittingCase::Trivializing => {
                println!("P^{k}O({d}) ≅ {}", r.summands[0]);
            }
            SplittingCase::Split => {
                let q = r.q_rank.expect("split case has Q");
                let graded: Vec<String> = r.q_graded.iter().map(|s| s.to_string()).collect();
                println!(
                    "P^{k}O({d}) ≅ {}  (rank {} = {q} + {}), gr Q = {}",
                    r.summands.join(" ⊕ "),
                    r.total_rank,
                    r.total_rank - q,
                    graded.join(" ⊕ ")
                );
            }
        }
    }
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
