// `η(ξ^k f) = k(deg f − k + 1) ξ^{k−1} f` on random Laurent monomials.

use jetquiver::diffop::{random_laurent_monomial, verify_lemma, xi_power};
use jetquiver::partitions::MultiIndex;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> jetquiver::Result<()> {
    let f = jetquiver::diffop::LaurentCombo::monomial(
        BigRational::from_integer(1.into()),
        MultiIndex::new(vec![2, -1]),
    );
    println!("ξ^2(x0^2 x1^-1) = {}", xi_power(&f, 2));

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for k in 1..=4 {
        for _ in 0..25 {
            let f = random_laurent_monomial(&mut rng, 2, -3, 3);
            assert!(verify_lemma(k, &f)?.holds);
            checked += 1;
        }
    }
    println!("identity held on {checked} samples");
    Ok(())
}

fn main() -> jetquiver::Result<()> {
    run_example()
}
