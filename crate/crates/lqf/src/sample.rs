//! Seeded random expanded structures over catalog bases, for the
//! agreement suites. Fixed seed means identical samples.

use lqf_core::model::Catalog;
use lqf_core::term::ExpandedStructure;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` structures with uniformly random w/w* tables, cycling through
/// the catalog bases in order.
pub fn sample_structures(seed: u64, count: usize) -> Vec<(String, ExpandedStructure)> {
    let catalog = Catalog::standard();
    let bases: Vec<(String, lqf_core::FiniteOml)> =
        catalog.entries().map(|(n, l)| (n.to_string(), l.clone())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let (name, base) = &bases[i % bases.len()];
            let n = base.len();
            let w: Vec<usize> = (0..n * n).map(|_| rng.gen_range(0..n)).collect();
            let wstar: Vec<usize> = (0..n * n).map(|_| rng.gen_range(0..n)).collect();
            let s = ExpandedStructure::new(base.clone(), w, wstar).expect("valid tables");
            (format!("{name}#{i}"), s)
        })
        .collect()
}
