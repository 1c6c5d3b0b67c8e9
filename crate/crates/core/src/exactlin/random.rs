use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Rational, RationalMatrix};

/// Deterministic generator used for every sampling routine in the crate.
pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer entries drawn uniformly from `[-bound, bound]`.
pub fn random_matrix_with(rng: &mut SampleRng, rows: usize, cols: usize, bound: i64) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| {
        let v = if bound == 0 {
            0
        } else {
            rng.gen_range(-bound..=bound)
        };
        Rational::from_integer(v.into())
    })
}

pub fn random_matrix(rows: usize, cols: usize, seed: u64, entry_bound: i64) -> RationalMatrix {
    random_matrix_with(&mut rng_from_seed(seed), rows, cols, entry_bound)
}

/// Nonzero integer in `[-bound, bound]`.
pub fn nonzero_int(rng: &mut SampleRng, bound: i64) -> i64 {
    let v = rng.gen_range(1..=bound.max(1));
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_matrix(2, 2, 7, 3), random_matrix(2, 2, 7, 3));
        assert!(random_matrix(1, 1, 42, 0).is_zero());
    }

    #[test]
    fn wide_samples_are_full_rank_almost_always() {
        let full = (0..50)
            .filter(|&s| rank(&random_matrix(3, 5, s, 10)) == 3)
            .count();
        assert!(full >= 48, "{full}/50 full rank");
    }

    #[test]
    fn entries_respect_bound() {
        let m = random_matrix(4, 4, 3, 2);
        assert!(m
            .entries()
            .iter()
            .all(|x| x.is_integer() && x.numer() <= &2.into() && x.numer() >= &(-2).into()));
    }
}
