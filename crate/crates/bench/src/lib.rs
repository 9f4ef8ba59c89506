//! Fixed inputs shared by the benchmarks.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use heptalift::jordan::random_element;
use heptalift::JordanElement;

/// `n` random integral elements with entries bounded by `bound`, reproducible from `seed`.
pub fn elements(n: usize, bound: i64, seed: u64) -> Vec<JordanElement<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_element(&mut rng, bound)).collect()
}

/// Random elements with nonzero determinant.
pub fn nonsingular_elements(n: usize, bound: i64, seed: u64) -> Vec<JordanElement<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let t = random_element(&mut rng, bound);
        if t.det() != BigInt::from(0) {
            out.push(t);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    #[test]
    fn fixtures_are_reproducible() {
        assert_eq!(super::elements(4, 3, 7), super::elements(4, 3, 7));
        assert_eq!(super::nonsingular_elements(3, 2, 1).len(), 3);
    }
}
