//! Krull dimension of monomial ideals through maximal independent sets.

use crate::monomial::Monomial;

/// Dimension of `k[x_1..x_n] / (leads)`: the largest set of variables containing
/// the support of no generator. `None` when the ideal is the whole ring.
pub fn monomial_dimension(leads: &[Monomial], nvars: usize) -> Option<usize> {
    if leads.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u32> = leads
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for set in 0u32..(1u32 << nvars) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_sets() {
        let xy = Monomial::from_exps(&[1, 1]);
        assert_eq!(monomial_dimension(&[xy], 2), Some(1));
        assert_eq!(monomial_dimension(&[], 3), Some(3));
        assert_eq!(monomial_dimension(&[Monomial::var(0), Monomial::var(1)], 2), Some(0));
        assert_eq!(monomial_dimension(&[Monomial::one()], 2), None);
        // (x^2, xz) in k[x,y,z]: {y, z} is independent
        let a = Monomial::from_exps(&[2, 0, 0]);
        let b = Monomial::from_exps(&[1, 0, 1]);
        assert_eq!(monomial_dimension(&[a, b], 3), Some(2));
    }
}
