use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dg::DGRingRealization;
use crate::error::{AlgebraError, Result};
use crate::field::FieldElem;
use crate::groebner::Ideal;
use crate::linalg::row_reduce;
use crate::poly::Poly;

/// Randomized search parameters.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchConfig {
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { trials: 32, seed: 0 }
    }
}

/// `ā` is `A`-regular: multiplication by it is injective on `H^inf(A)` at the origin.
pub fn is_regular_element(real: &DGRingRealization, a: &Poly) -> Result<bool> {
    if a.is_local_unit() {
        return Err(AlgebraError::NotInMaximalIdeal(a.display_with(&real.spec().vars).to_string()));
    }
    let bottom = real.bottom_cohomology()?;
    Ok(bottom.kernel_of_scalar(a)?.is_locally_zero_at_origin())
}

/// Checks the elements one at a time, passing to the Koszul extension after each.
pub fn is_regular_sequence(real: &DGRingRealization, seq: &[Poly]) -> Result<bool> {
    Ok(first_irregular(real, seq)?.is_none())
}

/// Index of the first element that fails to be regular on the preceding Koszul extension.
pub fn first_irregular(real: &DGRingRealization, seq: &[Poly]) -> Result<Option<usize>> {
    let Some((a, rest)) = seq.split_first() else {
        return Ok(None);
    };
    if !is_regular_element(real, a)? {
        return Ok(Some(0));
    }
    let next = real.extend_koszul(std::slice::from_ref(a))?;
    Ok(first_irregular(&next, rest)?.map(|i| i + 1))
}

/// Krull dimension of `H^0(A)` at the origin.
pub fn local_dim(real: &DGRingRealization) -> Result<usize> {
    local_dim_of(real.h0_ideal())
}

pub(crate) fn local_dim_of(ideal: &Ideal) -> Result<usize> {
    ideal
        .dim_local_at_origin()?
        .ok_or_else(|| AlgebraError::InvalidTower("H^0 is zero at the point".into()))
}

/// Rows of linear coefficients of the generators of `ideal`, reduced.
fn linear_rows(ideal: &[Poly], n: usize) -> (Vec<Vec<FieldElem>>, Vec<usize>) {
    let mut rows: Vec<Vec<FieldElem>> = ideal.iter().map(|g| g.linear_coefficients()).filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let pivots = row_reduce(&mut rows, n);
    (rows, pivots)
}

/// `dim m/(m^2 + J)` for generators of `J` inside the maximal ideal.
pub fn embdim_of(ideal: &[Poly], n: usize) -> usize {
    n - linear_rows(ideal, n).1.len()
}

pub fn embdim(real: &DGRingRealization) -> usize {
    embdim_of(real.h0_ideal().gens(), real.nvars())
}

/// Variables whose images form a minimal generating sequence of `m̄`:
/// those that are not pivots of the reduced linear parts of `J_A`.
pub fn minimal_generators_of(ideal: &[Poly], n: usize, field: crate::field::Field) -> Vec<Poly> {
    let pivots = linear_rows(ideal, n).1;
    (0..n).filter(|i| !pivots.contains(i)).map(|i| Poly::var(field, n, i)).collect()
}

pub fn minimal_generators(real: &DGRingRealization) -> Vec<Poly> {
    minimal_generators_of(real.h0_ideal().gens(), real.nvars(), real.field())
}

/// The elements generate `m̄` minimally: their linear parts complete those of
/// `J_A` to a basis of `m/m^2`, and there are exactly `embdim` of them.
pub fn is_minimal_generating_sequence(real: &DGRingRealization, seq: &[Poly]) -> bool {
    let n = real.nvars();
    if seq.len() != embdim(real) || seq.iter().any(|a| a.is_local_unit()) {
        return false;
    }
    let mut all: Vec<Poly> = real.h0_ideal().gens().to_vec();
    all.extend(seq.iter().cloned());
    linear_rows(&all, n).1.len() == n
}

#[derive(Clone, Debug)]
pub struct SeqDepth {
    pub value: usize,
    pub witness: Vec<Poly>,
    /// The search ended on a proof that no further regular element exists.
    pub certified: bool,
}

/// Greedy search for a maximal `A`-regular sequence in `m̄`. Each stage first
/// tries the minimal generators, then random combinations of them. A stage
/// whose bottom cohomology has nonzero socle admits no regular element, which
/// certifies the count.
pub fn seq_depth(real: &DGRingRealization, config: SearchConfig) -> Result<SeqDepth> {
    let dim = local_dim(real)?;
    let gens = minimal_generators(real);
    let field = real.field();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut witness = Vec::new();
    let mut stage: Option<DGRingRealization> = None;
    loop {
        let cur = stage.as_ref().unwrap_or(real);
        if witness.len() == dim {
            return Ok(SeqDepth {
                value: dim,
                witness,
                certified: true,
            });
        }
        if !cur.bottom_cohomology()?.socle()?.is_locally_zero_at_origin() {
            return Ok(SeqDepth {
                value: witness.len(),
                witness,
                certified: true,
            });
        }
        let mut found = None;
        for g in &gens {
            if is_regular_element(cur, g)? {
                found = Some(g.clone());
                break;
            }
        }
        if found.is_none() {
            for _ in 0..config.trials {
                let mut cand = Poly::zero(field, real.nvars());
                for g in &gens {
                    cand = &cand + &g.scale(&field.random_nonzero(&mut rng, 16));
                }
                if !cand.is_zero() && is_regular_element(cur, &cand)? {
                    found = Some(cand);
                    break;
                }
            }
        }
        match found {
            Some(a) => {
                let next = cur.extend_koszul(std::slice::from_ref(&a))?;
                witness.push(a);
                stage = Some(next);
            }
            None => {
                return Ok(SeqDepth {
                    value: witness.len(),
                    witness,
                    certified: false,
                })
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct CmVerdict {
    pub value: bool,
    pub certified: bool,
    pub seq_depth: SeqDepth,
    pub local_dim: usize,
}

/// `seq.depth = dim H^0(A)` at the origin.
pub fn is_local_cm(real: &DGRingRealization, config: SearchConfig) -> Result<CmVerdict> {
    let d = seq_depth(real, config)?;
    let dim = local_dim(real)?;
    if d.value > dim {
        return Err(AlgebraError::Internal(format!("seq.depth {} exceeds dimension {}", d.value, dim)));
    }
    Ok(CmVerdict {
        value: d.value == dim,
        certified: d.certified,
        seq_depth: d,
        local_dim: dim,
    })
}

/// `H^0(A)` is a regular local ring: embedding dimension equals dimension.
pub fn h0_is_regular_local(real: &DGRingRealization) -> Result<bool> {
    Ok(embdim(real) == local_dim(real)?)
}

#[derive(Clone, Debug)]
pub struct SequenceRegularity {
    pub value: bool,
    /// The minimal generating sequence that was tested.
    pub witness: Vec<Poly>,
    pub failed_at: Option<usize>,
}

/// Deterministic: tests one minimal generating sequence of `m̄`, which is
/// regular iff any generating sequence of `m̄` is.
pub fn is_sequence_regular(real: &DGRingRealization) -> Result<SequenceRegularity> {
    let witness = minimal_generators(real);
    let failed_at = first_irregular(real, &witness)?;
    Ok(SequenceRegularity {
        value: failed_at.is_none(),
        witness,
        failed_at,
    })
}
