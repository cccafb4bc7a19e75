//! Exhaustive search for coherence data `(a, l, c)` on a fixed `(Lambda, K)`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bimodule::NFoldBimodule;
use crate::error::{Error, Result};
use crate::hom;
use crate::linalg::Matrix;
use crate::smc::{self, SmcFrame, SmcStructure};

pub const DEFAULT_SOLVE_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub unit_candidates: usize,
    pub comm_candidates: usize,
    pub assoc_candidates: usize,
    pub pentagon_survivors: usize,
    pub solutions: usize,
}

/// All coherent structures on `(Lambda, K)`, ordered by the coefficient
/// order of `c`, then `a`, then `l` in their hom-space bases.
pub fn solve_coherence(lambda: &Arc<NFoldBimodule>, unit: &Arc<NFoldBimodule>, cap: u128) -> Result<Vec<SmcStructure>> {
    Ok(solve_with_stats(SmcFrame::new(lambda.clone(), unit.clone())?, cap)?.0)
}

pub fn solve_with_stats(frame: Arc<SmcFrame>, cap: u128) -> Result<(Vec<SmcStructure>, SolveStats)> {
    let mut stats = SolveStats::default();
    if frame.unit.dim() == 0 {
        return Err(Error::Precondition("the unit must be nonzero".into()));
    }
    let k = frame.field();
    if frame.lk.dim() != frame.algebra.dim() {
        return Ok((vec![], stats));
    }
    let ells = hom::all_invertible_combinations(&frame.unit_hom()?, k, cap, "unit isomorphism search")?;
    stats.unit_candidates = ells.len();
    if ells.is_empty() {
        return Ok((vec![], stats));
    }
    let id = Matrix::identity(frame.lambda.dim());
    let comms: Vec<Matrix> = hom::all_invertible_combinations(&frame.comm_hom()?, k, cap, "symmetry search")?
        .into_iter()
        .filter(|c| c.mul(c, k) == id)
        .collect();
    stats.comm_candidates = comms.len();
    if comms.is_empty() {
        return Ok((vec![], stats));
    }
    let assoc_basis = frame.assoc_hom()?;
    let assocs = hom::all_invertible_combinations(&assoc_basis, k, cap, "associator search")?;
    stats.assoc_candidates = assocs.len();
    let pentagon_ok: Vec<Matrix> = assocs
        .into_par_iter()
        .map(|a| smc::pentagon(&frame, &frame.assoc_leg(&a)).map(|d| d.passed.then_some(a)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    stats.pentagon_survivors = pentagon_ok.len();

    let pairs: Vec<(usize, usize)> = (0..comms.len())
        .flat_map(|ci| (0..pentagon_ok.len()).map(move |ai| (ci, ai)))
        .collect();
    let found: Vec<Vec<SmcStructure>> = pairs
        .into_par_iter()
        .map(|(ci, ai)| -> Result<Vec<SmcStructure>> {
            let (c, a) = (&comms[ci], &pentagon_ok[ai]);
            let (al, cl) = (frame.assoc_leg(a), frame.comm_leg(c));
            if !smc::hexagon(&frame, &al, &cl)?.passed {
                return Ok(vec![]);
            }
            let mut out = Vec::new();
            for l in &ells {
                if smc::unit_compatibility(&frame, &al, &frame.unit_leg(l), &cl)?.passed {
                    out.push(SmcStructure::new(frame.clone(), a.clone(), l.clone(), c.clone())?);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let solutions: Vec<SmcStructure> = found.into_iter().flatten().collect();
    stats.solutions = solutions.len();
    Ok((solutions, stats))
}

/// All `(l, c)` completing a fixed associator to a coherent structure.
pub fn complete_assoc(frame: &Arc<SmcFrame>, assoc: &Matrix, cap: u128) -> Result<Vec<SmcStructure>> {
    let k = frame.field();
    let al = frame.assoc_leg(assoc);
    if !smc::pentagon(frame, &al)?.passed {
        return Ok(vec![]);
    }
    let ells = hom::all_invertible_combinations(&frame.unit_hom()?, k, cap, "unit isomorphism search")?;
    let id = Matrix::identity(frame.lambda.dim());
    let comms: Vec<Matrix> = hom::all_invertible_combinations(&frame.comm_hom()?, k, cap, "symmetry search")?
        .into_iter()
        .filter(|c| c.mul(c, k) == id)
        .collect();
    let mut out = Vec::new();
    for c in comms {
        let cl = frame.comm_leg(&c);
        if !smc::hexagon(frame, &al, &cl)?.passed {
            continue;
        }
        for l in &ells {
            if smc::unit_compatibility(frame, &al, &frame.unit_leg(l), &cl)?.passed {
                out.push(SmcStructure::new(frame.clone(), assoc.clone(), l.clone(), c.clone())?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{base_field_algebra, quotient_algebra};
    use crate::field::FiniteField;

    #[test]
    fn fields_have_scalar_solutions_only() {
        for p in [2, 3, 5] {
            let k = Arc::new(FiniteField::new(p, 1).unwrap());
            let r = Arc::new(base_field_algebra(k).unwrap());
            let lambda = Arc::new(NFoldBimodule::regular(r.clone(), 2));
            let unit = Arc::new(NFoldBimodule::regular(r, 0));
            let sols = solve_coherence(&lambda, &unit, DEFAULT_SOLVE_CAP).unwrap();
            // a = c = 1 and l any nonzero scalar
            assert_eq!(sols.len(), p - 1);
            assert!(sols.iter().all(|s| s.assoc()[(0, 0)] == 1 && s.comm()[(0, 0)] == 1));
        }
    }

    #[test]
    fn wrong_unit_dimension_gives_nothing() {
        let k = Arc::new(FiniteField::new(2, 1).unwrap());
        let r = Arc::new(quotient_algebra(k, &[0, 0, 1]).unwrap());
        let lambda = Arc::new(NFoldBimodule::regular(r.clone(), 2));
        let unit = Arc::new(NFoldBimodule::character(r.clone(), &[1, 0]).unwrap());
        assert!(solve_coherence(&lambda, &unit, DEFAULT_SOLVE_CAP).unwrap().is_empty());
        let zero = Arc::new(NFoldBimodule::zero(r, 0));
        assert!(solve_coherence(&lambda, &zero, DEFAULT_SOLVE_CAP).is_err());
    }
}
