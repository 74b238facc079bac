//! Complete pairs of rooted cluster subalgebras.
//!
//! For `ex0 ⊆ ex`, let `Σ_f` be the freezing at `ex0`. A complete pair with
//! coefficient set `fx ⊔ ex0` splits the components of `Σ_f` that have
//! exchangeable variables between two sides; each side is the subseed of
//! `Σ_f` glued from its components together with the isolated frozen
//! variables of `Σ_f`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::laurent::Var;
use crate::seed::{Seed, SeedError};

/// Largest `|ex|` for which all freezings are enumerated without being asked.
pub const SUBSET_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairsError {
    #[error("{n} exchangeable variables give 2^{n} freezings; at most {limit} without forcing")]
    SubsetBudgetExceeded { n: usize, limit: usize },
    #[error(transparent)]
    Seed(#[from] SeedError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletePair {
    pub freezing_set: Vec<Var>,
    /// Component indices of the freezing on each side.
    pub side1: Vec<usize>,
    pub side2: Vec<usize>,
    pub seed1: Seed,
    pub seed2: Seed,
    /// `fx ⊔ ex0`, the frozen variables of the freezing.
    pub coefficients: Vec<Var>,
    pub isolated_frozen: Vec<Var>,
}

fn side_seed(frozen: &Seed, components: &[Seed], chosen: &[usize], isolated: &[Var]) -> Seed {
    let ex: BTreeSet<Var> = chosen
        .iter()
        .flat_map(|&k| components[k].ex().iter().cloned())
        .collect();
    let fx: BTreeSet<Var> = chosen
        .iter()
        .flat_map(|&k| components[k].fx().iter().cloned())
        .chain(isolated.iter().cloned())
        .collect();
    frozen.subseed(&ex, &fx).expect("components are subseeds of the freezing")
}

/// All ordered complete pairs for the freezing at `ex0`: `2^c` of them for
/// `c` components. Bit `k` of the assignment puts component `k` on the
/// first side; assignments run from all-first to all-second.
pub fn enumerate_complete_pairs(
    seed: &Seed,
    ex0: &BTreeSet<Var>,
) -> Result<Vec<CompletePair>, PairsError> {
    let seed = seed.as_initial();
    let frozen = seed.freeze(ex0)?;
    let components = frozen.indecomposable_components();
    let isolated = frozen.isolated_frozen();
    let freezing_set: Vec<Var> = seed.ex().iter().filter(|v| ex0.contains(*v)).cloned().collect();
    let c = components.len();
    let pairs = (0..1usize << c)
        .rev()
        .map(|mask| {
            let (side1, side2): (Vec<usize>, Vec<usize>) = (0..c).partition(|k| mask >> k & 1 == 1);
            CompletePair {
                freezing_set: freezing_set.clone(),
                seed1: side_seed(&frozen, &components, &side1, &isolated),
                seed2: side_seed(&frozen, &components, &side2, &isolated),
                side1,
                side2,
                coefficients: frozen.fx().to_vec(),
                isolated_frozen: isolated.clone(),
            }
        })
        .collect();
    Ok(pairs)
}

impl CompletePair {
    /// Re-checks the three defining conditions against `seed`.
    pub fn verify(&self, seed: &Seed) -> Result<(), String> {
        let seed = seed.as_initial();
        let ex0: BTreeSet<Var> = self.freezing_set.iter().cloned().collect();
        let frozen = seed.freeze(&ex0).map_err(|e| e.to_string())?;
        let components = frozen.indecomposable_components();
        for side in [&self.seed1, &self.seed2] {
            let ex: BTreeSet<Var> = side.ex().iter().cloned().collect();
            let fx: BTreeSet<Var> = side.fx().iter().cloned().collect();
            let sub = frozen.subseed(&ex, &fx).map_err(|e| e.to_string())?;
            if !sub.same_as(side) {
                return Err("a side is not a subseed of the freezing".into());
            }
            for comp in side.indecomposable_components() {
                if !components.iter().any(|c| c.same_as(&comp)) {
                    return Err(format!(
                        "the component on {} is not a component of the freezing",
                        comp.ex().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                    ));
                }
            }
            if let Some(f) = side.isolated_frozen().into_iter().find(|f| !frozen.isolated_frozen().contains(f)) {
                return Err(format!("{f} is isolated in a side but not in the freezing"));
            }
        }
        let ex1: BTreeSet<&Var> = self.seed1.ex().iter().collect();
        let ex2: BTreeSet<&Var> = self.seed2.ex().iter().collect();
        if !ex1.is_disjoint(&ex2) {
            return Err("the sides share an exchangeable variable".into());
        }
        let mut all: Vec<&Var> = ex1.iter().chain(&ex2).copied().chain(&self.freezing_set).collect();
        all.sort();
        let mut expected: Vec<&Var> = seed.ex().iter().collect();
        expected.sort();
        if all != expected {
            return Err("the exchangeable variables are not partitioned".into());
        }
        for f in frozen.isolated_frozen() {
            if !self.seed1.is_frozen(&f) || !self.seed2.is_frozen(&f) {
                return Err(format!("isolated frozen variable {f} is missing from a side"));
            }
        }
        Ok(())
    }
}

/// Complete pairs for every freezing of a seed, read as the cotorsion pairs
/// with each possible core. The correspondence holds only under categorical
/// hypotheses that are not checked here; `assumes_functorially_finite`
/// records that.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CotorsionClassification {
    pub assumes_functorially_finite: bool,
    pub cores: Vec<CoreEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreEntry {
    pub freezing_set: Vec<Var>,
    pub pairs: Vec<CompletePair>,
}

impl CotorsionClassification {
    pub fn total_pairs(&self) -> usize {
        self.cores.iter().map(|c| c.pairs.len()).sum()
    }
}

/// Runs over all `2^|ex|` freezings, ordered by bitmask over `ex`. Refused
/// beyond [`SUBSET_LIMIT`] unless `force` is set.
pub fn classify_cotorsion_pairs(
    seed: &Seed,
    force: bool,
) -> Result<CotorsionClassification, PairsError> {
    let n = seed.n();
    if n > SUBSET_LIMIT && !force {
        return Err(PairsError::SubsetBudgetExceeded { n, limit: SUBSET_LIMIT });
    }
    let cores = (0..1usize << n)
        .into_par_iter()
        .map(|mask| {
            let ex0: BTreeSet<Var> = seed
                .ex()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v.clone())
                .collect();
            let pairs = enumerate_complete_pairs(seed, &ex0)?;
            Ok(CoreEntry {
                freezing_set: pairs[0].freezing_set.clone(),
                pairs,
            })
        })
        .collect::<Result<Vec<_>, PairsError>>()?;
    Ok(CotorsionClassification {
        assumes_functorially_finite: true,
        cores,
    })
}
