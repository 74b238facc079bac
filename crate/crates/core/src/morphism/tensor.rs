use std::collections::BTreeSet;

use serde::Serialize;

use crate::laurent::{LaurentPoly, Var};
use crate::seed::{EnumerationLimits, Seed, SeedError};

/// A generator `a⊗…⊗1 - 1⊗…⊗b⊗…` of the ideal identifying two copies of a
/// frozen variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealGenerator {
    pub original: Var,
    pub left: (usize, Var),
    pub right: (usize, Var),
    pub display: String,
}

/// `A(Σ) ≅ A(Σ1) ⊗ … ⊗ A(Σt) / I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorReport {
    pub components: Vec<Seed>,
    /// Frozen variables adjacent to no exchangeable variable.
    pub isolated_frozen: Vec<Var>,
    pub generators: Vec<IdealGenerator>,
    /// Every enumeration finished within the limits.
    pub complete: bool,
    /// Whether the cluster variables of the seed are the disjoint union of
    /// those of the components, copies identified. Absent when incomplete.
    pub variables_match: Option<bool>,
    pub cluster_variables: usize,
}

fn tensor_factor(factors: usize, k: usize, var: &Var) -> String {
    (0..factors)
        .map(|i| if i == k { var.to_string() } else { "1".to_string() })
        .collect::<Vec<_>>()
        .join("⊗")
}

pub fn tensor_decomposition_report(
    seed: &Seed,
    limits: EnumerationLimits,
) -> Result<TensorReport, SeedError> {
    let seed = seed.as_initial();
    let decomposition = seed.decompose();
    let factors = decomposition.components.len();
    let mut generators = Vec::new();
    for (original, copies) in &decomposition.identification {
        let first = &copies[0];
        for other in &copies[1..] {
            generators.push(IdealGenerator {
                original: original.clone(),
                left: first.clone(),
                right: other.clone(),
                display: format!(
                    "{} - {}",
                    tensor_factor(factors, first.0, &first.1),
                    tensor_factor(factors, other.0, &other.1)
                ),
            });
        }
    }

    let whole = seed.enumerate_class(limits)?;
    let mut complete = whole.complete();
    let whole_vars = whole.cluster_variables();
    let originals = decomposition.originals();
    let mut union: BTreeSet<LaurentPoly> = BTreeSet::new();
    let mut total = 0;
    for component in &decomposition.components {
        let class = component.enumerate_class(limits)?;
        complete &= class.complete();
        let vars = class.cluster_variables();
        total += vars.exchangeable.len();
        union.extend(vars.exchangeable.iter().map(|p| p.rename(&originals)));
    }
    let whole_ex: BTreeSet<LaurentPoly> = whole_vars.exchangeable.iter().cloned().collect();
    let frozen: BTreeSet<LaurentPoly> = whole_vars.frozen.iter().cloned().collect();
    let expected_frozen: BTreeSet<LaurentPoly> =
        seed.fx().iter().map(|v| LaurentPoly::var(v.clone())).collect();
    let variables_match = complete.then(|| {
        union.len() == total && union == whole_ex && frozen == expected_frozen
    });
    Ok(TensorReport {
        components: decomposition.components.clone(),
        isolated_frozen: decomposition.isolated_frozen().to_vec(),
        generators,
        complete,
        variables_match,
        cluster_variables: whole_ex.len() + frozen.len(),
    })
}
