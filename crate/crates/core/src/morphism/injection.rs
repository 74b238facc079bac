use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::{MorphismError, MorphismSpec};
use crate::laurent::{LaurentPoly, Var};
use crate::seed::{Seed, SeedError};

/// Where one indecomposable component of the source lands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentMatch {
    /// Exchangeable variables of the source component.
    pub source: Vec<Var>,
    /// Index among the indecomposable components of the freezing.
    pub component: usize,
    /// The source component matches the opposite of that component.
    pub opposite: bool,
}

/// Structure of an injective morphism `Σ -> Σ'`, all names taken in the
/// target: `ex' = ex0 ⊔ ex1 ⊔ ex2` and `fx' = fx0 ⊔ fx1`, where `ex0` is the
/// image of the exchangeable variables and `ex2 ⊔ fx0` that of the frozen
/// ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionReport {
    pub ex0: Vec<Var>,
    pub ex1: Vec<Var>,
    pub ex2: Vec<Var>,
    pub fx0: Vec<Var>,
    pub fx1: Vec<Var>,
    /// The target frozen at `ex2`.
    pub freezing: Seed,
    pub components: Vec<ComponentMatch>,
    pub is_section: bool,
}

pub(super) fn analyze_injection(spec: &MorphismSpec) -> Result<InjectionReport, MorphismError> {
    let source = spec.source();
    let target = spec.target();
    let mut renaming = BTreeMap::new();
    let mut seen = BTreeSet::new();
    for v in source.vars() {
        let w = spec.image_var(v).ok_or_else(|| {
            MorphismError::NotInjective(format!(
                "{v} maps to {}, not a target variable",
                spec.images()[v].to_fraction_string()
            ))
        })?;
        if !seen.insert(w.clone()) {
            return Err(MorphismError::NotInjective(format!("two variables map to {w}")));
        }
        renaming.insert(v.clone(), w.clone());
    }
    let image_ex: BTreeSet<Var> = source.ex().iter().map(|v| renaming[v].clone()).collect();
    let image_fx: BTreeSet<Var> = source.fx().iter().map(|v| renaming[v].clone()).collect();
    if let Some(w) = image_ex.iter().find(|w| !target.is_exchangeable(w)) {
        return Err(MorphismError::NotComponentEmbedding(format!(
            "exchangeable variable maps to {w}, which is frozen in the target"
        )));
    }
    let pick = |vars: &[Var], set: &BTreeSet<Var>, inside: bool| -> Vec<Var> {
        vars.iter().filter(|v| set.contains(*v) == inside).cloned().collect()
    };
    let ex0 = pick(target.ex(), &image_ex, true);
    let ex2 = pick(target.ex(), &image_fx, true);
    let ex1: Vec<Var> = target
        .ex()
        .iter()
        .filter(|v| !image_ex.contains(*v) && !image_fx.contains(*v))
        .cloned()
        .collect();
    let fx0 = pick(target.fx(), &image_fx, true);
    let fx1 = pick(target.fx(), &image_fx, false);

    let freezing = target.as_initial().freeze(&ex2.iter().cloned().collect())?;
    let targets = freezing.indecomposable_components();
    let renamed = source.as_initial().rename(&renaming)?;
    let mut components = Vec::new();
    for comp in renamed.indecomposable_components() {
        let opposite = comp.opposite();
        let found = targets.iter().enumerate().find_map(|(k, t)| {
            if t.same_as(&comp) {
                Some((k, false))
            } else if t.same_as(&opposite) {
                Some((k, true))
            } else {
                None
            }
        });
        let Some((component, opposite)) = found else {
            return Err(MorphismError::NotComponentEmbedding(format!(
                "the component on {} is not a component of the freezing",
                comp.ex().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            )));
        };
        let inverse: BTreeMap<&Var, &Var> = renaming.iter().map(|(a, b)| (b, a)).collect();
        let mut source_ex: Vec<Var> = comp.ex().iter().map(|w| inverse[w].clone()).collect();
        source_ex.sort();
        components.push(ComponentMatch {
            source: source_ex,
            component,
            opposite,
        });
    }
    Ok(InjectionReport {
        is_section: ex2.is_empty(),
        ex0,
        ex1,
        ex2,
        fx0,
        fx1,
        freezing,
        components,
    })
}

/// The specialization of `seed` sending each variable in `values` to its
/// integer, onto the subseed on the remaining variables. Whether the result
/// is a morphism is left to [`MorphismSpec::check`]; sending frozen
/// variables to 1 always gives one.
pub fn specialize(
    seed: &Seed,
    values: &BTreeMap<Var, BigInt>,
) -> Result<MorphismSpec, MorphismError> {
    if let Some(v) = values.keys().find(|v| !seed.contains(v)) {
        return Err(SeedError::NotContained(v.clone()).into());
    }
    let seed = seed.as_initial();
    let keep = |vars: &[Var]| -> BTreeSet<Var> {
        vars.iter().filter(|v| !values.contains_key(*v)).cloned().collect()
    };
    let target = seed.subseed(&keep(seed.ex()), &keep(seed.fx()))?;
    let images = seed
        .vars()
        .map(|v| {
            let image = match values.get(v) {
                Some(c) => LaurentPoly::constant(c.clone()),
                None => LaurentPoly::var(v.clone()),
            };
            (v.clone(), image)
        })
        .collect();
    MorphismSpec::new(seed, target, images)
}
