use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{MorphismError, MorphismSpec};
use crate::laurent::{fraction, LaurentPoly, Var};
use crate::seed::{CanonicalSeed, Seed};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageWitness {
    pub var: Var,
    #[serde(with = "fraction")]
    pub image: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AxiomCheck {
    Pass,
    Fail { witness: ImageWitness },
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomCheck::Pass)
    }
}

/// A biadmissible sequence after which slot `var` disagrees: `source_value`
/// is the source cluster variable, `mapped` its image under the morphism
/// (absent when it cannot be evaluated) and `target_value` the value reached
/// in the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cm3Witness {
    pub sequence: Vec<Var>,
    pub var: Var,
    #[serde(with = "fraction")]
    pub source_value: LaurentPoly,
    #[serde(serialize_with = "fraction::opt::serialize")]
    pub mapped: Option<LaurentPoly>,
    #[serde(with = "fraction")]
    pub target_value: LaurentPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Cm3Check {
    /// Every biadmissible sequence, of any length, satisfies the axiom: the
    /// joint states closed up within the depth.
    Pass,
    Fail { witness: Box<Cm3Witness> },
    /// No failure up to `depth`, but longer sequences reach unexplored states.
    Exhausted { depth: usize },
    /// Skipped because CM1 or CM2 failed.
    NotChecked,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismVerdict {
    pub cm1: AxiomCheck,
    pub cm2: AxiomCheck,
    pub cm3: Cm3Check,
    pub inducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explicit: Option<bool>,
    pub checked_depth: usize,
    /// Distinct joint (source, target) states visited.
    pub states: usize,
}

impl MorphismVerdict {
    /// No axiom failed. An exhausted CM3 counts as passing up to the depth.
    pub fn is_morphism(&self) -> bool {
        self.cm1.passed()
            && self.cm2.passed()
            && matches!(self.cm3, Cm3Check::Pass | Cm3Check::Exhausted { .. })
    }
}

fn check_images<'a>(
    spec: &MorphismSpec,
    vars: impl Iterator<Item = &'a Var>,
    allowed: impl Fn(&Var) -> bool,
) -> AxiomCheck {
    for v in vars {
        let image = spec.image(v).expect("complete image map");
        let ok = image.as_integer().is_some() || image.as_var().is_some_and(&allowed);
        if !ok {
            return AxiomCheck::Fail {
                witness: ImageWitness {
                    var: v.clone(),
                    image: image.clone(),
                },
            };
        }
    }
    AxiomCheck::Pass
}

/// Compares every slot of the joint state; returns the first mismatch.
fn check_state(
    spec: &MorphismSpec,
    seq: &[Var],
    src: &Seed,
    tgt: &Seed,
) -> Result<Option<Cm3Witness>, MorphismError> {
    for (y, value) in src.slots() {
        let image = spec.image(y).expect("complete image map");
        let target_value = match image.as_var() {
            Some(w) => tgt.value(w).expect("target variable").clone(),
            None => image.clone(),
        };
        let witness = |mapped: Option<LaurentPoly>, detail: Option<String>| Cm3Witness {
            sequence: seq.to_vec(),
            var: y.clone(),
            source_value: value.clone(),
            mapped,
            target_value: target_value.clone(),
            detail,
        };
        match spec.apply(value) {
            Ok(mapped) if mapped == target_value => {}
            Ok(mapped) => return Ok(Some(witness(Some(mapped), None))),
            Err(MorphismError::Laurent(e)) => {
                return Ok(Some(witness(None, Some(format!("image is not a Laurent polynomial: {e}")))))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

type State = (Vec<Var>, Seed, Seed);

/// Joint state up to relabelling of slots: both seeds up to slot names, and
/// the pairing of every source value with the value it must map to.
type StateKey = (CanonicalSeed, CanonicalSeed, Vec<(LaurentPoly, LaurentPoly)>);

fn state_key(spec: &MorphismSpec, src: &Seed, tgt: &Seed) -> StateKey {
    let mut pairs: Vec<(LaurentPoly, LaurentPoly)> = src
        .slots()
        .map(|(y, value)| {
            let image = spec.image(y).expect("complete image map");
            let target_value = match image.as_var() {
                Some(w) => tgt.value(w).expect("target variable").clone(),
                None => image.clone(),
            };
            (value.clone(), target_value)
        })
        .collect();
    pairs.sort();
    (src.canonical(), tgt.canonical(), pairs)
}

pub(super) fn check_morphism(
    spec: &MorphismSpec,
    depth: usize,
) -> Result<MorphismVerdict, MorphismError> {
    let source = spec.source();
    let target = spec.target();
    let cm1 = check_images(spec, source.ex().iter(), |w| target.is_exchangeable(w));
    let cm2 = check_images(spec, source.fx().iter(), |w| target.contains(w));
    let mut verdict = MorphismVerdict {
        cm1,
        cm2,
        cm3: Cm3Check::NotChecked,
        inducible: spec.is_inducible(),
        explicit: spec.explicit(),
        checked_depth: depth,
        states: 0,
    };
    if !(verdict.cm1.passed() && verdict.cm2.passed()) {
        return Ok(verdict);
    }

    let mut alphabet: Vec<(Var, Var)> = source
        .ex()
        .iter()
        .filter_map(|x| {
            let w = spec.image_var(x)?;
            target.is_exchangeable(w).then(|| (x.clone(), w.clone()))
        })
        .collect();
    alphabet.sort();

    let mut seen: HashSet<StateKey> = HashSet::new();
    seen.insert(state_key(spec, source, target));
    verdict.states = 1;
    if let Some(w) = check_state(spec, &[], source, target)? {
        verdict.cm3 = Cm3Check::Fail { witness: Box::new(w) };
        return Ok(verdict);
    }
    let mut frontier: Vec<State> = vec![(Vec::new(), source.clone(), target.clone())];
    let mut level = 0;
    loop {
        let children: Vec<State> = frontier
            .par_iter()
            .map(|(seq, s, t)| {
                alphabet
                    .iter()
                    .map(|(x, w)| {
                        let mut next = seq.clone();
                        next.push(x.clone());
                        Ok((next, s.mutate(x)?, t.mutate(w)?))
                    })
                    .collect::<Result<Vec<State>, MorphismError>>()
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        let fresh: Vec<State> = children
            .into_iter()
            .filter(|(_, s, t)| seen.insert(state_key(spec, s, t)))
            .collect();
        if fresh.is_empty() {
            verdict.cm3 = Cm3Check::Pass;
            return Ok(verdict);
        }
        if level == depth {
            verdict.cm3 = Cm3Check::Exhausted { depth };
            return Ok(verdict);
        }
        level += 1;
        verdict.states += fresh.len();
        let results: Vec<Option<Cm3Witness>> = fresh
            .par_iter()
            .map(|(seq, s, t)| check_state(spec, seq, s, t))
            .collect::<Result<_, _>>()?;
        if let Some(w) = results.into_iter().flatten().next() {
            verdict.cm3 = Cm3Check::Fail { witness: Box::new(w) };
            return Ok(verdict);
        }
        frontier = fresh;
    }
}
