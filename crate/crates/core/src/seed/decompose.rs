use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Seed, SeedError};
use crate::laurent::Var;

/// Indecomposable components of a seed.
///
/// A frozen variable adjacent to several components is copied into each. The
/// first component keeps the original name, later copies are renamed
/// `{name}_{k}` where `k` is the 1-based component index. `identification`
/// lists, for every copied variable, all of its copies as
/// `(component index, name)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedDecomposition {
    pub components: Vec<Seed>,
    pub identification: BTreeMap<Var, Vec<(usize, Var)>>,
    /// Frozen variables not adjacent to any exchangeable variable, as a
    /// trivial seed.
    pub residue: Seed,
}

impl SeedDecomposition {
    pub fn isolated_frozen(&self) -> &[Var] {
        self.residue.fx()
    }

    /// Maps every copy name (including the original) to the original name.
    pub fn originals(&self) -> BTreeMap<Var, Var> {
        self.identification
            .iter()
            .flat_map(|(orig, copies)| copies.iter().map(move |(_, c)| (c.clone(), orig.clone())))
            .collect()
    }

    /// Glues the components (and residue) back together along the
    /// identification.
    pub fn glue(&self) -> Result<Seed, SeedError> {
        glue_components(&self.components, &self.identification, &self.residue)
    }
}

pub(super) fn decompose(seed: &Seed) -> SeedDecomposition {
    let components = seed.indecomposable_components();
    let mut used: BTreeSet<Var> = seed.vars().cloned().collect();
    let mut occurrences: BTreeMap<Var, Vec<usize>> = BTreeMap::new();
    for (k, c) in components.iter().enumerate() {
        for f in c.fx() {
            occurrences.entry(f.clone()).or_default().push(k);
        }
    }
    let mut renames: Vec<BTreeMap<Var, Var>> = vec![BTreeMap::new(); components.len()];
    let mut identification = BTreeMap::new();
    for (f, ks) in &occurrences {
        if ks.len() < 2 {
            continue;
        }
        let mut copies = vec![(ks[0], f.clone())];
        for &k in &ks[1..] {
            let copy = fresh_name(&format!("{f}_{}", k + 1), &used);
            used.insert(copy.clone());
            renames[k].insert(f.clone(), copy.clone());
            copies.push((k, copy));
        }
        identification.insert(f.clone(), copies);
    }
    let components = components
        .into_iter()
        .zip(&renames)
        .map(|(c, map)| c.rename(map).expect("fresh names do not clash"))
        .collect();
    let residue = seed.restrict(Vec::new(), seed.isolated_frozen());
    SeedDecomposition {
        components,
        identification,
        residue,
    }
}

fn fresh_name(base: &str, used: &BTreeSet<Var>) -> Var {
    let mut name = base.to_string();
    loop {
        let v = Var::new(&name).expect("identifier");
        if !used.contains(&v) {
            return v;
        }
        name.push('_');
    }
}

/// Glues components in order, merging every copy into the first copy of the
/// same original variable, then appends `residue`.
pub fn glue_components(
    components: &[Seed],
    identification: &BTreeMap<Var, Vec<(usize, Var)>>,
    residue: &Seed,
) -> Result<Seed, SeedError> {
    let mut representative: BTreeMap<Var, Var> = BTreeMap::new();
    for copies in identification.values() {
        let Some((_, first)) = copies.first() else {
            return Err(SeedError::InvalidPairing("empty copy list".into()));
        };
        for (_, c) in copies {
            representative.insert(c.clone(), first.clone());
        }
    }
    let mut acc = Seed::new(Vec::new(), Vec::new(), Vec::new())?;
    for c in components {
        let pairing: Vec<(Var, Var)> = c
            .fx()
            .iter()
            .filter_map(|f| {
                let rep = representative.get(f)?;
                (rep != f && acc.is_frozen(rep)).then(|| (rep.clone(), f.clone()))
            })
            .collect();
        acc = acc.glue(c, &pairing)?;
    }
    acc.glue(residue, &[])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    /// The 7-vertex example: principal part on x1,x2,x5,x6,x7 and frozen x3,x4.
    pub(crate) fn seven_vertex() -> Seed {
        Seed::from_names(
            &["x1", "x2", "x5", "x6", "x7"],
            &["x3", "x4"],
            vec![
                vec![0, 1, 0, 0, 0],
                vec![-2, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, -1],
                vec![0, 0, 0, 1, 0],
                vec![3, -2, -1, 1, 0],
                vec![1, 0, 1, 0, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn seven_vertex_components() {
        let s = seven_vertex();
        s.validate().unwrap();
        let d = s.decompose();
        let ex: Vec<Vec<Var>> = d.components.iter().map(|c| c.ex().to_vec()).collect();
        assert_eq!(ex, vec![vec![v("x1"), v("x2")], vec![v("x5")], vec![v("x6"), v("x7")]]);
        let fx: Vec<Vec<Var>> = d.components.iter().map(|c| c.fx().to_vec()).collect();
        assert_eq!(
            fx,
            vec![
                vec![v("x3"), v("x4")],
                vec![v("x3_2"), v("x4_2")],
                vec![v("x3_3")]
            ]
        );
        assert_eq!(d.identification[&v("x3")].len(), 3);
        assert_eq!(d.identification[&v("x4")].len(), 2);
        assert!(d.isolated_frozen().is_empty());
        assert!(d.components.iter().all(Seed::is_indecomposable));
        assert!(d.glue().unwrap().same_as(&s));
    }

    #[test]
    fn indecomposable_is_singleton() {
        let s = Seed::from_names(
            &["x1", "x2"],
            &["x3"],
            vec![vec![0, 1], vec![-1, 0], vec![1, 0]],
        )
        .unwrap();
        let d = s.decompose();
        assert_eq!(d.components, vec![s.clone()]);
        assert!(d.identification.is_empty());
    }

    #[test]
    fn isolated_frozen_residue() {
        let s = Seed::from_names(&["x1"], &["x2"], vec![vec![0], vec![0]]).unwrap();
        let d = s.decompose();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].fx().len(), 0);
        assert_eq!(d.isolated_frozen(), &[v("x2")]);
        assert!(d.glue().unwrap().same_as(&s));
    }

    #[test]
    fn copy_names_avoid_existing_variables() {
        let s = Seed::from_names(
            &["a", "b"],
            &["f", "f_2"],
            vec![vec![0, 0], vec![0, 0], vec![1, 1], vec![0, 0]],
        )
        .unwrap();
        let d = s.decompose();
        assert_eq!(d.components[1].fx(), &[v("f_2_")]);
        assert!(d.glue().unwrap().same_as(&s));
    }
}
