//! Ice valued quivers and their correspondence with extended matrices.
//!
//! Principal arrows carry a valuation: `b_ij > 0` between exchangeable
//! vertices gives one arrow `i -> j` valued `(b_ij, -b_ji)`. Arrows touching a
//! frozen vertex carry a multiplicity: a frozen row entry `b_fj = n` means `n`
//! arrows `f -> j`, and `-n` means `n` arrows `j -> f`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::Serialize;

use crate::laurent::Var;
use crate::seed::{ExtMatrix, Seed, SeedDecomposition, SeedError, Symmetrizer};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ValuedArrow {
    pub source: Var,
    pub target: Var,
    pub valuation: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FrozenArrow {
    pub source: Var,
    pub target: Var,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IceQuiver {
    exchangeable: Vec<Var>,
    frozen: Vec<Var>,
    #[serde(rename = "valued_arrows")]
    valued: Vec<ValuedArrow>,
    frozen_arrows: Vec<FrozenArrow>,
    symmetrizer: Symmetrizer,
}

impl IceQuiver {
    /// Builds a quiver from its parts, checking the ice valued quiver axioms.
    pub fn new(
        exchangeable: Vec<Var>,
        frozen: Vec<Var>,
        valued: Vec<ValuedArrow>,
        frozen_arrows: Vec<FrozenArrow>,
        symmetrizer: Symmetrizer,
    ) -> Result<Self, SeedError> {
        let q = IceQuiver {
            exchangeable,
            frozen,
            valued,
            frozen_arrows,
            symmetrizer,
        };
        q.check()?;
        Ok(q)
    }

    fn check(&self) -> Result<(), SeedError> {
        let bad = |msg: String| Err(SeedError::Malformed(msg));
        let ex: BTreeSet<&Var> = self.exchangeable.iter().collect();
        let fx: BTreeSet<&Var> = self.frozen.iter().collect();
        if ex.len() != self.exchangeable.len()
            || fx.len() != self.frozen.len()
            || !ex.is_disjoint(&fx)
        {
            return bad("repeated vertex".into());
        }
        for v in &self.exchangeable {
            match self.symmetrizer.get(v) {
                Some(d) if d > 0 => {}
                _ => return bad(format!("no positive symmetrizer value at {v}")),
            }
        }
        let mut pairs = BTreeSet::new();
        for a in &self.valued {
            if !ex.contains(&a.source) || !ex.contains(&a.target) {
                return bad(format!("valued arrow {} -> {} leaves the principal part", a.source, a.target));
            }
            if a.source == a.target {
                return bad(format!("loop at {}", a.source));
            }
            let (v1, v2) = a.valuation;
            if v1 <= 0 || v2 <= 0 {
                return bad(format!("non-positive valuation on {} -> {}", a.source, a.target));
            }
            let (di, dj) = (
                self.symmetrizer.get(&a.source).expect("checked"),
                self.symmetrizer.get(&a.target).expect("checked"),
            );
            if di * v1 != v2 * dj {
                return Err(SeedError::NotSkewSymmetrizable(format!(
                    "valuation ({v1},{v2}) on {} -> {} does not match the symmetrizer",
                    a.source, a.target
                )));
            }
            let key = if a.source < a.target {
                (&a.source, &a.target)
            } else {
                (&a.target, &a.source)
            };
            if !pairs.insert(key) {
                return bad(format!("2-cycle or repeated arrow between {} and {}", key.0, key.1));
            }
        }
        let mut frozen_pairs = BTreeSet::new();
        for a in &self.frozen_arrows {
            let (f, e) = if fx.contains(&a.source) {
                (&a.source, &a.target)
            } else {
                (&a.target, &a.source)
            };
            if !fx.contains(f) {
                return bad(format!("arrow {} -> {} has no frozen end", a.source, a.target));
            }
            if !ex.contains(e) {
                return bad(format!("arrow between frozen vertices {} and {}", a.source, a.target));
            }
            if a.multiplicity == 0 || !frozen_pairs.insert((f, e)) {
                return bad(format!("arrows between {f} and {e} are not a single positive bundle"));
            }
        }
        Ok(())
    }

    /// The quiver of a matrix with a given symmetrizer of its principal part.
    pub fn from_matrix(matrix: &ExtMatrix, symmetrizer: &Symmetrizer) -> IceQuiver {
        let n = matrix.n();
        let b = matrix.entries();
        let ex = matrix.ex();
        let mut valued = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if b[i][j] > 0 {
                    valued.push(ValuedArrow {
                        source: ex[i].clone(),
                        target: ex[j].clone(),
                        valuation: (b[i][j], -b[j][i]),
                    });
                }
            }
        }
        let mut frozen_arrows = Vec::new();
        for (r, f) in matrix.fx().iter().enumerate() {
            for (j, e) in ex.iter().enumerate() {
                let x = b[n + r][j];
                if x > 0 {
                    frozen_arrows.push(FrozenArrow {
                        source: f.clone(),
                        target: e.clone(),
                        multiplicity: x as u64,
                    });
                } else if x < 0 {
                    frozen_arrows.push(FrozenArrow {
                        source: e.clone(),
                        target: f.clone(),
                        multiplicity: x.unsigned_abs(),
                    });
                }
            }
        }
        IceQuiver {
            exchangeable: ex.to_vec(),
            frozen: matrix.fx().to_vec(),
            valued,
            frozen_arrows,
            symmetrizer: symmetrizer.clone(),
        }
    }

    /// Validates the matrix and builds its quiver with the least symmetrizer.
    pub fn from_validated(matrix: &ExtMatrix) -> Result<IceQuiver, SeedError> {
        let d = matrix.symmetrizer()?;
        Ok(IceQuiver::from_matrix(matrix, &d))
    }

    pub fn of_seed(seed: &Seed) -> Result<IceQuiver, SeedError> {
        IceQuiver::from_validated(seed.matrix())
    }

    pub fn to_matrix(&self) -> ExtMatrix {
        let n = self.exchangeable.len();
        let row: BTreeMap<&Var, usize> = self
            .exchangeable
            .iter()
            .chain(&self.frozen)
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut entries = vec![vec![0i64; n]; n + self.frozen.len()];
        for a in &self.valued {
            let (i, j) = (row[&a.source], row[&a.target]);
            entries[i][j] = a.valuation.0;
            entries[j][i] = -a.valuation.1;
        }
        for a in &self.frozen_arrows {
            let (s, t) = (row[&a.source], row[&a.target]);
            let m = a.multiplicity as i64;
            if s >= n {
                entries[s][t] = m;
            } else {
                entries[t][s] = -m;
            }
        }
        ExtMatrix::new(self.exchangeable.clone(), self.frozen.clone(), entries)
            .expect("consistent quiver")
    }

    pub fn exchangeable(&self) -> &[Var] {
        &self.exchangeable
    }

    pub fn frozen(&self) -> &[Var] {
        &self.frozen
    }

    pub fn valued_arrows(&self) -> &[ValuedArrow] {
        &self.valued
    }

    pub fn frozen_arrows(&self) -> &[FrozenArrow] {
        &self.frozen_arrows
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.symmetrizer
    }

    /// Every principal arrow has `v1 = v2`.
    pub fn is_equally_valued(&self) -> bool {
        self.valued.iter().all(|a| a.valuation.0 == a.valuation.1)
    }

    /// Connected, with connected principal part.
    pub fn is_indecomposable(&self) -> bool {
        Seed::initial(self.to_matrix()).is_indecomposable()
    }

    pub fn decompose(&self) -> QuiverDecomposition {
        let seed = Seed::initial(self.to_matrix());
        QuiverDecomposition::from_seed(&seed.decompose(), &self.symmetrizer)
    }

    /// Gluing along `pairing` (frozen of `self`, frozen of `other`). Merged
    /// vertices keep the name from `self`.
    pub fn glue(&self, other: &IceQuiver, pairing: &[(Var, Var)]) -> Result<IceQuiver, SeedError> {
        let a = Seed::initial(self.to_matrix());
        let b = Seed::initial(other.to_matrix());
        let glued = a.glue(&b, pairing)?;
        let d = Symmetrizer::from_entries(
            self.symmetrizer
                .entries()
                .iter()
                .chain(other.symmetrizer.entries())
                .cloned()
                .collect(),
        );
        Ok(IceQuiver::from_matrix(glued.matrix(), &d))
    }

    /// Renames vertices; names missing from the map are kept.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> IceQuiver {
        let rn = |v: &Var| map.get(v).unwrap_or(v).clone();
        IceQuiver {
            exchangeable: self.exchangeable.iter().map(rn).collect(),
            frozen: self.frozen.iter().map(rn).collect(),
            valued: self
                .valued
                .iter()
                .map(|a| ValuedArrow {
                    source: rn(&a.source),
                    target: rn(&a.target),
                    valuation: a.valuation,
                })
                .collect(),
            frozen_arrows: self
                .frozen_arrows
                .iter()
                .map(|a| FrozenArrow {
                    source: rn(&a.source),
                    target: rn(&a.target),
                    multiplicity: a.multiplicity,
                })
                .collect(),
            symmetrizer: Symmetrizer::from_entries(
                self.symmetrizer.entries().iter().map(|(v, d)| (rn(v), *d)).collect(),
            ),
        }
    }

    /// DOT rendering. Frozen vertices are boxes; principal arrows show their
    /// valuation unless it is `(1,1)`; frozen arrows repeat once per
    /// multiplicity.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in &self.exchangeable {
            writeln!(out, "  \"{v}\";").unwrap();
        }
        for v in &self.frozen {
            writeln!(out, "  \"{v}\" [shape=box];").unwrap();
        }
        for a in &self.valued {
            if a.valuation == (1, 1) {
                writeln!(out, "  \"{}\" -> \"{}\";", a.source, a.target).unwrap();
            } else {
                writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{},{}\"];",
                    a.source, a.target, a.valuation.0, a.valuation.1
                )
                .unwrap();
            }
        }
        for a in &self.frozen_arrows {
            for _ in 0..a.multiplicity {
                writeln!(out, "  \"{}\" -> \"{}\";", a.source, a.target).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Indecomposable components of a quiver; see [`SeedDecomposition`] for the
/// naming of copied frozen vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverDecomposition {
    pub components: Vec<IceQuiver>,
    pub identification: BTreeMap<Var, Vec<(usize, Var)>>,
    pub isolated_frozen: Vec<Var>,
}

impl QuiverDecomposition {
    fn from_seed(decomposition: &SeedDecomposition, d: &Symmetrizer) -> Self {
        let components = decomposition
            .components
            .iter()
            .map(|c| {
                let dc = Symmetrizer::from_entries(
                    c.ex().iter().map(|v| (v.clone(), d.get(v).expect("vertex"))).collect(),
                );
                IceQuiver::from_matrix(c.matrix(), &dc)
            })
            .collect();
        QuiverDecomposition {
            components,
            identification: decomposition.identification.clone(),
            isolated_frozen: decomposition.isolated_frozen().to_vec(),
        }
    }

    /// Glues the components back along the identification, then adds the
    /// isolated frozen vertices.
    pub fn glue(&self) -> Result<IceQuiver, SeedError> {
        let seeds: Vec<Seed> = self
            .components
            .iter()
            .map(|q| Seed::initial(q.to_matrix()))
            .collect();
        let residue = Seed::new(
            Vec::new(),
            self.isolated_frozen.clone(),
            vec![Vec::new(); self.isolated_frozen.len()],
        )?;
        let glued = crate::seed::glue_components(&seeds, &self.identification, &residue)?;
        let d = Symmetrizer::from_entries(
            self.components
                .iter()
                .flat_map(|q| q.symmetrizer.entries().iter().cloned())
                .collect(),
        );
        Ok(IceQuiver::from_matrix(glued.matrix(), &d))
    }
}
