//! Seeds, mutation and the operations that build new seeds from old ones.
//!
//! A [`Seed`] is an extended exchange matrix whose rows are labelled by the
//! exchangeable variables followed by the frozen ones and whose columns are
//! labelled by the exchangeable variables, together with the current value of
//! every slot as a Laurent polynomial in the initial variables.
//!
//! Mutation keeps slots in place: mutating at `x` replaces the value held in
//! slot `x`, so sequences of slot names are admissible exactly when every entry
//! names an exchangeable slot.

mod decompose;
mod enumerate;
mod json;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_integer::Integer;
use num_rational::Rational64;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, Var};

pub use decompose::{glue_components, SeedDecomposition};
pub use enumerate::{ClusterVariables, EnumerationLimits, ExchangeEdge, ExchangeGraph, GraphNode, MutationClass};
pub use json::SeedJson;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),
    #[error("{0} is not an exchangeable variable of the seed")]
    NotExchangeable(Var),
    #[error("sequence is not admissible at step {step}: {var} is not exchangeable")]
    NotAdmissible { step: usize, var: Var },
    #[error("{0} is not contained in the seed with the requested status")]
    NotContained(Var),
    #[error("{0} is not a frozen variable")]
    NotFrozen(Var),
    #[error("variable name {0} clashes")]
    NameClash(Var),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("malformed seed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// An extended skew-symmetrizable integer matrix with labelled rows and columns.
///
/// Rows are `ex` followed by `fx`; columns are `ex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtMatrix {
    ex: Vec<Var>,
    fx: Vec<Var>,
    entries: Vec<Vec<i64>>,
}

impl ExtMatrix {
    pub fn new(ex: Vec<Var>, fx: Vec<Var>, entries: Vec<Vec<i64>>) -> Result<Self, SeedError> {
        let mut seen = HashSet::new();
        for v in ex.iter().chain(&fx) {
            if !seen.insert(v.clone()) {
                return Err(SeedError::Malformed(format!("duplicate variable {v}")));
            }
        }
        let m = ex.len() + fx.len();
        if entries.len() != m {
            return Err(SeedError::Malformed(format!(
                "matrix has {} rows, expected {m}",
                entries.len()
            )));
        }
        if let Some((i, row)) = entries.iter().enumerate().find(|(_, r)| r.len() != ex.len()) {
            return Err(SeedError::Malformed(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                ex.len()
            )));
        }
        Ok(ExtMatrix { ex, fx, entries })
    }

    pub fn ex(&self) -> &[Var] {
        &self.ex
    }

    pub fn fx(&self) -> &[Var] {
        &self.fx
    }

    /// Row labels: exchangeable then frozen.
    pub fn rows(&self) -> impl Iterator<Item = &Var> {
        self.ex.iter().chain(&self.fx)
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.ex.len()
    }

    pub fn m(&self) -> usize {
        self.ex.len() + self.fx.len()
    }

    pub fn row_index(&self, v: &Var) -> Option<usize> {
        self.rows().position(|w| w == v)
    }

    pub fn col_index(&self, v: &Var) -> Option<usize> {
        self.ex.iter().position(|w| w == v)
    }

    /// `b_{yz}` for a row label `y` and a column label `z`.
    pub fn get(&self, y: &Var, z: &Var) -> Option<i64> {
        Some(self.entries[self.row_index(y)?][self.col_index(z)?])
    }

    /// Returns the principal part symmetrizer if the principal part is
    /// skew-symmetrizable.
    pub fn symmetrizer(&self) -> Result<Symmetrizer, SeedError> {
        let n = self.n();
        let b = &self.entries;
        for i in 0..n {
            if b[i][i] != 0 {
                return Err(SeedError::NotSkewSymmetrizable(format!(
                    "nonzero diagonal entry at {}",
                    self.ex[i]
                )));
            }
            for j in (i + 1)..n {
                let (bij, bji) = (b[i][j], b[j][i]);
                if (bij == 0) != (bji == 0) || bij.signum() == bji.signum() && bij != 0 {
                    return Err(SeedError::NotSkewSymmetrizable(format!(
                        "sign pattern violated at ({}, {}): {bij}, {bji}",
                        self.ex[i], self.ex[j]
                    )));
                }
            }
        }
        let mut d: Vec<Option<Rational64>> = vec![None; n];
        for start in 0..n {
            if d[start].is_some() {
                continue;
            }
            d[start] = Some(Rational64::from_integer(1));
            let mut component = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let di = d[i].expect("assigned");
                for j in 0..n {
                    if b[i][j] == 0 {
                        continue;
                    }
                    // d_i * b_ij = -d_j * b_ji
                    let dj = di * Rational64::new(b[i][j], -b[j][i]);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            component.push(j);
                            stack.push(j);
                        }
                        Some(existing) if existing != dj => {
                            return Err(SeedError::NotSkewSymmetrizable(format!(
                                "no consistent scaling around {}",
                                self.ex[j]
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
            let lcm = component
                .iter()
                .fold(1i64, |acc, &i| acc.lcm(d[i].expect("assigned").denom()));
            let scaled: Vec<i64> = component
                .iter()
                .map(|&i| (d[i].expect("assigned") * lcm).to_integer())
                .collect();
            let gcd = scaled.iter().fold(0i64, |acc, x| acc.gcd(x));
            for (&i, s) in component.iter().zip(scaled) {
                d[i] = Some(Rational64::from_integer(s / gcd));
            }
        }
        Ok(Symmetrizer {
            entries: self
                .ex
                .iter()
                .cloned()
                .zip(d.into_iter().map(|x| x.expect("assigned").to_integer()))
                .collect(),
        })
    }

    fn negated(&self) -> ExtMatrix {
        ExtMatrix {
            ex: self.ex.clone(),
            fx: self.fx.clone(),
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// Matrix mutation in column `k`.
    fn mutated(&self, k: usize) -> ExtMatrix {
        let b = &self.entries;
        let entries = b
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &v)| {
                        if r == k || c == k {
                            -v
                        } else {
                            let (byx, bxz) = (b[r][k], b[k][c]);
                            v + (byx.abs() * bxz + byx * bxz.abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        ExtMatrix {
            ex: self.ex.clone(),
            fx: self.fx.clone(),
            entries,
        }
    }
}

/// A positive diagonal `d` with `d_i b_ij = -d_j b_ji` on the principal part,
/// componentwise least.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrizer {
    entries: Vec<(Var, i64)>,
}

impl serde::Serialize for Symmetrizer {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_map(self.entries().iter().map(|(v, d)| (v, d)))
    }
}

impl Symmetrizer {
    pub fn from_entries(entries: Vec<(Var, i64)>) -> Self {
        Symmetrizer { entries }
    }

    pub fn get(&self, v: &Var) -> Option<i64> {
        self.entries.iter().find(|(w, _)| w == v).map(|&(_, d)| d)
    }

    pub fn entries(&self) -> &[(Var, i64)] {
        &self.entries
    }

    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().map(|&(_, d)| d).collect()
    }
}

/// A seed: labelled exchange matrix plus the value held in each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    matrix: ExtMatrix,
    values: Vec<LaurentPoly>,
}

impl Seed {
    /// An initial seed: every slot holds its own variable.
    pub fn new(ex: Vec<Var>, fx: Vec<Var>, entries: Vec<Vec<i64>>) -> Result<Self, SeedError> {
        Ok(Seed::initial(ExtMatrix::new(ex, fx, entries)?))
    }

    pub fn initial(matrix: ExtMatrix) -> Self {
        let values = matrix.rows().cloned().map(LaurentPoly::var).collect();
        Seed { matrix, values }
    }

    /// Builds a seed from names, e.g. `Seed::from_names(&["x1","x2"], &["x3"], ...)`.
    pub fn from_names(
        ex: &[&str],
        fx: &[&str],
        entries: Vec<Vec<i64>>,
    ) -> Result<Self, SeedError> {
        let parse = |names: &[&str]| -> Result<Vec<Var>, SeedError> {
            names.iter().map(|n| Var::new(n).map_err(SeedError::from)).collect()
        };
        Seed::new(parse(ex)?, parse(fx)?, entries)
    }

    pub fn with_values(matrix: ExtMatrix, values: Vec<LaurentPoly>) -> Result<Self, SeedError> {
        if values.len() != matrix.m() {
            return Err(SeedError::Malformed(format!(
                "{} values for {} variables",
                values.len(),
                matrix.m()
            )));
        }
        Ok(Seed { matrix, values })
    }

    pub fn matrix(&self) -> &ExtMatrix {
        &self.matrix
    }

    pub fn ex(&self) -> &[Var] {
        &self.matrix.ex
    }

    pub fn fx(&self) -> &[Var] {
        &self.matrix.fx
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.matrix.rows()
    }

    pub fn values(&self) -> &[LaurentPoly] {
        &self.values
    }

    /// Number of exchangeable variables.
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// Number of variables.
    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    pub fn value(&self, v: &Var) -> Option<&LaurentPoly> {
        self.matrix.row_index(v).map(|i| &self.values[i])
    }

    /// `(slot, value)` pairs in row order.
    pub fn slots(&self) -> impl Iterator<Item = (&Var, &LaurentPoly)> {
        self.vars().zip(&self.values)
    }

    pub fn exchangeable_values(&self) -> &[LaurentPoly] {
        &self.values[..self.matrix.n()]
    }

    pub fn frozen_values(&self) -> &[LaurentPoly] {
        &self.values[self.matrix.n()..]
    }

    pub fn is_exchangeable(&self, v: &Var) -> bool {
        self.matrix.ex.contains(v)
    }

    pub fn is_frozen(&self, v: &Var) -> bool {
        self.matrix.fx.contains(v)
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.is_exchangeable(v) || self.is_frozen(v)
    }

    pub fn is_trivial(&self) -> bool {
        self.matrix.ex.is_empty()
    }

    /// True when every slot holds its own variable.
    pub fn is_initial(&self) -> bool {
        self.slots().all(|(v, p)| p.as_var() == Some(v))
    }

    /// The same matrix with every slot reset to its own variable.
    pub fn as_initial(&self) -> Seed {
        Seed::initial(self.matrix.clone())
    }

    /// Checks skew-symmetrizability and returns the least symmetrizer.
    pub fn validate(&self) -> Result<Symmetrizer, SeedError> {
        self.matrix.symmetrizer()
    }

    /// Mutation in direction `x`.
    pub fn mutate(&self, x: &Var) -> Result<Seed, SeedError> {
        let k = self
            .matrix
            .col_index(x)
            .ok_or_else(|| SeedError::NotExchangeable(x.clone()))?;
        let mut positive = LaurentPoly::one();
        let mut negative = LaurentPoly::one();
        for (r, row) in self.matrix.entries.iter().enumerate() {
            let b = row[k];
            if b > 0 {
                positive = &positive * &self.values[r].pow(b)?;
            } else if b < 0 {
                negative = &negative * &self.values[r].pow(-b)?;
            }
        }
        let new_value = (&positive + &negative).div_exact(&self.values[k])?;
        let mut values = self.values.clone();
        values[k] = new_value;
        Ok(Seed {
            matrix: self.matrix.mutated(k),
            values,
        })
    }

    /// The two monomials of the exchange relation at `x`: the products over
    /// positive and negative entries of column `x`.
    pub fn exchange_monomials(&self, x: &Var) -> Result<(LaurentPoly, LaurentPoly), SeedError> {
        let k = self
            .matrix
            .col_index(x)
            .ok_or_else(|| SeedError::NotExchangeable(x.clone()))?;
        let mut positive = LaurentPoly::one();
        let mut negative = LaurentPoly::one();
        for (r, row) in self.matrix.entries.iter().enumerate() {
            let b = row[k];
            if b > 0 {
                positive = &positive * &self.values[r].pow(b)?;
            } else if b < 0 {
                negative = &negative * &self.values[r].pow(-b)?;
            }
        }
        Ok((positive, negative))
    }

    /// Applies a sequence of mutations, first entry first.
    pub fn apply_sequence(&self, seq: &[Var]) -> Result<Seed, SeedError> {
        let mut current = self.clone();
        for (step, x) in seq.iter().enumerate() {
            if !current.is_exchangeable(x) {
                return Err(SeedError::NotAdmissible {
                    step,
                    var: x.clone(),
                });
            }
            current = current.mutate(x)?;
        }
        Ok(current)
    }

    /// The subseed on the given exchangeable and frozen variables, keeping
    /// the original order.
    pub fn subseed(
        &self,
        keep_ex: &BTreeSet<Var>,
        keep_fx: &BTreeSet<Var>,
    ) -> Result<Seed, SeedError> {
        if let Some(v) = keep_ex.iter().find(|v| !self.is_exchangeable(v)) {
            return Err(SeedError::NotContained(v.clone()));
        }
        if let Some(v) = keep_fx.iter().find(|v| !self.is_frozen(v)) {
            return Err(SeedError::NotContained(v.clone()));
        }
        let ex: Vec<Var> = self.ex().iter().filter(|v| keep_ex.contains(*v)).cloned().collect();
        let fx: Vec<Var> = self.fx().iter().filter(|v| keep_fx.contains(*v)).cloned().collect();
        Ok(self.restrict(ex, fx))
    }

    /// Restriction to the given rows (`ex` followed by `fx`) and columns (`ex`);
    /// every label must already be a row of the seed and every `ex` label a
    /// column.
    pub(crate) fn restrict(&self, ex: Vec<Var>, fx: Vec<Var>) -> Seed {
        let rows: Vec<usize> = ex
            .iter()
            .chain(&fx)
            .map(|v| self.matrix.row_index(v).expect("row label"))
            .collect();
        let cols: Vec<usize> = ex
            .iter()
            .map(|v| self.matrix.col_index(v).expect("column label"))
            .collect();
        let entries = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.matrix.entries[r][c]).collect())
            .collect();
        let values = rows.iter().map(|&r| self.values[r].clone()).collect();
        Seed {
            matrix: ExtMatrix { ex, fx, entries },
            values,
        }
    }

    /// The opposite seed: same variables, negated matrix.
    pub fn opposite(&self) -> Seed {
        Seed {
            matrix: self.matrix.negated(),
            values: self.values.clone(),
        }
    }

    /// Freezing at `ex0`: the variables in `ex0` become frozen (appended to the
    /// frozen list in their exchangeable order) and their columns are deleted.
    pub fn freeze(&self, ex0: &BTreeSet<Var>) -> Result<Seed, SeedError> {
        if let Some(v) = ex0.iter().find(|v| !self.is_exchangeable(v)) {
            return Err(SeedError::NotExchangeable(v.clone()));
        }
        let ex: Vec<Var> = self.ex().iter().filter(|v| !ex0.contains(*v)).cloned().collect();
        let fx: Vec<Var> = self
            .fx()
            .iter()
            .cloned()
            .chain(self.ex().iter().filter(|v| ex0.contains(*v)).cloned())
            .collect();
        Ok(self.restrict(ex, fx))
    }

    /// Renames slots (and the variables inside the values). Names missing from
    /// the map are kept.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Result<Seed, SeedError> {
        let rn = |v: &Var| map.get(v).unwrap_or(v).clone();
        let matrix = ExtMatrix::new(
            self.ex().iter().map(rn).collect(),
            self.fx().iter().map(rn).collect(),
            self.matrix.entries.clone(),
        )?;
        Ok(Seed {
            matrix,
            values: self.values.iter().map(|p| p.rename(map)).collect(),
        })
    }

    /// The canonical form used to identify seeds as unordered structures.
    pub fn canonical(&self) -> CanonicalSeed {
        let n = self.matrix.n();
        let mut ex_order: Vec<usize> = (0..n).collect();
        ex_order.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
        let mut fx_order: Vec<usize> = (n..self.matrix.m()).collect();
        fx_order.sort_by(|&a, &b| self.matrix.fx[a - n].cmp(&self.matrix.fx[b - n]));
        let rows: Vec<usize> = ex_order.iter().chain(&fx_order).copied().collect();
        let entries = rows
            .iter()
            .map(|&r| ex_order.iter().map(|&c| self.matrix.entries[r][c]).collect())
            .collect();
        let labels = |idx: &[usize], offset: usize, names: &[Var]| -> Vec<Var> {
            idx.iter().map(|&i| names[i - offset].clone()).collect()
        };
        let seed = Seed {
            matrix: ExtMatrix {
                ex: labels(&ex_order, 0, &self.matrix.ex),
                fx: labels(&fx_order, n, &self.matrix.fx),
                entries,
            },
            values: rows.iter().map(|&r| self.values[r].clone()).collect(),
        };
        CanonicalSeed { seed }
    }

    /// The seed with slots sorted by name; two seeds are the same labelled
    /// structure exactly when their normalized forms are equal.
    pub fn normalized(&self) -> Seed {
        let mut ex = self.ex().to_vec();
        ex.sort();
        let mut fx = self.fx().to_vec();
        fx.sort();
        self.restrict(ex, fx)
    }

    /// Equality as labelled structures, ignoring slot order.
    pub fn same_as(&self, other: &Seed) -> bool {
        self.normalized() == other.normalized()
    }

    /// Connected components of the principal part, as sorted lists of
    /// exchangeable variables, ordered by least variable.
    pub fn principal_components(&self) -> Vec<Vec<Var>> {
        let n = self.matrix.n();
        let b = &self.matrix.entries;
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if !seen[j] && (b[i][j] != 0 || b[j][i] != 0) {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            let mut vars: Vec<Var> = comp.into_iter().map(|i| self.matrix.ex[i].clone()).collect();
            vars.sort();
            components.push(vars);
        }
        components.sort();
        components
    }

    /// Frozen variables with a nonzero entry in one of the given columns, in
    /// frozen-list order.
    pub fn frozen_neighbours(&self, cols: &[Var]) -> Vec<Var> {
        let n = self.matrix.n();
        let idx: Vec<usize> = cols
            .iter()
            .filter_map(|v| self.matrix.col_index(v))
            .collect();
        self.fx()
            .iter()
            .enumerate()
            .filter(|(i, _)| idx.iter().any(|&c| self.matrix.entries[n + i][c] != 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Frozen variables with an all-zero row.
    pub fn isolated_frozen(&self) -> Vec<Var> {
        let n = self.matrix.n();
        self.fx()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.matrix.entries[n + i].iter().all(|&b| b == 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Indecomposable components as subseeds with their original names; frozen
    /// variables adjacent to several components appear in each.
    pub fn indecomposable_components(&self) -> Vec<Seed> {
        self.principal_components()
            .into_iter()
            .map(|comp| {
                let fx = self.frozen_neighbours(&comp);
                let ex: Vec<Var> = self.ex().iter().filter(|v| comp.contains(v)).cloned().collect();
                self.restrict(ex, fx)
            })
            .collect()
    }

    /// Indecomposable: the principal part is nonempty and connected and no
    /// frozen variable is isolated.
    pub fn is_indecomposable(&self) -> bool {
        self.principal_components().len() == 1 && self.isolated_frozen().is_empty()
    }

    /// True when the principal part has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.matrix.n();
        let b = &self.matrix.entries;
        // Kahn's algorithm over arrows i -> j with b_ij > 0.
        let mut indegree = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                if b[i][j] > 0 {
                    indegree[j] += 1;
                }
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(i) = ready.pop() {
            removed += 1;
            for j in 0..n {
                if b[i][j] > 0 {
                    indegree[j] -= 1;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        removed == n
    }

    /// Glues `other` onto `self`, identifying frozen `a` of `self` with frozen
    /// `b` of `other` for every pair `(a, b)`. The merged variable keeps the
    /// name from `self`; no entries between the two parts are created.
    pub fn glue(&self, other: &Seed, pairing: &[(Var, Var)]) -> Result<Seed, SeedError> {
        let mut left_seen = HashSet::new();
        let mut right_seen = HashSet::new();
        for (a, b) in pairing {
            if !self.is_frozen(a) {
                return Err(SeedError::NotFrozen(a.clone()));
            }
            if !other.is_frozen(b) {
                return Err(SeedError::NotFrozen(b.clone()));
            }
            if !left_seen.insert(a.clone()) || !right_seen.insert(b.clone()) {
                return Err(SeedError::InvalidPairing(format!(
                    "{a}:{b} repeats a variable"
                )));
            }
        }
        let partner: BTreeMap<Var, Var> =
            pairing.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        for v in other.vars() {
            if !partner.contains_key(v) && self.contains(v) {
                return Err(SeedError::NameClash(v.clone()));
            }
        }
        let (na, nb) = (self.matrix.n(), other.matrix.n());
        let a_entries = &self.matrix.entries;
        let b_entries = &other.matrix.entries;
        let zeros = |k: usize| vec![0i64; k];

        let mut ex = self.ex().to_vec();
        ex.extend(other.ex().iter().cloned());
        let mut entries: Vec<Vec<i64>> = Vec::new();
        let mut values: Vec<LaurentPoly> = Vec::new();
        let other_values: Vec<LaurentPoly> =
            other.values.iter().map(|p| p.rename(&partner)).collect();

        for i in 0..na {
            entries.push([a_entries[i].clone(), zeros(nb)].concat());
            values.push(self.values[i].clone());
        }
        for i in 0..nb {
            entries.push([zeros(na), b_entries[i].clone()].concat());
            values.push(other_values[i].clone());
        }
        let mut fx = self.fx().to_vec();
        for (i, f) in self.fx().iter().enumerate() {
            let right = match pairing.iter().find(|(a, _)| a == f) {
                Some((_, b)) => b_entries[other.matrix.row_index(b).expect("frozen row")].clone(),
                None => zeros(nb),
            };
            entries.push([a_entries[na + i].clone(), right].concat());
            values.push(self.values[na + i].clone());
        }
        for (i, f) in other.fx().iter().enumerate() {
            if partner.contains_key(f) {
                continue;
            }
            fx.push(f.clone());
            entries.push([zeros(na), b_entries[nb + i].clone()].concat());
            values.push(other_values[nb + i].clone());
        }
        Ok(Seed {
            matrix: ExtMatrix::new(ex, fx, entries)?,
            values,
        })
    }

    /// Decomposition into indecomposable components with renamed frozen
    /// copies; see [`SeedDecomposition`].
    pub fn decompose(&self) -> SeedDecomposition {
        decompose::decompose(self)
    }

    /// Breadth-first closure under mutation within the given limits.
    pub fn enumerate_class(&self, limits: EnumerationLimits) -> Result<MutationClass, SeedError> {
        enumerate::enumerate_class(self, limits)
    }
}

/// A seed with exchangeable slots sorted by value and frozen slots sorted by
/// name. Equality and hashing ignore exchangeable slot names, so two seeds of
/// one mutation class compare equal exactly when they hold the same cluster
/// with the same matrix up to simultaneous reordering.
#[derive(Debug, Clone)]
pub struct CanonicalSeed {
    seed: Seed,
}

impl CanonicalSeed {
    pub fn seed(&self) -> &Seed {
        &self.seed
    }

    pub fn into_seed(self) -> Seed {
        self.seed
    }

    fn key(&self) -> (&[LaurentPoly], &[Var], &[Vec<i64>]) {
        (&self.seed.values, self.seed.fx(), &self.seed.matrix.entries)
    }
}

impl PartialEq for CanonicalSeed {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalSeed {}

impl std::hash::Hash for CanonicalSeed {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl Ord for CanonicalSeed {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for CanonicalSeed {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Parses a comma/whitespace separated list of variable names.
pub fn parse_var_list(text: &str) -> Result<Vec<Var>, LaurentError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(Var::new)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn set(names: &[&str]) -> BTreeSet<Var> {
        names.iter().map(|n| v(n)).collect()
    }

    fn a2_coeffs() -> Seed {
        Seed::from_names(
            &["x1", "x2"],
            &["x3", "x4"],
            vec![vec![0, 1], vec![-1, 0], vec![0, -1], vec![0, 0]],
        )
        .unwrap()
    }

    fn rank3_valued() -> Seed {
        Seed::from_names(
            &["x1", "x2", "x3"],
            &[],
            vec![vec![0, -2, 6], vec![1, 0, -3], vec![-2, 2, 0]],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let s = Seed::from_names(&["x1", "x2"], &[], vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(s.validate().unwrap().values(), vec![1, 1]);

        let d = rank3_valued().validate().unwrap();
        assert_eq!(d.values(), vec![1, 2, 3]);
        let b = rank3_valued().matrix().entries().to_vec();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.values()[i] * b[i][j], -d.values()[j] * b[j][i]);
            }
        }

        let bad = Seed::from_names(&["x1", "x2"], &[], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(bad.validate(), Err(SeedError::NotSkewSymmetrizable(_))));
    }

    #[test]
    fn validate_rejects_inconsistent_scaling() {
        // Cycle whose ratios multiply to 2 instead of 1.
        let s = Seed::from_names(
            &["a", "b", "c"],
            &[],
            vec![vec![0, 1, -1], vec![-1, 0, 2], vec![1, -1, 0]],
        )
        .unwrap();
        assert!(matches!(s.validate(), Err(SeedError::NotSkewSymmetrizable(_))));
        let one_zero = Seed::from_names(&["a", "b"], &[], vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(one_zero.validate().is_err());
    }

    #[test]
    fn symmetrizer_is_least_per_component() {
        // Two components: a valued pair scaled (1,2) and an isolated vertex.
        let s = Seed::from_names(
            &["a", "b", "c"],
            &[],
            vec![vec![0, -2, 0], vec![1, 0, 0], vec![0, 0, 0]],
        )
        .unwrap();
        assert_eq!(s.validate().unwrap().values(), vec![1, 2, 1]);
    }

    #[test]
    fn mutate_examples() {
        let s = a2_coeffs();
        let m1 = s.mutate(&v("x1")).unwrap();
        assert_eq!(m1.value(&v("x1")).unwrap(), &p("(1+x2)/x1"));
        assert_eq!(
            m1.matrix().entries(),
            &[vec![0, -1], vec![1, 0], vec![0, -1], vec![0, 0]]
        );
        let m2 = s.mutate(&v("x2")).unwrap();
        assert_eq!(m2.value(&v("x2")).unwrap(), &p("(x1+x3)/x2"));
        assert_eq!(m1.mutate(&v("x1")).unwrap(), s);
        assert_eq!(s.mutate(&v("x3")), Err(SeedError::NotExchangeable(v("x3"))));
        assert_eq!(s.mutate(&v("zz")), Err(SeedError::NotExchangeable(v("zz"))));
    }

    #[test]
    fn apply_sequence_examples() {
        let s = a2_coeffs();
        assert_eq!(s.apply_sequence(&[]).unwrap(), s);
        let t = s.apply_sequence(&[v("x1"), v("x2"), v("x1")]).unwrap();
        assert!(t.values().contains(&p("(x1+x3+x2*x3)/(x1*x2)")));
        assert_eq!(
            s.apply_sequence(&[v("x1"), v("x3")]),
            Err(SeedError::NotAdmissible { step: 1, var: v("x3") })
        );
    }

    #[test]
    fn subseed_examples() {
        let s = a2_coeffs();
        assert_eq!(s.subseed(&set(&["x1", "x2"]), &set(&["x3", "x4"])).unwrap(), s);
        let empty = s.subseed(&set(&[]), &set(&[])).unwrap();
        assert!(empty.is_trivial() && empty.fx().is_empty());
        assert_eq!(
            s.subseed(&set(&["x3"]), &set(&[])),
            Err(SeedError::NotContained(v("x3")))
        );

        // Dropping x3 from the 3x3 seed removes it entirely rather than
        // turning it frozen.
        let big = Seed::from_names(
            &["x1", "x2", "x3"],
            &[],
            vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]],
        )
        .unwrap();
        let sub = big.subseed(&set(&["x1", "x2"]), &set(&[])).unwrap();
        assert_eq!(sub.m(), 2);
        assert!(!sub.contains(&v("x3")));
    }

    #[test]
    fn opposite_examples() {
        let s = Seed::from_names(&["x1", "x2"], &[], vec![vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(s.opposite().matrix().entries(), &[vec![0, -1], vec![1, 0]]);
        assert_eq!(s.opposite().opposite(), s);
        let r = rank3_valued();
        assert_eq!(r.opposite().validate().unwrap(), r.validate().unwrap());
    }

    #[test]
    fn freeze_examples() {
        let s = rank3_valued();
        let f = s.freeze(&set(&["x3"])).unwrap();
        assert_eq!(f.ex(), &[v("x1"), v("x2")]);
        assert_eq!(f.fx(), &[v("x3")]);
        assert_eq!(f.matrix().entries(), &[vec![0, -2], vec![1, 0], vec![-2, 2]]);
        assert_eq!(s.freeze(&set(&[])).unwrap(), s);
        let all = s.freeze(&set(&["x1", "x2", "x3"])).unwrap();
        assert!(all.is_trivial());
        assert_eq!(all.m(), 3);
        assert!(all.matrix().entries().iter().all(|r| r.is_empty()));
        assert_eq!(s.freeze(&set(&["x9"])), Err(SeedError::NotExchangeable(v("x9"))));
    }

    #[test]
    fn canonical_ignores_slot_order() {
        let s = a2_coeffs();
        let swapped = s.restrict(vec![v("x2"), v("x1")], vec![v("x4"), v("x3")]);
        assert_ne!(s, swapped);
        assert_eq!(s.canonical(), swapped.canonical());
        assert!(s.same_as(&swapped));
        assert_ne!(s.canonical(), s.mutate(&v("x1")).unwrap().canonical());
    }

    #[test]
    fn glue_checks() {
        let a = Seed::from_names(&["x1"], &["f"], vec![vec![0], vec![1]]).unwrap();
        let b = Seed::from_names(&["x2"], &["g"], vec![vec![0], vec![-1]]).unwrap();
        let glued = a.glue(&b, &[(v("f"), v("g"))]).unwrap();
        assert_eq!(glued.ex(), &[v("x1"), v("x2")]);
        assert_eq!(glued.fx(), &[v("f")]);
        assert_eq!(glued.matrix().entries(), &[vec![0, 0], vec![0, 0], vec![1, -1]]);
        assert_eq!(a.glue(&b, &[(v("x1"), v("g"))]), Err(SeedError::NotFrozen(v("x1"))));
        assert_eq!(a.glue(&a, &[]), Err(SeedError::NameClash(v("x1"))));
        let disjoint = a.glue(&b, &[]).unwrap();
        assert_eq!(disjoint.fx(), &[v("f"), v("g")]);
    }

    #[test]
    fn acyclicity() {
        assert!(a2_coeffs().is_acyclic());
        let cyc = Seed::from_names(
            &["a", "b", "c"],
            &[],
            vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]],
        )
        .unwrap();
        assert!(!cyc.is_acyclic());
    }
}
