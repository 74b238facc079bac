use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{MorphismError, MorphismSpec};
use crate::laurent::{fraction, LaurentPoly, Monomial, Var};
use crate::seed::{EnumerationLimits, Seed};

/// Which sufficient condition for idealness applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FastPath {
    /// Every exchangeable variable maps to an exchangeable variable.
    ExchangeableInclusion,
    /// Inducible with an acyclic source.
    InducibleAcyclic,
    /// The image seed is the whole target.
    Surjective,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IdealStatus {
    Ideal,
    /// `witness` lies in the image of the morphism but not in the algebra of
    /// the image seed. It is the image of `source_variable`.
    NotIdeal {
        #[serde(with = "fraction")]
        witness: LaurentPoly,
        #[serde(with = "fraction")]
        source_variable: LaurentPoly,
        reason: String,
    },
    Unknown {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    #[serde(flatten)]
    pub status: IdealStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fast_path: Option<FastPath>,
    pub checked_depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
}

impl IdealVerdict {
    pub fn is_ideal(&self) -> bool {
        matches!(self.status, IdealStatus::Ideal)
    }

    pub fn is_not_ideal(&self) -> bool {
        matches!(self.status, IdealStatus::NotIdeal { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealOptions {
    /// Depth for the morphism check and for both enumerations.
    pub depth: usize,
    /// Weighted degree bound for products of generators; defaults to twice
    /// the largest degree among all generators involved.
    pub degree_bound: Option<usize>,
    pub max_seeds: usize,
    /// Largest number of generator products tried per membership query.
    pub max_products: usize,
}

impl IdealOptions {
    pub fn new(depth: usize) -> Self {
        IdealOptions {
            depth,
            degree_bound: None,
            max_seeds: EnumerationLimits::default().max_seeds,
            max_products: 2000,
        }
    }
}

/// Outcome of a subalgebra membership query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// An integer combination of generator products equals the element.
    Member(Vec<(BigInt, Vec<usize>)>),
    NotMember(String),
    Unknown(String),
}

pub(super) fn image_seed(spec: &MorphismSpec) -> Seed {
    let source = spec.source();
    let target = spec.target();
    let images_of = |vars: &[Var]| -> BTreeSet<Var> {
        vars.iter().filter_map(|v| spec.image_var(v).cloned()).collect()
    };
    let from_ex = images_of(source.ex());
    let mut all = from_ex.clone();
    all.extend(images_of(source.fx()));
    let ex: Vec<Var> = target.ex().iter().filter(|v| from_ex.contains(*v)).cloned().collect();
    let fx: Vec<Var> = target
        .vars()
        .filter(|v| all.contains(*v) && !from_ex.contains(*v))
        .cloned()
        .collect();
    target.restrict(ex, fx)
}

fn weight(p: &LaurentPoly) -> usize {
    p.abs_degree().max(1) as usize
}

/// Membership of `g` in the subalgebra generated by `gens`.
///
/// When `ambient` is given, every element of the subalgebra is known to be a
/// Laurent polynomial in its variables, polynomial in its frozen ones, which
/// certifies non-membership of anything else. Otherwise the query tries
/// integer combinations of generator products of weighted degree at most
/// `bound`; failure there is not a proof.
pub fn membership(
    g: &LaurentPoly,
    gens: &[LaurentPoly],
    ambient: Option<&Seed>,
    bound: usize,
    max_products: usize,
) -> Membership {
    if g.as_integer().is_some() {
        return Membership::Member(vec![(g.as_integer().unwrap(), Vec::new())]);
    }
    if let Some(i) = gens.iter().position(|h| h == g) {
        return Membership::Member(vec![(BigInt::one(), vec![i])]);
    }
    if let Some(seed) = ambient {
        if let Some(x) = g.variables().into_iter().find(|x| !seed.contains(x)) {
            return Membership::NotMember(format!(
                "uses {x}, which is not a variable of the image seed"
            ));
        }
        if let Some((x, _)) = g
            .min_exponents()
            .into_iter()
            .find(|(x, e)| *e < 0 && seed.is_frozen(x))
        {
            return Membership::NotMember(format!("has a negative power of the frozen variable {x}"));
        }
    }
    let nonconstant: Vec<usize> = (0..gens.len())
        .filter(|&i| gens[i].as_integer().is_none())
        .collect();
    let mut products: Vec<(Vec<usize>, LaurentPoly)> = vec![(Vec::new(), LaurentPoly::one())];
    let mut stack: Vec<(usize, usize, Vec<usize>, LaurentPoly)> =
        vec![(0, 0, Vec::new(), LaurentPoly::one())];
    // Depth-first over nondecreasing generator indices.
    while let Some((start, used, factors, value)) = stack.pop() {
        for k in start..nonconstant.len() {
            let i = nonconstant[k];
            let w = used + weight(&gens[i]);
            if w > bound {
                continue;
            }
            if products.len() >= max_products {
                return Membership::Unknown(format!(
                    "more than {max_products} generator products below degree {bound}"
                ));
            }
            let mut f = factors.clone();
            f.push(i);
            let v = &value * &gens[i];
            products.push((f.clone(), v.clone()));
            stack.push((k, w, f, v));
        }
    }
    match solve_integer_combination(g, &products) {
        Some(combo) => Membership::Member(combo),
        None => Membership::Unknown(format!(
            "no integer combination of generator products up to degree {bound}"
        )),
    }
}

/// Finds integers `c` with `sum c_k * products[k] = g`, taking free variables
/// as zero; `None` when the rational system has no solution or that solution
/// is not integral.
fn solve_integer_combination(
    g: &LaurentPoly,
    products: &[(Vec<usize>, LaurentPoly)],
) -> Option<Vec<(BigInt, Vec<usize>)>> {
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for (m, _) in g.terms().iter().chain(products.iter().flat_map(|(_, p)| p.terms())) {
        let next = rows.len();
        rows.entry(m.clone()).or_insert(next);
    }
    let ncols = products.len();
    let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); ncols + 1]; rows.len()];
    for (k, (_, p)) in products.iter().enumerate() {
        for (m, c) in p.terms() {
            a[rows[m]][k] = BigRational::from_integer(c.clone());
        }
    }
    for (m, c) in g.terms() {
        a[rows[m]][ncols] = BigRational::from_integer(c.clone());
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    let mut combo = Vec::new();
    for (i, &col) in pivots.iter().enumerate() {
        let c = &a[i][ncols];
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() {
            return None;
        }
        combo.push((c.to_integer(), products[col].0.clone()));
    }
    Some(combo)
}

pub(super) fn ideal_check(
    spec: &MorphismSpec,
    options: &IdealOptions,
) -> Result<IdealVerdict, MorphismError> {
    let verdict = spec.check(options.depth)?;
    if !verdict.is_morphism() {
        return Err(MorphismError::NotAMorphism(format!(
            "morphism check failed: {}",
            serde_json::to_string(&verdict).expect("serializable")
        )));
    }
    let done = |status: IdealStatus, fast_path: Option<FastPath>, degree_bound: Option<usize>| {
        Ok(IdealVerdict {
            status,
            fast_path,
            checked_depth: options.depth,
            degree_bound,
        })
    };
    let source = spec.source();
    let target = spec.target();
    if source
        .ex()
        .iter()
        .all(|x| spec.image_var(x).is_some_and(|w| target.is_exchangeable(w)))
    {
        return done(IdealStatus::Ideal, Some(FastPath::ExchangeableInclusion), None);
    }
    if spec.is_inducible() && source.is_acyclic() {
        return done(IdealStatus::Ideal, Some(FastPath::InducibleAcyclic), None);
    }
    let image = spec.image_seed();
    if image.same_as(target) {
        return done(IdealStatus::Ideal, Some(FastPath::Surjective), None);
    }

    let limits = EnumerationLimits::new(options.max_seeds, options.depth);
    let source_class = source.enumerate_class(limits)?;
    let image_class = image.enumerate_class(limits)?;
    let mut mapped: BTreeMap<LaurentPoly, LaurentPoly> = BTreeMap::new();
    for y in source_class.cluster_variables().all() {
        let fy = spec.apply(y)?;
        mapped.entry(fy).or_insert_with(|| y.clone());
    }
    let f_gens: Vec<LaurentPoly> = mapped.keys().cloned().collect();
    let image_gens: Vec<LaurentPoly> = image_class.cluster_variables().all().cloned().collect();
    let bound = options.degree_bound.unwrap_or_else(|| {
        2 * f_gens.iter().chain(&image_gens).map(weight).max().unwrap_or(1)
    });

    let mut unresolved = None;
    for (g, y) in &mapped {
        match membership(g, &image_gens, Some(&image), bound, options.max_products) {
            Membership::Member(_) => {}
            Membership::NotMember(reason) => {
                return done(
                    IdealStatus::NotIdeal {
                        witness: g.clone(),
                        source_variable: y.clone(),
                        reason,
                    },
                    None,
                    Some(bound),
                );
            }
            Membership::Unknown(reason) => {
                unresolved.get_or_insert(format!("{}: {reason}", g.to_fraction_string()));
            }
        }
    }
    for h in &image_gens {
        if let Membership::Unknown(reason) | Membership::NotMember(reason) =
            membership(h, &f_gens, None, bound, options.max_products)
        {
            unresolved.get_or_insert(format!("{}: {reason}", h.to_fraction_string()));
        }
    }
    let status = if let Some(reason) = unresolved {
        IdealStatus::Unknown { reason }
    } else if !source_class.complete() || !image_class.complete() {
        IdealStatus::Unknown {
            reason: format!("enumeration incomplete at depth {}", options.depth),
        }
    } else {
        IdealStatus::Ideal
    };
    done(status, None, Some(bound))
}

pub(super) fn factorize_ideal(
    spec: &MorphismSpec,
    options: &IdealOptions,
) -> Result<(MorphismSpec, MorphismSpec), MorphismError> {
    if !spec.ideal_check(options)?.is_ideal() {
        return Err(MorphismError::NotIdeal);
    }
    let image = spec.image_seed();
    let surjection = MorphismSpec::new(spec.source().clone(), image.clone(), spec.images().clone())?
        .with_generator_table(spec.generator_table().to_vec())?
        .with_explicit(spec.explicit());
    let injection = MorphismSpec::inclusion(&image, spec.target())?;
    Ok((surjection, injection))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn image_seed_examples() {
        let s = a2_coeffs();
        assert_eq!(MorphismSpec::identity(&s).image_seed(), s);
        let img = non_ideal().image_seed();
        assert!(img.ex().is_empty());
        assert_eq!(img.fx(), &[v("x1")]);
        assert_eq!(img.matrix().entries(), &[Vec::<i64>::new()]);
    }

    #[test]
    fn non_ideal_witness() {
        let verdict = non_ideal().ideal_check(&IdealOptions::new(4)).unwrap();
        match &verdict.status {
            IdealStatus::NotIdeal { witness, source_variable, .. } => {
                assert_eq!(witness, &p("x2"));
                assert_eq!(source_variable, &p("(1+x2)/x1"));
            }
            other => panic!("expected not ideal, got {other:?}"),
        }
        assert!(verdict.fast_path.is_none());
    }

    #[test]
    fn fast_paths() {
        let (source, target) = example_pair();
        let f = MorphismSpec::inclusion(&source, &target).unwrap();
        let verdict = f.ideal_check(&IdealOptions::new(4)).unwrap();
        assert_eq!(verdict.fast_path, Some(FastPath::ExchangeableInclusion));

        // Specializing the frozen x3 of A2-with-coefficients to 1 is
        // surjective but sends no exchangeable variable outside ex'.
        let s = a2_coeffs();
        let sub = s.subseed(&[v("x1"), v("x2")].into(), &[v("x4")].into()).unwrap();
        let spec = MorphismSpec::new(
            s,
            sub,
            images(&[("x1", "x1"), ("x2", "x2"), ("x3", "1"), ("x4", "x4")]),
        )
        .unwrap();
        assert!(spec.ideal_check(&IdealOptions::new(4)).unwrap().is_ideal());
    }

    #[test]
    fn general_path_certifies_ideal() {
        // Oriented 3-cycle with one frozen variable, exchangeables sent to 1:
        // every cluster variable lands in Z[x4].
        let s = Seed::from_names(
            &["x1", "x2", "x3"],
            &["x4"],
            vec![vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0], vec![1, 0, 0]],
        )
        .unwrap();
        assert!(!s.is_acyclic());
        let t = Seed::from_names(&["x5"], &["x4"], vec![vec![0], vec![1]]).unwrap();
        let spec = MorphismSpec::new(
            s,
            t,
            images(&[("x1", "1"), ("x2", "1"), ("x3", "1"), ("x4", "x4")]),
        )
        .unwrap();
        let verdict = spec.ideal_check(&IdealOptions::new(6)).unwrap();
        assert_eq!(verdict.status, IdealStatus::Ideal);
        assert_eq!(verdict.fast_path, None);
        assert!(verdict.degree_bound.is_some());

        let gens = vec![p("x2")];
        assert!(matches!(
            membership(&p("-1 - x2 + 3*x2^2"), &gens, None, 4, 100),
            Membership::Member(_)
        ));
        assert!(matches!(
            membership(&p("x2^5"), &gens, None, 4, 100),
            Membership::Unknown(_)
        ));
    }

    #[test]
    fn membership_rejects_non_integral_combination() {
        // (x^2 + x)/2 is not an integer combination of powers of x.
        let gens = vec![p("x1^2 + x1")];
        assert!(matches!(
            membership(&p("x1^2 + x1"), &[p("2*x1^2 + 2*x1")], None, 4, 100),
            Membership::Unknown(_)
        ));
        assert!(matches!(membership(&p("2*x1^2 + 2*x1"), &gens, None, 4, 100), Membership::Member(_)));
    }

    #[test]
    fn product_budget_gives_unknown() {
        let gens: Vec<LaurentPoly> = (1..=6).map(|i| p(&format!("x{i}"))).collect();
        assert!(matches!(
            membership(&p("x1*x2*x3*x4*x5*x6*x7"), &gens, None, 12, 50),
            Membership::Unknown(_)
        ));
    }

    #[test]
    fn factorization() {
        let s = a2_coeffs();
        let id = MorphismSpec::identity(&s);
        let (surj, inj) = id.factorize_ideal(&IdealOptions::new(4)).unwrap();
        assert_eq!(surj, id);
        assert_eq!(inj, id);
        assert_eq!(
            non_ideal().factorize_ideal(&IdealOptions::new(4)),
            Err(MorphismError::NotIdeal)
        );
    }
}
