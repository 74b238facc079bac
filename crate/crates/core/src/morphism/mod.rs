//! Rooted cluster morphisms between seeds.
//!
//! A [`MorphismSpec`] gives the image of every initial variable of the source
//! as a Laurent polynomial in the target's initial variables (normally a
//! target variable or an integer). Non-inducible specs, where some
//! exchangeable variable maps to 0, also carry a table of images of further
//! source cluster variables.
//!
//! Mutation sequences are read as sequences of slots. A sequence is
//! biadmissible when every entry is an exchangeable slot of the source whose
//! image is an exchangeable slot of the target.

mod check;
mod ideal;
mod injection;
mod json;
mod tensor;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, Var};
use crate::seed::{Seed, SeedError};

pub use check::{AxiomCheck, Cm3Check, Cm3Witness, ImageWitness, MorphismVerdict};
pub use ideal::{FastPath, IdealOptions, IdealStatus, IdealVerdict, Membership};
pub use injection::{specialize, ComponentMatch, InjectionReport};
pub use json::{ImageText, MorphismJson, SeedSource};
pub use tensor::{tensor_decomposition_report, IdealGenerator, TensorReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("no image given for source variable {0}")]
    MissingImage(Var),
    #[error("no image known for source cluster variable {0}")]
    MissingGeneratorImage(String),
    #[error("malformed morphism: {0}")]
    Malformed(String),
    #[error("not injective: {0}")]
    NotInjective(String),
    #[error("source does not embed as components of the freezing: {0}")]
    NotComponentEmbedding(String),
    #[error("not a rooted cluster morphism: {0}")]
    NotAMorphism(String),
    #[error("morphism is not certified ideal")]
    NotIdeal,
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A candidate rooted cluster morphism `A(source) -> A(target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismSpec {
    source: Seed,
    target: Seed,
    images: BTreeMap<Var, LaurentPoly>,
    generator_table: Vec<(LaurentPoly, LaurentPoly)>,
    explicit: Option<bool>,
}

impl MorphismSpec {
    /// Both seeds must be initial. Every source variable needs an image, and
    /// images may only involve target variables.
    pub fn new(
        source: Seed,
        target: Seed,
        images: BTreeMap<Var, LaurentPoly>,
    ) -> Result<Self, MorphismError> {
        if !source.is_initial() || !target.is_initial() {
            return Err(MorphismError::Malformed(
                "source and target must be initial seeds".into(),
            ));
        }
        if let Some(v) = source.vars().find(|v| !images.contains_key(*v)) {
            return Err(MorphismError::MissingImage(v.clone()));
        }
        if let Some(v) = images.keys().find(|v| !source.contains(v)) {
            return Err(MorphismError::Malformed(format!(
                "image given for {v}, which is not a source variable"
            )));
        }
        for (v, p) in &images {
            if let Some(w) = p.variables().into_iter().find(|w| !target.contains(w)) {
                return Err(MorphismError::Malformed(format!(
                    "image of {v} uses {w}, which is not a target variable"
                )));
            }
        }
        Ok(MorphismSpec {
            source,
            target,
            images,
            generator_table: Vec::new(),
            explicit: None,
        })
    }

    /// The identity of a seed.
    pub fn identity(seed: &Seed) -> Self {
        let seed = seed.as_initial();
        let images = seed.vars().map(|v| (v.clone(), LaurentPoly::var(v.clone()))).collect();
        MorphismSpec::new(seed.clone(), seed, images).expect("identity is well formed")
    }

    /// The map sending every source variable to the target variable of the
    /// same name.
    pub fn inclusion(source: &Seed, target: &Seed) -> Result<Self, MorphismError> {
        let images = source
            .vars()
            .map(|v| (v.clone(), LaurentPoly::var(v.clone())))
            .collect();
        MorphismSpec::new(source.as_initial(), target.as_initial(), images)
    }

    /// Adds images of further source cluster variables. Keys are Laurent
    /// polynomials in the source variables, values in the target variables.
    pub fn with_generator_table(
        mut self,
        table: Vec<(LaurentPoly, LaurentPoly)>,
    ) -> Result<Self, MorphismError> {
        for (k, img) in &table {
            if let Some(w) = k.variables().into_iter().find(|w| !self.source.contains(w)) {
                return Err(MorphismError::Malformed(format!(
                    "generator {} uses {w}, which is not a source variable",
                    k.to_fraction_string()
                )));
            }
            if let Some(w) = img.variables().into_iter().find(|w| !self.target.contains(w)) {
                return Err(MorphismError::Malformed(format!(
                    "image of generator {} uses {w}, which is not a target variable",
                    k.to_fraction_string()
                )));
            }
        }
        self.generator_table = table;
        Ok(self)
    }

    /// Records the user's claim that the morphism is explicit. The claim is
    /// not verified.
    pub fn with_explicit(mut self, explicit: Option<bool>) -> Self {
        self.explicit = explicit;
        self
    }

    pub fn source(&self) -> &Seed {
        &self.source
    }

    pub fn target(&self) -> &Seed {
        &self.target
    }

    pub fn images(&self) -> &BTreeMap<Var, LaurentPoly> {
        &self.images
    }

    pub fn image(&self, v: &Var) -> Option<&LaurentPoly> {
        self.images.get(v)
    }

    /// The image of `v` when it is a single target variable.
    pub fn image_var(&self, v: &Var) -> Option<&Var> {
        self.images.get(v).and_then(LaurentPoly::as_var)
    }

    pub fn generator_table(&self) -> &[(LaurentPoly, LaurentPoly)] {
        &self.generator_table
    }

    pub fn explicit(&self) -> Option<bool> {
        self.explicit
    }

    /// No exchangeable variable is sent to 0.
    pub fn is_inducible(&self) -> bool {
        self.source.ex().iter().all(|x| !self.images[x].is_zero())
    }

    /// Image of an element of the source algebra given as a Laurent
    /// polynomial in the source's initial variables.
    ///
    /// Initial variables use the image map and table entries take precedence;
    /// otherwise the polynomial is substituted, which requires every variable
    /// in its denominator to map to a nonzero integer or a unit monomial.
    pub fn apply(&self, p: &LaurentPoly) -> Result<LaurentPoly, MorphismError> {
        if let Some(v) = p.as_var() {
            if let Some(img) = self.images.get(v) {
                return Ok(img.clone());
            }
        }
        if let Some((_, img)) = self.generator_table.iter().find(|(k, _)| k == p) {
            return Ok(img.clone());
        }
        p.substitute(&self.images).map_err(|e| match e {
            LaurentError::ZeroIntoNegativePower(_) if !self.is_inducible() => {
                MorphismError::MissingGeneratorImage(p.to_fraction_string())
            }
            other => MorphismError::Laurent(other),
        })
    }

    /// Checks CM1, CM2 and CM3 on biadmissible sequences up to `depth`.
    pub fn check(&self, depth: usize) -> Result<MorphismVerdict, MorphismError> {
        check::check_morphism(self, depth)
    }

    /// The default CM3 depth, `|ex| + 2`.
    pub fn default_depth(&self) -> usize {
        self.source.n() + 2
    }

    /// `(ex' ∩ f(ex), (x' ∩ f(x)) \ ex-part, B'[x' ∩ f(x)])`, in target order.
    pub fn image_seed(&self) -> Seed {
        ideal::image_seed(self)
    }

    pub fn ideal_check(&self, options: &IdealOptions) -> Result<IdealVerdict, MorphismError> {
        ideal::ideal_check(self, options)
    }

    /// Splits an ideal morphism as a surjection onto the image seed followed
    /// by the inclusion of the image seed into the target.
    pub fn factorize_ideal(
        &self,
        options: &IdealOptions,
    ) -> Result<(MorphismSpec, MorphismSpec), MorphismError> {
        ideal::factorize_ideal(self, options)
    }

    pub fn analyze_injection(&self) -> Result<InjectionReport, MorphismError> {
        injection::analyze_injection(self)
    }

    /// Composition `other ∘ self` on initial variables.
    pub fn then(&self, other: &MorphismSpec) -> Result<MorphismSpec, MorphismError> {
        let images = self
            .images
            .iter()
            .map(|(v, p)| Ok((v.clone(), other.apply(p)?)))
            .collect::<Result<BTreeMap<_, _>, MorphismError>>()?;
        MorphismSpec::new(self.source.clone(), other.target.clone(), images)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn construction_checks() {
        let s = a2_coeffs();
        assert_eq!(
            MorphismSpec::new(s.clone(), s.clone(), images(&[("x1", "x1")])),
            Err(MorphismError::MissingImage(v("x2")))
        );
        let bad_target = images(&[("x1", "y"), ("x2", "x2"), ("x3", "x3"), ("x4", "x4")]);
        assert!(matches!(
            MorphismSpec::new(s.clone(), s.clone(), bad_target),
            Err(MorphismError::Malformed(_))
        ));
        let moved = s.mutate(&v("x1")).unwrap();
        assert!(MorphismSpec::new(moved, s.clone(), images(&[])).is_err());
    }

    #[test]
    fn inducibility() {
        assert!(MorphismSpec::identity(&a2_coeffs()).is_inducible());
        assert!(!non_ideal().is_inducible());
    }

    #[test]
    fn apply_uses_table_then_substitution() {
        let f = non_ideal();
        assert_eq!(f.apply(&p("(1+x2)/x1")).unwrap(), p("x2"));
        assert_eq!(f.apply(&p("x4")).unwrap(), p("x1"));
        assert_eq!(f.apply(&p("x1 + x3")).unwrap(), p("0"));
        assert!(matches!(
            f.apply(&p("(1+x2^2)/x1")),
            Err(MorphismError::MissingGeneratorImage(_))
        ));
    }

    #[test]
    fn composition() {
        let s = a2_coeffs();
        let id = MorphismSpec::identity(&s);
        assert_eq!(id.then(&id).unwrap(), id);
        let f = non_ideal();
        assert_eq!(id.then(&f).unwrap().images(), f.images());
    }
}
