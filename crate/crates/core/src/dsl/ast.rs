//! Syntax tree of a `.hsa` document. Expressions are stored evaluated, as
//! linear combinations of tensor monomials in generator names, so that
//! structurally equal documents print identically.

use crate::linear::LinComb;
use crate::presentation::Parity;
use crate::scalar::Scalar;

/// One tensor monomial: a word of generator names per tensor leg.
pub type NameKey = Vec<Vec<String>>;

/// An evaluated expression: arity 1 for algebra elements, 2 for tensors.
pub type Poly = LinComb<NameKey>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresentationDoc {
    pub name: Option<String>,
    pub conventions: Vec<(String, String)>,
    pub notes: Vec<(String, String)>,
    pub symbols: Vec<(String, String)>,
    pub algebras: Vec<AlgebraDoc>,
    pub bicross: Option<BicrossDoc>,
    pub checks: Option<CheckDirectives>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraDoc {
    pub name: String,
    pub generators: Vec<GeneratorDoc>,
    pub relations: Vec<RelationDoc>,
    pub coproduct: Vec<(String, Poly)>,
    pub counit: Vec<(String, Scalar)>,
    pub antipode: Vec<(String, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDoc {
    pub name: String,
    pub parity: Parity,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDoc {
    pub lhs: [String; 2],
    pub rhs: Poly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BicrossDoc {
    /// The acting factor `H1` (left tensor factor of the product).
    pub acting: String,
    /// The acted-on factor `H2`.
    pub acted: String,
    /// `(a, h, a <| h)`.
    pub action: Vec<(String, String, Poly)>,
    /// `(h, beta(h))` with `beta(h)` in `H2 @ H1`.
    pub coaction: Vec<(String, Poly)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Confluence,
    Bialgebra,
    Antipode,
    Module,
    Comodule,
    Compatibility,
    Built,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Confluence,
        Suite::Bialgebra,
        Suite::Antipode,
        Suite::Module,
        Suite::Comodule,
        Suite::Compatibility,
        Suite::Built,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Suite::Confluence => "confluence",
            Suite::Bialgebra => "bialgebra",
            Suite::Antipode => "antipode",
            Suite::Module => "module",
            Suite::Comodule => "comodule",
            Suite::Compatibility => "compatibility",
            Suite::Built => "built",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.keyword() == s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckDirectives {
    pub suites: Vec<Suite>,
    pub max_degree: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl PresentationDoc {
    pub fn algebra(&self, name: &str) -> Option<&AlgebraDoc> {
        self.algebras.iter().find(|a| a.name == name)
    }
}

impl AlgebraDoc {
    pub fn generator(&self, name: &str) -> Option<&GeneratorDoc> {
        self.generators.iter().find(|g| g.name == name)
    }
}
