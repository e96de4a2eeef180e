//! Symbolic engine for finitely presented Z2-graded Hopf superalgebras and
//! their right-left graded bicrossproducts.

pub mod bicross;
pub mod dsl;
pub mod hopf;
pub mod kpoincare;
pub mod linear;
pub mod presentation;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod tensor;

pub use bicross::{BicrossData, Bicrossproduct, BuildOptions, LastSlot};
pub use hopf::HopfStructure;
pub use linear::LinComb;
pub use report::{CheckRecord, Report, Status};
pub use sample::SampleSpec;
pub use tensor::{TensorElement, TensorSpace};
pub use presentation::{Element, GenId, Parity, Presentation, PresentationBuilder, Word};
pub use scalar::{GaussianRational, Scalar};
