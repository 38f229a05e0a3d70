//! Cusps, genus formulas and Weierstrass criteria for the modular curves
//! X_1(N), X_0(N) and X_Delta(N).

pub mod arith;
pub mod criteria;
pub mod cusps;
pub mod error;
pub mod etaq;
pub mod exact;
pub mod genus;
pub mod symmetry;

pub use arith::{DeltaSubgroup, Level};
pub use criteria::{CertStep, GapSequence, Status, SurveyReport, SurveyRow, Verdict};
pub use cusps::{CuspAtlas, CuspClass, GroupTag};
pub use error::{Error, Result};
pub use etaq::{CuspDivisor, EtaQuotient, QSeries};
pub use genus::GenusProfile;
pub use symmetry::{AtkinLehnerOp, DiamondOp, OrbitReport};
