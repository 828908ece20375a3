//! Modular curves as covers of the moduli stack of elliptic curves: degrees,
//! genera, form dimensions, and the splitting of `(f_n)_* O` into twists of
//! small-level pushforwards.
//!
//! All arithmetic is exact. Anything depending on an unknown weight-one
//! cusp form dimension surfaces as [`DimValue::Unknown`] or
//! [`Error::WeightOneUnknown`], never as a guess.

pub mod arith;
pub mod curve;
pub mod decomp;
pub mod dims;
pub mod error;
pub mod group;
pub mod hasse;
pub mod wproj;

pub use arith::{gamma1_degree, group_degree, Rat};
pub use curve::{profile, CurveProfile};
pub use decomp::{
    anderson_table, base_divisibility, decompose, duality_scan, duality_verdict, k2_sequence,
    k3_sequence, kappa_sequence, l_sequence, tmf_splitting_report, Base, BaseDivisibility,
    DecompSequence, Diagnostic, DualityScan, DualityVerdict, PrimeClass, TmfReport,
};
pub use dims::{m_dim, m_sequence, s_dim, DimQuery, DimValue, FormDimensions, S1DataFile, WeightOneTable};
pub use error::{Error, Result};
pub use group::{CongruenceGroup, GroupKind};
pub use hasse::{verify_hasse_lift, CycNumber, HasseReport, OddChar, QSeries};
pub use wproj::{splitting_from_sections, TwistMultiset, WeightedProjLine};
