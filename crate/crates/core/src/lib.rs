//! Fuzzy propositional interaction logic (fPIL) and configuration logic
//! (fPCL) over De Morgan algebras: exact evaluation, normal forms, decision
//! of equivalence and architecture-style templates.

pub mod algebra;
pub mod archlib;
pub mod equivalence;
pub mod error;
pub mod normalize;
pub mod semantics;
pub mod syntax;

pub use algebra::{AlgebraDescriptor, AlgebraElement, Classification};
pub use archlib::{master_slave_formula, p2p_formula, uncertainty, ArchStyle, ArchTemplate};
pub use equivalence::{
    cross_check, decide_equiv, nf_equal, nf_equal_reference, oracle_equiv, oracle_equiv_fuzzy,
    ConsistencyReport, EquivVerdict,
};
pub use error::{Error, Result};
pub use normalize::{pcl_normal_form, pil_normal_form, to_set_rep, FpilNF, NormalizationMode, PclNF, SetRep};
pub use semantics::{eval_closure, eval_pcl, eval_pil, Configuration, Interaction};
pub use syntax::{parse_pcl, parse_pil, PclFormula, PilFormula, Port};
