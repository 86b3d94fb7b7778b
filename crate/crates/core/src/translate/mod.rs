//! Formula-to-formula translations between the positive fragments.

mod fo2_utl;
mod ltl_fo3;
mod rewrite;
mod sigma2;
mod utl_fo2;

pub use fo2_utl::{fo2p_less_to_utlp, fo2p_to_utlp, relation_truth, DistanceClass, PositionSystem};
pub use ltl_fo3::{ltlp_to_fo3p, ltlp_to_fo3p_at};
pub use rewrite::{monotone_rewrite, pivot_atoms, substitute_pivot_atoms};
pub use sigma2::{
    pi2p_dual_closure, sigma2m_downward_closure, sigma2p_upward_closure, Monomial, Polynomial, PolynomialError,
};
pub use utl_fo2::{utlp_to_fo2p, utlp_to_fo2p_closed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("input is not in {fragment}: {reason}")]
    NotInFragment { fragment: &'static str, reason: String },
    #[error("negation is not allowed here: {0}")]
    Negation(String),
    #[error("more than two variables: {0}")]
    ThirdVariable(String),
    #[error("more than one free variable: {0}")]
    FreeVariables(String),
    #[error("binary predicate outside the signature: {0}")]
    OutOfSignature(String),
}
