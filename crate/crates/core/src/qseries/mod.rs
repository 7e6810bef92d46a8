//! Truncated formal power series in `t` over a pluggable coefficient ring,
//! together with the q-calculus built on them: the Eulerian differential
//! operator, `exp_q`, bracket powers, q-composition, the infinite-product
//! expansion of `exp_q[f]`, and q-integration.

mod qcalc;
mod ring;
mod series;

use thiserror::Error;

use crate::kernel::KernelError;

pub use qcalc::{
    bracket_power, delta_t, delta_t_at, exp_q_normalized, exp_q_series, product_expansion,
    product_expansion_of, q_compose, q_integral, IntegralDirection,
};
pub use ring::{ring_qbinomial, ring_qfactorial, ring_qint, Coeff, QTruncate, RingCapabilities, RingTag};
pub use series::{Basis, TSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("`{op}` needs {need}, which the {ring:?} ring does not provide")]
    Capability {
        op: &'static str,
        ring: RingTag,
        need: &'static str,
    },
    #[error("`{0}` needs a series of higher order")]
    EmptySeries(&'static str),
    #[error("constant term is not invertible")]
    NonInvertibleConstant,
    #[error("`{0}` requires a zero constant term")]
    NonzeroConstantTerm(&'static str),
    #[error("`{0}` requires constant term 1")]
    ConstantTermNotOne(&'static str),
    #[error("operands use different coefficient bases")]
    BasisMismatch,
    #[error("`{0}` is only defined in the power basis")]
    PowerBasisOnly(&'static str),
    #[error("coefficient of t^{0} cannot be represented in this ring after normalisation")]
    NotRepresentable(usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}
