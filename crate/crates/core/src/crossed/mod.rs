//! Crossed products `C(T^d_θ) ⋊ Z_N`, their projections, traces and Morita data.

mod exchange;
mod k0;
mod morita;
mod product;
mod projector;
mod traces;
mod transport;

pub use exchange::{verify_exchange_iso, ExchangeAlgebra, ExchangeTerm};
pub use k0::{
    hex_reading_laws, rotation_crossed_product, torus3_crossed_product, BasisEntry, HexReading, K0Generators,
    SpectralGenerator,
};
pub use morita::{
    average_p, block_mul, matrix_units, p_projection, phat, psi, psi_p, psi_u, unpsi, verify_morita, BlockMatrix,
};
pub use product::{CrossedElement, CrossedProduct};
pub use projector::{
    as_scalar, inverse_order, is_projection, phase_of_scalar, q_projector, q_projector_with_period, root_check,
    spectral_completeness, RootCheck,
};
pub use traces::{base_eval, trace_eval, verify_trace_laws, BaseFunctional, TraceFunctional};
pub use transport::{beta_hat_transport, TransportImage};
