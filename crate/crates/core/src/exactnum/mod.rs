//! Exact arithmetic: rationals, polynomials over a field, and real quadratic
//! field elements.

pub mod modular;
pub mod poly;
pub mod quad;

pub use poly::Poly;
pub use quad::{companion_matrix, is_squarefree, norm_trace, quad_arith, Quad, QuadOp};

pub(crate) use quad::parse_rational;

use crate::QPoly;

/// `p / gcd(p, p')`, monic, skipping the rational gcd when a modular
/// certificate already shows `p` is square-free.
pub fn squarefree_part(p: &QPoly) -> QPoly {
    if modular::certify_squarefree(p) {
        p.monic()
    } else {
        p.squarefree_part()
    }
}
