//! Exact m-spotty Rosenbloom–Tsfasman weight enumerators for byte
//! error-control codes over finite commutative Frobenius rings, together
//! with the MacWilliams transform to the dual code and brute-force oracles
//! that check it.

pub mod cli;
pub mod codes;
pub mod cyclotomic;
pub mod macwilliams;
pub mod matrix_file;
pub mod poly;
pub mod rings;
pub mod weights;

pub use codes::{inner_product, ByteLayout, Code, CodeError, Codeword, Limits};
pub use cyclotomic::CycInt;
pub use macwilliams::{
    fourier_oracle, s_value, s_value_oracle, transform, v_table, verify_identity, IdentityReport,
    MacWilliamsError, VTable,
};
pub use poly::EnumeratorPoly;
pub use rings::{FiniteRing, RingElement, RingError, RingSpec};
pub use weights::{
    distribution, enumerator, mspotty_distance, mspotty_weight, rt_weight, weight_vector,
    DistributionTable, WeightVector,
};
