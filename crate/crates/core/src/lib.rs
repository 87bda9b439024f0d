//! Tail-biting trellises for linear block codes over prime fields.
//!
//! The crate covers characteristic generator matrices, the product and BCJR
//! (displacement) trellis constructions, structural checks on matrix
//! trellises, and the two duality constructions.

#![allow(clippy::needless_range_loop)]

pub mod caps;
pub mod charpair;
pub mod code;
pub mod construct;
pub mod duality;
pub mod error;
pub mod galois;
pub mod trellis;

pub use caps::Caps;
pub use charpair::{
    characteristic_pair, characteristic_spans, dual_span_list, enumerate_characteristic_matrices,
    msgm, span_matrix, CharacteristicPair, Enumeration, SpanList, SpanMatrix,
};
pub use code::{linear_span, parity_check, spans_of, CircularInterval, CodeFile, LinearCode};
pub use duality::{
    bcjr_dual, conjecture_search, edge_space_dual, kv_duality_check, pairing_gram, rref_generators,
    ConjectureRecord, DualVerdict, DualityReport, EdgeSpaceDual, SearchOptions, SearchReport,
};
pub use error::{Error, Result};
pub use galois::{FpMatrix, FpVector, PrimeField, SubspaceRelation};
pub use construct::{
    bcjr_displacement, bcjr_trellis, check_path, cycle_criterion, elementary_trellis, kv_trellis,
    merge_product_to_bcjr, path_to_zero, product, product_trellis, scp_ecp_formulas, span_bcjr,
    zero_row_violations, BcjrTrellis, FormulaProfile, MergeReport, PathToZero,
};
pub use trellis::{
    minimality_of_profile, ComplexityProfile, Cycle, Edge, ExplicitCycle, ExplicitTrellis,
    IsoVerdict, LinearTrellis, Mergeability, Minimality, MatrixTrellis, OneToOne,
};
