//! Exact Heegaard Floer correction terms of lens spaces and their connected
//! sums, with mechanized obstructions for reducible surgeries on slice knots
//! and for slice cables.
//!
//! All correction terms are exact rationals; nothing in the crate uses
//! floating point. Exhaustive scans fan out over rayon when the `parallel`
//! feature (on by default) is enabled and produce identical reports for any
//! thread count.

pub mod alexander;
pub mod cobordism;
pub mod error;
pub mod laurent;
pub mod lens;
pub mod multiset;
pub mod par;
pub mod rational;
pub mod surgery;

pub use alexander::{
    cable_alexander, cable_algebraic_slice_obstruction, cyclotomic, determinant_square_check,
    torsion_coefficients, torus_alexander, torus_alexander_factors, ObstructionPath,
    ObstructionReport, Verdict, Witness,
};
pub use cobordism::{
    range_bound_scan, slice_surgery_obstruction, two_summand_scan, ConnectedSum, Counterexample,
    RangeBoundReport, ScanOptions, TwoSummandReport,
};
pub use error::{Error, Result};
pub use laurent::LaurentPolynomial;
pub use lens::{
    canonicalize, correction_multiset, d_lens, d_lens_p1_closed_form, d_neg_lens, delta_range,
    LensCache, LensSpace,
};
pub use multiset::{multiset_sum, range_of, shift_constant, CorrectionMultiset, ShiftVerdict};
pub use par::{Jobs, Progress};
pub use rational::ExactRational;
pub use surgery::{
    d_one_over_n_surgery, d_positive_integer_surgery, moser_crosscheck, positive_cable_slice_check,
    v_sequence_from_lspace_alexander, VSequence,
};
