//! Three-qubit entanglement witnesses built from the bilinear map
//! `phi_{s,t}: M_2 x M_2 -> M_2`, with numerical checks of positivity and
//! of the full spanning property, plus the PPT entangled and boundary
//! separable states that go with them.
//!
//! ```
//! use kye_witness::{witness_kye, KyeParams, hermitian_eigenvalues};
//!
//! let w = witness_kye(&KyeParams::symmetric()).unwrap();
//! let spectrum = hermitian_eigenvalues(w.matrix()).unwrap();
//! assert!((spectrum[0] + 1.0).abs() < 1e-9);
//! ```
//!
//! Indexing is big-endian throughout: party 1 is the most significant digit,
//! so `|011>` is flat index 3 and `|100>` is flat index 4.

pub mod error;
pub mod io;
pub mod kye;
pub mod linalg;
pub mod multipartite;
pub mod report;
pub mod seesaw;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use kye::{
    canonical_ten, determinant_d, kye_image, omega_pow, parse_param, phi_kye, rank_one_projection, spanning_report,
    witness_from_map, witness_kye, zeta_vector, KyeParams, Pv1Family, SampleGrid, Sampling, SpanningReport, ZeroSample,
    ZetaIndex,
};
pub use linalg::{
    hermitian_eigenvalues, hermitian_rank, is_psd, kron, numerical_rank, trace_pairing, ComplexMatrix, ComplexVector,
    C64,
};
pub use multipartite::{
    interior_of_t_check, is_ppt, partial_transpose, permute_parties, PartySubset, ProductVector, State, TensorShape,
};
pub use seesaw::{cut_block_positivity, seesaw_block_positivity, Cut, SeeSawOptions, SeeSawResult};
pub use states::{
    biseparable_vector, detect, perturbed_detected_state, rho0, rho1, rho_lambda, verify_decomposition, x_state,
    DetectionReport, SeparableDecomposition, Verdict,
};
pub use witness::{choi_matrix, map_from_choi, pairing, value_on_product, MultilinearMap, Witness};
