//! Exact linear and homological algebra over `Q`: elimination, cochain
//! complexes, cohomology with representatives, induced maps, connecting
//! homomorphisms and exactness checks.

mod complex;
mod matrix;

pub use complex::{
    alternating_sum, check_short_exact, cohomology, connecting_homomorphism, image_complex,
    induced_map, is_isomorphism, verify_long_exact, ChainMap, CochainComplex, CohomologyResult,
    DegreeCohomology, DegreeSummary, ImageComplex, LongExactReport, ShortExactCheck, ShortExactSequence,
};
pub use matrix::{rank_kernel_image, MatrixJson, RankKernelImage, RationalMatrix};
