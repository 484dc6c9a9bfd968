//! Vector-valued Hardy-space multipliers at finite truncation.
//!
//! The crate works with finitely supported power series in countably many
//! variables whose coefficients are vectors in `C^d` or `d x d` complex
//! matrices, their Dirichlet-series images under the Bohr lift
//! `n = 2^a1 * 3^a2 * 5^a3 * ...`, and the multiplication operators they
//! induce on `H_2`.
//!
//! Modules, bottom-up:
//!
//! - [`multiindex`]: exponent sequences, the prime-power bijection, weighted degree.
//! - [`series`]: sparse power series, operator-on-vector convolution, dilation, evaluation.
//! - [`dirichlet`]: Dirichlet series, the Bohr lift, products, shifts, vertical-line recovery.
//! - [`hardy`]: `H_2`, `H_p` and sup norms, Fourier coefficients on tensor grids, extremal kernels.
//! - [`multiplier`]: compression matrices, operator norms, norm schedules.
//! - [`cli`]: series files, run reports and the verification suites behind the binary.
//!
//! ```
//! use bohr_hardy::prelude::*;
//!
//! let alpha = MultiIndex::from_frequency(12).unwrap();
//! assert_eq!(alpha.exponents(), &[2, 1]);
//! assert_eq!(alpha.to_frequency().unwrap(), 12);
//! ```

pub mod cli;
pub mod coefficient;
pub mod dirichlet;
mod error;
pub mod hardy;
pub mod multiindex;
pub mod multiplier;
pub mod random;
pub mod series;

pub use error::{Error, Result};

/// Double-precision complex scalar used for every coefficient entry.
pub type Complex = num_complex::Complex64;

pub mod prelude {
    pub use crate::coefficient::{Coefficient, CoefficientKind, Operator, Vector};
    pub use crate::dirichlet::{
        bohr, bohr_inverse, dirichlet_product, DirichletSeries, HalfPlanePoint,
    };
    pub use crate::hardy::{
        cole_gamelin_kernel, fourier_coefficient, h2_norm, hinf_norm, hp_norm, TorusGrid,
    };
    pub use crate::multiindex::MultiIndex;
    pub use crate::multiplier::{
        assemble_compression, diagonal_example, multiplier_norm_schedule, operator_norm,
        pointwise_vs_symbolic, CompressionMatrix,
    };
    pub use crate::series::{
        op_vec_product, OperatorSeries, PowerSeries, TruncationParams, VectorSeries,
    };
    pub use crate::{Complex, Error, Result};
}
