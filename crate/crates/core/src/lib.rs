//! Exact-arithmetic toolkit for alcove combinatorics of extended affine Weyl
//! groups.
//!
//! Everything is computed over `Q` (arbitrary-precision rationals) or small
//! cyclotomic fields; no floating point is used anywhere. The main pieces:
//!
//! * [`rootdata`] — based root data, chamber geometry, validation.
//! * [`finitegroup`] — finite integer matrix groups, conjugacy classes,
//!   exact character tables, induction, torsion characters.
//! * [`affine`] — the extended affine Weyl group `W = X ⋊ W₀`, lengths,
//!   reduced words, galleries, fundamental facets, Ω, isotropy groups.
//! * [`chains`] — the polysimplicial complex Σ, its augmented chain complex
//!   with exact rational coefficients, and approximation regions.
//! * [`contraction`] — a `W₀`-equivariant chain contraction of `C_*(Σ)` with
//!   uniformly bounded coefficients, built degree by degree and verified.
//! * [`elliptic`] — elliptic conjugacy classes of `Γ ⋉ X`, the elliptic
//!   measure, and the Euler–Poincaré pairing computed by independent routes.

pub mod affine;
pub mod chains;
pub mod contraction;
pub mod cyclotomic;
pub mod elliptic;
pub mod error;
pub mod exact;
pub mod finitegroup;
pub mod intmat;
pub mod rootdata;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on finite group closure (|W(F₄)| · 9 headroom).
pub const DEFAULT_GROUP_CAP: usize = 10368;
/// Cap for exhaustive subgroup enumeration.
pub const SUBGROUP_CAP: usize = 384;
/// Largest cyclotomic conductor supported by default.
pub const MAX_CONDUCTOR: i64 = 24;
