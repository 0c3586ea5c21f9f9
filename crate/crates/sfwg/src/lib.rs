//! Stabilizer-free weak Galerkin (SFWG) finite elements for the Poisson
//! problem `-Δu = f`, `u = 0` on `∂Ω`, on meshes of convex polygons.
//!
//! A discrete function is a pair `v = {v0, vb}`: a polynomial `v0 ∈ P_k(T)`
//! inside each element and a single-valued polynomial `vb ∈ P_k(e)` on each
//! edge. Instead of penalizing the mismatch `v0 - vb`, the method lifts every
//! `v` to a weak gradient `∇_w v ∈ [P_j(T)]²` by a small per-element solve and
//! uses `Σ_T (∇_w u, ∇_w v)_T` directly as the bilinear form. The lift degree
//! `j` has to be large enough: on elements with at most `m` edges the scheme
//! is well posed for `j ≥ k + m - 2` (one less when every edge is parallel to
//! another edge of the same element), and singular below that.
//!
//! Module map:
//! - [`mesh`]: polygonal meshes, generators, refinement, shape regularity
//! - [`poly_basis`]: scaled monomial bases and quadrature rules
//! - [`weak_gradient`]: the per-element lifting operator and local stiffness
//! - [`assembly`]: global numbering, stiffness/load assembly, DOF counting
//! - [`linsolve`]: preconditioned CG and the LDLᵀ nullity probe
//! - [`analysis`]: projections, error norms, convergence and singularity studies
//!
//! All data structures are immutable once built, so elements can be processed
//! concurrently by a caller; the crate itself stays single-threaded for
//! reproducible output.

pub mod analysis;
pub mod assembly;
pub mod linsolve;
pub mod mesh;
pub mod poly_basis;
pub mod weak_gradient;

pub use mesh::{Mesh, MeshError, Point2};
