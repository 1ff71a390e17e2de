/// Dense collocation operators.
///
/// Radial side: per-angular-sector Laplacians and drift operators for scalar
/// problems on R^n. Meridional side: the separable drift operators that act
/// on swirl and azimuthal vorticity in similarity variables, and the E^2
/// elliptic solve recovering a stream function from vorticity. Fields are
/// pinned to zero at the outer truncation nodes (decay class), so solves act
/// on interior blocks; the axis needs no boundary rows because the folded
/// derivative matrices already encode parity there.
#pragma once

#include <memory>

#include "ssns/detail/linalg.hpp"
#include "ssns/field.hpp"

namespace ssns {

inline Parity sector_parity(int sector) {
    return (sector % 2 == 0) ? Parity::even : Parity::odd;
}

/// Laplacian restricted to angular sector l on R^n:
/// d_rr + ((n-1)/r) d_r - l(l+n-2)/r^2.
inline MatrixXd sector_laplacian(const RadialGrid& g, int sector) {
    const Parity p = sector_parity(sector);
    const int n = g.size();
    const double dim = static_cast<double>(g.dimension);
    MatrixXd lap = g.d2(p);
    for (int i = 0; i < n; ++i) {
        lap.row(i) += ((dim - 1.0) / g.rho()[i]) * g.d1(p).row(i);
        lap(i, i) -= sector * (sector + dim - 2.0) / (g.rho()[i] * g.rho()[i]);
    }
    return lap;
}

/// Similarity-variable drift operator on sector l:
/// sector_laplacian + (r/2) d_r + offset. The offset carries the scaling
/// weight of the field class (1/2 for velocity-type scaling, alpha/2 for the
/// scalar family, 0 for a plain heat substitution).
inline MatrixXd sector_drift(const RadialGrid& g, int sector, double offset) {
    const Parity p = sector_parity(sector);
    MatrixXd op = sector_laplacian(g, sector);
    for (int i = 0; i < g.size(); ++i) {
        op.row(i) += (0.5 * g.rho()[i]) * g.d1(p).row(i);
        op(i, i) += offset;
    }
    return op;
}

/// Interior restriction for radial operators (outer node pinned to zero).
inline MatrixXd radial_interior(const MatrixXd& full) {
    const int n = static_cast<int>(full.rows());
    return full.topLeftCorner(n - 1, n - 1);
}

// ======================================================================
// Meridional separable operators
// ======================================================================

/// One-dimensional factor matrices of a separable meridional operator acting
/// as X -> Ar X + X Az^T (+ shift X).
struct SeparableOp {
    MatrixXd ar;   // full radial factor (nr x nr)
    MatrixXd az;   // full axial factor (nz x nz)
    double shift = 0.0;
};

namespace detail {

inline MatrixXd drift_axial_factor(const AxialAxis& z) {
    MatrixXd az = z.d2;
    for (int j = 0; j < z.size(); ++j) az.row(j) += (0.5 * z.z[j]) * z.d1.row(j);
    return az;
}

}  // namespace detail

/// Drift operator on the swirl Gamma (even in r):
/// [d_rr - (1/r) d_r + (r/2) d_r] + [d_zz + (z/2) d_z].
inline SeparableOp swirl_drift(const MeridionalGrid& g) {
    SeparableOp op;
    op.ar = g.r.d2e;
    for (int i = 0; i < g.nr(); ++i)
        op.ar.row(i) += (0.5 * g.r.rho[i] - 1.0 / g.r.rho[i]) * g.r.d1e.row(i);
    op.az = detail::drift_axial_factor(g.z);
    op.shift = 0.0;
    return op;
}

/// Drift operator on the azimuthal vorticity omega (odd in r):
/// [d_rr + (1/r) d_r - 1/r^2 + (r/2) d_r] + [d_zz + (z/2) d_z] + 1.
inline SeparableOp vorticity_drift(const MeridionalGrid& g) {
    SeparableOp op;
    op.ar = g.r.d2o;
    for (int i = 0; i < g.nr(); ++i) {
        op.ar.row(i) += (0.5 * g.r.rho[i] + 1.0 / g.r.rho[i]) * g.r.d1o.row(i);
        op.ar(i, i) -= 1.0 / (g.r.rho[i] * g.r.rho[i]);
    }
    op.az = detail::drift_axial_factor(g.z);
    op.shift = 1.0;
    return op;
}

/// Plain diffusion factors for the swirl class: (Delta - 1/r^2) on r*u_theta
/// written in Gamma form d_rr - (1/r) d_r, plus d_zz.
inline SeparableOp swirl_diffusion(const MeridionalGrid& g) {
    SeparableOp op;
    op.ar = g.r.d2e;
    for (int i = 0; i < g.nr(); ++i) op.ar.row(i) -= (1.0 / g.r.rho[i]) * g.r.d1e.row(i);
    op.az = g.z.d2;
    return op;
}

/// Plain diffusion for the vorticity class: Delta - 1/r^2 on odd fields.
inline SeparableOp vorticity_diffusion(const MeridionalGrid& g) {
    SeparableOp op;
    op.ar = g.r.d2o;
    for (int i = 0; i < g.nr(); ++i) {
        op.ar.row(i) += (1.0 / g.r.rho[i]) * g.r.d1o.row(i);
        op.ar(i, i) -= 1.0 / (g.r.rho[i] * g.r.rho[i]);
    }
    op.az = g.z.d2;
    return op;
}

/// Apply a separable operator on full node matrices.
template <class S>
MatX<S> apply_separable(const SeparableOp& op, const MatX<S>& x) {
    MatX<S> out = op.ar * x + x * op.az.transpose();
    if (op.shift != 0.0) out += op.shift * x;
    return out;
}

namespace detail {

inline MatrixXd interior_radial_block(const MatrixXd& ar) {
    const int n = static_cast<int>(ar.rows());
    return ar.topLeftCorner(n - 1, n - 1);
}

inline MatrixXd interior_axial_block(const MatrixXd& az) {
    const int n = static_cast<int>(az.rows());
    return az.block(1, 1, n - 2, n - 2);
}

template <class S>
MatX<S> interior_of(const MatX<S>& full) {
    return full.block(0, 1, full.rows() - 1, full.cols() - 2);
}

template <class S>
MatX<S> embed_interior(const MatX<S>& in, int nr, int nz) {
    MatX<S> out = MatX<S>::Zero(nr, nz);
    out.block(0, 1, nr - 1, nz - 2) = in;
    return out;
}

}  // namespace detail

/// Cached factorization of alpha + beta * op on the interior block.
inline std::shared_ptr<const detail::SeparableSolve> separable_solver(
    const MeridionalGrid& g, const SeparableOp& op, const std::string& key,
    double alpha, double beta) {
    return g.cached<detail::SeparableSolve>(key, [&]() {
        return detail::SeparableSolve(detail::interior_radial_block(op.ar),
                                      detail::interior_axial_block(op.az),
                                      alpha + beta * op.shift, beta);
    });
}

/// Solve (alpha + beta * op) x = rhs with zero boundary values.
template <class S>
MatX<S> separable_solve(const MeridionalGrid& g, const SeparableOp& op,
                        const std::string& key, double alpha, double beta,
                        const MatX<S>& rhs) {
    auto solver = separable_solver(g, op, key, alpha, beta);
    MatX<S> rix = detail::interior_of(rhs);
    MatX<S> sol = solver->template solve<S>(rix);
    return detail::embed_interior(sol, g.nr(), g.nz());
}

/// Stream function from azimuthal vorticity: E^2 psi = -r omega with psi
/// pinned to zero on the outer boundary. Exact discrete inverse of
/// vorticity_of_stream for stream functions vanishing on the boundary.
template <class S>
MatX<S> stream_from_vorticity(const MeridionalGrid& g, const MatX<S>& omega) {
    SeparableOp e2;
    e2.ar = g.r.d2e;
    for (int i = 0; i < g.nr(); ++i) e2.ar.row(i) -= (1.0 / g.r.rho[i]) * g.r.d1e.row(i);
    e2.az = g.z.d2;
    MatX<S> rhs = omega;
    for (int i = 0; i < g.nr(); ++i) rhs.row(i) *= -g.r.rho[i];
    return separable_solve(g, e2, "stream_e2", 0.0, 1.0, rhs);
}

/// Rebuild a consistent field from vorticity and swirl.
template <class S>
AxiField<S> field_from_vorticity(std::shared_ptr<const MeridionalGrid> grid,
                                 const MatX<S>& omega, MatX<S> gamma) {
    AxiField<S> f;
    f.grid = std::move(grid);
    f.psi = stream_from_vorticity(*f.grid, omega);
    f.omega = omega;
    f.gamma = std::move(gamma);
    return f;
}

}  // namespace ssns
