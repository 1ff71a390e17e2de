/// Heat evolution on decaying fields, by exact kernel convolution where the
/// grid resolves the kernel and by Crank-Nicolson steps below that.
///
/// Radial sector kernel on R^n against the measure r'^(n-1) dr':
///   h(r, r', t) = (2t)^-1 (r r')^(-(n-2)/2) I_nu(r r'/2t) exp(-(r^2+r'^2)/4t),
///   nu = sector + n/2 - 1,
/// evaluated in the scaled form [I_nu e^-](mu) exp(-(r-r')^2/4t) so nothing
/// overflows. The convolution is exact in the data (no interpolation) and
/// accepts arbitrary target radii, which is what similarity-variable
/// substitution needs. Below kernel_min_time the kernel is thinner than the
/// node spacing and quadrature fails, so evolution switches to Richardson-
/// extrapolated Crank-Nicolson on the dense sector Laplacian (targets are
/// then reached by parity-aware spectral interpolation).
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "ssns/detail/besseli.hpp"
#include "ssns/operators.hpp"

namespace ssns {

struct HeatOptions {
    double kernel_min_time = 0.01;        // radial dispatch: below this, Crank-Nicolson
    double merid_kernel_min_time = 0.25;  // meridional grids are coarser near the axis
    int cn_steps = 8;                     // per Richardson half; doubled run is 2x
    double cn_step_max = 0.002;           // cap on the Crank-Nicolson step length
};

namespace detail {

/// nu = sector + n/2 - 1; n = 1, sector = 0 hits nu = -1/2 (cosine class).
inline double scaled_bessel_order(int dimension, int sector) {
    return sector + 0.5 * dimension - 1.0;
}

inline double scaled_bessel_any(double nu, double x) {
    if (nu == -0.5) {
        // I_{-1/2}(x) e^{-x} = (1 + e^{-2x}) / sqrt(2 pi x)
        if (x == 0.0) throw std::invalid_argument("scaled_bessel_any: x = 0 at nu = -1/2");
        return (1.0 + std::exp(-2.0 * x)) / std::sqrt(2.0 * M_PI * x);
    }
    return scaled_bessel_i(nu, x);
}

}  // namespace detail

/// Kernel application matrix: (targets x nodes), quadrature weights included.
inline MatrixXd heat_kernel_matrix(const RadialGrid& g, const VectorXd& targets,
                                   double t, int sector = 0) {
    if (t <= 0.0) throw std::invalid_argument("heat_kernel_matrix: need t > 0");
    const int n = g.size();
    const int nt = static_cast<int>(targets.size());
    const double dim = static_cast<double>(g.dimension);
    const double nu = detail::scaled_bessel_order(g.dimension, sector);
    const double area = sphere_area(g.dimension);
    MatrixXd k(nt, n);
    for (int i = 0; i < nt; ++i) {
        double r = targets[i];
        for (int j = 0; j < n; ++j) {
            double rp = g.rho()[j];
            double mu = r * rp / (2.0 * t);
            double gauss = std::exp(-(r - rp) * (r - rp) / (4.0 * t));
            double radial;
            if (mu < 1e-6) {
                // small-mu limit: (r r')^(-(n-2)/2) I_nu(mu) -> (r r')^l (4t)^-nu / Gamma(nu+1)
                radial = std::pow(r * rp, static_cast<double>(sector)) *
                         std::pow(4.0 * t, -nu) / std::tgamma(nu + 1.0) *
                         std::exp(-mu);  // matches the scaled form continuation
            } else {
                radial = std::pow(r * rp, -0.5 * (dim - 2.0)) *
                         detail::scaled_bessel_any(nu, mu);
            }
            k(i, j) = (g.wq_vol[j] / area) * radial * gauss / (2.0 * t);
        }
    }
    return k;
}

namespace detail {

/// One Crank-Nicolson run with fixed step count on the interior block.
template <class S>
VecX<S> cn_run(const Eigen::PartialPivLU<MatrixXd>& lu, const MatrixXd& forward,
               VecX<S> u, int steps) {
    for (int m = 0; m < steps; ++m) {
        VecX<S> rhs = forward * u;
        if constexpr (std::is_same_v<S, double>) {
            u = lu.solve(rhs);
        } else {
            Eigen::VectorXd re = lu.solve(rhs.real());
            Eigen::VectorXd im = lu.solve(rhs.imag());
            u = re.template cast<S>() + Complex(0.0, 1.0) * im.template cast<S>();
        }
    }
    return u;
}

/// Richardson-extrapolated Crank-Nicolson heat evolution on the grid nodes.
template <class S>
VecX<S> cn_heat(const RadialGrid& g, const VecX<S>& values, double t, int sector,
                int steps) {
    const int ni = g.size() - 1;
    MatrixXd lap = radial_interior(sector_laplacian(g, sector));
    VecX<S> u0 = values.head(ni);
    VecX<S> results[2];
    for (int half = 0; half < 2; ++half) {
        int k = steps << half;
        double dt = t / k;
        MatrixXd backward = MatrixXd::Identity(ni, ni) - (0.5 * dt) * lap;
        MatrixXd forward = MatrixXd::Identity(ni, ni) + (0.5 * dt) * lap;
        Eigen::PartialPivLU<MatrixXd> lu(backward);
        results[half] = cn_run(lu, forward, u0, k);
    }
    VecX<S> fine = (4.0 * results[1] - results[0]) / 3.0;
    VecX<S> full = VecX<S>::Zero(g.size());
    full.head(ni) = fine;
    return full;
}

}  // namespace detail

/// Largest nodal evolution time the truncated domain can hold: beyond this
/// the spread mass reaches the truncation radius and quietly leaks.
inline double max_resolvable_time(const RadialGrid& g) {
    double quarter = 0.25 * g.ax.truncation;
    return quarter * quarter;
}

/// Heat evolution sampled at the grid nodes.
template <class S>
RadialField<S> heat_evolve(const RadialField<S>& f, double t, int sector = 0,
                           const HeatOptions& opt = {}) {
    if (f.parity != sector_parity(sector))
        throw std::invalid_argument("heat_evolve: field parity does not match sector");
    if (t > max_resolvable_time(*f.grid))
        throw std::domain_error("heat_evolve: kernel width exceeds the truncated domain");
    if (t == 0.0) return f;
    RadialField<S> out(f.grid, f.parity);
    if (t >= opt.kernel_min_time) {
        MatrixXd k = heat_kernel_matrix(*f.grid, f.grid->rho(), t, sector);
        out.values = k * f.values;
    } else {
        out.values = detail::cn_heat(*f.grid, f.values, t, sector, opt.cn_steps);
    }
    return out;
}

/// Heat evolution sampled at arbitrary radii (similarity substitutions pass
/// scaled targets here; nothing is interpolated on the kernel path).
template <class S>
VecX<S> heat_evolve_at(const RadialField<S>& f, double t, const VectorXd& targets,
                       int sector = 0, const HeatOptions& opt = {}) {
    if (f.parity != sector_parity(sector))
        throw std::invalid_argument("heat_evolve_at: field parity does not match sector");
    if (t >= opt.kernel_min_time) {
        MatrixXd k = heat_kernel_matrix(*f.grid, targets, t, sector);
        return k * f.values;
    }
    VecX<S> nodal = detail::cn_heat(*f.grid, f.values, t, sector, opt.cn_steps);
    VecX<S> out(targets.size());
    for (int i = 0; i < targets.size(); ++i) {
        VectorXd row = f.grid->interp_row(targets[i], f.parity);
        out[i] = row.cast<S>().dot(nodal);
    }
    return out;
}

// ======================================================================
// Meridional kernels (polar sector m in {0, 1}; u_z pairs with m = 0 and
// the complex combination u_r + i u_theta with m = 1)
// ======================================================================

/// Radial factor matrix (targets x nodes) against r' dr', weights included.
inline MatrixXd merid_radial_kernel(const detail::RadialAxis& ax, const VectorXd& wq_rdr,
                                    const VectorXd& targets, double t, int m) {
    const int n = ax.size();
    MatrixXd k(targets.size(), n);
    for (int i = 0; i < targets.size(); ++i) {
        double r = targets[i];
        for (int j = 0; j < n; ++j) {
            double rp = ax.rho[j];
            double mu = r * rp / (2.0 * t);
            double gauss = std::exp(-(r - rp) * (r - rp) / (4.0 * t));
            double bess;
            if (mu < 1e-6)
                bess = std::pow(0.5 * mu, static_cast<double>(m)) /
                       std::tgamma(m + 1.0) * std::exp(-mu);
            else
                bess = detail::scaled_bessel_i(m, mu);
            k(i, j) = wq_rdr[j] * bess * gauss / (2.0 * t);
        }
    }
    return k;
}

/// Axial factor matrix (targets x nodes) against dz', weights included.
inline MatrixXd merid_axial_kernel(const detail::AxialAxis& ax, const VectorXd& targets,
                                   double t) {
    const int n = ax.size();
    MatrixXd k(targets.size(), n);
    const double norm = 1.0 / std::sqrt(4.0 * M_PI * t);
    for (int i = 0; i < targets.size(); ++i)
        for (int j = 0; j < n; ++j) {
            double d = targets[i] - ax.z[j];
            k(i, j) = ax.wq[j] * norm * std::exp(-d * d / (4.0 * t));
        }
    return k;
}

/// Heat evolution of one polar-sector scalar on the meridional grid:
/// m = 0 for u_z-type (even in r), m = 1 for u_r + i u_theta or vorticity
/// (odd in r). Kernel route only; the grid must resolve sqrt(t).
template <class S>
MatX<S> merid_heat_apply(const MeridionalGrid& g, const MatX<S>& field, double t, int m,
                         const VectorXd* targets_r = nullptr,
                         const VectorXd* targets_z = nullptr) {
    VectorXd wq_rdr = g.wq_rcyl / (2.0 * M_PI);
    const VectorXd& tr = targets_r ? *targets_r : g.r.rho;
    const VectorXd& tz = targets_z ? *targets_z : g.z.z;
    MatrixXd kr = merid_radial_kernel(g.r, wq_rdr, tr, t, m);
    MatrixXd kz = merid_axial_kernel(g.z, tz, t);
    return kr * field * kz.transpose();
}

}  // namespace ssns
