/// Collocation grids for decaying fields on R^n.
///
/// Radial directions use the positive half of a two-sided grid under the odd
/// algebraic map rho = c*eta/(1-eta^2) with Chebyshev-Lobatto nodes in eta.
/// Because the map is odd, even/odd functions of rho correspond to even/odd
/// functions of eta, and differentiation matrices can be parity-folded onto
/// the positive nodes. Smooth axisymmetric fields have definite parity in r
/// component by component, and the folded matrices keep 1/r-type operator
/// combinations accurate through the axis (one-sided interpolation does not:
/// its parity contamination is amplified by the 1/r divisions). Axial (z)
/// directions use the same map two-sided with pinned endpoints.
#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "ssns/detail/cheb.hpp"

namespace ssns {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Parity of a scalar entry under r -> -r (equivalently the reflection class
/// of its even extension through the axis).
enum class Parity { even, odd };

/// Surface measure of the unit sphere in R^n, with |S^0| = 2 so the n = 1
/// radial integral is the even-extension integral over the full line.
inline double sphere_area(int n) {
    if (n < 1) throw std::invalid_argument("sphere_area: dimension must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace detail {

/// One mapped radial direction: positive-half nodes of a symmetric two-sided
/// set, parity-folded derivative matrices, and parity-resolved weights.
struct RadialAxis {
    double map_scale = 0.0;
    double truncation = 0.0;
    VectorXd eta;    // positive computational nodes, ascending
    VectorXd rho;    // mapped radii in (0, truncation], last node pinned
    VectorXd eta2;   // full symmetric node set (size 2N), for interpolation
    VectorXd bary2;  // barycentric weights on eta2
    MatrixXd d1e, d2e;  // d/drho, d^2/drho^2 acting on even-function values
    MatrixXd d1o, d2o;  // same for odd-function values
    VectorXd wq;        // integrates even f(rho) drho over [0, truncation]
    VectorXd wq_odd;    // same for odd f

    int size() const { return static_cast<int>(eta.size()); }
    double eta_of(double r) const {
        if (r == 0.0) return 0.0;
        return (-map_scale + std::sqrt(map_scale * map_scale + 4.0 * r * r)) /
               (2.0 * r);
    }
    const MatrixXd& d1(Parity p) const { return p == Parity::even ? d1e : d1o; }
    const MatrixXd& d2(Parity p) const { return p == Parity::even ? d2e : d2o; }
    const VectorXd& weights(Parity p) const { return p == Parity::even ? wq : wq_odd; }

    /// Interpolation row at radius r >= 0 for a field of the given parity;
    /// zero past truncation (decay class).
    VectorXd interp_row(double r, Parity p) const {
        const int n = size();
        if (r > truncation) return VectorXd::Zero(n);
        VectorXd full = interpolation_row(eta2, bary2, eta_of(r));
        VectorXd row(n);
        double sign = (p == Parity::even) ? 1.0 : -1.0;
        for (int i = 0; i < n; ++i) row[i] = full[n + i] + sign * full[n - 1 - i];
        return row;
    }
};

inline RadialAxis make_radial_axis(int count, double map_scale, double truncation) {
    if (count < 8) throw std::invalid_argument("radial axis: need >= 8 nodes");
    if (map_scale <= 0 || truncation <= map_scale)
        throw std::invalid_argument("radial axis: require 0 < map_scale < truncation");
    RadialAxis ax;
    ax.map_scale = map_scale;
    ax.truncation = truncation;
    const double tr = truncation;
    const double eta_max =
        (-map_scale + std::sqrt(map_scale * map_scale + 4.0 * tr * tr)) / (2.0 * tr);

    // Symmetric 2N-point Lobatto set (even count: no node at the axis).
    const int n = count;
    VectorXd full = chebyshev_lobatto(-eta_max, eta_max, 2 * n);
    ax.eta2.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        double p = 0.5 * (full[n + i] - full[n - 1 - i]);  // exact odd symmetry
        ax.eta2[n + i] = p;
        ax.eta2[n - 1 - i] = -p;
    }
    ax.eta = ax.eta2.tail(n);
    ax.rho.resize(n);
    for (int j = 0; j < n; ++j) {
        double e = ax.eta[j];
        ax.rho[j] = map_scale * e / (1.0 - e * e);
    }
    ax.rho[n - 1] = truncation;
    ax.bary2 = barycentric_weights(ax.eta2);

    MatrixXd de1, de2;
    differentiation_matrices(ax.eta2, ax.bary2, de1, de2);
    // rho'(eta) = c(1+eta^2)/(1-eta^2)^2, rho''(eta) = 2c eta (3+eta^2)/(1-eta^2)^3.
    VectorXd ep(2 * n), epp(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        double e = ax.eta2[k], om = 1.0 - e * e;
        double rp = map_scale * (1.0 + e * e) / (om * om);
        double rpp = 2.0 * map_scale * e * (3.0 + e * e) / (om * om * om);
        ep[k] = 1.0 / rp;
        epp[k] = -rpp / (rp * rp * rp);
    }
    MatrixXd dr1 = ep.asDiagonal() * de1;
    MatrixXd dr2 = ep.cwiseProduct(ep).asDiagonal() * de2 + epp.asDiagonal() * de1;

    ax.d1e.resize(n, n);
    ax.d2e.resize(n, n);
    ax.d1o.resize(n, n);
    ax.d2o.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            ax.d1e(i, j) = dr1(n + i, n + j) + dr1(n + i, n - 1 - j);
            ax.d1o(i, j) = dr1(n + i, n + j) - dr1(n + i, n - 1 - j);
            ax.d2e(i, j) = dr2(n + i, n + j) + dr2(n + i, n - 1 - j);
            ax.d2o(i, j) = dr2(n + i, n + j) - dr2(n + i, n - 1 - j);
        }

    // Half-interval cardinal integrals: I_k = int_0^eta_max l_k(eta) rho'(eta) deta.
    GaussRule gr = gauss_legendre(4 * n + 64, 0.0, eta_max);
    MatrixXd card = interpolation_matrix(ax.eta2, ax.bary2, gr.nodes);
    VectorXd half(2 * n);
    for (int k = 0; k < 2 * n; ++k) {
        double acc = 0.0;
        for (int q = 0; q < gr.nodes.size(); ++q) {
            double e = gr.nodes[q], om = 1.0 - e * e;
            acc += gr.weights[q] * card(q, k) * map_scale * (1.0 + e * e) / (om * om);
        }
        half[k] = acc;
    }
    ax.wq.resize(n);
    ax.wq_odd.resize(n);
    for (int i = 0; i < n; ++i) {
        ax.wq[i] = half[n + i] + half[n - 1 - i];
        ax.wq_odd[i] = half[n + i] - half[n - 1 - i];
    }
    return ax;
}

/// Two-sided mapped axial direction with pinned endpoints.
struct AxialAxis {
    double map_scale = 0.0;
    double truncation = 0.0;
    VectorXd eta;   // Lobatto nodes on [-eta_max, eta_max]
    VectorXd z;     // mapped coordinates
    VectorXd bary;
    MatrixXd d1;    // d/dz
    MatrixXd d2;
    VectorXd wq;    // integrates f(z) dz over [-truncation, truncation]

    int size() const { return static_cast<int>(eta.size()); }
    double eta_of(double zz) const {
        if (zz == 0.0) return 0.0;
        return (-map_scale + std::sqrt(map_scale * map_scale + 4.0 * zz * zz)) /
               (2.0 * zz);
    }
};

inline AxialAxis make_axial_axis(int count, double map_scale, double truncation) {
    if (count < 9) throw std::invalid_argument("axial axis: need >= 9 nodes");
    if (count % 2 == 0) throw std::invalid_argument("axial axis: need odd node count (z=0 node)");
    AxialAxis ax;
    ax.map_scale = map_scale;
    ax.truncation = truncation;
    // eta_max solves c*eta/(1-eta^2) = truncation.
    const double t = truncation;
    const double eta_max = (-map_scale + std::sqrt(map_scale * map_scale + 4.0 * t * t)) / (2.0 * t);
    ax.eta = chebyshev_lobatto(-eta_max, eta_max, count);
    ax.eta[count / 2] = 0.0;
    ax.z.resize(count);
    for (int j = 0; j < count; ++j)
        ax.z[j] = map_scale * ax.eta[j] / (1.0 - ax.eta[j] * ax.eta[j]);
    ax.z[0] = -truncation;
    ax.z[count - 1] = truncation;
    ax.bary = barycentric_weights(ax.eta);

    MatrixXd de1, de2;
    differentiation_matrices(ax.eta, ax.bary, de1, de2);
    // z'(eta) = c(1+eta^2)/(1-eta^2)^2, z''(eta) = 2c eta (3+eta^2)/(1-eta^2)^3.
    VectorXd ep(count), epp(count);
    for (int j = 0; j < count; ++j) {
        double e = ax.eta[j], om = 1.0 - e * e;
        double zp = map_scale * (1.0 + e * e) / (om * om);
        double zpp = 2.0 * map_scale * e * (3.0 + e * e) / (om * om * om);
        ep[j] = 1.0 / zp;                 // eta'(z)
        epp[j] = -zpp / (zp * zp * zp);   // eta''(z)
    }
    ax.d1 = ep.asDiagonal() * de1;
    ax.d2 = ep.cwiseProduct(ep).asDiagonal() * de2 + epp.asDiagonal() * de1;

    VectorXd weta = quadrature_weights(ax.eta, ax.bary, -eta_max, eta_max);
    ax.wq.resize(count);
    for (int j = 0; j < count; ++j) {
        double e = ax.eta[j], om = 1.0 - e * e;
        ax.wq[j] = weta[j] * map_scale * (1.0 + e * e) / (om * om);
    }
    return ax;
}

}  // namespace detail

/// Radial grid for scalar fields f(|y|) on R^n (angular sectors handled by
/// the operator layer).
struct RadialGrid {
    int dimension = 3;
    detail::RadialAxis ax;
    VectorXd wq_vol;  // integrates even f(|y|) over R^n

    int size() const { return ax.size(); }
    const VectorXd& rho() const { return ax.rho; }
    const MatrixXd& d1(Parity p = Parity::even) const { return ax.d1(p); }
    const MatrixXd& d2(Parity p = Parity::even) const { return ax.d2(p); }
    double truncation() const { return ax.truncation; }
    double map_scale() const { return ax.map_scale; }

    /// Interpolation row at radius r; zero past truncation (decay class).
    VectorXd interp_row(double r, Parity p = Parity::even) const {
        return ax.interp_row(r, p);
    }
};

inline std::shared_ptr<const RadialGrid> make_radial_grid(int dimension, int count = 160,
                                                          double map_scale = 4.0,
                                                          double truncation = 40.0) {
    auto g = std::make_shared<RadialGrid>();
    g->dimension = dimension;
    g->ax = detail::make_radial_axis(count, map_scale, truncation);
    g->wq_vol.resize(count);
    const double area = sphere_area(dimension);
    // rho^(n-1) f has the parity of n-1 when f is even, so pick matching weights.
    const auto& w = (dimension % 2 == 1) ? g->ax.wq : g->ax.wq_odd;
    for (int j = 0; j < count; ++j)
        g->wq_vol[j] = area * w[j] * std::pow(g->ax.rho[j], dimension - 1);
    return g;
}

/// Meridional (r, z) grid for axisymmetric vector fields on R^3.
struct MeridionalGrid {
    detail::RadialAxis r;
    detail::AxialAxis z;
    VectorXd wq_rcyl;  // 2*pi*r dr weights: full R^3 integral with wq_z

    int nr() const { return r.size(); }
    int nz() const { return z.size(); }
    /// Interior (unknown) index ranges: r in [0, nr-2], z in [1, nz-2].
    int nri() const { return nr() - 1; }
    int nzi() const { return nz() - 2; }

    mutable std::mutex cache_mutex;
    mutable std::map<std::string, std::shared_ptr<const void>> cache;

    /// Cached factorizations and derived operators, keyed by name.
    template <class T, class Fn>
    std::shared_ptr<const T> cached(const std::string& key, Fn&& build) const {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it == cache.end()) {
            auto value = std::make_shared<const T>(build());
            it = cache.emplace(key, std::shared_ptr<const void>(value)).first;
        }
        return std::static_pointer_cast<const T>(it->second);
    }
};

inline std::shared_ptr<const MeridionalGrid> make_meridional_grid(
    int nr = 40, int nz = 65, double map_scale_r = 3.0, double truncation_r = 30.0,
    double map_scale_z = 3.0, double truncation_z = 30.0) {
    auto g = std::make_shared<MeridionalGrid>();
    g->r = detail::make_radial_axis(nr, map_scale_r, truncation_r);
    g->z = detail::make_axial_axis(nz, map_scale_z, truncation_z);
    g->wq_rcyl.resize(nr);
    // r * (even integrand) is odd, so the cylindrical measure folds odd.
    for (int j = 0; j < nr; ++j)
        g->wq_rcyl[j] = 2.0 * M_PI * g->r.wq_odd[j] * g->r.rho[j];
    return g;
}

}  // namespace ssns
