/// Deterministic random test fields.
///
/// Every generator takes an explicit 64-bit seed; identical seeds produce
/// identical fields on identical grids. Smooth fields are finite sums of
/// Gaussian bumps with bounded centers so they decay like the heat kernel;
/// compact fields are C^inf bump functions supported in a given ball.
#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>

#include "ssns/field.hpp"

namespace ssns::detail {

/// C^inf bump: exp(1 - 1/(1 - q)) for q = |x|^2/R^2 < 1, else 0. Equals 1 at 0.
inline double bump(double dist_sq, double radius) {
    double q = dist_sq / (radius * radius);
    if (q >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - q));
}

inline RadialField<double> random_radial_field(std::shared_ptr<const RadialGrid> grid,
                                               std::uint64_t seed, int bumps = 4,
                                               double spread = 3.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> width(0.8, 2.0);
    const auto& rho = grid->rho();
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(rho.size());
    for (int b = 0; b < bumps; ++b) {
        double amp = unit(rng);
        double center = 0.5 * spread * (unit(rng) + 1.0);
        double w = width(rng);
        for (int j = 0; j < rho.size(); ++j) {
            double d = (rho[j] - center) / w;
            double dm = (rho[j] + center) / w;  // even image keeps smoothness at 0
            vals[j] += amp * (std::exp(-d * d) + std::exp(-dm * dm));
        }
    }
    return RadialField<double>(std::move(grid), std::move(vals));
}

inline RadialField<double> random_compact_radial_field(std::shared_ptr<const RadialGrid> grid,
                                                       std::uint64_t seed, double radius,
                                                       int modes = 3) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd amps(modes);
    for (int m = 0; m < modes; ++m) amps[m] = unit(rng);
    const auto& rho = grid->rho();
    Eigen::VectorXd vals = Eigen::VectorXd::Zero(rho.size());
    for (int j = 0; j < rho.size(); ++j) {
        double env = bump(rho[j] * rho[j], radius);
        if (env == 0.0) continue;
        double s = 0.0;
        for (int m = 1; m <= modes; ++m)
            s += amps[m - 1] * std::cos(m * M_PI * rho[j] / radius);
        vals[j] = env * s;
    }
    return RadialField<double>(std::move(grid), std::move(vals));
}

/// Random divergence-free axisymmetric field: Gaussian-bump stream function and
/// swirl. Stream bumps are odd in z so the field is equatorially symmetric when
/// mirror = true.
inline AxiField<double> random_axi_field(std::shared_ptr<const MeridionalGrid> grid,
                                         std::uint64_t seed, int bumps = 3,
                                         double spread = 3.0, bool mirror = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> width(1.0, 2.0);
    const MeridionalGrid& g = *grid;
    Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(g.nr(), g.nz());
    Eigen::MatrixXd gam = Eigen::MatrixXd::Zero(g.nr(), g.nz());
    auto add_bumps = [&](Eigen::MatrixXd& target, double r_power) {
        for (int b = 0; b < bumps; ++b) {
            double amp = unit(rng);
            double rc = 0.5 * spread * (unit(rng) + 1.0);
            double zc = 0.5 * spread * unit(rng);
            double w = width(rng);
            for (int i = 0; i < g.nr(); ++i) {
                double r = g.r.rho[i];
                // r^p prefactor vanishes on the axis as regularity requires;
                // mirrored bumps keep the profile even in r
                double pre = std::pow(r, r_power);
                double drc = (r - rc) / w;
                double drm = (r + rc) / w;
                double radial = std::exp(-drc * drc) + std::exp(-drm * drm);
                for (int j = 0; j < g.nz(); ++j) {
                    double dz = (g.z.z[j] - zc) / w;
                    target(i, j) += amp * pre * radial * std::exp(-dz * dz);
                }
            }
        }
    };
    add_bumps(psi, 2.0);
    add_bumps(gam, 2.0);
    AxiField<double> f = field_from_stream(std::move(grid), psi, gam);
    if (mirror) symmetrize_equatorial(f);
    return f;
}

}  // namespace ssns::detail
