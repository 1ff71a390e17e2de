/// Resolvent of the drift operator through its heat representation.
///
/// For L_c = Delta + (y/2) . grad + c and Re lambda above the essential band
/// edge -1/4, the solution of (L_c - lambda) phi = f is
///
///   phi(y) = - integral_0^1 t^{lambda - 1 - c} e^{Delta (1-t)} [f(. / sqrt t)](y) dt.
///
/// Heat scaling turns each sample into a plain evolution of the untouched
/// data: e^{Delta (1-t)}[f(. / sqrt t)](y) = (e^{Delta (1-t)/t} f)(y / sqrt t),
/// so no quadrature point ever resamples a concentrating source onto the
/// grid; the kernel convolution stays exact in the stored values of f. The
/// amplitude leaves a mild t^{lambda - c + dim/2 - 1} endpoint (the mass mode
/// of f), handled by geometrically graded panels down to a floor whose
/// neglected tail is O(floor^{Re lambda - c + dim/2}).
/// Near t = 1 the heat time goes to zero and the evolution falls back to its
/// Crank-Nicolson branch internally.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ssns/field.hpp"
#include "ssns/heat.hpp"
#include "ssns/norms.hpp"
#include "ssns/operators.hpp"

namespace ssns {

struct ResolventOptions {
    double band_margin = 0.05;   // refuse Re lambda < -1/4 + band_margin
    double grading_ratio = 1.12;  // geometric panel growth away from t = 0
    double time_floor = 1e-13;   // quadrature cutoff near t = 0
    HeatOptions heat;
};

namespace detail {

// 5-point Gauss-Legendre rule on [-1, 1]
inline constexpr double gl5_x[5] = {-0.906179845938664, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.906179845938664};
inline constexpr double gl5_w[5] = {0.23692688505618908, 0.47862867049936647,
                                    0.5688888888888889, 0.47862867049936647,
                                    0.23692688505618908};

}  // namespace detail

/// Solve (L_c - lambda) phi = f. Throws for lambda within band_margin of the
/// essential band {Re <= -1/4}.
inline RadialField<Complex> resolvent_solve(const RadialField<Complex>& f,
                                            Complex lambda, int sector = 0,
                                            double weight = 0.5,
                                            const ResolventOptions& opt = {}) {
    if (lambda.real() < -0.25 + opt.band_margin)
        throw std::domain_error("resolvent_solve: lambda within the margin of the "
                                "essential band {Re <= -1/4}");
    const auto& g = *f.grid;
    const Complex power = lambda - 1.0 - weight;

    std::vector<double> edges{1.0};
    while (edges.back() > opt.time_floor)
        edges.push_back(edges.back() / opt.grading_ratio);
    std::reverse(edges.begin(), edges.end());

    RadialField<Complex> phi(f.grid, f.parity);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double mid = 0.5 * (edges[p] + edges[p + 1]);
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        for (int q = 0; q < 5; ++q) {
            const double t = mid + half * detail::gl5_x[q];
            const double stretch = 1.0 / std::sqrt(t);
            Complex amplitude = std::exp(power * std::log(t));
            VecX<Complex> flowed = heat_evolve_at(f, (1.0 - t) / t,
                                                  VectorXd(stretch * g.ax.rho),
                                                  sector, opt.heat);
            phi.values -= (half * detail::gl5_w[q] * amplitude) * flowed;
        }
    }
    return phi;
}

inline RadialField<Complex> resolvent_solve(const RadialField<double>& f,
                                            Complex lambda, int sector = 0,
                                            double weight = 0.5,
                                            const ResolventOptions& opt = {}) {
    return resolvent_solve(to_complex(f), lambda, sector, weight, opt);
}

/// Relative defect of a resolvent solve measured with the discrete drift
/// operator: ||(L_c - lambda) phi - f||_X / ||f||_X.
inline double resolvent_residual(const RadialField<Complex>& phi,
                                 const RadialField<Complex>& f, Complex lambda,
                                 int sector = 0, double weight = 0.5) {
    MatrixXd drift = sector_drift(*f.grid, sector, weight);
    RadialField<Complex> defect(f.grid, f.parity);
    defect.values = drift.cast<Complex>() * phi.values - lambda * phi.values - f.values;
    return x_norm(defect) / x_norm(f);
}

}  // namespace ssns
