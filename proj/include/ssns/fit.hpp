/// Least-squares exponent fits for norm histories.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ssns {

struct FitResult {
    double exponent = 0.0;   // slope of log(value) against the regressor
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Regressor choice: log(value) against t fits an exponential rate,
/// against log(t) fits a power-law exponent.
enum class Regressor { time, log_time };

inline FitResult decay_fit(const std::vector<std::pair<double, double>>& series,
                           double window_lo, double window_hi,
                           Regressor reg = Regressor::time) {
    if (!(window_lo < window_hi))
        throw std::invalid_argument("decay_fit: degenerate window");
    std::vector<double> xs, ys;
    for (const auto& [t, value] : series) {
        if (t < window_lo || t > window_hi) continue;
        if (!(value > 0.0))
            throw std::invalid_argument("decay_fit: non-positive value in window");
        if (reg == Regressor::log_time && !(t > 0.0))
            throw std::invalid_argument("decay_fit: log-time regressor needs t > 0");
        xs.push_back(reg == Regressor::time ? t : std::log(t));
        ys.push_back(std::log(value));
    }
    const int n = static_cast<int>(xs.size());
    if (n < 8) throw std::invalid_argument("decay_fit: need at least 8 samples in window");

    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("decay_fit: regressor is constant");

    FitResult fit;
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double ss_res = syy - sxy * sxy / sxx;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

}  // namespace ssns
