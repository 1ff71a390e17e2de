/// Similarity-variable drift semigroups.
///
/// The drift operator on a scalar of scaling weight c is
///   L_c = Delta + (y/2) . grad + c,
/// and its semigroup has the exact substitution form
///   (e^{L_c s} f)(y) = e^{c s} h(e^{s/2} y, e^s - 1)
/// where h solves the plain heat equation from f. Because the kernel
/// convolution is exact in the source data, evaluating it at the scaled
/// targets stays accurate for arbitrarily large s (the kernel seen in y
/// variables has bounded width 2); only small s falls back to the
/// Crank-Nicolson branch inside heat_evolve_at.
///
/// Axisymmetric divergence-free fields evolve componentwise: u_theta and
/// omega are polar m = 1 scalars with weights 1/2 and 1, and the stream
/// function is recovered from omega, which keeps the field solenoidal.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssns/field.hpp"
#include "ssns/heat.hpp"
#include "ssns/norms.hpp"
#include "ssns/operators.hpp"

namespace ssns {

/// e^{L_c s} on a radial sector field. weight = 1/2 is the velocity scaling,
/// alpha/2 the scalar family, 0 a plain drift substitution.
template <class S>
RadialField<S> semigroup_L(const RadialField<S>& f, double s, int sector = 0,
                           double weight = 0.5, const HeatOptions& opt = {}) {
    if (s < 0.0) throw std::invalid_argument("semigroup_L: need s >= 0");
    if (s == 0.0) return f;
    const double t = std::expm1(s);
    const VectorXd targets = std::exp(0.5 * s) * f.grid->rho();
    RadialField<S> out(f.grid, f.parity);
    out.values = std::exp(weight * s) * heat_evolve_at(f, t, targets, sector, opt);
    return out;
}

namespace detail {

/// One meridional component through the substitution law: polar sector m,
/// scaling weight c, sampled back on the grid nodes.
template <class S>
MatX<S> merid_semigroup_component(const MeridionalGrid& g, const MatX<S>& field,
                                  double s, int m, double weight) {
    const double t = std::expm1(s);
    const double stretch = std::exp(0.5 * s);
    VectorXd tr = stretch * g.r.rho;
    VectorXd tz = stretch * g.z.z;
    return std::exp(weight * s) * merid_heat_apply(g, field, t, m, &tr, &tz);
}

/// Crank-Nicolson on a separable drift operator (small-s path for the
/// meridional semigroup, where the kernel is thinner than the grid).
template <class S>
MatX<S> cn_drift_axi(const MeridionalGrid& g, const SeparableOp& op,
                     const std::string& name, const MatX<S>& field, double s,
                     int steps) {
    MatX<S> results[2];
    for (int half = 0; half < 2; ++half) {
        int k = steps << half;
        double dt = s / k;
        std::string key = name + ":cn:" + std::to_string(dt);
        MatX<S> u = field;
        for (int m = 0; m < k; ++m) {
            MatX<S> rhs = u + 0.5 * dt * apply_separable(op, u);
            u = separable_solve(g, op, key, 1.0, -0.5 * dt, rhs);
        }
        results[half] = u;
    }
    return (4.0 * results[1] - results[0]) / 3.0;
}

}  // namespace detail

/// e^{Ls} on an axisymmetric divergence-free field (velocity scaling).
template <class S>
AxiField<S> semigroup_L(const AxiField<S>& f, double s, const HeatOptions& opt = {}) {
    if (s < 0.0) throw std::invalid_argument("semigroup_L: need s >= 0");
    if (s == 0.0) return f;
    const auto& g = *f.grid;
    MatX<S> swirl_velocity(g.nr(), g.nz());
    MatX<S> omega;
    if (std::expm1(s) >= opt.merid_kernel_min_time) {
        for (int i = 0; i < g.nr(); ++i)
            swirl_velocity.row(i) = f.gamma.row(i) / g.r.rho[i];
        swirl_velocity = detail::merid_semigroup_component(g, swirl_velocity, s, 1, 0.5);
        omega = detail::merid_semigroup_component(g, f.omega, s, 1, 1.0);
    } else {
        // drift operators stepped directly in similarity variables
        int steps = std::max(opt.cn_steps, static_cast<int>(std::ceil(s / opt.cn_step_max)));
        MatX<S> gamma = detail::cn_drift_axi(g, swirl_drift(g), "swirl_drift",
                                             f.gamma, s, steps);
        for (int i = 0; i < g.nr(); ++i)
            swirl_velocity.row(i) = gamma.row(i) / g.r.rho[i];
        omega = detail::cn_drift_axi(g, vorticity_drift(g), "vorticity_drift",
                                     f.omega, s, steps);
    }
    AxiField<S> out(f.grid);
    out.gamma.resize(g.nr(), g.nz());
    for (int i = 0; i < g.nr(); ++i)
        out.gamma.row(i) = g.r.rho[i] * swirl_velocity.row(i);
    out.omega = std::move(omega);
    out.psi = stream_from_vorticity(g, out.omega);
    return out;
}

/// Time-stepper description for the perturbed semigroup e^{(L - K(a)) s}.
/// A null background means pure drift.
struct PropagatorSpec {
    std::shared_ptr<const AxiField<double>> background;
    double time_step = 0.01;
    int scheme_order = 2;   // 1: IMEX Euler, 2: Crank-Nicolson/Adams-Bashforth
    double safety = 0.5;    // explicit-stage substep trigger

    void validate() const {
        if (!(time_step > 0.0))
            throw std::invalid_argument("PropagatorSpec: time_step must be positive");
        if (scheme_order != 1 && scheme_order != 2)
            throw std::invalid_argument("PropagatorSpec: scheme order must be 1 or 2");
        if (background && !std::isfinite(y_norm(*background)))
            throw std::invalid_argument("PropagatorSpec: background fails the Y-norm check");
    }
};

/// Laplace-transform route to the resolvent: (lambda - L_c)^{-1} f as the
/// integral of e^{-lambda s} e^{L_c s} f ds over [0, horizon]. Kept here with
/// the semigroup so it shares no code with the Duhamel construction; used to
/// cross-validate it.
inline RadialField<Complex> laplace_resolvent(const RadialField<double>& f, Complex lambda,
                                              int sector = 0, double weight = 0.5,
                                              double horizon = 40.0, int panels = 160,
                                              const HeatOptions& opt = {}) {
    RadialField<Complex> fc = to_complex(f);
    RadialField<Complex> acc(f.grid, f.parity);
    // 4-point Gauss-Legendre on uniform panels; the integrand is smooth in s
    static const double gl_x[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
    static const double gl_w[4] = {0.3478548451374538, 0.6521451548625461,
                                   0.6521451548625461, 0.3478548451374538};
    const double width = horizon / panels;
    for (int p = 0; p < panels; ++p) {
        double left = p * width;
        for (int q = 0; q < 4; ++q) {
            double s = left + 0.5 * width * (1.0 + gl_x[q]);
            RadialField<Complex> term = semigroup_L(fc, s, sector, weight, opt);
            acc.values += (0.5 * width * gl_w[q]) * std::exp(-lambda * s) * term.values;
        }
    }
    return acc;
}

}  // namespace ssns
