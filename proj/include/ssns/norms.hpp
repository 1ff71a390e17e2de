/// Norms for decaying fields.
///
/// x_norm = L2 + L4 (the contraction-space norm used throughout), lp norms by
/// grid quadrature, a weighted-sup C^2 norm for background regularity checks
/// (equivalent-norm realization: cylindrical component derivatives with 1/r
/// curvature terms), and the Z_T seminorm over trajectory samples.
#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "ssns/field.hpp"

namespace ssns {

template <class S>
double lp_norm(const RadialField<S>& f, double p) {
    const auto& w = f.grid->wq_vol;
    double acc = 0.0;
    for (int j = 0; j < w.size(); ++j)
        acc += w[j] * std::pow(std::abs(f.values[j]), p);
    return std::pow(acc, 1.0 / p);
}

template <class S>
double l2_norm(const RadialField<S>& f) { return lp_norm(f, 2.0); }
template <class S>
double l4_norm(const RadialField<S>& f) { return lp_norm(f, 4.0); }
template <class S>
double x_norm(const RadialField<S>& f) { return l2_norm(f) + l4_norm(f); }

template <class S>
double grad_lp_norm(const RadialField<S>& f, double p) {
    RadialField<S> g(f.grid, f.radial_derivative());
    return lp_norm(g, p);
}

template <class S>
double linf_norm(const RadialField<S>& f) {
    return f.values.cwiseAbs().maxCoeff();
}

namespace detail {

template <class S>
double axi_lp_of_sq(const AxiField<S>& f, const MatX<S>* comps, int ncomp, double p) {
    const MeridionalGrid& g = *f.grid;
    Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(g.nr(), g.nz());
    for (int c = 0; c < ncomp; ++c) sq += comps[c].cwiseAbs2();
    double acc = 0.0;
    for (int i = 0; i < g.nr(); ++i)
        for (int j = 0; j < g.nz(); ++j)
            acc += g.wq_rcyl[i] * g.z.wq[j] * std::pow(sq(i, j), 0.5 * p);
    return std::pow(acc, 1.0 / p);
}

}  // namespace detail

template <class S>
double lp_norm(const AxiField<S>& f, double p) {
    AxiVelocity<S> v = velocities(f);
    MatX<S> comps[3] = {v.ur, v.ut, v.uz};
    return detail::axi_lp_of_sq(f, comps, 3, p);
}

template <class S>
double l2_norm(const AxiField<S>& f) { return lp_norm(f, 2.0); }
template <class S>
double l4_norm(const AxiField<S>& f) { return lp_norm(f, 4.0); }
template <class S>
double x_norm(const AxiField<S>& f) { return l2_norm(f) + l4_norm(f); }

template <class S>
double grad_lp_norm(const AxiField<S>& f, double p) {
    const MeridionalGrid& g = *f.grid;
    AxiVelocity<S> v = velocities(f);
    MatX<S> comps[8];
    comps[0] = g.r.d1o * v.ur;  // u_r and u_theta are odd in r, u_z even
    comps[1] = g.r.d1o * v.ut;
    comps[2] = g.r.d1e * v.uz;
    comps[3] = v.ur * g.z.d1.transpose();
    comps[4] = v.ut * g.z.d1.transpose();
    comps[5] = v.uz * g.z.d1.transpose();
    comps[6] = v.ur;  // u_r / r and u_theta / r curvature entries
    comps[7] = v.ut;
    for (int i = 0; i < g.nr(); ++i) {
        comps[6].row(i) /= g.r.rho[i];
        comps[7].row(i) /= g.r.rho[i];
    }
    return detail::axi_lp_of_sq(f, comps, 8, p);
}

template <class S>
double linf_norm(const AxiField<S>& f) {
    AxiVelocity<S> v = velocities(f);
    Eigen::MatrixXd sq = v.ur.cwiseAbs2() + v.ut.cwiseAbs2() + v.uz.cwiseAbs2();
    return std::sqrt(sq.maxCoeff());
}

/// Weighted C^2 decay norm: max over derivative order m <= 2 of
/// sup (1+|y|)^(1+m) |D^m u|. Background profiles live in this class.
template <class S>
double y_norm(const RadialField<S>& f) {
    const auto& rho = f.grid->rho();
    VecX<S> d1 = f.grid->d1(f.parity) * f.values;
    VecX<S> d2 = f.grid->d2(f.parity) * f.values;
    double best = 0.0;
    for (int j = 0; j < rho.size(); ++j) {
        double w = 1.0 + rho[j];
        best = std::max(best, w * std::abs(f.values[j]));
        best = std::max(best, w * w * std::abs(d1[j]));
        best = std::max(best, w * w * w * std::abs(d2[j]));
    }
    return best;
}

template <class S>
double y_norm(const AxiField<S>& f) {
    const MeridionalGrid& g = *f.grid;
    AxiVelocity<S> v = velocities(f);
    const std::pair<const MatX<S>*, Parity> comps[3] = {
        {&v.ur, Parity::odd}, {&v.ut, Parity::odd}, {&v.uz, Parity::even}};
    double best = 0.0;
    for (auto [cp, par] : comps) {
        const MatX<S>& c = *cp;
        MatX<S> cr = g.r.d1(par) * c;
        MatX<S> cz = c * g.z.d1.transpose();
        MatX<S> crr = g.r.d2(par) * c;
        MatX<S> crz = cr * g.z.d1.transpose();
        MatX<S> czz = c * g.z.d2.transpose();
        for (int i = 0; i < g.nr(); ++i) {
            double r = g.r.rho[i];
            for (int j = 0; j < g.nz(); ++j) {
                double w = 1.0 + std::hypot(r, g.z.z[j]);
                double a0 = std::abs(c(i, j));
                double a1 = std::hypot(std::abs(cr(i, j)), std::abs(cz(i, j)));
                a1 = std::hypot(a1, std::abs(c(i, j)) / r);
                double a2 = std::sqrt(std::norm(crr(i, j)) + 2.0 * std::norm(crz(i, j)) +
                                      std::norm(czz(i, j)) + std::norm(cr(i, j)) / (r * r));
                best = std::max({best, w * a0, w * w * a1, w * w * w * a2});
            }
        }
    }
    return best;
}

/// Z_T seminorm from trajectory samples: sup_t (||u||_L4 + sqrt(t) ||grad u||_L4).
struct ZtSample {
    double t;
    double l4;
    double grad_l4;
};

inline double zt_seminorm(const std::vector<ZtSample>& samples) {
    double best = 0.0;
    for (const auto& s : samples)
        best = std::max(best, s.l4 + std::sqrt(s.t) * s.grad_l4);
    return best;
}

}  // namespace ssns
