/// Barycentric collocation primitives: node families, differentiation
/// matrices, interpolation, and quadrature weights on arbitrary node sets.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ssns::detail {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Chebyshev-Lobatto nodes on [a, b], ascending, endpoints included.
inline VectorXd chebyshev_lobatto(double a, double b, int count) {
    if (count < 2) throw std::invalid_argument("chebyshev_lobatto: need >= 2 nodes");
    VectorXd x(count);
    const int n = count - 1;
    for (int j = 0; j <= n; ++j)
        x[j] = a + (b - a) * 0.5 * (1.0 - std::cos(M_PI * j / n));
    x[0] = a;
    x[n] = b;
    return x;
}

/// Gauss-Legendre rule on [a, b] via Newton iteration on P_n.
struct GaussRule {
    VectorXd nodes;
    VectorXd weights;
};

inline GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = a + (b - a) * 0.5 * (1.0 + x);
        rule.weights[n - 1 - i] = (b - a) / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

/// Barycentric weights for an arbitrary distinct node set (scaled to avoid
/// under/overflow; only ratios matter).
inline VectorXd barycentric_weights(const VectorXd& x) {
    const int n = static_cast<int>(x.size());
    const double scale = 4.0 / (x[n - 1] - x[0]);
    VectorXd w = VectorXd::Ones(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (k == j) continue;
            w[j] /= (x[j] - x[k]) * scale;
        }
    }
    return w / w.cwiseAbs().maxCoeff();
}

/// First- and second-derivative collocation matrices (Welfert recursion).
inline void differentiation_matrices(const VectorXd& x, const VectorXd& w,
                                     MatrixXd& d1, MatrixXd& d2) {
    const int n = static_cast<int>(x.size());
    d1.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            d1(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
            diag -= d1(i, j);
        }
        d1(i, i) = diag;
    }
    d2.resize(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            d2(i, j) = 2.0 / (x[i] - x[j]) * ((w[j] / w[i]) * d1(i, i) - d1(i, j));
            diag -= d2(i, j);
        }
        d2(i, i) = diag;
    }
}

/// Row of barycentric interpolation coefficients: f(xq) = coeffs . f(nodes).
inline VectorXd interpolation_row(const VectorXd& x, const VectorXd& w, double xq) {
    const int n = static_cast<int>(x.size());
    VectorXd row = VectorXd::Zero(n);
    double denom = 0.0;
    for (int j = 0; j < n; ++j) {
        double diff = xq - x[j];
        if (std::abs(diff) < 1e-14 * (std::abs(xq) + std::abs(x[j]) + 1e-300)) {
            row.setZero();
            row[j] = 1.0;
            return row;
        }
        row[j] = w[j] / diff;
        denom += row[j];
    }
    return row / denom;
}

/// Interpolation matrix from source nodes to arbitrary target points.
inline MatrixXd interpolation_matrix(const VectorXd& x, const VectorXd& w,
                                     const VectorXd& targets) {
    MatrixXd p(targets.size(), x.size());
    for (int i = 0; i < targets.size(); ++i)
        p.row(i) = interpolation_row(x, w, targets[i]).transpose();
    return p;
}

/// Quadrature weights exact for the interpolation space: integrates the
/// degree-(n-1) interpolant through the nodes over [a, b]. The integration
/// interval may extend past the node hull (mild extrapolation near a dropped
/// endpoint is part of the design for open node sets).
inline VectorXd quadrature_weights(const VectorXd& x, const VectorXd& w,
                                   double a, double b) {
    const int n = static_cast<int>(x.size());
    GaussRule gl = gauss_legendre(n + 4, a, b);
    VectorXd qw = VectorXd::Zero(n);
    for (int q = 0; q < gl.nodes.size(); ++q)
        qw += gl.weights[q] * interpolation_row(x, w, gl.nodes[q]);
    return qw;
}

}  // namespace ssns::detail
