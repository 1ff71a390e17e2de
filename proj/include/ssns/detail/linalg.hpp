/// Dense linear-algebra helpers for separable meridional operators.
///
/// Operators of the form X -> Ar X + X Az^T on interior node blocks are
/// assembled as kron(I, Ar) + kron(Az, I) (column-major vec convention) and
/// solved by one LU factorization. Collocation matrices here are far from
/// normal, so direct factorization is preferred over eigen-diagonalization.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ssns::detail {

inline Eigen::MatrixXd kron_sum(const Eigen::MatrixXd& ar, const Eigen::MatrixXd& az) {
    const int m = static_cast<int>(ar.rows());
    const int p = static_cast<int>(az.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m * p, m * p);
    for (int j = 0; j < p; ++j) out.block(j * m, j * m, m, m) = ar;
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k)
            out.block(j * m, k * m, m, m).diagonal().array() += az(j, k);
    return out;
}

/// LU of alpha * I + beta * (kron sum); solves in matrix (interior-block) form.
struct SeparableSolve {
    int rows = 0, cols = 0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;

    SeparableSolve() = default;
    SeparableSolve(const Eigen::MatrixXd& ar, const Eigen::MatrixXd& az, double alpha,
                   double beta)
        : rows(static_cast<int>(ar.rows())), cols(static_cast<int>(az.rows())) {
        Eigen::MatrixXd m = beta * kron_sum(ar, az);
        m.diagonal().array() += alpha;
        lu.compute(m);
    }

    template <class S>
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> solve(
        const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& rhs) const {
        using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
        Eigen::Map<const Eigen::Matrix<S, Eigen::Dynamic, 1>> v(rhs.data(), rhs.size());
        Eigen::Matrix<S, Eigen::Dynamic, 1> sol;
        if constexpr (std::is_same_v<S, double>) {
            sol = lu.solve(v);
        } else {
            // complex right-hand side against the real factorization
            Eigen::VectorXd re = lu.solve(Eigen::VectorXd(v.real()));
            Eigen::VectorXd im = lu.solve(Eigen::VectorXd(v.imag()));
            sol = re.cast<S>() + std::complex<double>(0.0, 1.0) * im.cast<S>();
        }
        return Eigen::Map<const Mat>(sol.data(), rows, cols);
    }
};

}  // namespace ssns::detail
